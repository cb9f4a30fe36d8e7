//! Exact coloured van Kampen diagrams, the RSym curvature distribution on them, and a
//! small exhaustive enumerator used to cross-check the verifier.

pub mod blobs;
pub mod checks;
pub mod curvature;
pub mod diagram;
pub mod enumerate;
pub mod validate;

pub use blobs::{find_red_blobs, RedBlob};
pub use checks::{check_all, check_diagram, graph_identity, interior_green, vertex_chi, CheckViolation, DiagramCheck, OracleReport};
pub use curvature::{compute_rsym_curvature, CurvatureMap, Donation};
pub use diagram::{ColouredDiagram, FaceKind, HalfEdge, StructuralError};
pub use enumerate::{enumerate_diagrams, enumerate_discs, enumerate_with_ceiling, Ceiling, EnumerateError};
pub use validate::{validate_diagram, violations, Rejection};
