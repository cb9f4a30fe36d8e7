//! Pregroup presentations, the RSym hyperbolicity verifier and a linear-time solver for
//! the word problem in groups that pass it.

pub mod exec;
pub mod experiment;
pub mod families;
pub mod pregroup;
pub mod presentation;
pub mod quotient;
pub mod solver;
pub mod verifier;
pub mod words;

pub use exec::Schedule;
pub use pregroup::{Elem, FiniteGroup, Pregroup, Word, IDENTITY};
pub use presentation::{preprocess, Presentation, PresentationError};
pub use verifier::{rat, rsym_verify, Rat, VerifyResult, Verifier};
pub use solver::{dehn_bounds, verify_solver, DehnBoundReport, Mode, RewriteList, Solver};
