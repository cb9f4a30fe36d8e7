//! Exact invariant checks on diagrams, and agreement with the verifier's bounds.

use rsym::exec::{self, Schedule};
use rsym::verifier::{blob_bound, vertex_bound, Colour, VertexGraph};
use rsym::{rat, Presentation, Rat, Verifier};
use thiserror::Error;

use crate::curvature::{compute_rsym_curvature, CurvatureMap, Donation};
use crate::diagram::ColouredDiagram;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckViolation {
    #[error("total curvature is {total}, not 1")]
    Total { total: Rat },
    #[error("edge/vertex identity fails: {lhs} != {rhs}")]
    GraphIdentity { lhs: i64, rhs: i64 },
    #[error("blob {blob}: boundary length {l} with area {t} (simply connected: {simply_connected})")]
    BlobShape { blob: usize, t: usize, l: usize, simply_connected: bool },
    #[error("vertex {vertex} gives {chi} to face {face}, expected {expected}")]
    VertexChi { vertex: usize, face: usize, chi: Rat, expected: Rat },
    #[error("vertex {vertex} keeps curvature {kappa}")]
    VertexCurvature { vertex: usize, kappa: Rat },
    #[error("boundary face {face} has curvature {kappa} > 1/2")]
    BoundaryFace { face: usize, kappa: Rat },
    #[error("vertex {vertex} gives {chi} to face {face}, above the vertex bound {bound}")]
    VertexDomination { vertex: usize, face: usize, chi: Rat, bound: Rat },
    #[error("blob {blob} gives {chi} to face {face}, above the blob bound {bound}")]
    BlobDomination { blob: usize, face: usize, chi: Rat, bound: Rat },
    #[error("no vertex-graph configuration for the corner at half-edge {half_edge}")]
    Unmapped { half_edge: usize },
    #[error("non-boundary face {face} has curvature {kappa} > -{eps}")]
    Soundness { face: usize, kappa: Rat, eps: Rat },
}

impl CheckViolation {
    pub fn code(&self) -> &'static str {
        match self {
            CheckViolation::Total { .. } => "total",
            CheckViolation::GraphIdentity { .. } => "graph-identity",
            CheckViolation::BlobShape { .. } => "blob-shape",
            CheckViolation::VertexChi { .. } => "vertex-chi",
            CheckViolation::VertexCurvature { .. } => "vertex-curvature",
            CheckViolation::BoundaryFace { .. } => "boundary-face",
            CheckViolation::VertexDomination { .. } => "vertex-domination",
            CheckViolation::BlobDomination { .. } => "blob-domination",
            CheckViolation::Unmapped { .. } => "unmapped",
            CheckViolation::Soundness { .. } => "soundness",
        }
    }
}

/// Counts and violations over a batch of diagrams.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OracleReport {
    pub diagrams: usize,
    /// Non-boundary internal green faces checked against `-ε`.
    pub interior_faces: usize,
    pub vertex_donations: usize,
    pub blob_donations: usize,
    /// Donations compared against a verifier bound.
    pub dominated: usize,
    /// Diagram index and what went wrong.
    pub violations: Vec<(usize, CheckViolation)>,
}

impl OracleReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Σ_e δ_G(e) and |F_R| + 2(1 − |F_G| + Σ_v(δ_G(v) − 1)).
pub fn graph_identity(d: &ColouredDiagram) -> (i64, i64) {
    let green = |h: usize| i64::from(d.kind_of(h).is_green());
    let lhs = (0..d.half_edges().len()).filter(|&h| h < d.twin(h)).map(|h| green(h) + green(d.twin(h))).sum();
    let red = d.red_faces().count() as i64;
    let fg = d.internal_faces().filter(|&f| d.face_kind(f).is_internal_green()).count() as i64;
    let sv: i64 = (0..d.vertex_count()).map(|v| d.green_degree(v) as i64 - 1).sum();
    (lhs, red + 2 * (1 - fg + sv))
}

/// `(2 − v_G) / (2(v_G − x))`.
pub fn vertex_chi(v_g: usize, x: usize) -> Rat {
    rat(2 - v_g as i64, 2 * (v_g as i64 - x as i64))
}

/// Vertex-graph vertex for corner `i` of a vertex, with a run of red corners merged into a
/// single red vertex.
fn corner_vertex(d: &ColouredDiagram, g: &VertexGraph, ring: &[usize], i: usize) -> Option<u32> {
    let k = ring.len();
    let h = ring[i % k];
    if d.kind_of(h).is_green() {
        return g.id(d.half_edge(d.prev(h)).label, d.half_edge(h).label, Colour::Green);
    }
    let red = |j: usize| !d.kind_of(ring[j % k]).is_green();
    let (mut first, mut last) = (i % k, i % k);
    while red((first + k - 1) % k) && (first + k - 1) % k != i % k {
        first = (first + k - 1) % k;
    }
    while red((last + 1) % k) && (last + 1) % k != first {
        last = (last + 1) % k;
    }
    g.id(d.half_edge(d.prev(ring[first])).label, d.half_edge(ring[last]).label, Colour::Red)
}

#[derive(Debug, Clone)]
pub struct DiagramCheck {
    pub curvature: CurvatureMap,
    pub violations: Vec<CheckViolation>,
    /// Donations compared against a verifier bound.
    pub dominated: usize,
}

/// All checks on one diagram. Domination needs the verifier; soundness needs `eps`.
pub fn check_diagram(
    d: &ColouredDiagram,
    pres: &Presentation,
    verifier: Option<&Verifier>,
    eps: Option<Rat>,
) -> DiagramCheck {
    let k = compute_rsym_curvature(d);
    let mut out = Vec::new();

    let total = k.total();
    if total != rat(1, 1) {
        out.push(CheckViolation::Total { total });
    }
    let (lhs, rhs) = graph_identity(d);
    if lhs != rhs {
        out.push(CheckViolation::GraphIdentity { lhs, rhs });
    }
    for (i, b) in k.blobs.iter().enumerate() {
        let (t, l) = (b.area(), b.boundary_len());
        let ok = if !b.simply_connected {
            l <= t
        } else if b.has_inner_vertex {
            l <= t + 2
        } else {
            l == t + 2
        };
        if !ok {
            out.push(CheckViolation::BlobShape { blob: i, t, l, simply_connected: b.simply_connected });
        }
    }

    for v in 0..d.vertex_count() {
        let (v_g, x) = (d.green_degree(v), d.external_incidence(v));
        if k.vertex[v] > rat(0, 1) || (x != v_g && k.vertex[v] != rat(0, 1)) {
            out.push(CheckViolation::VertexCurvature { vertex: v, kappa: k.vertex[v] });
        }
    }
    for don in &k.donations {
        if let Donation::Vertex { vertex, face, chi, .. } = *don {
            let expected = vertex_chi(d.green_degree(vertex), d.external_incidence(vertex));
            if chi != expected {
                out.push(CheckViolation::VertexChi { vertex, face, chi, expected });
            }
        }
    }
    if d.area() > 1 {
        for f in d.internal_faces().filter(|&f| d.face_kind(f).is_internal_green() && d.is_boundary_face(f)) {
            if k.face[f] > rat(1, 2) {
                out.push(CheckViolation::BoundaryFace { face: f, kappa: k.face[f] });
            }
        }
    }

    let dominated = verifier.map_or(0, |ver| dominate(d, pres, ver, &k, &mut out));
    if let Some(eps) = eps {
        for f in interior_green(d) {
            if k.face[f] > -eps {
                out.push(CheckViolation::Soundness { face: f, kappa: k.face[f], eps });
            }
        }
    }
    DiagramCheck { curvature: k, violations: out, dominated }
}

/// Internal green faces with no edge on the boundary.
pub fn interior_green(d: &ColouredDiagram) -> impl Iterator<Item = usize> + '_ {
    d.internal_faces().filter(move |&f| d.face_kind(f).is_internal_green() && !d.is_boundary_face(f))
}

fn dominate(d: &ColouredDiagram, pres: &Presentation, ver: &Verifier, k: &CurvatureMap, out: &mut Vec<CheckViolation>) -> usize {
    let g = ver.graph();
    let mut compared = 0;
    for don in &k.donations {
        match *don {
            Donation::Vertex { vertex, face, corner, chi } => {
                let ring = d.corners(vertex);
                // A vertex of degree two sits inside a consolidated edge, which the verifier
                // walks along instead of bounding.
                if d.external_incidence(vertex) > 0 || ring.len() < 3 {
                    continue;
                }
                let n = ring.len();
                let i = ring.iter().position(|&h| h == corner).expect("corner of its vertex");
                let nu = corner_vertex(d, g, &ring, i);
                let nu1 = corner_vertex(d, g, &ring, i + n - 1);
                let nu2 = corner_vertex(d, g, &ring, i + 1);
                match (nu1, nu, nu2) {
                    (Some(a), Some(b), Some(c)) if g.has_edge(a, b) && g.has_edge(b, c) => {
                        let bound = vertex_bound(g, a, b, c);
                        compared += 1;
                        if chi > bound {
                            out.push(CheckViolation::VertexDomination { vertex, face, chi, bound });
                        }
                    }
                    _ => out.push(CheckViolation::Unmapped { half_edge: corner }),
                }
            }
            Donation::Blob { blob, face, edge, chi } => {
                let walk = k.blobs[blob].walks.iter().find(|w| w.contains(&edge)).expect("edge on its blob");
                let m = walk.len();
                let j = walk.iter().position(|&h| h == edge).unwrap();
                let label = |h: usize| d.half_edge(h).label;
                let (a, b, c) = (label(walk[(j + m - 1) % m]), label(edge), label(walk[(j + 1) % m]));
                if !pres.intermult(a, b) || !pres.intermult(b, c) {
                    out.push(CheckViolation::Unmapped { half_edge: edge });
                    continue;
                }
                let bound = blob_bound(pres, a, b, c);
                compared += 1;
                if chi > bound {
                    out.push(CheckViolation::BlobDomination { blob, face, chi, bound });
                }
            }
        }
    }
    compared
}

/// Runs [`check_diagram`] over a batch, in parallel when the schedule allows.
pub fn check_all(
    diagrams: &[ColouredDiagram],
    pres: &Presentation,
    verifier: Option<&Verifier>,
    eps: Option<Rat>,
    schedule: Schedule,
) -> OracleReport {
    let results = exec::map(schedule, diagrams, |d| {
        let c = check_diagram(d, pres, verifier, eps);
        let dons = &c.curvature.donations;
        let vertex = dons.iter().filter(|x| matches!(x, Donation::Vertex { .. })).count();
        (interior_green(d).count(), vertex, dons.len() - vertex, c.dominated, c.violations)
    });
    let mut report = OracleReport { diagrams: diagrams.len(), ..Default::default() };
    for (i, (faces, vd, bd, dom, v)) in results.into_iter().enumerate() {
        report.interior_faces += faces;
        report.vertex_donations += vd;
        report.blob_donations += bd;
        report.dominated += dom;
        report.violations.extend(v.into_iter().map(|x| (i, x)));
    }
    report
}
