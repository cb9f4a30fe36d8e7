//! The RSym curvature distribution, computed exactly.

use rsym::{rat, Rat};

use crate::blobs::{find_red_blobs, RedBlob};
use crate::diagram::{ColouredDiagram, FaceKind};

/// A transfer of curvature to an internal green face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Donation {
    /// Vertex `vertex` gives `chi` to `face` at the corner starting with `corner`.
    Vertex { vertex: usize, face: usize, corner: usize, chi: Rat },
    /// Blob `blob` gives `chi` across the edge whose blob side is `edge`.
    Blob { blob: usize, face: usize, edge: usize, chi: Rat },
}

impl Donation {
    pub fn chi(&self) -> Rat {
        match self {
            Donation::Vertex { chi, .. } | Donation::Blob { chi, .. } => *chi,
        }
    }

    pub fn face(&self) -> usize {
        match self {
            Donation::Vertex { face, .. } | Donation::Blob { face, .. } => *face,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvatureMap {
    pub vertex: Vec<Rat>,
    pub half_edge: Vec<Rat>,
    pub face: Vec<Rat>,
    pub blobs: Vec<RedBlob>,
    /// `β(B)` for each blob, before it moves into green faces.
    pub blob_curvature: Vec<Rat>,
    pub donations: Vec<Donation>,
}

impl CurvatureMap {
    /// Curvature of the edge containing half-edge `h`.
    pub fn edge(&self, d: &ColouredDiagram, h: usize) -> Rat {
        self.half_edge[h] + self.half_edge[d.twin(h)]
    }

    pub fn total(&self) -> Rat {
        self.vertex.iter().chain(&self.half_edge).chain(&self.face).fold(rat(0, 1), |a, &b| a + b)
    }
}

pub fn compute_rsym_curvature(d: &ColouredDiagram) -> CurvatureMap {
    let half = rat(1, 2);
    let nh = d.half_edges().len();
    // Vertices and internal faces start at 1, edges at -1.
    let mut vertex = vec![rat(1, 1); d.vertex_count()];
    let mut half_edge = vec![-half; nh];
    let mut face: Vec<Rat> =
        d.faces().iter().map(|k| if k.is_internal() { rat(1, 1) } else { rat(0, 1) }).collect();

    // Each half-edge takes 1/2 from its head vertex when its face is green, else from its red face.
    for h in 0..nh {
        half_edge[h] += half;
        let f = d.face_of(h);
        if d.face_kind(f).is_green() {
            vertex[d.head(h)] -= half;
        } else {
            face[f] -= half;
        }
    }

    // Vertices share what they hold among their internal green corners.
    let mut donations = Vec::new();
    for (v, kv) in vertex.iter_mut().enumerate() {
        let targets: Vec<usize> =
            d.corners(v).into_iter().filter(|&h| d.kind_of(h).is_internal_green()).collect();
        if targets.is_empty() {
            continue;
        }
        let chi = *kv / rat(targets.len() as i64, 1);
        *kv = rat(0, 1);
        for corner in targets {
            let f = d.face_of(corner);
            face[f] += chi;
            donations.push(Donation::Vertex { vertex: v, face: f, corner, chi });
        }
    }

    // Each red blob passes its total across its edges into green faces.
    let blobs = find_red_blobs(d);
    let mut blob_curvature = Vec::with_capacity(blobs.len());
    for (i, b) in blobs.iter().enumerate() {
        let beta = b.triangles.iter().fold(rat(0, 1), |a, &t| a + face[t]);
        blob_curvature.push(beta);
        let across: Vec<usize> =
            b.boundary_half_edges().filter(|&h| d.face_of(d.twin(h)) != d.external()).collect();
        if across.is_empty() {
            continue;
        }
        let chi = beta / rat(across.len() as i64, 1);
        for &t in &b.triangles {
            face[t] = rat(0, 1);
        }
        for edge in across {
            let f = d.face_of(d.twin(edge));
            debug_assert!(matches!(d.face_kind(f), FaceKind::Green(_)));
            face[f] += chi;
            donations.push(Donation::Blob { blob: i, face: f, edge, chi });
        }
    }

    CurvatureMap { vertex, half_edge, face, blobs, blob_curvature, donations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rsym::families::{parse, tri};

    #[test]
    fn single_green_face() {
        let pres = tri(3, 7);
        let r = pres.signed_relators()[0].clone();
        let d = ColouredDiagram::from_gluing(&pres, &[(FaceKind::Green(0), r)], &[]).unwrap();
        let k = compute_rsym_curvature(&d);
        assert_eq!(k.face[0], rat(1, 1));
        assert!(k.vertex.iter().all(|&c| c == rat(0, 1)));
        assert!((0..d.half_edges().len()).all(|h| k.edge(&d, h) == rat(0, 1)));
        assert_eq!(k.total(), rat(1, 1));
    }

    #[test]
    fn lone_red_triangle() {
        let pres = tri(3, 7);
        let yyy = parse(pres.pregroup(), "yyy");
        let idx = pres.vp().iter().position(|w| *w == yyy).unwrap();
        let d = ColouredDiagram::from_gluing(&pres, &[(FaceKind::Red(idx), yyy)], &[]).unwrap();
        let k = compute_rsym_curvature(&d);
        assert!(k.vertex.iter().all(|&c| c == rat(1, 2)));
        assert_eq!(k.face[0], rat(-1, 2));
        assert_eq!(k.total(), rat(1, 1));
        assert!(k.donations.is_empty());
        assert_eq!(k.blobs.len(), 1);
    }
}
