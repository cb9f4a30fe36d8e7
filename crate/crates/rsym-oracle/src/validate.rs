//! Membership of the diagram class `𝒟`.

use rsym::{Elem, Pregroup, Presentation};
use thiserror::Error;

use crate::blobs::find_red_blobs;
use crate::diagram::ColouredDiagram;

/// The first condition a diagram breaks, in the order they are checked.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Rejection {
    #[error("boundary word is not cyclically P-reduced")]
    BoundaryNotReduced,
    #[error("not sigma-reduced across half-edge {half_edge}")]
    NotSigmaReduced { half_edge: usize },
    #[error("not semi-P-reduced across half-edge {half_edge}")]
    NotSemiPReduced { half_edge: usize },
    #[error("not green-rich: vertex {vertex} has green degree {degree}")]
    NotGreenRich { vertex: usize, degree: usize },
    #[error("blob {blob} has a proper boundary subword equal to 1")]
    BlobSubwordTrivial { blob: usize },
}

impl Rejection {
    /// Stable short code for reports.
    pub fn code(&self) -> &'static str {
        match self {
            Rejection::BoundaryNotReduced => "boundary",
            Rejection::NotSigmaReduced { .. } => "sigma",
            Rejection::NotSemiPReduced { .. } => "semi-p",
            Rejection::NotGreenRich { .. } => "green-rich",
            Rejection::BlobSubwordTrivial { .. } => "blob-subword",
        }
    }
}

/// The labels of a face read from `h` once around.
pub(crate) fn word_from(d: &ColouredDiagram, h: usize) -> Vec<Elem> {
    let mut out = vec![d.half_edge(h).label];
    let mut g = d.next(h);
    while g != h {
        out.push(d.half_edge(g).label);
        g = d.next(g);
    }
    out
}

/// Faces reading `f_end` (ending with the shared edge) and `g_start` (starting with it,
/// the other way) are mirror images across that edge.
pub(crate) fn is_mirror(p: &Pregroup, f_end: &[Elem], g_start: &[Elem]) -> bool {
    f_end.len() == g_start.len() && f_end.iter().rev().zip(g_start).all(|(&a, &b)| p.sigma(a) == b)
}

/// The two readings multiply to 1 in `U(P)`: the pair could be replaced by a smaller
/// diagram with the same boundary.
pub(crate) fn cancels(p: &Pregroup, f_end: &[Elem], g_start: &[Elem]) -> bool {
    let w: Vec<Elem> = f_end.iter().chain(g_start).copied().collect();
    p.p_reduce(&w).map(|r| r.is_empty()).unwrap_or(false)
}

/// Every condition broken, in checking order.
pub fn violations(d: &ColouredDiagram, pres: &Presentation) -> Vec<Rejection> {
    let p = pres.pregroup();
    let mut out = Vec::new();
    if !p.is_cyclically_p_reduced(&d.boundary_word(pres)) {
        out.push(Rejection::BoundaryNotReduced);
    }
    let mut sigma = Vec::new();
    let mut semi = Vec::new();
    for h in 0..d.half_edges().len() {
        let t = d.twin(h);
        let (kf, kg) = (d.kind_of(h), d.kind_of(t));
        if !kf.is_internal() || !kg.is_internal() || h > t {
            continue;
        }
        let f_end = word_from(d, d.next(h));
        let g_start = word_from(d, t);
        if is_mirror(p, &f_end, &g_start) {
            sigma.push(Rejection::NotSigmaReduced { half_edge: h });
        } else if kf.is_internal_green()
            && kg.is_internal_green()
            && d.face_of(h) != d.face_of(t)
            && cancels(p, &f_end, &g_start)
        {
            semi.push(Rejection::NotSemiPReduced { half_edge: h });
        }
    }
    out.extend(sigma);
    out.extend(semi);
    for v in 0..d.vertex_count() {
        let degree = d.green_degree(v);
        if degree < 2 {
            out.push(Rejection::NotGreenRich { vertex: v, degree });
        }
    }
    for (i, b) in find_red_blobs(d).iter().enumerate() {
        if !b.simply_connected {
            continue;
        }
        let w: Vec<Elem> = b.walks[0].iter().map(|&h| d.half_edge(h).label).collect();
        if has_trivial_proper_subword(p, &w) {
            out.push(Rejection::BlobSubwordTrivial { blob: i });
        }
    }
    out
}

fn has_trivial_proper_subword(p: &Pregroup, w: &[Elem]) -> bool {
    let l = w.len();
    (1..l).any(|len| {
        (0..l).any(|s| {
            let sub: Vec<Elem> = (0..len).map(|k| w[(s + k) % l]).collect();
            p.p_reduce(&sub).map(|r| r.is_empty()).unwrap_or(false)
        })
    })
}

/// `Ok` when the diagram lies in `𝒟`, else the first broken condition.
pub fn validate_diagram(d: &ColouredDiagram, pres: &Presentation) -> Result<(), Rejection> {
    match violations(d, pres).into_iter().next() {
        Some(r) => Err(r),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::FaceKind;
    use rsym::families::{c2_cm, parse, tri};

    #[test]
    fn single_face_is_in_d() {
        let pres = tri(3, 7);
        let r = pres.signed_relators()[0].clone();
        let d = ColouredDiagram::from_gluing(&pres, &[(FaceKind::Green(0), r)], &[]).unwrap();
        assert_eq!(validate_diagram(&d, &pres), Ok(()));
    }

    #[test]
    fn mirror_pair_is_not_sigma_reduced() {
        let pres = tri(3, 7);
        let p = pres.pregroup();
        let r = pres.signed_relators()[0].clone();
        let inv = p.inverse_word(&r);
        let ri = pres.signed_relators().iter().position(|w| min_eq(w, &inv)).unwrap();
        // R = xyxy..., R^-1 = YxYx...; side 0 of R (x) against side 13 of R^-1 (x).
        let d = ColouredDiagram::from_gluing(
            &pres,
            &[(FaceKind::Green(0), r), (FaceKind::Green(ri), inv)],
            &[((0, 0), (1, 13))],
        )
        .unwrap();
        let v = violations(&d, &pres);
        assert!(v.iter().any(|r| matches!(r, Rejection::NotSigmaReduced { .. })), "{v:?}");
    }

    #[test]
    fn green_degree_one_is_rejected() {
        let pres = tri(3, 7);
        let r = pres.signed_relators()[0].clone();
        let yyy_inv = parse(pres.pregroup(), "YYY");
        let t = pres.vp().iter().position(|w| *w == yyy_inv).unwrap();
        // A triangle on the y edge of R leaves its far corner touching only the outside.
        let d = ColouredDiagram::from_gluing(
            &pres,
            &[(FaceKind::Green(0), r), (FaceKind::Red(t), yyy_inv)],
            &[((0, 1), (1, 0))],
        )
        .unwrap();
        let v = violations(&d, &pres);
        assert!(v.iter().any(|r| matches!(r, Rejection::NotGreenRich { degree: 1, .. })), "{v:?}");
        assert!(validate_diagram(&d, &pres).is_err());
    }

    #[test]
    fn semi_p_catches_equal_remainders() {
        // In C2 * C4 the faces (xy)^5 and its rotation glued on x with the rest equal in U(P)
        // only when mirrored; an unrelated gluing passes.
        let p = c2_cm(4);
        let a = parse(&p, "xy");
        let b = parse(&p, "Yx");
        assert!(cancels(&p, &a, &b));
        assert!(is_mirror(&p, &a, &b));
        let c = parse(&p, "xY");
        assert!(!cancels(&p, &a, &c));
    }

    fn min_eq(a: &[Elem], b: &[Elem]) -> bool {
        rsym::pregroup::min_rotation(a) == rsym::pregroup::min_rotation(b)
    }
}
