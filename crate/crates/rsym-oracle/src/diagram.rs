//! Coloured van Kampen diagrams stored as combinatorial maps on half-edges.

use std::fmt::Write as _;

use rsym::pregroup::min_rotation;
use rsym::{Elem, Presentation, Word};
use thiserror::Error;

/// What labels a face. Green and red indices point into `signed_relators()` and `vp()`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FaceKind {
    External,
    Green(usize),
    Red(usize),
}

impl FaceKind {
    pub fn is_green(self) -> bool {
        !matches!(self, FaceKind::Red(_))
    }

    pub fn is_internal(self) -> bool {
        self != FaceKind::External
    }

    pub fn is_internal_green(self) -> bool {
        matches!(self, FaceKind::Green(_))
    }
}

/// One side of an edge, oriented by its face. `next` is the following half-edge of the
/// same face; `twin` is the other side of the edge, running the opposite way.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HalfEdge {
    pub label: Elem,
    pub twin: usize,
    pub next: usize,
    pub face: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructuralError {
    #[error("diagram has no half-edges")]
    Empty,
    #[error("half-edge {0}: twin is not an involution without fixed points")]
    Twin(usize),
    #[error("half-edge {0}: twin label is not the inverse")]
    TwinLabel(usize),
    #[error("next is not a permutation")]
    Next,
    #[error("half-edge {0}: face disagrees with its face cycle")]
    FaceCycle(usize),
    #[error("face {0} has no half-edges")]
    EmptyFace(usize),
    #[error("expected exactly one external face, found {0}")]
    ExternalCount(usize),
    #[error("face {0}: label is not a rotation of its relator")]
    FaceLabel(usize),
    #[error("face {0}: unknown relator index")]
    UnknownRelator(usize),
    #[error("diagram is not connected")]
    Disconnected,
    #[error("Euler characteristic {0}, expected 2 for a planar map")]
    NotPlanar(i64),
    #[error("gluing refers to missing side ({0}, {1})")]
    BadSide(usize, usize),
    #[error("side ({0}, {1}) glued twice")]
    GluedTwice(usize, usize),
    #[error("no boundary: the gluing closes up")]
    Closed,
    #[error("dump line {0}: {1}")]
    Dump(usize, String),
}

/// A finite, connected, planar coloured diagram with a single external face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColouredDiagram {
    half_edges: Vec<HalfEdge>,
    faces: Vec<FaceKind>,
    external: usize,
    face_start: Vec<usize>,
    tail: Vec<usize>,
    vertices: usize,
}

/// A side of an internal face in a gluing: `(face, position)`.
pub type Side = (usize, usize);

impl ColouredDiagram {
    /// Validates the map and derives its vertices.
    pub fn from_raw(
        pres: &Presentation,
        half_edges: Vec<HalfEdge>,
        faces: Vec<FaceKind>,
    ) -> Result<Self, StructuralError> {
        let n = half_edges.len();
        if n == 0 {
            return Err(StructuralError::Empty);
        }
        let p = pres.pregroup();
        for (i, h) in half_edges.iter().enumerate() {
            if h.twin >= n || h.twin == i || half_edges[h.twin].twin != i {
                return Err(StructuralError::Twin(i));
            }
            if half_edges[h.twin].label != p.sigma(h.label) {
                return Err(StructuralError::TwinLabel(i));
            }
            if h.face >= faces.len() {
                return Err(StructuralError::FaceCycle(i));
            }
        }
        let mut seen = vec![false; n];
        for h in &half_edges {
            if h.next >= n || std::mem::replace(&mut seen[h.next], true) {
                return Err(StructuralError::Next);
            }
        }
        let mut face_start = vec![usize::MAX; faces.len()];
        let mut visited = vec![false; n];
        for start in 0..n {
            if visited[start] {
                continue;
            }
            let f = half_edges[start].face;
            if face_start[f] != usize::MAX {
                return Err(StructuralError::FaceCycle(start));
            }
            face_start[f] = start;
            let mut h = start;
            loop {
                visited[h] = true;
                if half_edges[h].face != f {
                    return Err(StructuralError::FaceCycle(h));
                }
                h = half_edges[h].next;
                if h == start {
                    break;
                }
            }
        }
        if let Some(f) = face_start.iter().position(|&s| s == usize::MAX) {
            return Err(StructuralError::EmptyFace(f));
        }
        let externals: Vec<usize> =
            (0..faces.len()).filter(|&f| faces[f] == FaceKind::External).collect();
        if externals.len() != 1 {
            return Err(StructuralError::ExternalCount(externals.len()));
        }
        let mut tail = vec![usize::MAX; n];
        let mut vertices = 0;
        for start in 0..n {
            if tail[start] != usize::MAX {
                continue;
            }
            let mut h = start;
            loop {
                tail[h] = vertices;
                h = half_edges[half_edges[h].twin].next;
                if h == start {
                    break;
                }
            }
            vertices += 1;
        }
        let d = ColouredDiagram { half_edges, faces, external: externals[0], face_start, tail, vertices };
        for f in 0..d.faces.len() {
            let word = d.face_word(f);
            let expected = match d.faces[f] {
                FaceKind::External => continue,
                FaceKind::Green(i) => pres.signed_relators().get(i),
                FaceKind::Red(i) => pres.vp().get(i),
            };
            let expected = expected.ok_or(StructuralError::UnknownRelator(f))?;
            if word.len() != expected.len() || min_rotation(&word) != min_rotation(expected) {
                return Err(StructuralError::FaceLabel(f));
            }
        }
        if !d.is_connected() {
            return Err(StructuralError::Disconnected);
        }
        let euler = d.vertices as i64 - d.edge_count() as i64 + d.faces.len() as i64;
        if euler != 2 {
            return Err(StructuralError::NotPlanar(euler));
        }
        Ok(d)
    }

    /// Builds a diagram from labelled internal faces and a list of glued side pairs; the
    /// unglued sides become the boundary. Sides are glued so that the second runs against
    /// the first.
    pub fn from_gluing(
        pres: &Presentation,
        faces: &[(FaceKind, Word)],
        glue: &[(Side, Side)],
    ) -> Result<Self, StructuralError> {
        let mut offset = Vec::with_capacity(faces.len());
        let mut hes = Vec::new();
        for (f, (_, w)) in faces.iter().enumerate() {
            offset.push(hes.len());
            let base = hes.len();
            for (i, &label) in w.iter().enumerate() {
                hes.push(HalfEdge { label, twin: usize::MAX, next: base + (i + 1) % w.len(), face: f });
            }
        }
        let side = |(f, i): Side| -> Result<usize, StructuralError> {
            match faces.get(f) {
                Some((_, w)) if i < w.len() => Ok(offset[f] + i),
                _ => Err(StructuralError::BadSide(f, i)),
            }
        };
        for &(a, b) in glue {
            let (x, y) = (side(a)?, side(b)?);
            for (h, s) in [(x, a), (y, b)] {
                if hes[h].twin != usize::MAX {
                    return Err(StructuralError::GluedTwice(s.0, s.1));
                }
            }
            if x == y {
                return Err(StructuralError::GluedTwice(a.0, a.1));
            }
            hes[x].twin = y;
            hes[y].twin = x;
        }
        let internal = hes.len();
        let open: Vec<usize> = (0..internal).filter(|&h| hes[h].twin == usize::MAX).collect();
        if open.is_empty() {
            return Err(StructuralError::Closed);
        }
        let ext_face = faces.len();
        let mut prev = vec![0; internal];
        for h in 0..internal {
            prev[hes[h].next] = h;
        }
        let p = pres.pregroup();
        for (k, &b) in open.iter().enumerate() {
            let e = internal + k;
            hes.push(HalfEdge { label: p.sigma(hes[b].label), twin: b, next: usize::MAX, face: ext_face });
            hes[b].twin = e;
        }
        for &b in &open {
            // The external half-edge after twin(b) is the twin of the open side ending where b starts.
            let mut c = prev[b];
            while hes[c].twin < internal {
                c = prev[hes[c].twin];
            }
            let e = hes[b].twin;
            hes[e].next = hes[c].twin;
        }
        let mut kinds: Vec<FaceKind> = faces.iter().map(|(k, _)| *k).collect();
        kinds.push(FaceKind::External);
        // Several boundary cycles show up as several external faces.
        let mut seen = vec![false; hes.len()];
        let mut cycles = 0;
        for e in internal..hes.len() {
            if !seen[e] {
                cycles += 1;
                let mut h = e;
                while !seen[h] {
                    seen[h] = true;
                    h = hes[h].next;
                }
            }
        }
        if cycles != 1 {
            return Err(StructuralError::ExternalCount(cycles));
        }
        ColouredDiagram::from_raw(pres, hes, kinds)
    }

    pub fn half_edges(&self) -> &[HalfEdge] {
        &self.half_edges
    }

    pub fn half_edge(&self, h: usize) -> &HalfEdge {
        &self.half_edges[h]
    }

    pub fn faces(&self) -> &[FaceKind] {
        &self.faces
    }

    pub fn face_kind(&self, f: usize) -> FaceKind {
        self.faces[f]
    }

    pub fn external(&self) -> usize {
        self.external
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.half_edges.len() / 2
    }

    /// Vertex where `h` starts.
    pub fn tail(&self, h: usize) -> usize {
        self.tail[h]
    }

    /// Vertex where `h` ends.
    pub fn head(&self, h: usize) -> usize {
        self.tail[self.half_edges[h].next]
    }

    pub fn twin(&self, h: usize) -> usize {
        self.half_edges[h].twin
    }

    pub fn next(&self, h: usize) -> usize {
        self.half_edges[h].next
    }

    pub fn face_of(&self, h: usize) -> usize {
        self.half_edges[h].face
    }

    pub fn kind_of(&self, h: usize) -> FaceKind {
        self.faces[self.half_edges[h].face]
    }

    pub fn prev(&self, h: usize) -> usize {
        let mut p = h;
        while self.half_edges[p].next != h {
            p = self.half_edges[p].next;
        }
        p
    }

    /// Half-edges of face `f` in boundary order.
    pub fn face_cycle(&self, f: usize) -> Vec<usize> {
        let start = self.face_start[f];
        let mut out = vec![start];
        let mut h = self.half_edges[start].next;
        while h != start {
            out.push(h);
            h = self.half_edges[h].next;
        }
        out
    }

    pub fn face_word(&self, f: usize) -> Word {
        self.face_cycle(f).into_iter().map(|h| self.half_edges[h].label).collect()
    }

    /// Half-edges leaving vertex `v`, each standing for the corner of its face at `v`, in
    /// rotation order: the corner after `h` lies across the edge of `h`.
    pub fn corners(&self, v: usize) -> Vec<usize> {
        let start = match self.tail.iter().position(|&t| t == v) {
            Some(s) => s,
            None => return Vec::new(),
        };
        let mut out = vec![start];
        let mut h = self.next(self.twin(start));
        while h != start {
            out.push(h);
            h = self.next(self.twin(h));
        }
        out
    }

    /// The boundary word read around the diagram, the inverse of the external face label.
    pub fn boundary_word(&self, pres: &Presentation) -> Word {
        pres.pregroup().inverse_word(&self.face_word(self.external))
    }

    pub fn boundary_length(&self) -> usize {
        self.face_cycle(self.external).len()
    }

    pub fn area(&self) -> usize {
        self.faces.len() - 1
    }

    pub fn internal_faces(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.faces.len()).filter(|&f| self.faces[f].is_internal())
    }

    pub fn red_faces(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.faces.len()).filter(|&f| matches!(self.faces[f], FaceKind::Red(_)))
    }

    pub fn green_faces(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.faces.len()).filter(|&f| self.faces[f].is_internal_green())
    }

    /// `δ_G(v)`: green corners at `v`, the external face included, with multiplicity.
    pub fn green_degree(&self, v: usize) -> usize {
        self.corners(v).into_iter().filter(|&h| self.kind_of(h).is_green()).count()
    }

    /// Number of corners of the external face at `v`.
    pub fn external_incidence(&self, v: usize) -> usize {
        self.corners(v).into_iter().filter(|&h| self.face_of(h) == self.external).count()
    }

    pub fn is_boundary_edge(&self, h: usize) -> bool {
        self.face_of(h) == self.external || self.face_of(self.twin(h)) == self.external
    }

    /// An internal face with at least one edge on the boundary.
    pub fn is_boundary_face(&self, f: usize) -> bool {
        self.faces[f].is_internal()
            && self.face_cycle(f).into_iter().any(|h| self.face_of(self.twin(h)) == self.external)
    }

    fn is_connected(&self) -> bool {
        let n = self.half_edges.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(h) = stack.pop() {
            for g in [self.half_edges[h].next, self.half_edges[h].twin] {
                if !seen[g] {
                    seen[g] = true;
                    count += 1;
                    stack.push(g);
                }
            }
        }
        count == n
    }

    /// Text table, one half-edge per line: `id label twin next face kind`.
    pub fn dump(&self, pres: &Presentation) -> String {
        let mut s = String::new();
        for (i, h) in self.half_edges.iter().enumerate() {
            let kind = match self.faces[h.face] {
                FaceKind::External => "E".to_string(),
                FaceKind::Green(r) => format!("G{r}"),
                FaceKind::Red(r) => format!("R{r}"),
            };
            let name = pres.pregroup().name(h.label);
            let _ = writeln!(s, "{i} {name} {} {} {} {kind}", h.twin, h.next, h.face);
        }
        s
    }

    /// Reads the format written by [`ColouredDiagram::dump`].
    pub fn parse_dump(pres: &Presentation, text: &str) -> Result<Self, StructuralError> {
        let mut hes = Vec::new();
        let mut kinds: Vec<Option<FaceKind>> = Vec::new();
        for (ln, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let bad = |m: &str| StructuralError::Dump(ln + 1, m.to_string());
            let cols: Vec<&str> = line.split_whitespace().collect();
            if cols.len() != 6 {
                return Err(bad("expected six columns"));
            }
            let num = |s: &str| s.parse::<usize>().map_err(|_| bad("bad number"));
            if num(cols[0])? != hes.len() {
                return Err(bad("ids must be consecutive from 0"));
            }
            let label = pres.pregroup().lookup(cols[1]).ok_or_else(|| bad("unknown letter"))?;
            let (twin, next, face) = (num(cols[2])?, num(cols[3])?, num(cols[4])?);
            let kind = match cols[5].split_at(1) {
                ("E", "") => FaceKind::External,
                ("G", r) => FaceKind::Green(num(r)?),
                ("R", r) => FaceKind::Red(num(r)?),
                _ => return Err(bad("bad face kind")),
            };
            if kinds.len() <= face {
                kinds.resize(face + 1, None);
            }
            match kinds[face] {
                Some(k) if k != kind => return Err(bad("face kind disagrees")),
                _ => kinds[face] = Some(kind),
            }
            hes.push(HalfEdge { label, twin, next, face });
        }
        let kinds = kinds
            .into_iter()
            .enumerate()
            .map(|(f, k)| k.ok_or(StructuralError::EmptyFace(f)))
            .collect::<Result<Vec<_>, _>>()?;
        ColouredDiagram::from_raw(pres, hes, kinds)
    }

    /// Isomorphism-invariant code: breadth-first numbering from each external half-edge,
    /// minimised over the roots.
    pub fn canonical_code(&self) -> Vec<u32> {
        self.face_cycle(self.external)
            .into_iter()
            .map(|r| self.code_from(r))
            .min()
            .expect("external face is nonempty")
    }

    pub(crate) fn code_from(&self, root: usize) -> Vec<u32> {
        let n = self.half_edges.len();
        let mut num = vec![u32::MAX; n];
        let mut order = Vec::with_capacity(n);
        num[root] = 0;
        order.push(root);
        let mut i = 0;
        while i < order.len() {
            let h = order[i];
            for g in [self.half_edges[h].next, self.half_edges[h].twin] {
                if num[g] == u32::MAX {
                    num[g] = order.len() as u32;
                    order.push(g);
                }
            }
            i += 1;
        }
        let mut code = Vec::with_capacity(4 * n);
        for &h in &order {
            let he = &self.half_edges[h];
            let kind = match self.faces[he.face] {
                FaceKind::External => 0,
                FaceKind::Green(r) => 1 + 2 * r as u32,
                FaceKind::Red(r) => 2 + 2 * r as u32,
            };
            code.extend([num[he.next], num[he.twin], he.label as u32, kind]);
        }
        code
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rsym::families::{parse, tri};

    #[test]
    fn single_face() {
        let pres = tri(3, 7);
        let r = pres.signed_relators()[0].clone();
        let d = ColouredDiagram::from_gluing(&pres, &[(FaceKind::Green(0), r.clone())], &[]).unwrap();
        assert_eq!(d.vertex_count(), 14);
        assert_eq!(d.edge_count(), 14);
        assert_eq!(min_rotation(&d.boundary_word(&pres)), min_rotation(&r));
        assert!((0..14).all(|v| d.green_degree(v) == 2 && d.external_incidence(v) == 1));
        assert!(d.is_boundary_face(0));
    }

    #[test]
    fn dump_round_trip() {
        let pres = tri(3, 7);
        let r = pres.signed_relators()[0].clone();
        let d = ColouredDiagram::from_gluing(
            &pres,
            &[(FaceKind::Green(0), r.clone()), (FaceKind::Green(0), r)],
            &[((0, 0), (1, 0))],
        )
        .unwrap();
        let text = d.dump(&pres);
        assert_eq!(ColouredDiagram::parse_dump(&pres, &text).unwrap(), d);
        assert_eq!(text.lines().count(), 2 * d.edge_count());
    }

    #[test]
    fn structural_errors() {
        let pres = tri(3, 7);
        let p = pres.pregroup();
        let r = pres.signed_relators()[0].clone();
        // x against y is not an inverse pair
        let err = ColouredDiagram::from_gluing(
            &pres,
            &[(FaceKind::Green(0), r.clone()), (FaceKind::Green(0), r.clone())],
            &[((0, 0), (1, 1))],
        );
        assert_eq!(err.unwrap_err(), StructuralError::TwinLabel(0));
        let bad_label = parse(p, "(xY)^7");
        let err = ColouredDiagram::from_gluing(&pres, &[(FaceKind::Green(0), bad_label)], &[]);
        assert_eq!(err.unwrap_err(), StructuralError::FaceLabel(0));
        // Two faces glued along two non-adjacent x edges enclose a second boundary cycle.
        let err = ColouredDiagram::from_gluing(
            &pres,
            &[(FaceKind::Green(0), r.clone()), (FaceKind::Green(0), r)],
            &[((0, 0), (1, 0)), ((0, 6), (1, 6))],
        );
        assert_eq!(err.unwrap_err(), StructuralError::ExternalCount(2));
    }

    #[test]
    fn canonical_code_ignores_numbering() {
        let pres = tri(3, 7);
        let r = pres.signed_relators()[0].clone();
        let faces = [(FaceKind::Green(0), r.clone()), (FaceKind::Green(0), r)];
        let a = ColouredDiagram::from_gluing(&pres, &faces, &[((0, 0), (1, 2))]).unwrap();
        let b = ColouredDiagram::from_gluing(&pres, &faces, &[((1, 4), (0, 8))]).unwrap();
        let c = ColouredDiagram::from_gluing(&pres, &faces, &[((0, 0), (1, 0))]).unwrap();
        assert_eq!(a.canonical_code(), b.canonical_code());
        assert_eq!(a.canonical_code(), c.canonical_code());
    }
}
