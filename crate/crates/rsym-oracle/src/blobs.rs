//! Red blobs: maximal edge-connected sets of red triangles.

use crate::diagram::{ColouredDiagram, FaceKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RedBlob {
    pub triangles: Vec<usize>,
    /// Boundary half-edges on the blob side, grouped into closed walks.
    pub walks: Vec<Vec<usize>>,
    pub simply_connected: bool,
    /// Boundary half-edges whose other side is the external face.
    pub contact: usize,
    /// True when some vertex of the blob has only blob corners.
    pub has_inner_vertex: bool,
}

impl RedBlob {
    /// `t`.
    pub fn area(&self) -> usize {
        self.triangles.len()
    }

    /// `l`, the number of boundary edges with multiplicity.
    pub fn boundary_len(&self) -> usize {
        self.walks.iter().map(Vec::len).sum()
    }

    pub fn boundary_half_edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.walks.iter().flatten().copied()
    }

    /// Boundary edges not on the diagram boundary.
    pub fn internal_boundary(&self) -> usize {
        self.boundary_len() - self.contact
    }
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            y = std::mem::replace(&mut self.0[y], r);
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

/// Partitions the red triangles into blobs, in order of their lowest face index.
pub fn find_red_blobs(d: &ColouredDiagram) -> Vec<RedBlob> {
    let nf = d.faces().len();
    let is_red = |f: usize| matches!(d.face_kind(f), FaceKind::Red(_));
    let mut comp = Dsu::new(nf);
    for (h, he) in d.half_edges().iter().enumerate() {
        let g = d.face_of(he.twin);
        if is_red(he.face) && is_red(g) && h < he.twin {
            comp.union(he.face, g);
        }
    }
    let mut blobs: Vec<(usize, Vec<usize>)> = Vec::new();
    for f in d.red_faces() {
        let root = comp.find(f);
        match blobs.iter_mut().find(|(r, _)| *r == root) {
            Some((_, ts)) => ts.push(f),
            None => blobs.push((root, vec![f])),
        }
    }
    blobs.into_iter().map(|(root, ts)| build_blob(d, &mut comp, root, ts)).collect()
}

fn build_blob(d: &ColouredDiagram, comp: &mut Dsu, root: usize, triangles: Vec<usize>) -> RedBlob {
    let in_blob = |comp: &mut Dsu, f: usize| matches!(d.face_kind(f), FaceKind::Red(_)) && comp.find(f) == root;
    let hes: Vec<usize> = triangles.iter().flat_map(|&f| d.face_cycle(f)).collect();
    let boundary: Vec<usize> =
        hes.iter().copied().filter(|&h| !in_blob(comp, d.face_of(d.twin(h)))).collect();
    let contact = boundary.iter().filter(|&&h| d.face_of(d.twin(h)) == d.external()).count();

    // Successor along the blob boundary: rotate through shared edges.
    let mut walks = Vec::new();
    let mut used = vec![false; d.half_edges().len()];
    for &start in &boundary {
        if used[start] {
            continue;
        }
        let mut walk = Vec::new();
        let mut h = start;
        while !used[h] {
            used[h] = true;
            walk.push(h);
            let mut g = d.next(h);
            while in_blob(comp, d.face_of(d.twin(g))) {
                g = d.next(d.twin(g));
            }
            h = g;
        }
        walks.push(walk);
    }

    // Euler characteristic of the triangles glued along shared edges only.
    let pos = |h: usize| hes.iter().position(|&g| g == h).expect("blob half-edge");
    let mut corners = Dsu::new(hes.len());
    for (i, &h) in hes.iter().enumerate() {
        let t = d.twin(h);
        if in_blob(comp, d.face_of(t)) {
            // tail(h) = head(t) = tail(next(t))
            corners.union(i, pos(d.next(t)));
        }
    }
    let verts = (0..hes.len()).filter(|&i| corners.find(i) == i).count() as i64;
    let t = triangles.len() as i64;
    let l = boundary.len() as i64;
    let euler = verts - (3 * t + l) / 2 + t;

    let has_inner_vertex = hes.iter().any(|&h| {
        d.corners(d.tail(h)).into_iter().all(|c| in_blob(comp, d.face_of(c)))
    });
    RedBlob { triangles, walks, simply_connected: euler == 1, contact, has_inner_vertex }
}
