//! Exhaustive enumeration of small diagrams in `𝒟`, up to isomorphism.
//!
//! Discs (faces joined through shared edges) are grown first by filling holes around a
//! root face. Whole diagrams are then assembled by walking the external face and hanging
//! further discs and bridge edges in its corners, so that cut vertices and bridges are
//! covered as well.

use std::collections::BTreeMap;

use rsym::presentation::power_decomposition;
use rsym::exec::{self, Schedule};
use rsym::{Elem, Pregroup, Presentation, Word};
use thiserror::Error;

use crate::diagram::{ColouredDiagram, FaceKind, HalfEdge};
use crate::validate::{cancels, is_mirror, validate_diagram};

/// Largest budgets accepted by [`enumerate_diagrams`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ceiling {
    pub faces: usize,
    pub boundary: usize,
}

impl Default for Ceiling {
    fn default() -> Self {
        Ceiling { faces: 4, boundary: 40 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("budget of {faces} faces and boundary {boundary} exceeds the ceiling of {max_faces} and {max_boundary}")]
    TooLarge { faces: usize, boundary: usize, max_faces: usize, max_boundary: usize },
}

/// All diagrams in `𝒟` with between 1 and `max_faces` internal faces and boundary length at
/// most `max_boundary`, one per isomorphism class, ordered by area, boundary length and
/// canonical code.
pub fn enumerate_diagrams(
    pres: &Presentation,
    max_faces: usize,
    max_boundary: usize,
) -> Result<Vec<ColouredDiagram>, EnumerateError> {
    enumerate_with_ceiling(pres, max_faces, max_boundary, Ceiling::default(), Schedule::default())
}

/// [`enumerate_diagrams`] with explicit limits, searching from each root disc under `schedule`.
/// The result does not depend on the schedule.
pub fn enumerate_with_ceiling(
    pres: &Presentation,
    max_faces: usize,
    max_boundary: usize,
    ceiling: Ceiling,
    schedule: Schedule,
) -> Result<Vec<ColouredDiagram>, EnumerateError> {
    if max_faces > ceiling.faces || max_boundary > ceiling.boundary {
        return Err(EnumerateError::TooLarge {
            faces: max_faces,
            boundary: max_boundary,
            max_faces: ceiling.faces,
            max_boundary: ceiling.boundary,
        });
    }
    if max_faces == 0 || max_boundary == 0 {
        return Ok(Vec::new());
    }
    let discs = enumerate_discs(pres, max_faces, max_boundary);
    let roots: Vec<usize> = (0..discs.len()).collect();
    let parts = exec::map(schedule, &roots, |&root| {
        let mut asm = Assembler::new(pres, &discs, max_faces, max_boundary);
        asm.run(root);
        asm.found
    });
    let mut found = BTreeMap::new();
    for part in parts {
        for (code, d) in part {
            found.entry(code).or_insert(d);
        }
    }
    let mut out: Vec<(usize, usize, Vec<u32>, ColouredDiagram)> = found
        .into_iter()
        .map(|(code, d)| (d.area(), d.boundary_length(), code, d))
        .collect();
    out.sort_by(|a, b| (a.0, a.1, &a.2).cmp(&(b.0, b.1, &b.2)));
    Ok(out.into_iter().map(|t| t.3).collect())
}

#[derive(Debug, Clone)]
struct Tile {
    kind: FaceKind,
    word: Word,
    period: usize,
}

fn tiles(pres: &Presentation) -> Vec<Tile> {
    let green = pres.signed_relators().iter().enumerate().map(|(i, w)| Tile {
        kind: FaceKind::Green(i),
        word: w.clone(),
        period: power_decomposition(w).0.len(),
    });
    let red = pres.vp().iter().enumerate().map(|(i, w)| Tile {
        kind: FaceKind::Red(i),
        word: w.clone(),
        period: power_decomposition(w).0.len(),
    });
    green.chain(red).collect()
}

/// A disc: internal faces joined along shared edges, with a single boundary cycle.
#[derive(Debug, Clone)]
pub struct Disc {
    pub diagram: ColouredDiagram,
    /// External half-edges in face order.
    pub rim: Vec<usize>,
    /// Internal green corners at the start vertex of each rim half-edge.
    pub inner_green: Vec<usize>,
    /// Smallest rotation of the rim that is an automorphism of the disc.
    pub shift: usize,
}

const OPEN: usize = usize::MAX;

#[derive(Clone)]
struct Partial {
    label: Vec<Elem>,
    next: Vec<usize>,
    face: Vec<usize>,
    twin: Vec<usize>,
    kinds: Vec<FaceKind>,
    inner: Vec<Vec<usize>>,
    /// Unmarked sides first, then the sides already chosen as boundary.
    outer: Vec<usize>,
    marked: usize,
}

impl Partial {
    fn root(tile: &Tile) -> Self {
        let m = tile.word.len();
        Partial {
            label: tile.word.clone(),
            next: (0..m).map(|i| (i + 1) % m).collect(),
            face: vec![0; m],
            twin: vec![OPEN; m],
            kinds: vec![tile.kind],
            inner: Vec::new(),
            outer: (0..m).collect(),
            marked: 0,
        }
    }

    /// Appends a copy of `tile` and returns the index of its side `p`.
    fn add_face(&mut self, tile: &Tile, p: usize) -> usize {
        let base = self.label.len();
        let m = tile.word.len();
        let f = self.kinds.len();
        self.kinds.push(tile.kind);
        for i in 0..m {
            self.label.push(tile.word[i]);
            self.next.push(base + (i + 1) % m);
            self.face.push(f);
            self.twin.push(OPEN);
        }
        base + p
    }

    fn word_from(&self, h: usize) -> Word {
        let mut out = vec![self.label[h]];
        let mut g = self.next[h];
        while g != h {
            out.push(self.label[g]);
            g = self.next[g];
        }
        out
    }

    /// Green corners around the vertex where `h` starts, or `None` while some edge there
    /// is still unglued.
    fn closed_green_degree(&self, h: usize) -> Option<usize> {
        let mut g = h;
        let mut count = 0;
        loop {
            if self.kinds[self.face[g]].is_green() {
                count += 1;
            }
            let t = self.twin[g];
            if t == OPEN {
                return None;
            }
            g = self.next[t];
            if g == h {
                return Some(count);
            }
        }
    }

    /// Glues `s` and `t` if their labels match and the faces on either side are reduced.
    fn glue(&mut self, p: &Pregroup, s: usize, t: usize) -> bool {
        if self.label[t] != p.sigma(self.label[s]) {
            return false;
        }
        let (fs, ft) = (self.face[s], self.face[t]);
        let f_end = self.word_from(self.next[s]);
        let g_start = self.word_from(t);
        if is_mirror(p, &f_end, &g_start) {
            return false;
        }
        if fs != ft
            && self.kinds[fs].is_internal_green()
            && self.kinds[ft].is_internal_green()
            && cancels(p, &f_end, &g_start)
        {
            return false;
        }
        self.twin[s] = t;
        self.twin[t] = s;
        for h in [s, self.next[s]] {
            if matches!(self.closed_green_degree(h), Some(d) if d < 2) {
                return false;
            }
        }
        true
    }
}

struct DiscSearch<'a> {
    p: &'a Pregroup,
    pres: &'a Presentation,
    tiles: &'a [Tile],
    max_faces: usize,
    max_boundary: usize,
    found: BTreeMap<Vec<u32>, ColouredDiagram>,
}

/// Labels of the open sides pair up exactly.
fn balanced(p: &Pregroup, hole: &[usize], label: &[Elem]) -> bool {
    if hole.len() % 2 == 1 {
        return false;
    }
    let mut count = vec![0i32; p.len()];
    for &h in hole {
        let a = label[h];
        let b = p.sigma(a);
        if a <= b {
            count[a as usize] += 1;
        } else {
            count[b as usize] -= 1;
        }
    }
    (0..p.len()).all(|a| {
        if p.sigma(a as Elem) == a as Elem {
            count[a] % 2 == 0
        } else {
            count[a] == 0
        }
    })
}

impl DiscSearch<'_> {
    fn step(&mut self, mut st: Partial) {
        while matches!(st.inner.last(), Some(h) if h.is_empty()) {
            st.inner.pop();
        }
        let faces_left = self.max_faces - st.kinds.len();
        if faces_left == 0 && st.inner.iter().any(|h| !balanced(self.p, h, &st.label)) {
            return;
        }
        let in_outer = st.inner.is_empty();
        let hole: &[usize] = if in_outer { &st.outer } else { st.inner.last().unwrap() };
        if in_outer && st.outer.len() == st.marked {
            if st.marked > 0 {
                self.record(&st);
            }
            return;
        }
        let s = hole[0];
        let open = if in_outer { hole.len() - st.marked } else { hole.len() };

        if in_outer && st.marked < self.max_boundary {
            let mut next = st.clone();
            next.outer.rotate_left(1);
            next.marked += 1;
            self.step(next);
        }

        if faces_left > 0 {
            let want = self.p.sigma(st.label[s]);
            for tile in self.tiles {
                for q in 0..tile.period {
                    if tile.word[q] != want {
                        continue;
                    }
                    let mut next = st.clone();
                    let t = next.add_face(tile, q);
                    if !next.glue(self.p, s, t) {
                        continue;
                    }
                    let m = tile.word.len();
                    let base = t - q;
                    let sides: Vec<usize> = (1..m).map(|k| base + (q + k) % m).collect();
                    let hole = if in_outer { &mut next.outer } else { next.inner.last_mut().unwrap() };
                    hole.splice(0..1, sides);
                    self.step(next);
                }
            }
        }

        for j in 1..open {
            let t = hole[j];
            if st.label[t] != self.p.sigma(st.label[s]) {
                continue;
            }
            let mut next = st.clone();
            if !next.glue(self.p, s, t) {
                continue;
            }
            if in_outer {
                let h1: Vec<usize> = next.outer[1..j].to_vec();
                let h2: Vec<usize> = next.outer[j + 1..].to_vec();
                if st.marked > 0 {
                    next.outer = h2;
                    next.inner.push(h1);
                    self.step(next);
                } else {
                    let mut alt = next.clone();
                    next.outer = h2.clone();
                    next.inner.push(h1.clone());
                    self.step(next);
                    alt.outer = h1;
                    alt.inner.push(h2);
                    self.step(alt);
                }
            } else {
                let top = next.inner.pop().unwrap();
                next.inner.push(top[j + 1..].to_vec());
                next.inner.push(top[1..j].to_vec());
                self.step(next);
            }
        }
    }

    fn record(&mut self, st: &Partial) {
        let n = st.label.len();
        let ext = st.kinds.len();
        let mut hes: Vec<HalfEdge> = (0..n)
            .map(|h| HalfEdge { label: st.label[h], twin: st.twin[h], next: st.next[h], face: st.face[h] })
            .collect();
        let rim = &st.outer;
        let l = rim.len();
        for (i, &b) in rim.iter().enumerate() {
            hes[b].twin = n + i;
            hes.push(HalfEdge {
                label: self.p.sigma(st.label[b]),
                twin: b,
                next: n + (i + l - 1) % l,
                face: ext,
            });
        }
        let mut kinds = st.kinds.clone();
        kinds.push(FaceKind::External);
        let d = ColouredDiagram::from_raw(self.pres, hes, kinds).expect("hole filling yields a planar disc");
        self.found.entry(d.canonical_code()).or_insert(d);
    }
}

/// Discs with at most `max_faces` faces and at most `max_boundary` boundary edges whose
/// shared edges are reduced and whose interior vertices are green-rich.
pub fn enumerate_discs(pres: &Presentation, max_faces: usize, max_boundary: usize) -> Vec<Disc> {
    let tiles = tiles(pres);
    let mut search = DiscSearch {
        p: pres.pregroup(),
        pres,
        tiles: &tiles,
        max_faces,
        max_boundary,
        found: BTreeMap::new(),
    };
    if max_faces > 0 {
        for tile in &tiles {
            search.step(Partial::root(tile));
        }
    }
    search
        .found
        .into_values()
        .map(|d| {
            let rim = d.face_cycle(d.external());
            let inner_green = rim
                .iter()
                .map(|&e| {
                    let v = d.tail(e);
                    d.corners(v).into_iter().filter(|&h| d.kind_of(h).is_internal_green()).count()
                })
                .collect();
            let root = d.code_from(rim[0]);
            let shift = (1..rim.len()).find(|&k| d.code_from(rim[k]) == root).unwrap_or(rim.len());
            Disc { diagram: d, rim, inner_green, shift }
        })
        .collect()
}

#[derive(Debug, Clone, Copy)]
enum Step {
    Rim { inst: usize, i: usize },
    Out { label: Elem },
    Back { label: Elem },
}

#[derive(Debug, Clone, Copy)]
enum Frame {
    Root { items: usize },
    Rim { inst: usize, next: usize, left: usize, items: usize },
    /// `hung` counts discs hung anywhere before this bridge opened.
    Bridge { label: Elem, items: usize, hung: usize },
}

impl Frame {
    fn add_item(&mut self) {
        match self {
            Frame::Root { items } | Frame::Rim { items, .. } | Frame::Bridge { items, .. } => *items += 1,
        }
    }
}

struct Assembler<'a> {
    p: &'a Pregroup,
    pres: &'a Presentation,
    discs: &'a [Disc],
    max_faces: usize,
    max_boundary: usize,
    found: BTreeMap<Vec<u32>, ColouredDiagram>,
    steps: Vec<Step>,
    frames: Vec<Frame>,
    instances: Vec<usize>,
    faces: usize,
    pending: usize,
    hung: usize,
    min_rim: usize,
    root: usize,
    /// Per disc, running counts of rim vertices without internal green corners, over two
    /// turns of the rim.
    bare: Vec<Vec<usize>>,
}

impl<'a> Assembler<'a> {
    fn new(
        pres: &'a Presentation,
        discs: &'a [Disc],
        max_faces: usize,
        max_boundary: usize,
    ) -> Self {
        Assembler {
            p: pres.pregroup(),
            pres,
            discs,
            max_faces,
            max_boundary,
            found: BTreeMap::new(),
            steps: Vec::new(),
            frames: Vec::new(),
            instances: Vec::new(),
            faces: 0,
            pending: 0,
            hung: 0,
            min_rim: discs.iter().map(|d| d.rim.len()).min().unwrap_or(0),
            root: 0,
            bare: discs
                .iter()
                .map(|d| {
                    let l = d.rim.len();
                    let mut acc = vec![0];
                    for k in 0..2 * l {
                        acc.push(acc[k] + usize::from(d.inner_green[k % l] == 0));
                    }
                    acc
                })
                .collect(),
        }
    }

    /// Diagrams whose highest-index disc is `d`, walked from its first rim edge.
    fn run(&mut self, d: usize) {
        let disc = &self.discs[d];
        let l = disc.rim.len();
        self.faces = disc.diagram.area();
        self.root = d;
        self.instances = vec![d];
        self.frames = vec![Frame::Root { items: 0 }];
        self.steps.clear();
        self.pending = l - 1;
        self.steps.push(Step::Rim { inst: 0, i: 0 });
        if l > 1 {
            self.frames.push(Frame::Rim { inst: 0, next: 1, left: l - 1, items: 0 });
        }
        self.corner();
    }

    fn step_label(&self, s: Step) -> Elem {
        match s {
            Step::Rim { inst, i } => {
                let disc = &self.discs[self.instances[inst]];
                disc.diagram.half_edge(disc.rim[i]).label
            }
            Step::Out { label } => label,
            Step::Back { label } => self.p.sigma(label),
        }
    }

    /// Pushes a step unless it makes the boundary reducible at the new corner.
    fn emit(&mut self, s: Step) -> bool {
        let cur = self.step_label(s);
        if let Some(&prev) = self.steps.last() {
            if self.p.defined(self.step_label(prev), cur) {
                return false;
            }
        }
        self.steps.push(s);
        true
    }

    /// Some open bridge still has no disc beyond it.
    fn bare_bridge(&self) -> bool {
        self.frames.iter().any(|f| matches!(f, Frame::Bridge { hung, .. } if *hung == self.hung))
    }

    /// Corners still to come that must each receive a disc of their own.
    fn owed(&self) -> usize {
        let mut owed = usize::from(self.bare_bridge());
        let top = self.frames.len() - 1;
        for (j, f) in self.frames.iter().enumerate() {
            if let Frame::Rim { inst, next, left, items } = *f {
                let acc = &self.bare[self.instances[inst]];
                let from = if j == top && items == 0 { next } else { next + 1 };
                owed += acc[next + left] - acc[from.min(next + left)];
            }
        }
        owed
    }

    fn corner(&mut self) {
        let used = self.steps.len() + self.pending;
        let owed = self.owed();
        if self.faces + owed > self.max_faces || used + owed * self.min_rim > self.max_boundary {
            return;
        }
        // Hang a bridge, leaving room for a disc beyond it.
        if used + 2 + self.min_rim <= self.max_boundary && self.faces < self.max_faces {
            for label in self.p.letters() {
                let saved = self.frames.clone();
                if self.emit(Step::Out { label }) {
                    self.frames.last_mut().unwrap().add_item();
                    self.frames.push(Frame::Bridge { label, items: 0, hung: self.hung });
                    self.pending += 1;
                    self.corner();
                    self.pending -= 1;
                    self.steps.pop();
                }
                self.frames = saved;
            }
        }
        // Hang a disc by one of its rim vertices. The root disc has the largest index.
        for d in 0..=self.root {
            let disc = &self.discs[d];
            let l = disc.rim.len();
            if self.faces + disc.diagram.area() > self.max_faces || used + l > self.max_boundary {
                continue;
            }
            for r in 0..disc.shift {
                let saved = self.frames.clone();
                let inst = self.instances.len();
                self.instances.push(d);
                if self.emit(Step::Rim { inst, i: r }) {
                    self.frames.last_mut().unwrap().add_item();
                    self.faces += disc.diagram.area();
                    self.hung += 1;
                    if l > 1 {
                        self.frames.push(Frame::Rim { inst, next: (r + 1) % l, left: l - 1, items: 0 });
                        self.pending += l - 1;
                    }
                    self.corner();
                    if l > 1 {
                        self.pending -= l - 1;
                    }
                    self.faces -= disc.diagram.area();
                    self.hung -= 1;
                    self.steps.pop();
                }
                self.instances.pop();
                self.frames = saved;
            }
        }
        // Leave the corner.
        let saved = self.frames.clone();
        let saved_len = self.steps.len();
        match *self.frames.last().unwrap() {
            Frame::Root { .. } => self.finish(),
            Frame::Bridge { label, items, .. } => {
                if items > 0 && !self.bare_bridge() && self.emit(Step::Back { label }) {
                    self.frames.pop();
                    self.pending -= 1;
                    self.corner();
                    self.pending += 1;
                }
            }
            Frame::Rim { inst, next, left, items } => {
                let disc = &self.discs[self.instances[inst]];
                // A rim vertex with no green corner of its own needs something hung there.
                if items == 0 && disc.inner_green[next] == 0 {
                    return;
                }
                if self.emit(Step::Rim { inst, i: next }) {
                    self.pending -= 1;
                    if left == 1 {
                        self.frames.pop();
                    } else {
                        *self.frames.last_mut().unwrap() =
                            Frame::Rim { inst, next: (next + 1) % disc.rim.len(), left: left - 1, items: 0 };
                    }
                    self.corner();
                    self.pending += 1;
                }
            }
        }
        self.steps.truncate(saved_len);
        self.frames = saved;
    }

    fn finish(&mut self) {
        let (first, last) = (self.steps[0], *self.steps.last().unwrap());
        if self.p.defined(self.step_label(last), self.step_label(first)) {
            return;
        }
        let d = self.build();
        if validate_diagram(&d, self.pres).is_ok() {
            self.found.entry(d.canonical_code()).or_insert(d);
        }
    }

    fn build(&self) -> ColouredDiagram {
        let mut hes: Vec<HalfEdge> = Vec::new();
        let mut kinds: Vec<FaceKind> = Vec::new();
        // Per instance: map from disc half-edge to new half-edge, internal ones only.
        let mut maps: Vec<Vec<usize>> = Vec::new();
        for &di in &self.instances {
            let d = &self.discs[di].diagram;
            let ext = d.external();
            let mut face_map = vec![usize::MAX; d.faces().len()];
            for (f, slot) in face_map.iter_mut().enumerate() {
                if f != ext {
                    *slot = kinds.len();
                    kinds.push(d.face_kind(f));
                }
            }
            let mut map = vec![usize::MAX; d.half_edges().len()];
            for (h, he) in d.half_edges().iter().enumerate() {
                if he.face != ext {
                    map[h] = hes.len();
                    hes.push(*he);
                }
            }
            for (h, he) in d.half_edges().iter().enumerate() {
                if he.face != ext {
                    let new = &mut hes[map[h]];
                    new.next = map[he.next];
                    new.face = face_map[he.face];
                    new.twin = map[he.twin];
                }
            }
            maps.push(map);
        }
        let ext_face = kinds.len();
        kinds.push(FaceKind::External);
        let base = hes.len();
        let k = self.steps.len();
        let mut open_bridges: Vec<usize> = Vec::new();
        for (j, &s) in self.steps.iter().enumerate() {
            let id = base + j;
            let mut twin = usize::MAX;
            match s {
                Step::Rim { inst, i } => {
                    let d = &self.discs[self.instances[inst]].diagram;
                    let e = self.discs[self.instances[inst]].rim[i];
                    twin = maps[inst][d.twin(e)];
                    hes[twin].twin = id;
                }
                Step::Out { .. } => open_bridges.push(id),
                Step::Back { .. } => {
                    twin = open_bridges.pop().expect("bridges nest");
                }
            }
            hes.push(HalfEdge { label: self.step_label(s), twin, next: base + (j + 1) % k, face: ext_face });
            if let Step::Back { .. } = s {
                hes[twin].twin = id;
            }
        }
        ColouredDiagram::from_raw(self.pres, hes, kinds).expect("assembly yields a planar map")
    }
}
