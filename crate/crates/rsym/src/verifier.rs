//! The RSym tester: locations, places, the vertex graph, curvature bounds and the
//! per-place decomposition search.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::{self, Schedule};
use crate::pregroup::{Elem, Word, IDENTITY};
use crate::presentation::Presentation;

/// Exact rational used for every curvature value.
pub type Rat = Ratio<i64>;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Colour {
    Green,
    Red,
}

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Colour::Green => "G",
            Colour::Red => "R",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("unsupported: interleaving required (some relator has a nontrivial interleave set)")]
    Twisted,
    #[error("epsilon must be positive")]
    Epsilon,
}

/// A location `R(i, a, b)`: the vertex before `b = w[i]` on the primitive period `w` of `R`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Location {
    pub rel: usize,
    pub index: usize,
    pub a: Elem,
    pub b: Elem,
}

/// A place `(R(i, a, b), c, C)` on a relator of `R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Place {
    pub loc: usize,
    pub c: Elem,
    pub colour: Colour,
    /// Locations `R'(k, σ(b), c)` instantiating a green place.
    pub instantiating: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OneStepEntry {
    pub dest: usize,
    pub len: usize,
    pub chi: Rat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GVertex {
    pub a: Elem,
    pub b: Elem,
    pub colour: Colour,
}

/// Weight of an absent path.
pub const INF: u32 = u32::MAX;

/// The vertex graph with lazily computed minimum nontrivial path weights.
#[derive(Debug)]
pub struct VertexGraph {
    verts: Vec<GVertex>,
    index: HashMap<GVertex, u32>,
    succ: Vec<Vec<u32>>,
    dist: Vec<OnceLock<Vec<u32>>>,
}

impl VertexGraph {
    /// Builds a graph from explicit vertices and edges; duplicate edges are ignored.
    pub fn from_edges(verts: Vec<GVertex>, edges: &[(u32, u32)]) -> Self {
        let index = verts.iter().enumerate().map(|(i, v)| (*v, i as u32)).collect();
        let mut succ = vec![BTreeSet::new(); verts.len()];
        for &(s, t) in edges {
            succ[s as usize].insert(t);
        }
        let succ = succ.into_iter().map(|s| s.into_iter().collect()).collect();
        let dist = (0..verts.len()).map(|_| OnceLock::new()).collect();
        VertexGraph { verts, index, succ, dist }
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn vertices(&self) -> &[GVertex] {
        &self.verts
    }

    pub fn id(&self, a: Elem, b: Elem, colour: Colour) -> Option<u32> {
        self.index.get(&GVertex { a, b, colour }).copied()
    }

    pub fn successors(&self, v: u32) -> &[u32] {
        &self.succ[v as usize]
    }

    pub fn has_edge(&self, s: u32, t: u32) -> bool {
        self.succ[s as usize].binary_search(&t).is_ok()
    }

    pub fn edge_weight(&self, s: u32) -> u32 {
        match self.verts[s as usize].colour {
            Colour::Green => 1,
            Colour::Red => 0,
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32, u32)> + '_ {
        (0..self.len() as u32).flat_map(move |s| self.succ[s as usize].iter().map(move |&t| (s, t, self.edge_weight(s))))
    }

    /// Least weight of a path with at least one edge, or [`INF`].
    pub fn weight(&self, from: u32, to: u32) -> u32 {
        self.dist[from as usize].get_or_init(|| self.bfs(from))[to as usize]
    }

    /// 0-1 breadth-first search seeded with the successors of `s`.
    fn bfs(&self, s: u32) -> Vec<u32> {
        let mut dist = vec![INF; self.len()];
        let mut queue = VecDeque::new();
        let ws = self.edge_weight(s);
        for &u in &self.succ[s as usize] {
            if ws < dist[u as usize] {
                dist[u as usize] = ws;
                queue.push_back(u);
            }
        }
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize];
            let wu = self.edge_weight(u);
            for &v in &self.succ[u as usize] {
                let nd = du + wu;
                if nd < dist[v as usize] {
                    dist[v as usize] = nd;
                    if wu == 0 {
                        queue.push_front(v);
                    } else {
                        queue.push_back(v);
                    }
                }
            }
        }
        dist
    }

    /// The full matrix of minimum nontrivial path weights.
    pub fn min_path_weights(&self) -> Vec<Vec<u32>> {
        (0..self.len() as u32).map(|s| (0..self.len() as u32).map(|t| self.weight(s, t)).collect()).collect()
    }
}

/// Upper bound on the curvature a vertex gives to the face at the middle vertex `nu`.
pub fn vertex_bound(g: &VertexGraph, nu1: u32, nu: u32, nu2: u32) -> Rat {
    debug_assert_eq!(g.vertices()[nu as usize].colour, Colour::Green);
    debug_assert!(g.has_edge(nu1, nu) && g.has_edge(nu, nu2));
    let w = g.weight(nu2, nu1);
    let c1 = g.vertices()[nu1 as usize].colour;
    let c2 = g.vertices()[nu2 as usize].colour;
    match (c1, c2) {
        (Colour::Green, Colour::Green) => match w {
            0 | 1 => rat(-1, 6),
            2 => rat(-1, 4),
            3 => rat(-3, 10),
            _ => rat(-1, 3),
        },
        (Colour::Green, Colour::Red) => match w {
            0 => Rat::zero(),
            1 => rat(-1, 6),
            _ => rat(-1, 4),
        },
        (Colour::Red, Colour::Green) => match w {
            0 | 1 => Rat::zero(),
            2 => rat(-1, 6),
            _ => rat(-1, 4),
        },
        (Colour::Red, Colour::Red) => Rat::zero(),
    }
}

/// Curvature bound for a simply connected blob by boundary length and boundary contact.
pub fn blob_table(len: usize, contact: usize) -> Option<Rat> {
    match (len, contact) {
        (3, 0) => Some(rat(-1, 6)),
        (3, 1) => Some(rat(-1, 4)),
        (4, 0) => Some(rat(-1, 4)),
        (4, 1) => Some(rat(-1, 3)),
        (5, 0) => Some(rat(-3, 10)),
        (6, 0) => Some(rat(-1, 3)),
        _ => None,
    }
}

/// Membership test for the blob word list: a cyclic word of length 3 to 6, trivial in the
/// universal group, with cyclically consecutive letters intermulting, no proper cyclic
/// subword trivial, and at most one non-R-letter (none beyond length four).
pub fn is_blob_word(pres: &Presentation, w: &[Elem]) -> bool {
    let k = w.len();
    if !(3..=6).contains(&k) {
        return false;
    }
    let p = pres.pregroup();
    if !(0..k).all(|i| pres.intermult(w[i], w[(i + 1) % k])) {
        return false;
    }
    let foreign = w.iter().filter(|&&e| !pres.is_rletter(e)).count();
    if foreign > 1 || (k > 4 && foreign > 0) {
        return false;
    }
    if !p.p_reduce_unchecked(w).is_empty() {
        return false;
    }
    for len in 2..k {
        for s in 0..k {
            let sub: Word = (0..len).map(|t| w[(s + t) % k]).collect();
            if p.p_reduce_unchecked(&sub).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Blob words containing `abc` as a cyclic subword, each rotated to start with `abc`.
pub fn blob_words_through(pres: &Presentation, a: Elem, b: Elem, c: Elem) -> Vec<Word> {
    let p = pres.pregroup();
    let mut out = Vec::new();
    let mut consider = |w: Word| {
        if is_blob_word(pres, &w) {
            out.push(w);
        }
    };
    consider(vec![a, b, c]);
    let closing = |prefix: &[Elem]| -> Option<Elem> {
        match p.p_reduce_unchecked(prefix).as_slice() {
            [g] => Some(p.sigma(*g)),
            _ => None,
        }
    };
    if let Some(d) = closing(&[a, b, c]) {
        consider(vec![a, b, c, d]);
    }
    for d in p.letters().filter(|&d| pres.intermult(c, d)) {
        if let Some(e) = closing(&[a, b, c, d]) {
            consider(vec![a, b, c, d, e]);
        }
        if !pres.is_rletter(d) {
            continue;
        }
        for e in p.letters().filter(|&e| pres.intermult(d, e) && pres.is_rletter(e)) {
            if let Some(f) = closing(&[a, b, c, d, e]) {
                consider(vec![a, b, c, d, e, f]);
            }
        }
    }
    out
}

/// The full blob word list, each word in least rotation.
pub fn blob_word_list(pres: &Presentation) -> Vec<Word> {
    let p = pres.pregroup();
    let mut set = BTreeSet::new();
    for a in p.letters() {
        for b in p.letters().filter(|&b| pres.intermult(a, b)) {
            for c in p.letters().filter(|&c| pres.intermult(b, c)) {
                for w in blob_words_through(pres, a, b, c) {
                    set.insert(crate::pregroup::min_rotation(&w));
                }
            }
        }
    }
    set.into_iter().collect()
}

/// Upper bound on the curvature a blob with boundary subword `abc` gives across `b`.
pub fn blob_bound(pres: &Presentation, a: Elem, b: Elem, c: Elem) -> Rat {
    debug_assert!(pres.intermult(a, b) && pres.intermult(b, c));
    let best = blob_words_through(pres, a, b, c)
        .iter()
        .filter_map(|w| {
            let contact = usize::from(w.iter().any(|&e| !pres.is_rletter(e)));
            blob_table(w.len(), contact)
        })
        .max();
    if let Some(v) = best {
        return v;
    }
    if pres.is_rletter(a) || pres.is_rletter(c) {
        rat(-5, 14)
    } else {
        rat(-1, 2)
    }
}

/// Bound for a blob with one boundary edge, given two consecutive letters `u v` of its boundary.
pub fn boundary_blob_bound(pres: &Presentation, u: Elem, v: Elem) -> Rat {
    let p = pres.pregroup();
    let chain = |w: &[Elem]| {
        let k = w.len();
        (0..k).all(|i| pres.intermult(w[i], w[(i + 1) % k]))
            && p.p_reduce_unchecked(w).is_empty()
            && (2..k).all(|len| (0..k).all(|s| !p.p_reduce_unchecked(&(0..len).map(|t| w[(s + t) % k]).collect::<Word>()).is_empty()))
    };
    if let Some(uv) = p.mult(u, v) {
        if uv != IDENTITY && chain(&[u, v, p.sigma(uv)]) {
            return rat(-1, 4);
        }
    }
    for d in p.letters().filter(|&d| pres.intermult(v, d)) {
        if let [g] = p.p_reduce_unchecked(&[u, v, d]).as_slice() {
            if chain(&[u, v, d, p.sigma(*g)]) {
                return rat(-1, 3);
            }
        }
    }
    rat(-5, 14)
}

/// Rotation index `j` from which every cyclic partial sum is nonnegative, when the total is.
/// The index is zero-based.
pub fn gusu_start_index(seq: &[Rat]) -> Option<usize> {
    if seq.is_empty() {
        return None;
    }
    let total: Rat = seq.iter().sum();
    if total < Rat::zero() {
        return None;
    }
    let mut prefix = Rat::zero();
    let mut best = (Rat::zero(), 0);
    for (k, s) in seq.iter().enumerate().take(seq.len() - 1) {
        prefix += s;
        if prefix < best.0 {
            best = (prefix, k + 1);
        }
    }
    Some(best.1)
}

/// One line of the search list `L`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListEntry {
    pub place: usize,
    pub len: usize,
    pub steps: usize,
    pub psi: Rat,
}

/// One step of a failing decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrailStep {
    pub to: usize,
    pub step_len: usize,
    pub chi: Rat,
    pub psi: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub relator: usize,
    pub start: usize,
    pub trail: Vec<TrailStep>,
    pub list: Vec<ListEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyResult {
    Verified,
    Fail(Failure),
}

impl VerifyResult {
    pub fn is_verified(&self) -> bool {
        matches!(self, VerifyResult::Verified)
    }
}

/// `ζ = min(⌈6(1 + ε)⌉ − 1, r)`.
pub fn step_limit(eps: Rat, r: usize) -> usize {
    let six = (Rat::from_integer(6) * (Rat::one() + eps)).ceil().to_integer();
    ((six - 1).max(0) as usize).min(r)
}

/// Precomputed tables shared by the verifier and the solver checks.
#[derive(Debug)]
pub struct Verifier<'a> {
    pres: &'a Presentation,
    locs: Vec<Location>,
    loc_start: Vec<usize>,
    mirror: Vec<usize>,
    by_pair: HashMap<(Elem, Elem), Vec<usize>>,
    places: Vec<Place>,
    places_at: Vec<Vec<usize>>,
    graph: VertexGraph,
    blobs: HashMap<(Elem, Elem, Elem), Rat>,
    case_r: Vec<Vec<OneStepEntry>>,
    one_step: Vec<Vec<OneStepEntry>>,
}

#[derive(Debug)]
struct Node {
    place: usize,
    len: usize,
    steps: usize,
    psi: Rat,
    parent: Option<usize>,
    step: (usize, Rat),
}

impl<'a> Verifier<'a> {
    pub fn new(pres: &'a Presentation) -> Result<Self, VerifyError> {
        Self::with_schedule(pres, Schedule::default())
    }

    pub fn with_schedule(pres: &'a Presentation, schedule: Schedule) -> Result<Self, VerifyError> {
        if !pres.check_untwisted() {
            return Err(VerifyError::Twisted);
        }
        let (locs, loc_start) = enumerate_locations(pres);
        let mirror = mirror_map(pres, &locs, &loc_start);
        let mut by_pair: HashMap<(Elem, Elem), Vec<usize>> = HashMap::new();
        for (id, l) in locs.iter().enumerate() {
            by_pair.entry((l.a, l.b)).or_default().push(id);
        }
        let (places, places_at) = enumerate_places(pres, &locs, &mirror, &by_pair);
        let graph = build_graph(pres, &mirror, &by_pair);
        let mut v = Verifier {
            pres,
            locs,
            loc_start,
            mirror,
            by_pair,
            places,
            places_at,
            graph,
            blobs: HashMap::new(),
            case_r: Vec::new(),
            one_step: Vec::new(),
        };
        v.blobs = v.blob_cache(schedule);
        let ids: Vec<usize> = (0..v.places.len()).collect();
        v.case_r = exec::map(schedule, &ids, |&p| v.compute_case_r(p));
        v.one_step = exec::map(schedule, &ids, |&p| v.compute_one_step(p));
        Ok(v)
    }

    pub fn presentation(&self) -> &Presentation {
        self.pres
    }

    pub fn locations(&self) -> &[Location] {
        &self.locs
    }

    /// Id of the first location on the `rel`-th signed relator.
    pub fn location_id(&self, rel: usize, index: usize) -> usize {
        self.loc_start[rel] + index
    }

    pub fn mirror(&self, loc: usize) -> usize {
        self.mirror[loc]
    }

    pub fn locations_with(&self, a: Elem, b: Elem) -> &[usize] {
        self.by_pair.get(&(a, b)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn places(&self) -> &[Place] {
        &self.places
    }

    pub fn places_at(&self, loc: usize) -> &[usize] {
        &self.places_at[loc]
    }

    pub fn graph(&self) -> &VertexGraph {
        &self.graph
    }

    pub fn one_step(&self, place: usize) -> &[OneStepEntry] {
        &self.one_step[place]
    }

    pub fn case_r(&self, place: usize) -> &[OneStepEntry] {
        &self.case_r[place]
    }

    pub fn relator_of(&self, place: usize) -> usize {
        self.locs[self.places[place].loc].rel
    }

    pub fn place_location(&self, place: usize) -> &Location {
        &self.locs[self.places[place].loc]
    }

    pub fn describe_place(&self, place: usize) -> String {
        let pl = &self.places[place];
        let l = &self.locs[pl.loc];
        let p = self.pres.pregroup();
        format!(
            "R{}({}, {}, {}), {}, {}",
            l.rel + 1,
            l.index + 1,
            p.name(l.a),
            p.name(l.b),
            p.name(pl.c),
            pl.colour
        )
    }

    pub(crate) fn blob(&self, a: Elem, b: Elem, c: Elem) -> Rat {
        match self.blobs.get(&(a, b, c)) {
            Some(&v) => v,
            None => blob_bound(self.pres, a, b, c),
        }
    }

    fn blob_cache(&self, schedule: Schedule) -> HashMap<(Elem, Elem, Elem), Rat> {
        let p = self.pres.pregroup();
        let mut triples = BTreeSet::new();
        for pl in self.places.iter().filter(|pl| pl.colour == Colour::Red) {
            let bs = p.sigma(self.locs[pl.loc].b);
            for y in p.letters().filter(|&y| self.pres.intermult(y, bs)) {
                triples.insert((y, bs, pl.c));
            }
        }
        let triples: Vec<_> = triples.into_iter().collect();
        let values = exec::map(schedule, &triples, |&(a, b, c)| blob_bound(self.pres, a, b, c));
        triples.into_iter().zip(values).collect()
    }

    fn rel_word(&self, rel: usize) -> &Word {
        &self.pres.signed_relators()[rel]
    }

    fn green_vertex(&self, a: Elem, b: Elem) -> u32 {
        self.graph.id(a, b, Colour::Green).expect("location vertex")
    }

    /// Case `C = R`: the blob across `b` and the vertex at the next location.
    fn compute_case_r(&self, place: usize) -> Vec<OneStepEntry> {
        let pl = &self.places[place];
        if pl.colour != Colour::Red {
            return Vec::new();
        }
        let p = self.pres.pregroup();
        let loc = &self.locs[pl.loc];
        let period = self.pres.period(loc.rel);
        let next = self.location_id(loc.rel, (loc.index + 1) % period);
        let nloc = &self.locs[next];
        let (b, d) = (nloc.a, nloc.b);
        let bs = p.sigma(b);
        let nu = self.green_vertex(b, d);
        let mut out = Includer::default();
        for &q in &self.places_at[next] {
            let qp = &self.places[q];
            let Some(nu2) = self.graph.id(p.sigma(d), qp.c, qp.colour) else { continue };
            for y in p.letters().filter(|&y| self.pres.intermult(y, bs)) {
                let nu1 = self.graph.id(y, bs, Colour::Red).expect("intermult vertex");
                let chi = self.blob(y, bs, pl.c) + vertex_bound(&self.graph, nu1, nu, nu2);
                out.include(q, 1, chi);
            }
        }
        out.finish()
    }

    /// Walks each consolidated edge from a green place. For every feasible length `l` calls
    /// `visit(l, None)`, then `visit(l, Some((P', Vertex bound at P')))` for each place `P'`.
    pub(crate) fn green_walk(&self, place: usize, mut visit: impl FnMut(usize, Option<(usize, Rat)>)) {
        let pl = &self.places[place];
        debug_assert_eq!(pl.colour, Colour::Green);
        let p = self.pres.pregroup();
        let loc = &self.locs[pl.loc];
        let r = self.rel_word(loc.rel);
        let n = r.len();
        let period = self.pres.period(loc.rel);
        for &inst in &pl.instantiating {
            let il = &self.locs[inst];
            let rho = self.rel_word(il.rel);
            let m = rho.len();
            let at = |w: &Word, i: isize| w[i.rem_euclid(w.len() as isize) as usize];
            let (i, k) = (loc.index as isize, il.index as isize);
            let mut l = 1usize;
            while l < n && l < m {
                if at(r, i + l as isize - 1) != p.sigma(at(rho, k - l as isize)) {
                    break;
                }
                let j = (loc.index + l) % period;
                let (d, e) = (at(r, i + l as isize - 1), at(r, i + l as isize));
                let nu = self.green_vertex(d, e);
                let Some(nu1) = self.graph.id(at(rho, k - 1 - l as isize), p.sigma(d), Colour::Green) else {
                    l += 1;
                    continue;
                };
                visit(l, None);
                let jid = self.location_id(loc.rel, j);
                for &q in &self.places_at[jid] {
                    let qp = &self.places[q];
                    let Some(nu2) = self.graph.id(p.sigma(e), qp.c, qp.colour) else { continue };
                    if !self.graph.has_edge(nu1, nu) || !self.graph.has_edge(nu, nu2) {
                        continue;
                    }
                    visit(l, Some((q, vertex_bound(&self.graph, nu1, nu, nu2))));
                }
                l += 1;
            }
        }
    }

    fn compute_one_step(&self, place: usize) -> Vec<OneStepEntry> {
        let pl = &self.places[place];
        if pl.colour == Colour::Red {
            return self.case_r[place].clone();
        }
        let n = self.rel_word(self.locs[pl.loc].rel).len();
        let mut out = Includer::default();
        self.green_walk(place, |l, step| match step {
            None => {}
            Some((q, chi)) if self.places[q].colour == Colour::Green => out.include(q, l, chi),
            Some((q, chi)) => {
                for e in &self.case_r[q] {
                    if l + 1 < n {
                        out.include(e.dest, l + 1, chi + e.chi);
                    }
                }
            }
        });
        out.finish()
    }

    /// Runs the bounded decomposition search from one start place.
    pub fn verify_at_place(&self, start: usize, eps: Rat) -> Result<(), Failure> {
        let rel = self.relator_of(start);
        let n = self.rel_word(rel).len();
        let zeta = step_limit(eps, self.pres.max_len());
        let len_weight = (Rat::one() + eps) / Rat::from_integer(n as i64);
        let mut nodes =
            vec![Node { place: start, len: 0, steps: 0, psi: Rat::zero(), parent: None, step: (0, Rat::zero()) }];
        let mut list: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        list.insert((start, 0), 0);
        for i in 1..=zeta {
            let frontier: Vec<usize> = list.values().copied().filter(|&id| nodes[id].steps == i - 1).collect();
            if frontier.is_empty() {
                break;
            }
            for id in frontier {
                let (from, l, psi) = (nodes[id].place, nodes[id].len, nodes[id].psi);
                for e in &self.one_step[from] {
                    let total = l + e.len;
                    if total > n {
                        continue;
                    }
                    let psi2 = psi + e.chi + len_weight * Rat::from_integer(e.len as i64);
                    if psi2 < Rat::zero() || (total == n && e.dest != start) {
                        continue;
                    }
                    let node = Node { place: e.dest, len: total, steps: i, psi: psi2, parent: Some(id), step: (e.len, e.chi) };
                    if psi2 > Rat::zero() && e.dest == start && total == n {
                        nodes.push(node);
                        let trail = trail(&nodes, nodes.len() - 1);
                        let list = list
                            .values()
                            .map(|&k| ListEntry {
                                place: nodes[k].place,
                                len: nodes[k].len,
                                steps: nodes[k].steps,
                                psi: nodes[k].psi,
                            })
                            .collect();
                        return Err(Failure { relator: rel, start, trail, list });
                    }
                    let key = (e.dest, total);
                    let better = list.get(&key).is_none_or(|&old| psi2 > nodes[old].psi);
                    if better {
                        nodes.push(node);
                        list.insert(key, nodes.len() - 1);
                    }
                }
            }
        }
        Ok(())
    }

    /// Start places on the relators `R` (not their inverses), in canonical order.
    pub fn start_places(&self) -> Vec<usize> {
        let nrel = self.pres.relators().len();
        (0..self.places.len()).filter(|&p| self.relator_of(p) < nrel).collect()
    }

    pub fn verify(&self, eps: Rat, schedule: Schedule) -> Result<VerifyResult, VerifyError> {
        if eps <= Rat::zero() {
            return Err(VerifyError::Epsilon);
        }
        let starts = self.start_places();
        let fail = exec::find_map_first(schedule, &starts, |&s| self.verify_at_place(s, eps).err());
        Ok(match fail {
            Some(f) => VerifyResult::Fail(f),
            None => VerifyResult::Verified,
        })
    }
}

fn trail(nodes: &[Node], mut id: usize) -> Vec<TrailStep> {
    let mut out = Vec::new();
    while let Some(parent) = nodes[id].parent {
        let n = &nodes[id];
        out.push(TrailStep { to: n.place, step_len: n.step.0, chi: n.step.1, psi: n.psi });
        id = parent;
    }
    out.reverse();
    out
}

/// Keeps the largest value per `(destination, distance)`.
#[derive(Default)]
pub(crate) struct Includer {
    best: BTreeMap<(usize, usize), Rat>,
}

impl Includer {
    pub(crate) fn include(&mut self, dest: usize, len: usize, chi: Rat) {
        assert!(chi <= rat(-1, 6), "step curvature {chi} above -1/6");
        let slot = self.best.entry((dest, len)).or_insert(chi);
        if chi > *slot {
            *slot = chi;
        }
    }

    pub(crate) fn finish(self) -> Vec<OneStepEntry> {
        self.best.into_iter().map(|((dest, len), chi)| OneStepEntry { dest, len, chi }).collect()
    }
}

/// Runs the whole verifier on a presentation.
pub fn rsym_verify(pres: &Presentation, eps: Rat) -> Result<VerifyResult, VerifyError> {
    Verifier::new(pres)?.verify(eps, Schedule::default())
}

/// Locations on the primitive period of every signed relator, with the first id per relator.
pub fn enumerate_locations(pres: &Presentation) -> (Vec<Location>, Vec<usize>) {
    let mut locs = Vec::new();
    let mut start = Vec::new();
    for (rel, r) in pres.signed_relators().iter().enumerate() {
        start.push(locs.len());
        let n = r.len();
        for index in 0..pres.period(rel) {
            locs.push(Location { rel, index, a: r[(index + n - 1) % n], b: r[index] });
        }
    }
    (locs, start)
}

/// For each location, the location in mirror position across the edge `b`.
fn mirror_map(pres: &Presentation, locs: &[Location], start: &[usize]) -> Vec<usize> {
    let p = pres.pregroup();
    let mut rotations: HashMap<Word, (usize, usize)> = HashMap::new();
    for (rel, r) in pres.signed_relators().iter().enumerate() {
        for s in 0..r.len() {
            let w: Word = r[s..].iter().chain(&r[..s]).copied().collect();
            rotations.entry(w).or_insert((rel, s));
        }
    }
    locs.iter()
        .map(|l| {
            let r = &pres.signed_relators()[l.rel];
            let s = (l.index + 1) % r.len();
            let t: Word = r[s..].iter().chain(&r[..s]).copied().collect();
            let (rel2, s2) = rotations[&p.inverse_word(&t)];
            let idx = (s2 + 1) % r.len() % pres.period(rel2);
            start[rel2] + idx
        })
        .collect()
}

fn enumerate_places(
    pres: &Presentation,
    locs: &[Location],
    mirror: &[usize],
    by_pair: &HashMap<(Elem, Elem), Vec<usize>>,
) -> (Vec<Place>, Vec<Vec<usize>>) {
    let p = pres.pregroup();
    let nrel = pres.relators().len();
    let mut places = Vec::new();
    let mut places_at = vec![Vec::new(); locs.len()];
    for (id, l) in locs.iter().enumerate() {
        if l.rel >= nrel {
            continue;
        }
        let bs = p.sigma(l.b);
        for c in p.letters() {
            let inst: Vec<usize> = by_pair
                .get(&(bs, c))
                .map(|v| v.iter().copied().filter(|&k| k != mirror[id]).collect())
                .unwrap_or_default();
            if !inst.is_empty() {
                places_at[id].push(places.len());
                places.push(Place { loc: id, c, colour: Colour::Green, instantiating: inst });
            }
        }
        for c in p.letters() {
            if pres.intermult(bs, c) {
                places_at[id].push(places.len());
                places.push(Place { loc: id, c, colour: Colour::Red, instantiating: Vec::new() });
            }
        }
    }
    (places, places_at)
}

fn build_graph(pres: &Presentation, mirror: &[usize], by_pair: &HashMap<(Elem, Elem), Vec<usize>>) -> VertexGraph {
    let p = pres.pregroup();
    let mut verts: Vec<GVertex> = by_pair.keys().map(|&(a, b)| GVertex { a, b, colour: Colour::Green }).collect();
    verts.extend(pres.intermult_table().pairs().map(|(a, b)| GVertex { a, b, colour: Colour::Red }));
    verts.sort();
    let index: HashMap<GVertex, u32> = verts.iter().enumerate().map(|(i, v)| (*v, i as u32)).collect();
    let mut from_letter: HashMap<Elem, Vec<u32>> = HashMap::new();
    for (i, v) in verts.iter().enumerate() {
        from_letter.entry(v.a).or_default().push(i as u32);
    }
    let mut edges = Vec::new();
    for (s, v) in verts.iter().enumerate() {
        let bs = p.sigma(v.b);
        for &t in from_letter.get(&bs).map(Vec::as_slice).unwrap_or(&[]) {
            let tv = verts[t as usize];
            let ok = match (v.colour, tv.colour) {
                (Colour::Green, Colour::Green) => {
                    let l1 = &by_pair[&(v.a, v.b)];
                    let l2 = &by_pair[&(tv.a, tv.b)];
                    l2.len() > 1 || l1.iter().any(|&x| mirror[x] != l2[0])
                }
                (Colour::Red, Colour::Red) => false,
                _ => true,
            };
            if ok {
                edges.push((s as u32, t));
            }
        }
    }
    let _ = index;
    VertexGraph::from_edges(verts, &edges)
}
