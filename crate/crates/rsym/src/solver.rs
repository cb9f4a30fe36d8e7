//! Solver verification, the rewrite list, the linear-time word-problem solver and
//! explicit Dehn function bounds.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::{self, Schedule};
use crate::pregroup::{Elem, Pregroup, Word, IDENTITY};
use crate::presentation::Presentation;
use crate::verifier::{boundary_blob_bound, rat, vertex_bound, Colour, Rat, Verifier};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("the trivial-interleaving variant needs every intermult pair to have a defined product")]
    TrivIntHypothesis,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Mode {
    Plain,
    TrivInt,
}

/// A place, or the terminal place at a location.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Target {
    Place(usize),
    Terminal(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TerminalEntry {
    /// Location of the terminal place.
    pub loc: usize,
    pub len: usize,
    pub chi: Rat,
    /// The step ends with a boundary red blob just before the terminal place.
    pub ends_at_red: bool,
}

/// One-step reachable terminal places from a non-terminal place.
pub fn terminal_one_step(v: &Verifier, place: usize) -> Vec<TerminalEntry> {
    let pres = v.presentation();
    let p = pres.pregroup();
    let pl = &v.places()[place];
    let loc = *v.place_location(place);
    let n = pres.signed_relators()[loc.rel].len();
    let period = pres.period(loc.rel);
    let mut best: BTreeMap<(usize, usize, bool), Rat> = BTreeMap::new();
    let mut include = |loc: usize, len: usize, red: bool, chi: Rat| {
        let slot = best.entry((loc, len, red)).or_insert(chi);
        if chi > *slot {
            *slot = chi;
        }
    };
    match pl.colour {
        Colour::Red => {
            let next = v.location_id(loc.rel, (loc.index + 1) % period);
            include(next, 1, true, boundary_blob_bound(pres, p.sigma(loc.b), pl.c));
        }
        Colour::Green => v.green_walk(place, |l, step| {
            let j = (loc.index + l) % period;
            match step {
                None => include(v.location_id(loc.rel, j), l, false, rat(-1, 4)),
                Some((q, chi)) => {
                    let qp = &v.places()[q];
                    if qp.colour == Colour::Red && l < n {
                        let e = v.locations()[qp.loc].b;
                        let next = v.location_id(loc.rel, (j + 1) % period);
                        include(next, l + 1, true, chi + boundary_blob_bound(pres, p.sigma(e), qp.c));
                    }
                }
            }
        }),
    }
    best.into_iter().map(|((loc, len, ends_at_red), chi)| TerminalEntry { loc, len, chi, ends_at_red }).collect()
}

/// One line of the solver search list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverEntry {
    pub target: Target,
    pub len: usize,
    pub steps: usize,
    pub psi: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverFailure {
    pub start: usize,
    /// The terminal step that closed the failing sequence.
    pub closing: SolverEntry,
    pub list: Vec<SolverEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolverResult {
    Verified,
    Fail(SolverFailure),
}

impl SolverResult {
    pub fn is_verified(&self) -> bool {
        matches!(self, SolverResult::Verified)
    }
}

/// Tables for the solver check, built on top of the verifier tables.
pub struct SolverCheck<'v, 'a> {
    v: &'v Verifier<'a>,
    mode: Mode,
    terminal: Vec<Vec<TerminalEntry>>,
}

impl<'v, 'a> SolverCheck<'v, 'a> {
    pub fn new(v: &'v Verifier<'a>, mode: Mode, schedule: Schedule) -> Result<Self, SolverError> {
        if mode == Mode::TrivInt && !v.presentation().intermult_in_domain() {
            return Err(SolverError::TrivIntHypothesis);
        }
        let ids: Vec<usize> = (0..v.places().len()).collect();
        let terminal = exec::map(schedule, &ids, |&p| terminal_one_step(v, p));
        Ok(SolverCheck { v, mode, terminal })
    }

    pub fn terminal(&self, place: usize) -> &[TerminalEntry] {
        &self.terminal[place]
    }

    /// `2 · threshold` for declaring failure at a terminal place.
    fn fail_threshold2(&self, n: usize, start_red: bool, end_red: bool) -> usize {
        match self.mode {
            Mode::Plain => n,
            Mode::TrivInt => n + usize::from(start_red) + usize::from(end_red),
        }
    }

    /// Red start: the boundary blob before the next location, plus the best vertex there.
    fn red_start(&self, start: usize) -> Vec<(usize, Rat)> {
        let v = self.v;
        let pres = v.presentation();
        let p = pres.pregroup();
        let g = v.graph();
        let pl = &v.places()[start];
        let loc = *v.place_location(start);
        let period = pres.period(loc.rel);
        let next = v.location_id(loc.rel, (loc.index + 1) % period);
        let nloc = v.locations()[next];
        let bs = p.sigma(nloc.a);
        let blob = boundary_blob_bound(pres, bs, pl.c);
        let nu = g.id(nloc.a, nloc.b, Colour::Green).expect("location vertex");
        let mut out = Vec::new();
        for &q in v.places_at(next) {
            let qp = &v.places()[q];
            let Some(nu2) = g.id(p.sigma(nloc.b), qp.c, qp.colour) else { continue };
            let best = p
                .letters()
                .filter(|&y| pres.intermult(y, bs))
                .filter_map(|y| g.id(y, bs, Colour::Red))
                .map(|nu1| vertex_bound(g, nu1, nu, nu2))
                .max();
            if let Some(vx) = best {
                out.push((q, blob + vx));
            }
        }
        out
    }

    pub fn verify_at_place(&self, start: usize) -> Result<(), SolverFailure> {
        let v = self.v;
        let n = v.presentation().signed_relators()[v.relator_of(start)].len();
        let start_red = v.places()[start].colour == Colour::Red;
        let grow2 = match self.mode {
            Mode::Plain => n,
            Mode::TrivInt => n + 2,
        };
        let mut list: BTreeMap<(usize, usize), (usize, Rat)> = BTreeMap::new();
        let include = |list: &mut BTreeMap<(usize, usize), (usize, Rat)>, q: usize, l: usize, t: usize, psi: Rat| {
            let slot = list.entry((q, l)).or_insert((t, psi));
            if psi > slot.1 {
                *slot = (t, psi);
            }
        };
        if start_red {
            for (q, chi) in self.red_start(start) {
                include(&mut list, q, 1, 1, Rat::one() + chi);
            }
        } else {
            include(&mut list, start, 0, 1, rat(3, 4));
        }
        let render = |list: &BTreeMap<(usize, usize), (usize, Rat)>| {
            list.iter()
                .map(|(&(q, len), &(steps, psi))| SolverEntry { target: Target::Place(q), len, steps, psi })
                .collect::<Vec<_>>()
        };
        for i in 1..=3 {
            let frontier: Vec<(usize, usize, Rat)> =
                list.iter().filter(|(_, &(t, _))| t == i).map(|(&(q, l), &(_, psi))| (q, l, psi)).collect();
            for (from, l, psi) in frontier {
                for e in v.one_step(from) {
                    let total = l + e.len;
                    let psi2 = psi + e.chi;
                    if 2 * total < grow2 && psi2 > Rat::zero() {
                        include(&mut list, e.dest, total, i + 1, psi2);
                    }
                }
                for e in &self.terminal[from] {
                    let total = l + e.len;
                    let psi2 = psi + e.chi;
                    if 2 * total >= self.fail_threshold2(n, start_red, e.ends_at_red) && psi2 > Rat::zero() {
                        let closing = SolverEntry { target: Target::Terminal(e.loc), len: total, steps: i + 1, psi: psi2 };
                        return Err(SolverFailure { start, closing, list: render(&list) });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn verify(&self, schedule: Schedule) -> SolverResult {
        let starts = self.v.start_places();
        match exec::find_map_first(schedule, &starts, |&s| self.verify_at_place(s).err()) {
            Some(f) => SolverResult::Fail(f),
            None => SolverResult::Verified,
        }
    }
}

/// Runs the solver check in the given mode.
pub fn verify_solver(v: &Verifier, mode: Mode) -> Result<SolverResult, SolverError> {
    Ok(SolverCheck::new(v, mode, Schedule::default())?.verify(Schedule::default()))
}

/// A length-reducing rewrite `u -> v`, with `u = v` in the group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Word,
}

/// The rewrite list, indexed by a trie over left-hand sides.
#[derive(Debug, Clone)]
pub struct RewriteList {
    rules: Vec<Rule>,
    trie: Trie,
    rev_trie: Trie,
    max_lhs: usize,
}

#[derive(Debug, Clone, Default)]
struct Trie {
    children: Vec<HashMap<Elem, u32>>,
    rule: Vec<Option<u32>>,
}

impl Trie {
    fn new() -> Self {
        Trie { children: vec![HashMap::new()], rule: vec![None] }
    }

    fn insert(&mut self, key: impl Iterator<Item = Elem>, id: u32, rules: &[Rule]) {
        let mut node = 0usize;
        for e in key {
            let next = self.children.len() as u32;
            let child = *self.children[node].entry(e).or_insert(next);
            if child == next {
                self.children.push(HashMap::new());
                self.rule.push(None);
            }
            node = child as usize;
        }
        match self.rule[node] {
            Some(old) if rules[old as usize].rhs.len() <= rules[id as usize].rhs.len() => {}
            _ => self.rule[node] = Some(id),
        }
    }

    fn step(&self, node: u32, e: Elem) -> Option<u32> {
        self.children[node as usize].get(&e).copied()
    }
}

impl RewriteList {
    pub fn new(p: &Pregroup, pres: &Presentation, mode: Mode) -> Self {
        let mut rules = Vec::new();
        let mut seen = std::collections::HashSet::new();
        let mut push = |lhs: Word, rhs: Word, rules: &mut Vec<Rule>| {
            if rhs.len() < lhs.len() && seen.insert(lhs.clone()) {
                rules.push(Rule { lhs, rhs });
            }
        };
        for r in pres.signed_relators() {
            let n = r.len();
            for s in 0..n {
                let rot: Word = r[s..].iter().chain(&r[..s]).copied().collect();
                let k = (n + 1).div_ceil(2);
                push(rot[..k].to_vec(), p.inverse_word(&rot[k..]), &mut rules);
            }
        }
        if mode == Mode::TrivInt {
            let letters: Vec<Elem> = p.letters().collect();
            for r in pres.signed_relators() {
                let n = r.len();
                for s in 0..n {
                    let rot: Word = r[s..].iter().chain(&r[..s]).copied().collect();
                    let j = n.div_ceil(2);
                    let (u, rest) = rot.split_at(j);
                    let v = p.inverse_word(rest);
                    for &t in &letters {
                        if !p.defined(u[j - 1], t) {
                            let mut lhs = u.to_vec();
                            lhs.push(t);
                            let mut rhs = v.clone();
                            rhs.push(t);
                            push(lhs, p.p_reduce_unchecked(&rhs), &mut rules);
                        }
                        if !p.defined(t, u[0]) {
                            let mut lhs = vec![t];
                            lhs.extend_from_slice(u);
                            let mut rhs = vec![t];
                            rhs.extend_from_slice(&v);
                            push(lhs, p.p_reduce_unchecked(&rhs), &mut rules);
                        }
                    }
                    let j2 = (n - 1).div_ceil(2);
                    let (u, rest) = rot.split_at(j2);
                    let v = p.inverse_word(rest);
                    for &t in letters.iter().filter(|&&t| !p.defined(t, u[0])) {
                        for &t2 in letters.iter().filter(|&&t2| !p.defined(u[j2 - 1], t2)) {
                            let mut lhs = vec![t];
                            lhs.extend_from_slice(u);
                            lhs.push(t2);
                            let mut rhs = vec![t];
                            rhs.extend_from_slice(&v);
                            rhs.push(t2);
                            push(lhs, p.p_reduce_unchecked(&rhs), &mut rules);
                        }
                    }
                }
            }
        }
        let mut trie = Trie::new();
        let mut rev_trie = Trie::new();
        for (id, rule) in rules.iter().enumerate() {
            trie.insert(rule.lhs.iter().copied(), id as u32, &rules);
            rev_trie.insert(rule.lhs.iter().rev().copied(), id as u32, &rules);
        }
        let max_lhs = rules.iter().map(|r| r.lhs.len()).max().unwrap_or(0);
        RewriteList { rules, trie, rev_trie, max_lhs }
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn max_lhs(&self) -> usize {
        self.max_lhs
    }
}

const NIL: u32 = u32::MAX;

/// A cyclic word as a doubly-linked ring over arena slots.
struct Ring {
    letter: Vec<Elem>,
    next: Vec<u32>,
    prev: Vec<u32>,
    len: usize,
    head: u32,
}

impl Ring {
    fn new(w: &[Elem]) -> Self {
        let n = w.len() as u32;
        let next = (0..n).map(|i| (i + 1) % n).collect();
        let prev = (0..n).map(|i| (i + n - 1) % n).collect();
        Ring { letter: w.to_vec(), next, prev, len: w.len(), head: if n == 0 { NIL } else { 0 } }
    }

    fn remove(&mut self, x: u32) {
        let (p, n) = (self.prev[x as usize], self.next[x as usize]);
        self.next[p as usize] = n;
        self.prev[n as usize] = p;
        self.len -= 1;
        self.head = if self.len == 0 { NIL } else { n };
    }

    /// Inserts `e` after `x` and returns the new slot.
    fn insert_after(&mut self, x: u32, e: Elem) -> u32 {
        let id = self.letter.len() as u32;
        let n = self.next[x as usize];
        self.letter.push(e);
        self.prev.push(x);
        self.next.push(n);
        self.next[x as usize] = id;
        self.prev[n as usize] = id;
        self.len += 1;
        id
    }

    fn word_from(&self, start: u32) -> Word {
        let mut out = Vec::with_capacity(self.len);
        let mut x = start;
        for _ in 0..self.len {
            out.push(self.letter[x as usize]);
            x = self.next[x as usize];
        }
        out
    }
}

/// Outcome of [`Solver::solve`], with the number of letter reads and writes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Solution {
    pub trivial: bool,
    pub ops: u64,
}

/// The linear-time word-problem solver for a presentation that verified a solver.
pub struct Solver<'a> {
    pres: &'a Presentation,
    list: RewriteList,
}

impl<'a> Solver<'a> {
    pub fn new(pres: &'a Presentation, mode: Mode) -> Self {
        Solver { pres, list: RewriteList::new(pres.pregroup(), pres, mode) }
    }

    pub fn rewrite_list(&self) -> &RewriteList {
        &self.list
    }

    pub fn solve(&self, w: &[Elem]) -> bool {
        self.solve_counted(w).trivial
    }

    /// Cyclically P-reduces `w`, then rewrites around a ring until the word is empty or a
    /// full lap finds no left-hand side.
    pub fn solve_counted(&self, w: &[Elem]) -> Solution {
        let p = self.pres.pregroup();
        let mut ops = 2 * w.len() as u64;
        let mut ring = Ring::new(&p.cyclically_p_reduce_unchecked(w));
        let k = self.list.max_lhs.saturating_sub(1);
        let mut ptr = ring.head;
        let mut clean = 0usize;
        loop {
            if ring.len == 0 {
                return Solution { trivial: true, ops };
            }
            if clean >= ring.len {
                return Solution { trivial: false, ops };
            }
            let Some((m, rule)) = self.match_at(&ring, ptr, &mut ops) else {
                ptr = ring.next[ptr as usize];
                clean += 1;
                continue;
            };
            let rhs = &self.list.rules[rule as usize].rhs;
            ops += (m + rhs.len()) as u64;
            if m + 1 >= ring.len {
                let mut rest = Vec::new();
                let mut x = ptr;
                for _ in 0..m {
                    x = ring.next[x as usize];
                }
                for _ in m..ring.len {
                    rest.push(ring.letter[x as usize]);
                    x = ring.next[x as usize];
                }
                rest.extend_from_slice(rhs);
                ops += rest.len() as u64;
                ring = Ring::new(&p.cyclically_p_reduce_unchecked(&rest));
                ptr = ring.head;
                clean = 0;
                continue;
            }
            let mut lo = ring.prev[ptr as usize];
            let mut x = ptr;
            for _ in 0..m {
                let nx = ring.next[x as usize];
                ring.remove(x);
                x = nx;
            }
            let mut hi = x;
            let mut at = lo;
            for &e in rhs {
                at = ring.insert_after(at, e);
            }
            let mut eaten = 0usize;
            let mut collapsed = false;
            'settle: loop {
                let mut a = lo;
                while a != hi {
                    let b = ring.next[a as usize];
                    ops += 1;
                    if let Some(c) = p.mult(ring.letter[a as usize], ring.letter[b as usize]) {
                        if a == lo {
                            lo = ring.prev[lo as usize];
                            eaten += 1;
                        }
                        if b == hi {
                            hi = ring.next[hi as usize];
                        }
                        if lo == hi || lo == a || lo == b || hi == a || hi == b || ring.len <= 3 {
                            collapsed = true;
                        }
                        if c == IDENTITY {
                            ring.remove(a);
                        } else {
                            ring.letter[a as usize] = c;
                        }
                        ring.remove(b);
                        ops += 2;
                        if collapsed || ring.len == 0 {
                            break 'settle;
                        }
                        continue 'settle;
                    }
                    a = b;
                }
                break;
            }
            if ring.len == 0 {
                continue;
            }
            if collapsed {
                let w = ring.word_from(ring.head);
                ops += w.len() as u64;
                ring = Ring::new(&p.cyclically_p_reduce_unchecked(&w));
                ptr = ring.head;
                clean = 0;
                continue;
            }
            let mut span = 0usize;
            let mut y = ring.next[lo as usize];
            while y != hi {
                span += 1;
                y = ring.next[y as usize];
            }
            ptr = ring.next[lo as usize];
            let mut back = 0;
            while back < k && ring.prev[ptr as usize] != hi {
                ptr = ring.prev[ptr as usize];
                back += 1;
            }
            ops += (span + back) as u64;
            let room = ring.len.saturating_sub(back + span);
            clean = clean.saturating_sub(back + eaten).min(room);
        }
    }

    /// Shortest left-hand side starting at `x`, reading at most one lap.
    fn match_at(&self, ring: &Ring, x: u32, ops: &mut u64) -> Option<(usize, u32)> {
        let mut node = 0u32;
        let mut y = x;
        for depth in 1..=self.list.max_lhs.min(ring.len) {
            *ops += 1;
            node = self.list.trie.step(node, ring.letter[y as usize])?;
            if let Some(rule) = self.list.trie.rule[node as usize] {
                return Some((depth, rule));
            }
            y = ring.next[y as usize];
        }
        None
    }

    /// Two-stack Dehn algorithm with the pregroup products and the rewrite list.
    /// No cyclic reduction is needed.
    pub fn dehn(&self, w: &[Elem]) -> bool {
        let p = self.pres.pregroup();
        let mut input: Vec<Elem> = w.iter().rev().copied().collect();
        let mut stack: Vec<Elem> = Vec::with_capacity(w.len());
        while let Some(e) = input.pop() {
            if let Some(&top) = stack.last() {
                if let Some(c) = p.mult(top, e) {
                    stack.pop();
                    if c != IDENTITY {
                        input.push(c);
                    }
                    continue;
                }
            }
            stack.push(e);
            let mut node = 0u32;
            let mut hit = None;
            for (depth, &s) in stack.iter().rev().take(self.list.max_lhs).enumerate() {
                match self.list.rev_trie.step(node, s) {
                    Some(c) => node = c,
                    None => break,
                }
                if let Some(rule) = self.list.rev_trie.rule[node as usize] {
                    hit = Some((depth + 1, rule));
                    break;
                }
            }
            if let Some((m, rule)) = hit {
                stack.truncate(stack.len() - m);
                input.extend(self.list.rules[rule as usize].rhs.iter().rev());
            }
        }
        stack.is_empty()
    }
}

/// Which part of the pregroup Dehn bound applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundPart {
    /// The general bound.
    General,
    /// `V_P` is empty.
    EmptyVp,
    /// Untwisted with `V_P` nonempty.
    Untwisted,
}

/// A linear bound `slope · n − offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Linear {
    pub slope: Rat,
    pub offset: Rat,
}

impl Linear {
    pub fn at(&self, n: i64) -> Rat {
        self.slope * Rat::from_integer(n) - self.offset
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DehnBoundReport {
    pub eps: Rat,
    pub r: usize,
    pub r_i: usize,
    /// The general bound `f(n)`.
    pub f: Linear,
    pub part: BoundPart,
    /// The bound from the applicable part.
    pub pd_rsym: Linear,
    /// The sharper bound from a verified solver, if any.
    pub pd_solver: Option<Linear>,
    /// `D(n) ≤ r_I PD(n) + n/2` using the best available PD bound.
    pub dehn: Linear,
    pub lambda0: Rat,
    pub lambda: Rat,
    /// Maximum length over `V_P` and the relators.
    pub r_gamma: usize,
    pub gamma: Rat,
}

/// Explicit bounds for a presentation verified with `eps`, given the solver outcome.
pub fn dehn_bounds(pres: &Presentation, eps: Rat, solver: Option<Mode>) -> DehnBoundReport {
    let r = pres.max_len();
    let ri = pres.max_involutions();
    let rr = Rat::from_integer(r as i64);
    let three_r = Rat::from_integer(3) + rr;
    let two = Rat::from_integer(2);
    let f = Linear {
        slope: Rat::from_integer(6) + rr + three_r / (two * eps),
        offset: three_r / eps,
    };
    let (part, pd_rsym) = if pres.vp().is_empty() {
        (BoundPart::EmptyVp, Linear { slope: Rat::one() / (two * eps) + Rat::one(), offset: Rat::one() / eps })
    } else if pres.check_untwisted() {
        (BoundPart::Untwisted, Linear { slope: f.slope - two, offset: f.offset })
    } else {
        (BoundPart::General, f)
    };
    let pd_solver = solver.map(|m| Linear {
        slope: Rat::from_integer(if m == Mode::Plain { 1 } else { 3 }),
        offset: Rat::zero(),
    });
    let pd = pd_solver.unwrap_or(pd_rsym);
    let rid = Rat::from_integer(ri as i64);
    let dehn = Linear { slope: rid * pd.slope + rat(1, 2), offset: rid * pd.offset };
    let lambda0 = pd_rsym.slope;
    let r_gamma = pres.max_len_with_vp();
    let lambda = Rat::from_integer(r_gamma as i64) * lambda0 + rat(1, 2);
    let rg = Rat::from_integer(r_gamma as i64);
    let gamma = Rat::from_integer(384) * lambda * rg * (rg - Rat::one()) + Rat::from_integer(64);
    DehnBoundReport { eps, r, r_i: ri, f, part, pd_rsym, pd_solver, dehn, lambda0, lambda, r_gamma, gamma }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;

    #[test]
    fn solver_grid() {
        let t7 = tri(3, 7);
        let v = Verifier::new(&t7).unwrap();
        assert!(!verify_solver(&v, Mode::Plain).unwrap().is_verified());
        assert!(verify_solver(&v, Mode::TrivInt).unwrap().is_verified());
        let t8 = tri(3, 8);
        let v = Verifier::new(&t8).unwrap();
        assert!(verify_solver(&v, Mode::Plain).unwrap().is_verified());
    }

    #[test]
    fn tri_3_7_terminals() {
        let pres = tri(3, 7);
        let v = Verifier::new(&pres).unwrap();
        let green: Vec<_> = terminal_one_step(&v, 0).iter().map(|e| (e.loc, e.len, e.chi, e.ends_at_red)).collect();
        assert_eq!(green, vec![(0, 2, rat(-1, 4), true), (1, 1, rat(-1, 4), false)]);
        let red: Vec<_> = terminal_one_step(&v, 1).iter().map(|e| (e.loc, e.len, e.chi)).collect();
        assert_eq!(red, vec![(0, 1, rat(-1, 4))]);
    }

    #[test]
    fn rewrite_list_shape() {
        let pres = tri(3, 7);
        let list = RewriteList::new(pres.pregroup(), &pres, Mode::Plain);
        assert_eq!(list.len(), 4);
        assert!(list.rules().iter().all(|r| r.lhs.len() == 8 && r.rhs.len() == 6));
        let p = pres.pregroup();
        let has = |l: &str, r: &str| list.rules().iter().any(|x| p.format_word(&x.lhs) == l && p.format_word(&x.rhs) == r);
        assert!(has("xyxyxyxy", "YxYxYx"));
        let triv = RewriteList::new(pres.pregroup(), &pres, Mode::TrivInt);
        assert!(triv.len() > list.len());
        assert!(triv.rules().iter().all(|r| r.lhs.len() > r.rhs.len()));
    }

    #[test]
    fn solve_examples() {
        let pres = tri(3, 7);
        let s = Solver::new(&pres, Mode::TrivInt);
        let p = pres.pregroup();
        assert!(s.solve(&parse(p, "(xy)^7")));
        assert!(s.solve(&parse(p, "x(xy)^7x")));
        assert!(!s.solve(&parse(p, "xy")));
        assert!(s.solve(&[]));
        assert!(!s.solve(&parse(p, "y")));
        assert!(s.solve(&parse(p, "(xy)^7 (xy)^-7 y (xy)^7 Y")));
    }

    #[test]
    fn dehn_two_stack() {
        let pres = tri(3, 8);
        let s = Solver::new(&pres, Mode::Plain);
        let p = pres.pregroup();
        assert!(s.dehn(&parse(p, "(xy)^8")));
        assert!(s.dehn(&parse(p, "x y (xy)^8 Y x")));
        assert!(!s.dehn(&parse(p, "xyxY")));
    }

    #[test]
    fn bounds_tri_3_7() {
        let pres = tri(3, 7);
        let b = dehn_bounds(&pres, rat(1, 6), Some(Mode::TrivInt));
        assert_eq!(b.f, Linear { slope: Rat::from_integer(71), offset: Rat::from_integer(102) });
        assert_eq!(b.part, BoundPart::Untwisted);
        assert_eq!(b.pd_rsym.slope, Rat::from_integer(69));
        assert_eq!(b.pd_solver.unwrap().slope, Rat::from_integer(3));
        assert_eq!(b.dehn.slope, Rat::from_integer(21) + rat(1, 2));
    }

    #[test]
    fn bounds_free_group() {
        let f2 = Pregroup::free_product(&[], &["a".into(), "b".into()]).unwrap();
        let r = parse(&f2, "abABabbAB");
        let pres = Presentation::new(f2, vec![r]).unwrap();
        let b = dehn_bounds(&pres, rat(1, 10), None);
        assert_eq!(b.part, BoundPart::EmptyVp);
        assert_eq!(b.pd_rsym, Linear { slope: Rat::from_integer(6), offset: Rat::from_integer(10) });
    }
}
