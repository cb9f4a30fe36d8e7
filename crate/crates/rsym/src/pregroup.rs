//! Finite pregroups, their axioms, and reduction of words in the universal group.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Dense element index. `IDENTITY` is always 0.
pub type Elem = u16;

pub const IDENTITY: Elem = 0;
const UNDEFINED: Elem = Elem::MAX;

/// A word over the non-identity letters. The empty word is the identity.
pub type Word = Vec<Elem>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("pregroup needs at least the identity element")]
    Empty,
    #[error("sigma has {got} entries, expected {expected}")]
    SigmaLength { expected: usize, got: usize },
    #[error("multiplication table has {got} entries, expected {expected}")]
    MultLength { expected: usize, got: usize },
    #[error("element index {0} out of range")]
    OutOfRange(usize),
    #[error("sigma is not an involution at {0}")]
    NotInvolution(String),
    #[error("sigma does not fix the identity")]
    SigmaIdentity,
    #[error("duplicate element name {0:?}")]
    DuplicateName(String),
    #[error("too many elements ({0})")]
    TooLarge(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("factor {name}: {reason}")]
    NotAGroup { name: String, reason: String },
    #[error("free letter name {0:?} collides with another element")]
    NameClash(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown letter {0:?}")]
pub struct UnknownLetter(pub Elem);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Axiom {
    P1,
    P2,
    P3,
    P4,
    P5,
    InverseUniqueness,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::P1 => "P1",
            Axiom::P2 => "P2",
            Axiom::P3 => "P3",
            Axiom::P4 => "P4",
            Axiom::P5 => "P5",
            Axiom::InverseUniqueness => "inverse uniqueness",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<Elem>,
}

/// Square boolean matrix indexed by elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoolMatrix {
    n: usize,
    bits: Vec<bool>,
}

impl BoolMatrix {
    pub fn new(n: usize) -> Self {
        BoolMatrix { n, bits: vec![false; n * n] }
    }

    pub fn get(&self, a: Elem, b: Elem) -> bool {
        self.bits[a as usize * self.n + b as usize]
    }

    pub fn set(&mut self, a: Elem, b: Elem, v: bool) {
        self.bits[a as usize * self.n + b as usize] = v;
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Elem, Elem)> + '_ {
        (0..self.n).flat_map(move |a| {
            (0..self.n).filter_map(move |b| self.bits[a * self.n + b].then_some((a as Elem, b as Elem)))
        })
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }
}

/// A finite pregroup: elements, involution and partial multiplication.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pregroup {
    names: Vec<String>,
    sigma: Vec<Elem>,
    mult: Vec<Elem>,
    free: Vec<bool>,
}

impl Pregroup {
    /// Builds a table from names, the involution and a row-major partial product table.
    /// Only structural checks happen here; see [`Pregroup::validate_axioms`].
    pub fn from_parts(
        names: Vec<String>,
        sigma: Vec<Elem>,
        mult: Vec<Option<Elem>>,
    ) -> Result<Self, StructureError> {
        let n = names.len();
        if n == 0 {
            return Err(StructureError::Empty);
        }
        if n >= UNDEFINED as usize {
            return Err(StructureError::TooLarge(n));
        }
        if sigma.len() != n {
            return Err(StructureError::SigmaLength { expected: n, got: sigma.len() });
        }
        if mult.len() != n * n {
            return Err(StructureError::MultLength { expected: n * n, got: mult.len() });
        }
        let mut seen = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if seen.insert(name.clone(), i).is_some() {
                return Err(StructureError::DuplicateName(name.clone()));
            }
        }
        for &s in &sigma {
            if s as usize >= n {
                return Err(StructureError::OutOfRange(s as usize));
            }
        }
        if sigma[0] != IDENTITY {
            return Err(StructureError::SigmaIdentity);
        }
        for (i, &s) in sigma.iter().enumerate() {
            if sigma[s as usize] as usize != i {
                return Err(StructureError::NotInvolution(names[i].clone()));
            }
        }
        let mut flat = Vec::with_capacity(n * n);
        for m in mult {
            match m {
                Some(e) if e as usize >= n => return Err(StructureError::OutOfRange(e as usize)),
                Some(e) => flat.push(e),
                None => flat.push(UNDEFINED),
            }
        }
        let mut p = Pregroup { names, sigma, mult: flat, free: vec![false; n] };
        p.refresh_free();
        Ok(p)
    }

    /// A letter is free when its only defined products are with the identity and its inverse.
    fn refresh_free(&mut self) {
        let n = self.len();
        for a in 1..n {
            let s = self.sigma[a] as usize;
            let lonely = (1..n).all(|b| {
                let defined = self.mult[a * n + b] != UNDEFINED || self.mult[b * n + a] != UNDEFINED;
                !defined || b == s
            });
            self.free[a] = lonely && s != a;
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.len() <= 1
    }

    /// The non-identity elements, `X = P \ {1}`.
    pub fn letters(&self) -> impl Iterator<Item = Elem> + Clone {
        1..self.len() as Elem
    }

    pub fn name(&self, e: Elem) -> &str {
        &self.names[e as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn lookup(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == name).map(|i| i as Elem)
    }

    pub fn sigma(&self, e: Elem) -> Elem {
        self.sigma[e as usize]
    }

    /// `[ab]` when `(a, b)` lies in the domain `D(P)`.
    pub fn mult(&self, a: Elem, b: Elem) -> Option<Elem> {
        let m = self.mult[a as usize * self.len() + b as usize];
        (m != UNDEFINED).then_some(m)
    }

    pub fn defined(&self, a: Elem, b: Elem) -> bool {
        self.mult[a as usize * self.len() + b as usize] != UNDEFINED
    }

    pub fn is_free_letter(&self, e: Elem) -> bool {
        self.free[e as usize]
    }

    pub fn is_self_inverse(&self, e: Elem) -> bool {
        e != IDENTITY && self.sigma(e) == e
    }

    /// Size of the domain `D(P)`.
    pub fn domain_size(&self) -> usize {
        self.mult.iter().filter(|&&m| m != UNDEFINED).count()
    }

    pub fn inverse_word(&self, w: &[Elem]) -> Word {
        w.iter().rev().map(|&e| self.sigma(e)).collect()
    }

    pub fn format_word(&self, w: &[Elem]) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let sep = if w.iter().all(|&e| self.name(e).chars().count() == 1) { "" } else { " " };
        w.iter().map(|&e| self.name(e)).collect::<Vec<_>>().join(sep)
    }

    fn check_word(&self, w: &[Elem]) -> Result<(), UnknownLetter> {
        match w.iter().find(|&&e| e == IDENTITY || e as usize >= self.len()) {
            Some(&e) => Err(UnknownLetter(e)),
            None => Ok(()),
        }
    }

    /// Checks P1 to P5 and uniqueness of inverses exhaustively.
    pub fn validate_axioms(&self) -> Vec<Violation> {
        let n = self.len() as Elem;
        let mut out = Vec::new();
        let mut push = |axiom, witness: &[Elem]| out.push(Violation { axiom, witness: witness.to_vec() });

        for p in 0..n {
            if self.mult(IDENTITY, p) != Some(p) || self.mult(p, IDENTITY) != Some(p) {
                push(Axiom::P1, &[p]);
            }
        }
        for p in 0..n {
            let s = self.sigma(p);
            if self.mult(p, s) != Some(IDENTITY) || self.mult(s, p) != Some(IDENTITY) {
                push(Axiom::P2, &[p]);
            }
        }
        for u in 0..n {
            for v in 0..n {
                if let Some(uv) = self.mult(u, v) {
                    if self.mult(self.sigma(v), self.sigma(u)) != Some(self.sigma(uv)) {
                        push(Axiom::P3, &[u, v]);
                    }
                }
            }
        }
        for u in 0..n {
            for v in 0..n {
                let Some(uv) = self.mult(u, v) else { continue };
                for w in 0..n {
                    let Some(vw) = self.mult(v, w) else { continue };
                    let left = self.mult(uv, w);
                    let right = self.mult(u, vw);
                    if (left.is_some() || right.is_some()) && left != right {
                        push(Axiom::P4, &[u, v, w]);
                    }
                }
            }
        }
        for w in 0..n {
            for x in 0..n {
                let Some(wx) = self.mult(w, x) else { continue };
                for y in 0..n {
                    let Some(xy) = self.mult(x, y) else { continue };
                    for z in 0..n {
                        if self.defined(y, z) && !self.defined(wx, y) && !self.defined(xy, z) {
                            push(Axiom::P5, &[w, x, y, z]);
                        }
                    }
                }
            }
        }
        for p in 0..n {
            for q in 0..n {
                if self.mult(p, q) == Some(IDENTITY) && q != self.sigma(p) {
                    push(Axiom::InverseUniqueness, &[p, q]);
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate_axioms().is_empty()
    }

    /// Left-to-right stack reduction; each letter is pushed at most once.
    pub fn p_reduce(&self, w: &[Elem]) -> Result<Word, UnknownLetter> {
        self.check_word(w)?;
        Ok(self.p_reduce_unchecked(w))
    }

    pub(crate) fn p_reduce_unchecked(&self, w: &[Elem]) -> Word {
        let mut stack: Word = Vec::with_capacity(w.len());
        for &x in w {
            let mut cur = x;
            loop {
                match stack.last().and_then(|&t| self.mult(t, cur)) {
                    Some(p) => {
                        stack.pop();
                        if p == IDENTITY {
                            break;
                        }
                        cur = p;
                    }
                    None => {
                        stack.push(cur);
                        break;
                    }
                }
            }
        }
        stack
    }

    pub fn is_p_reduced(&self, w: &[Elem]) -> bool {
        w.windows(2).all(|p| !self.defined(p[0], p[1]))
    }

    pub fn is_cyclically_p_reduced(&self, w: &[Elem]) -> bool {
        self.is_p_reduced(w) && (w.len() < 2 || !self.defined(w[w.len() - 1], w[0]))
    }

    /// Reduces, then trims the two ends against each other, returning a conjugate.
    pub fn cyclically_p_reduce(&self, w: &[Elem]) -> Result<Word, UnknownLetter> {
        self.check_word(w)?;
        Ok(self.cyclically_p_reduce_unchecked(w))
    }

    pub(crate) fn cyclically_p_reduce_unchecked(&self, w: &[Elem]) -> Word {
        let mut d: VecDeque<Elem> = self.p_reduce_unchecked(w).into();
        while d.len() >= 2 {
            let (first, last) = (d[0], d[d.len() - 1]);
            let Some(c) = self.mult(last, first) else { break };
            d.pop_front();
            d.pop_back();
            if c == IDENTITY {
                continue;
            }
            let mut cur = c;
            loop {
                match d.front().and_then(|&f| self.mult(cur, f)) {
                    Some(p) => {
                        d.pop_front();
                        if p == IDENTITY {
                            break;
                        }
                        cur = p;
                    }
                    None => {
                        d.push_front(cur);
                        break;
                    }
                }
            }
        }
        d.into()
    }

    /// `(a, b)` intermult when `b != σ(a)` and either `[ab]` is defined or some
    /// `x` has `(a, x)` and `(σ(x), b)` defined.
    pub fn intermult_table(&self) -> BoolMatrix {
        let n = self.len();
        let mut m = BoolMatrix::new(n);
        for a in self.letters() {
            for b in self.letters() {
                if b == self.sigma(a) {
                    continue;
                }
                let hit = self.defined(a, b)
                    || self.letters().any(|x| self.defined(a, x) && self.defined(self.sigma(x), b));
                m.set(a, b, hit);
            }
        }
        m
    }

    /// `I(a, b) = { s : (a, s), (σ(s), b) ∈ D(P) }`, which always contains the identity.
    pub fn interleave_set(&self, a: Elem, b: Elem) -> Vec<Elem> {
        (0..self.len() as Elem)
            .filter(|&s| self.defined(a, s) && self.defined(self.sigma(s), b))
            .collect()
    }

    /// Length-three relators `x y σ([xy])` for defined non-inverse products.
    pub fn build_vp(&self) -> Vec<Word> {
        let mut seen = std::collections::BTreeSet::new();
        for x in self.letters() {
            for y in self.letters() {
                if y == self.sigma(x) {
                    continue;
                }
                if let Some(xy) = self.mult(x, y) {
                    let w = vec![x, y, self.sigma(xy)];
                    seen.insert(min_rotation(&w));
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Removes a free letter and its inverse, reindexing the remaining elements.
    /// Returns the old-to-new index map (`None` for the removed pair).
    pub fn remove_free_pair(&self, a: Elem) -> (Pregroup, Vec<Option<Elem>>) {
        assert!(self.is_free_letter(a), "only free letters can be eliminated");
        let s = self.sigma(a);
        self.restrict(|e| e != a && e != s)
    }

    /// Turns a free pair `{a, σ(a)}` into a single letter of order two.
    pub fn make_self_inverse(&self, a: Elem) -> (Pregroup, Vec<Option<Elem>>) {
        assert!(self.is_free_letter(a), "only free letters can become involutions");
        let s = self.sigma(a);
        let (mut p, map) = self.restrict(|e| e != s);
        let na = map[a as usize].expect("kept");
        let n = p.len();
        p.sigma[na as usize] = na;
        p.mult[na as usize * n + na as usize] = IDENTITY;
        p.refresh_free();
        let mut map = map;
        map[s as usize] = Some(na);
        (p, map)
    }

    fn restrict(&self, keep: impl Fn(Elem) -> bool) -> (Pregroup, Vec<Option<Elem>>) {
        let n = self.len();
        let mut map = vec![None; n];
        let mut names = Vec::new();
        for e in 0..n as Elem {
            if keep(e) {
                map[e as usize] = Some(names.len() as Elem);
                names.push(self.names[e as usize].clone());
            }
        }
        let m = names.len();
        let mut sigma = vec![IDENTITY; m];
        let mut mult = vec![UNDEFINED; m * m];
        for a in 0..n {
            let Some(na) = map[a] else { continue };
            sigma[na as usize] = map[self.sigma[a] as usize].unwrap_or(na);
            for b in 0..n {
                let Some(nb) = map[b] else { continue };
                let p = self.mult[a * n + b];
                if p != UNDEFINED {
                    if let Some(np) = map[p as usize] {
                        mult[na as usize * m + nb as usize] = np;
                    }
                }
            }
        }
        let mut p = Pregroup { names, sigma, mult, free: vec![false; m] };
        p.refresh_free();
        (p, map)
    }
}

/// Lexicographically least rotation of a word.
pub fn min_rotation(w: &[Elem]) -> Word {
    let n = w.len();
    (0..n.max(1))
        .map(|i| w[i.min(n)..].iter().chain(&w[..i.min(n)]).copied().collect::<Word>())
        .min()
        .unwrap_or_default()
}

/// A finite group given by a Cayley table; element 0 is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    pub name: String,
    pub elements: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

impl FiniteGroup {
    /// Cyclic group of order `m` generated by `g`. Element names are `g`, `G` for
    /// the inverse when `m > 2`, and `g^k` otherwise.
    pub fn cyclic(g: &str, m: usize) -> Self {
        assert!(m >= 2, "cyclic factors need order at least two");
        let mut elements = vec!["1".to_string()];
        for k in 1..m {
            let name = if k == 1 {
                g.to_string()
            } else if k == m - 1 {
                invert_case(g)
            } else {
                format!("{g}^{k}")
            };
            elements.push(name);
        }
        let table = (0..m).map(|a| (0..m).map(|b| (a + b) % m).collect()).collect();
        FiniteGroup { name: format!("C{m}"), elements, table }
    }

    /// Alternating group A5 as even permutations of five points, in lexicographic order.
    pub fn alternating5(prefix: &str) -> Self {
        let mut perms: Vec<[usize; 5]> = Vec::new();
        let mut p = [0, 1, 2, 3, 4];
        permutations(&mut p, 0, &mut perms);
        perms.retain(|q| parity(q) == 0);
        perms.sort();
        let idx: HashMap<[usize; 5], usize> = perms.iter().enumerate().map(|(i, q)| (*q, i)).collect();
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| {
                        let mut c = [0; 5];
                        for i in 0..5 {
                            c[i] = a[b[i]];
                        }
                        idx[&c]
                    })
                    .collect()
            })
            .collect();
        let elements = (0..perms.len())
            .map(|i| if i == 0 { "1".to_string() } else { format!("{prefix}{i}") })
            .collect();
        FiniteGroup { name: "A5".to_string(), elements, table }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn check(&self) -> Result<(), GroupError> {
        let n = self.order();
        let fail = |reason: String| GroupError::NotAGroup { name: self.name.clone(), reason };
        if n == 0 || self.table.len() != n || self.table.iter().any(|r| r.len() != n) {
            return Err(fail("table is not square".into()));
        }
        if self.table.iter().flatten().any(|&x| x >= n) {
            return Err(fail("entry out of range".into()));
        }
        for a in 0..n {
            if self.table[0][a] != a || self.table[a][0] != a {
                return Err(fail("element 0 is not the identity".into()));
            }
            if !(0..n).any(|b| self.table[a][b] == 0) {
                return Err(fail(format!("{} has no inverse", self.elements[a])));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]] {
                        return Err(fail("multiplication is not associative".into()));
                    }
                }
            }
        }
        Ok(())
    }
}

fn permutations(p: &mut [usize; 5], k: usize, out: &mut Vec<[usize; 5]>) {
    if k == p.len() {
        out.push(*p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, out);
        p.swap(k, i);
    }
}

fn parity(p: &[usize; 5]) -> usize {
    let mut inv = 0;
    for i in 0..5 {
        for j in i + 1..5 {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    inv % 2
}

/// Swaps the case of every character; used to name inverses of generators.
pub fn invert_case(s: &str) -> String {
    s.chars()
        .map(|c| if c.is_lowercase() { c.to_uppercase().next().unwrap() } else { c.to_lowercase().next().unwrap() })
        .collect()
}

impl Pregroup {
    /// The free-product pregroup of finite groups and a free group whose basis is `free`.
    /// Free letter `a` gets inverse name from [`invert_case`].
    pub fn free_product(factors: &[FiniteGroup], free: &[String]) -> Result<Pregroup, GroupError> {
        let mut names = vec!["1".to_string()];
        let mut blocks = Vec::new();
        for f in factors {
            f.check()?;
            let start = names.len();
            for e in &f.elements[1..] {
                names.push(e.clone());
            }
            blocks.push(start);
        }
        let free_start = names.len();
        for a in free {
            names.push(a.clone());
            names.push(invert_case(a));
        }
        let mut seen = std::collections::HashSet::new();
        for nm in &names {
            if !seen.insert(nm.clone()) {
                return Err(GroupError::NameClash(nm.clone()));
            }
        }
        let n = names.len();
        let mut sigma = vec![IDENTITY; n];
        let mut mult = vec![None; n * n];
        for e in 0..n {
            mult[e] = Some(e as Elem);
            mult[e * n] = Some(e as Elem);
        }
        for (f, &start) in factors.iter().zip(&blocks) {
            let global = |i: usize| if i == 0 { 0 } else { start + i - 1 };
            for a in 0..f.order() {
                for b in 0..f.order() {
                    let c = f.table[a][b];
                    mult[global(a) * n + global(b)] = Some(global(c) as Elem);
                    if c == 0 {
                        sigma[global(a)] = global(b) as Elem;
                    }
                }
            }
        }
        for i in 0..free.len() {
            let a = free_start + 2 * i;
            let s = a + 1;
            sigma[a] = s as Elem;
            sigma[s] = a as Elem;
            mult[a * n + s] = Some(IDENTITY);
            mult[s * n + a] = Some(IDENTITY);
        }
        Ok(Pregroup::from_parts(names, sigma, mult).expect("free products are structurally sound"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn p23() -> Pregroup {
        Pregroup::free_product(&[FiniteGroup::cyclic("x", 2), FiniteGroup::cyclic("y", 3)], &[]).unwrap()
    }

    fn w(p: &Pregroup, s: &str) -> Word {
        s.chars().map(|c| p.lookup(&c.to_string()).unwrap()).collect()
    }

    fn show(p: &Pregroup, w: &[Elem]) -> String {
        w.iter().map(|&e| p.name(e)).collect()
    }

    #[test]
    fn p23_shape() {
        let p = p23();
        assert_eq!(p.names(), &["1", "x", "y", "Y"]);
        assert_eq!(p.len(), 4);
        assert_eq!(p.domain_size(), 12);
        assert!(p.is_valid());
    }

    #[test]
    fn partial_mult_examples() {
        let p = p23();
        let (x, y, yy) = (1, 2, 3);
        assert_eq!(p.mult(IDENTITY, x), Some(x));
        assert_eq!(p.mult(y, y), Some(yy));
        assert_eq!(p.mult(x, y), None);
    }

    #[test]
    fn p_reduce_examples() {
        let p = p23();
        assert_eq!(show(&p, &p.p_reduce(&w(&p, "yY")).unwrap()), "");
        assert_eq!(show(&p, &p.p_reduce(&w(&p, "yyx")).unwrap()), "Yx");
        assert_eq!(show(&p, &p.p_reduce(&w(&p, "xy")).unwrap()), "xy");
        assert!(p.p_reduce(&[7]).is_err());
        assert!(p.p_reduce(&[IDENTITY]).is_err());
    }

    #[test]
    fn cyclic_reduce_examples() {
        let p = p23();
        assert_eq!(show(&p, &p.cyclically_p_reduce(&w(&p, "xyx")).unwrap()), "y");
        assert_eq!(show(&p, &p.cyclically_p_reduce(&w(&p, "Yxy")).unwrap()), "x");
        assert_eq!(show(&p, &p.cyclically_p_reduce(&w(&p, "xy")).unwrap()), "xy");
        assert_eq!(show(&p, &p.cyclically_p_reduce(&w(&p, "yxyxy")).unwrap()), "Yxyx");
    }

    #[test]
    fn intermult_examples() {
        let p = p23();
        let m = p.intermult_table();
        assert_eq!(m.pairs().collect::<Vec<_>>(), vec![(2, 2), (3, 3)]);

        let f2 = Pregroup::free_product(&[], &["a".into(), "b".into()]).unwrap();
        assert_eq!(f2.names(), &["1", "a", "A", "b", "B"]);
        assert_eq!(f2.intermult_table().count(), 0);

        let c33 = Pregroup::free_product(&[FiniteGroup::cyclic("a", 3), FiniteGroup::cyclic("b", 3)], &[]).unwrap();
        let pairs: Vec<_> = c33.intermult_table().pairs().map(|(a, b)| format!("{}{}", c33.name(a), c33.name(b))).collect();
        assert_eq!(pairs, vec!["aa", "AA", "bb", "BB"]);
        assert_eq!(c33.len(), 5);
    }

    #[test]
    fn vp_examples() {
        let p = p23();
        let vp: Vec<String> = p.build_vp().iter().map(|w| show(&p, w)).collect();
        assert_eq!(vp, vec!["yyy", "YYY"]);
        let f2 = Pregroup::free_product(&[], &["a".into(), "b".into()]).unwrap();
        assert!(f2.build_vp().is_empty());
        let c33 = Pregroup::free_product(&[FiniteGroup::cyclic("a", 3), FiniteGroup::cyclic("b", 3)], &[]).unwrap();
        let vp: Vec<String> = c33.build_vp().iter().map(|w| show(&c33, w)).collect();
        assert_eq!(vp, vec!["aaa", "AAA", "bbb", "BBB"]);
    }

    #[test]
    fn mutation_examples() {
        let p = p23();
        let mut names = p.names().to_vec();
        let mut mult: Vec<Option<Elem>> = (0..16).map(|i| p.mult(i / 4, i % 4)).collect();
        mult[2 * 4 + 2] = Some(2);
        let bad = Pregroup::from_parts(names.clone(), p.sigma.clone(), mult).unwrap();
        let v = bad.validate_axioms();
        assert!(v.contains(&Violation { axiom: Axiom::P4, witness: vec![2, 2, 3] }));

        let mult: Vec<Option<Elem>> = (0..16).map(|i| p.mult(i / 4, i % 4)).collect();
        let bad = Pregroup::from_parts(names.clone(), vec![0, 1, 2, 3], mult).unwrap();
        assert!(bad.validate_axioms().iter().any(|v| v.axiom == Axiom::P2));

        names[3] = "y".into();
        let mult: Vec<Option<Elem>> = (0..16).map(|i| p.mult(i / 4, i % 4)).collect();
        assert_eq!(
            Pregroup::from_parts(names, p.sigma.clone(), mult),
            Err(StructureError::DuplicateName("y".into()))
        );
        let mult: Vec<Option<Elem>> = (0..16).map(|i| p.mult(i / 4, i % 4)).collect();
        assert!(matches!(
            Pregroup::from_parts(p.names().to_vec(), vec![0, 1, 1, 3], mult),
            Err(StructureError::NotInvolution(_))
        ));
    }

    #[test]
    fn free_letters_and_surgery() {
        let f2 = Pregroup::free_product(&[FiniteGroup::cyclic("x", 2)], &["a".into(), "b".into()]).unwrap();
        let a = f2.lookup("a").unwrap();
        assert!(f2.is_free_letter(a));
        assert!(!f2.is_free_letter(f2.lookup("x").unwrap()));
        let (g, map) = f2.make_self_inverse(a);
        assert!(g.is_valid());
        let na = map[a as usize].unwrap();
        assert_eq!(map[f2.lookup("A").unwrap() as usize], Some(na));
        assert!(g.is_self_inverse(na));
        let (h, map) = g.remove_free_pair(g.lookup("b").unwrap());
        assert!(h.is_valid());
        assert_eq!(h.names(), &["1", "x", "a"]);
        assert_eq!(map.iter().filter(|m| m.is_none()).count(), 2);
    }

    #[test]
    fn alternating_group() {
        let a5 = FiniteGroup::alternating5("s");
        assert_eq!(a5.order(), 60);
        a5.check().unwrap();
        let p = Pregroup::free_product(&[FiniteGroup::cyclic("c", 3), a5], &["a".into()]).unwrap();
        assert_eq!(p.len(), 1 + 2 + 59 + 2);
    }

    #[test]
    fn non_group_factor_rejected() {
        let mut g = FiniteGroup::cyclic("y", 3);
        g.table[1][1] = 1;
        assert!(matches!(Pregroup::free_product(&[g], &[]), Err(GroupError::NotAGroup { .. })));
    }

    #[test]
    fn min_rotation_works() {
        assert_eq!(min_rotation(&[3, 1, 2]), vec![1, 2, 3]);
        assert_eq!(min_rotation(&[]), Vec::<Elem>::new());
    }
}
