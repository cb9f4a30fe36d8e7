//! Pregroup presentations `<X^σ | V_P | R>`, preprocessing and structural gates.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pregroup::{min_rotation, BoolMatrix, Elem, Pregroup, Word, IDENTITY};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("relator {0} is not cyclically P-reduced")]
    NotReduced(String),
    #[error("relator {0} has length below three")]
    TooShort(String),
    #[error("relator {0} uses a letter outside the pregroup")]
    BadLetter(usize),
    #[error("two distinct cyclic conjugates {0} and {1} share all but their last letter")]
    SharedPrefix(String, String),
    #[error("cannot eliminate using {0}: neither letter is a free generator")]
    NotEliminable(String),
}

/// Why preprocessing stopped short of a usable presentation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Degeneracy {
    /// A relator of length one forces a generator to be trivial.
    TrivialGenerator(String),
    /// Every relator was absorbed; the group is the universal group of the pregroup.
    NoRelators,
}

#[derive(Debug, Clone)]
pub struct Preprocessed {
    pub pregroup: Pregroup,
    pub relators: Vec<Word>,
    pub log: Vec<String>,
    pub degenerate: Option<Degeneracy>,
}

/// A validated pregroup presentation with its derived tables.
#[derive(Debug, Clone)]
pub struct Presentation {
    pregroup: Pregroup,
    relators: Vec<Word>,
    signed: Vec<Word>,
    periods: Vec<usize>,
    vp: Vec<Word>,
    intermult: BoolMatrix,
    rletters: Vec<bool>,
    r: usize,
}

impl Presentation {
    /// Checks that relators are cyclically P-reduced of length at least three and satisfy
    /// the distinct-conjugate prefix hypothesis. Relators equal up to rotation and
    /// inversion are merged.
    pub fn new(pregroup: Pregroup, relators: Vec<Word>) -> Result<Self, PresentationError> {
        for r in &relators {
            if let Some(&e) = r.iter().find(|&&e| e == IDENTITY || e as usize >= pregroup.len()) {
                return Err(PresentationError::BadLetter(e as usize));
            }
            if r.len() < 3 {
                return Err(PresentationError::TooShort(pregroup.format_word(r)));
            }
            if !pregroup.is_cyclically_p_reduced(r) {
                return Err(PresentationError::NotReduced(pregroup.format_word(r)));
            }
        }
        let mut keys = BTreeSet::new();
        let mut kept = Vec::new();
        for r in relators {
            if keys.insert(conjugacy_key(&pregroup, &r)) {
                kept.push(r);
            }
        }
        let mut signed = kept.clone();
        for r in &kept {
            let inv = pregroup.inverse_word(r);
            if min_rotation(&inv) != min_rotation(r) {
                signed.push(inv);
            }
        }
        check_prefix_hypothesis(&pregroup, &signed)?;
        let periods = signed.iter().map(|r| power_decomposition(r).0.len()).collect();
        let intermult = pregroup.intermult_table();
        let mut rletters = vec![false; pregroup.len()];
        for r in &signed {
            for &e in r {
                rletters[e as usize] = true;
            }
        }
        let r = kept.iter().map(Vec::len).max().unwrap_or(0);
        let vp = pregroup.build_vp();
        Ok(Presentation { pregroup, relators: kept, signed, periods, vp, intermult, rletters, r })
    }

    pub fn pregroup(&self) -> &Pregroup {
        &self.pregroup
    }

    /// The relators `R`.
    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// `R^±`: the relators followed by those inverses that are not rotations of a relator.
    pub fn signed_relators(&self) -> &[Word] {
        &self.signed
    }

    /// Length of the primitive period of the `i`-th signed relator.
    pub fn period(&self, i: usize) -> usize {
        self.periods[i]
    }

    pub fn vp(&self) -> &[Word] {
        &self.vp
    }

    pub fn intermult(&self, a: Elem, b: Elem) -> bool {
        self.intermult.get(a, b)
    }

    pub fn intermult_table(&self) -> &BoolMatrix {
        &self.intermult
    }

    pub fn is_rletter(&self, e: Elem) -> bool {
        self.rletters[e as usize]
    }

    /// Maximum relator length `r`.
    pub fn max_len(&self) -> usize {
        self.r
    }

    /// True when every cyclically adjacent pair in every relator has trivial interleave set.
    pub fn check_untwisted(&self) -> bool {
        self.relators.iter().all(|r| {
            (0..r.len()).all(|i| {
                let (a, b) = (r[i], r[(i + 1) % r.len()]);
                self.pregroup.interleave_set(a, b) == [IDENTITY]
            })
        })
    }

    /// True when every intermult pair is a defined product.
    pub fn intermult_in_domain(&self) -> bool {
        self.intermult.pairs().all(|(a, b)| self.pregroup.defined(a, b))
    }

    /// Largest number of involutory letters in a relator of `V_P` or `R`.
    pub fn max_involutions(&self) -> usize {
        self.vp
            .iter()
            .chain(&self.relators)
            .map(|w| w.iter().filter(|&&e| self.pregroup.is_self_inverse(e)).count())
            .max()
            .unwrap_or(0)
    }

    /// Maximum length over `V_P` and `R`.
    pub fn max_len_with_vp(&self) -> usize {
        let vp = if self.vp.is_empty() { 0 } else { 3 };
        self.r.max(vp)
    }

    pub fn format_word(&self, w: &[Elem]) -> String {
        self.pregroup.format_word(w)
    }
}

/// Interleave sets `I(a, b)` for all pairs of elements.
#[derive(Debug, Clone)]
pub struct InterleaveTable {
    n: usize,
    sets: Vec<Vec<Elem>>,
}

impl InterleaveTable {
    pub fn new(p: &Pregroup) -> Self {
        let n = p.len();
        let mut sets = Vec::with_capacity(n * n);
        for a in 0..n as Elem {
            for b in 0..n as Elem {
                sets.push(p.interleave_set(a, b));
            }
        }
        InterleaveTable { n, sets }
    }

    pub fn get(&self, a: Elem, b: Elem) -> &[Elem] {
        &self.sets[a as usize * self.n + b as usize]
    }
}

/// Returns `(w, k)` with `r = w^k` and `k` maximal.
pub fn power_decomposition(r: &[Elem]) -> (Word, usize) {
    let n = r.len();
    for l in 1..=n / 2 {
        if n.is_multiple_of(l) && (l..n).all(|i| r[i] == r[i - l]) {
            return (r[..l].to_vec(), n / l);
        }
    }
    (r.to_vec(), 1)
}

/// Key identifying a relator up to rotation and inversion.
fn conjugacy_key(p: &Pregroup, r: &[Elem]) -> Word {
    min_rotation(r).min(min_rotation(&p.inverse_word(r)))
}

fn rotations(r: &[Elem]) -> impl Iterator<Item = Word> + '_ {
    (0..r.len()).map(move |i| r[i..].iter().chain(&r[..i]).copied().collect())
}

fn check_prefix_hypothesis(p: &Pregroup, signed: &[Word]) -> Result<(), PresentationError> {
    let words: BTreeSet<Word> = signed.iter().flat_map(|r| rotations(r)).collect();
    let mut by_prefix: HashMap<&[Elem], &Word> = HashMap::new();
    for w in &words {
        let prefix = &w[..w.len() - 1];
        if let Some(other) = by_prefix.insert(prefix, w) {
            return Err(PresentationError::SharedPrefix(p.format_word(other), p.format_word(w)));
        }
    }
    Ok(())
}

/// Simplifies a raw relator list over `p`: relators of length one or two eliminate
/// generators or make them involutions, and long common prefixes between relators are
/// cut down. Iterates to a fixpoint.
pub fn preprocess(p: &Pregroup, raw: &[Word]) -> Result<Preprocessed, PresentationError> {
    let mut p = p.clone();
    let mut rels: Vec<Word> = raw.to_vec();
    let mut log = Vec::new();
    loop {
        rels = normalise(&p, &rels);
        if let Some(pos) = rels.iter().position(|r| r.len() <= 2) {
            let r = rels[pos].clone();
            if r.len() == 1 {
                let name = p.name(r[0]).to_string();
                log.push(format!("relator {name} makes a generator trivial"));
                return Ok(Preprocessed {
                    pregroup: p,
                    relators: rels,
                    log,
                    degenerate: Some(Degeneracy::TrivialGenerator(name)),
                });
            }
            let (x, y) = (r[0], r[1]);
            let text = p.format_word(&r);
            if x == y {
                if !p.is_free_letter(x) {
                    return Err(PresentationError::NotEliminable(text));
                }
                log.push(format!("{} becomes an involution", p.name(x)));
                let (q, map) = p.make_self_inverse(x);
                rels = rels.iter().map(|w| w.iter().map(|&e| map[e as usize].unwrap()).collect()).collect();
                p = q;
                continue;
            }
            let pair = |e: Elem| e.min(p.sigma(e));
            let mut options = Vec::new();
            if p.is_free_letter(y) {
                options.push((y, x));
            }
            if p.is_free_letter(x) {
                options.push((x, y));
            }
            // Eliminate the later generator and keep the lower-indexed one.
            let Some(&(gone, other)) = options.iter().max_by_key(|(g, _)| pair(*g)) else {
                return Err(PresentationError::NotEliminable(text));
            };
            log.push(format!("eliminate {} = {}", p.name(gone), p.name(p.sigma(other))));
            let image_of_gone = p.sigma(other);
            let (q, map) = p.remove_free_pair(gone);
            let sub = |e: Elem| -> Word {
                if e == gone {
                    vec![map[image_of_gone as usize].unwrap()]
                } else if e == p.sigma(gone) {
                    vec![map[other as usize].unwrap()]
                } else {
                    vec![map[e as usize].unwrap()]
                }
            };
            rels = rels.iter().map(|w| w.iter().flat_map(|&e| sub(e)).collect()).collect();
            p = q;
            continue;
        }
        if let Some((j, replacement, text)) = find_prefix_cut(&p, &rels) {
            log.push(text);
            rels[j] = replacement;
            continue;
        }
        break;
    }
    let degenerate = rels.is_empty().then_some(Degeneracy::NoRelators);
    Ok(Preprocessed { pregroup: p, relators: rels, log, degenerate })
}

/// Cyclically reduces, drops trivial relators and merges duplicates up to rotation and inversion.
fn normalise(p: &Pregroup, rels: &[Word]) -> Vec<Word> {
    let mut keys = BTreeSet::new();
    let mut out = Vec::new();
    for r in rels {
        let c = p.cyclically_p_reduce_unchecked(r);
        if c.is_empty() {
            continue;
        }
        if keys.insert(conjugacy_key(p, &c)) {
            out.push(c);
        }
    }
    out
}

/// Finds distinct conjugates `S1 = w w1` of `R_i^±` and `S2 = w w2` of `R_j^±` with
/// `|w| > |w1|`, and returns the replacement `w1⁻¹ w2` for `R_j`.
fn find_prefix_cut(p: &Pregroup, rels: &[Word]) -> Option<(usize, Word, String)> {
    let signed = |r: &Word| -> Vec<Word> {
        let inv = p.inverse_word(r);
        rotations(r).chain(rotations(&inv).collect::<Vec<_>>()).collect()
    };
    for i in 0..rels.len() {
        let s1s = signed(&rels[i]);
        for j in 0..rels.len() {
            if i == j {
                continue;
            }
            for s2 in signed(&rels[j]) {
                for s1 in &s1s {
                    let common = s1.iter().zip(&s2).take_while(|(a, b)| a == b).count();
                    if s1 == &s2 || 2 * common <= s1.len() {
                        continue;
                    }
                    let mut w = p.inverse_word(&s1[common..]);
                    w.extend_from_slice(&s2[common..]);
                    let text = format!(
                        "replace {} by {} using {}",
                        p.format_word(&rels[j]),
                        p.format_word(&w),
                        p.format_word(&rels[i])
                    );
                    return Some((j, w, text));
                }
            }
        }
    }
    None
}
