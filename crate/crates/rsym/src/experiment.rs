//! Seeded random presentations over free products of free and finite groups.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exec::{self, Schedule};
use crate::pregroup::{Elem, FiniteGroup, Pregroup, Word};
use crate::presentation::{preprocess, Presentation};
use crate::verifier::{Rat, Verifier, VerifyResult};

/// A free product of finite groups and a free group of the given rank.
#[derive(Debug, Clone)]
pub struct Base {
    pub label: &'static str,
    pub factors: Vec<FiniteGroup>,
    pub rank: usize,
}

impl Base {
    pub fn free(rank: usize) -> Self {
        let label = match rank {
            2 => "f2",
            10 => "f10",
            100 => "f100",
            _ => "f",
        };
        Base { label, factors: Vec::new(), rank }
    }

    pub fn pregroup(&self) -> Pregroup {
        let names: Vec<String> = if self.rank <= 3 {
            ["a", "b", "c"][..self.rank].iter().map(|s| s.to_string()).collect()
        } else {
            (1..=self.rank).map(|i| format!("a{i}")).collect()
        };
        Pregroup::free_product(&self.factors, &names).expect("constructor factors are groups")
    }
}

/// One row entry of the random-relator experiments.
#[derive(Debug, Clone)]
pub struct Preset {
    pub name: String,
    pub base: Base,
    pub relators: usize,
    pub length: usize,
}

fn c(g: &str, m: usize) -> FiniteGroup {
    FiniteGroup::cyclic(g, m)
}

/// Every row of the random-relator table.
pub fn presets() -> Vec<Preset> {
    let c2c3 = Base { label: "c2c3", factors: vec![c("x", 2), c("y", 3)], rank: 0 };
    let c3c3c3 = Base { label: "c3c3c3", factors: vec![c("x", 3), c("y", 3), c("z", 3)], rank: 0 };
    let c3a5f3 = Base { label: "c3a5f3", factors: vec![c("x", 3), FiniteGroup::alternating5("p")], rank: 3 };
    let rows: Vec<(Base, usize, [usize; 3])> = vec![
        (Base::free(2), 2, [20, 30, 40]),
        (Base::free(2), 3, [25, 35, 45]),
        (Base::free(2), 10, [40, 50, 60]),
        (Base::free(2), 40, [52, 62, 72]),
        (Base::free(10), 10, [8, 20, 30]),
        (Base::free(10), 20, [10, 20, 30]),
        (Base::free(10), 30, [13, 20, 30]),
        (Base::free(10), 50, [15, 25, 35]),
        (Base::free(100), 30, [4, 10, 20]),
        (Base::free(100), 50, [4, 10, 20]),
        (Base::free(100), 70, [5, 10, 50]),
        (c2c3.clone(), 1, [96, 120, 160]),
        (c2c3.clone(), 2, [120, 160, 200]),
        (c2c3, 5, [200, 240, 280]),
        (c3c3c3.clone(), 1, [12, 24, 36]),
        (c3c3c3.clone(), 2, [20, 30, 40]),
        (c3c3c3, 5, [25, 55, 75]),
        (c3a5f3.clone(), 2, [5, 10, 20]),
        (c3a5f3.clone(), 3, [12, 20, 30]),
        (c3a5f3, 5, [15, 25, 35]),
    ];
    let mut out = Vec::new();
    for (base, m, ns) in rows {
        for n in ns {
            out.push(Preset { name: format!("{}-m{m}-n{n}", base.label), base: base.clone(), relators: m, length: n });
        }
    }
    out
}

pub fn preset(name: &str) -> Option<Preset> {
    presets().into_iter().find(|p| p.name == name)
}

/// Letter blocks: one per finite factor, then the free letters as one block.
struct Blocks {
    finite: Vec<Vec<Elem>>,
    free: Vec<Elem>,
}

impl Blocks {
    fn new(pg: &Pregroup, base: &Base) -> Self {
        let mut next = 1 as Elem;
        let mut finite = Vec::new();
        for f in &base.factors {
            let k = f.order() as Elem - 1;
            finite.push((next..next + k).collect());
            next += k;
        }
        let free = (next..pg.len() as Elem).collect();
        Blocks { finite, free }
    }

    /// Block index of each letter; the free block is last.
    fn block_of(&self, e: Elem) -> usize {
        self.finite.iter().position(|b| b.contains(&e)).unwrap_or(self.finite.len())
    }

    fn count(&self) -> usize {
        self.finite.len() + usize::from(!self.free.is_empty())
    }
}

/// A random cyclically P-reduced word of length `n`.
pub fn random_relator(pg: &Pregroup, base: &Base, n: usize, rng: &mut impl Rng) -> Word {
    let blocks = Blocks::new(pg, base);
    let free_block = blocks.finite.len();
    loop {
        let mut w: Word = Vec::with_capacity(n);
        let mut prev: Option<Elem> = None;
        for _ in 0..n {
            let allowed: Vec<usize> = (0..blocks.count())
                .filter(|&b| match prev {
                    Some(p) => b == free_block || blocks.block_of(p) != b,
                    None => true,
                })
                .collect();
            if allowed.is_empty() {
                break;
            }
            let b = allowed[rng.random_range(0..allowed.len())];
            let e = if b == free_block {
                let choices: Vec<Elem> =
                    blocks.free.iter().copied().filter(|&e| prev.is_none_or(|p| pg.sigma(p) != e)).collect();
                choices[rng.random_range(0..choices.len())]
            } else {
                let f = &blocks.finite[b];
                f[rng.random_range(0..f.len())]
            };
            w.push(e);
            prev = Some(e);
        }
        if w.len() == n && pg.is_cyclically_p_reduced(&w) {
            return w;
        }
    }
}

/// A uniformly grown P-reduced word of length `n`, cyclically P-reduced afterwards, so at
/// most `n` letters remain.
pub fn random_reduced_word(pg: &Pregroup, n: usize, rng: &mut impl Rng) -> Word {
    let letters: Vec<Elem> = pg.letters().collect();
    let mut w: Word = Vec::with_capacity(n);
    for _ in 0..n {
        let ok: Vec<Elem> = letters.iter().copied().filter(|&e| w.last().is_none_or(|&p| !pg.defined(p, e))).collect();
        if ok.is_empty() {
            break;
        }
        w.push(ok[rng.random_range(0..ok.len())]);
    }
    pg.cyclically_p_reduce(&w).expect("letters of the pregroup")
}

/// A product of `k` conjugates `u r u⁻¹` of relators, their inverses or rotations, with
/// conjugators of length at most `max_conj`. The result is not reduced.
pub fn random_conjugate_product(pres: &Presentation, k: usize, max_conj: usize, rng: &mut impl Rng) -> Word {
    let pg = pres.pregroup();
    let letters: Vec<Elem> = pg.letters().collect();
    let rels = pres.relators();
    let mut out = Word::new();
    for _ in 0..k {
        let mut r = rels[rng.random_range(0..rels.len())].clone();
        let shift = rng.random_range(0..r.len());
        r.rotate_left(shift);
        if rng.random_bool(0.5) {
            r = pg.inverse_word(&r);
        }
        let u: Word = (0..rng.random_range(0..=max_conj)).map(|_| letters[rng.random_range(0..letters.len())]).collect();
        out.extend_from_slice(&u);
        out.extend_from_slice(&r);
        out.extend(pg.inverse_word(&u));
    }
    out
}

/// Outcome of one random presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TrialOutcome {
    Verified,
    Failed,
    /// Preprocessing left nothing to verify, or the presentation is outside the tested class.
    Skipped(String),
}

#[derive(Debug, Clone)]
pub struct Trial {
    pub relators: Vec<Word>,
    pub outcome: TrialOutcome,
}

/// Samples every trial's relators from one seeded stream, then verifies them.
pub fn run_preset(preset: &Preset, trials: usize, seed: u64, eps: Rat, schedule: Schedule) -> Vec<Trial> {
    let pg = preset.base.pregroup();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples: Vec<Vec<Word>> = (0..trials)
        .map(|_| (0..preset.relators).map(|_| random_relator(&pg, &preset.base, preset.length, &mut rng)).collect())
        .collect();
    exec::map(schedule, &samples, |rels| Trial { relators: rels.clone(), outcome: verify_sample(&pg, rels, eps) })
}

fn verify_sample(pg: &Pregroup, rels: &[Word], eps: Rat) -> TrialOutcome {
    let pre = match preprocess(pg, rels) {
        Ok(p) => p,
        Err(e) => return TrialOutcome::Skipped(e.to_string()),
    };
    if let Some(d) = pre.degenerate {
        return TrialOutcome::Skipped(format!("{d:?}"));
    }
    let pres = match Presentation::new(pre.pregroup, pre.relators) {
        Ok(p) => p,
        Err(e) => return TrialOutcome::Skipped(e.to_string()),
    };
    let Ok(v) = Verifier::with_schedule(&pres, Schedule::Sequential) else {
        return TrialOutcome::Skipped("interleaving required".into());
    };
    match v.verify(eps, Schedule::Sequential) {
        Ok(VerifyResult::Verified) => TrialOutcome::Verified,
        Ok(VerifyResult::Fail(_)) => TrialOutcome::Failed,
        Err(e) => TrialOutcome::Skipped(e.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verifier::rat;

    #[test]
    fn relators_respect_sampling_rules() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in presets().iter().filter(|p| p.length <= 40 && p.base.rank <= 10) {
            let pg = p.base.pregroup();
            let blocks = Blocks::new(&pg, &p.base);
            let w = random_relator(&pg, &p.base, p.length, &mut rng);
            assert_eq!(w.len(), p.length);
            assert!(pg.is_cyclically_p_reduced(&w), "{}", p.name);
            for k in 0..w.len() {
                let (a, b) = (w[k], w[(k + 1) % w.len()]);
                let (ba, bb) = (blocks.block_of(a), blocks.block_of(b));
                assert!(ba != bb || ba == blocks.finite.len(), "{}", p.name);
                assert_ne!(pg.sigma(a), b);
            }
        }
    }

    #[test]
    fn seeded_runs_repeat() {
        let p = preset("f2-m2-n20").unwrap();
        let a = run_preset(&p, 3, 11, rat(1, 10), Schedule::Parallel);
        let b = run_preset(&p, 3, 11, rat(1, 10), Schedule::Sequential);
        assert_eq!(a.iter().map(|t| &t.relators).collect::<Vec<_>>(), b.iter().map(|t| &t.relators).collect::<Vec<_>>());
        assert_eq!(a.iter().map(|t| &t.outcome).collect::<Vec<_>>(), b.iter().map(|t| &t.outcome).collect::<Vec<_>>());
    }

    #[test]
    fn preset_names_unique() {
        let all = presets();
        let mut names: Vec<_> = all.iter().map(|p| p.name.clone()).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), all.len());
        assert_eq!(all.len(), 60);
    }
}
