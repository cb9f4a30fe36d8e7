//! The solver against independent ground truth: relator products are trivial, words with a
//! nontrivial image in PSL(2, 7) are not, and the two-stack variant agrees with the ring.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rsym::experiment::{random_conjugate_product, random_reduced_word};
use rsym::families::{tri, two_three};
use rsym::quotient::ProjectiveRep;
use rsym::solver::{BoundPart, Linear};
use rsym::{dehn_bounds, rat, Mode, Pregroup, Presentation, Rat, Solver};

/// Letter reads and writes per input letter, measured at 23.9 over 20 000 words.
const OPS_PER_LETTER: u64 = 32;

fn z(n: i64) -> Rat {
    Rat::from_integer(n)
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn conjugate_products_are_trivial(seed in any::<u64>(), k in 1usize..=5) {
        let pres = tri(3, 7);
        let s = Solver::new(&pres, Mode::TrivInt);
        let w = random_conjugate_product(&pres, k, 50, &mut rng(seed));
        prop_assert!(w.len() <= 600);
        let sol = s.solve_counted(&w);
        prop_assert!(sol.trivial, "{}", pres.format_word(&w));
        prop_assert!(sol.ops <= OPS_PER_LETTER * w.len() as u64);
    }

    #[test]
    fn words_seen_by_psl27_are_nontrivial(seed in any::<u64>(), n in 2usize..=120) {
        let pres = tri(3, 7);
        let q = ProjectiveRep::psl2_7(pres.pregroup());
        let s = Solver::new(&pres, Mode::TrivInt);
        let w = random_reduced_word(pres.pregroup(), n, &mut rng(seed));
        let sol = s.solve_counted(&w);
        if !q.kills(&w) {
            prop_assert!(!sol.trivial, "{}", pres.format_word(&w));
        }
        if sol.trivial {
            prop_assert!(q.kills(&w));
        }
        prop_assert!(sol.ops <= OPS_PER_LETTER * w.len() as u64);
    }

    #[test]
    fn two_stack_agrees_with_ring(seed in any::<u64>(), n in 0usize..=80, k in 1usize..=4) {
        let pres = tri(3, 8);
        let s = Solver::new(&pres, Mode::Plain);
        let mut r = rng(seed);
        let w = random_reduced_word(pres.pregroup(), n, &mut r);
        prop_assert_eq!(s.solve(&w), s.dehn(&w));
        let t = random_conjugate_product(&pres, k, 30, &mut r);
        prop_assert!(s.dehn(&t));
        prop_assert!(s.solve(&t));
    }
}

#[test]
fn rewrite_rules_shorten() {
    for (pres, mode) in [(tri(3, 7), Mode::TrivInt), (tri(3, 8), Mode::Plain), (tri(4, 5), Mode::Plain)] {
        let s = Solver::new(&pres, mode);
        assert!(!s.rewrite_list().is_empty());
        for rule in s.rewrite_list().rules() {
            assert!(rule.lhs.len() > rule.rhs.len());
        }
    }
}

#[test]
fn rewrite_rules_are_relations() {
    // Each rule u -> v must hold in the group, so u v⁻¹ is a product of relators.
    let pres = tri(3, 7);
    let q = ProjectiveRep::psl2_7(pres.pregroup());
    let p: &Pregroup = pres.pregroup();
    let s = Solver::new(&pres, Mode::TrivInt);
    for rule in s.rewrite_list().rules() {
        let mut w = rule.lhs.clone();
        w.extend(p.inverse_word(&rule.rhs));
        assert!(q.kills(&w), "{} -> {}", p.format_word(&rule.lhs), p.format_word(&rule.rhs));
    }
}

/// Direct evaluation of the bound formulas from `ε`, `r`, `r_I` and `r_γ`.
fn expected(pres: &Presentation, eps: Rat, mode: Option<Mode>) -> (Linear, Linear, Linear, Rat) {
    let r = Rat::from_integer(pres.max_len() as i64);
    let one = Rat::from_integer(1);
    let f = Linear { slope: z(6) + r + (z(3) + r) / (z(2) * eps), offset: (z(3) + r) / eps };
    let pd_rsym = if pres.vp().is_empty() {
        Linear { slope: one / (z(2) * eps) + one, offset: one / eps }
    } else if pres.check_untwisted() {
        Linear { slope: f.slope - z(2), offset: f.offset }
    } else {
        f
    };
    let pd = match mode {
        Some(Mode::Plain) => Linear { slope: one, offset: z(0) },
        Some(Mode::TrivInt) => Linear { slope: z(3), offset: z(0) },
        None => pd_rsym,
    };
    let ri = Rat::from_integer(pres.max_involutions() as i64);
    let dehn = Linear { slope: ri * pd.slope + rat(1, 2), offset: ri * pd.offset };
    let rg = Rat::from_integer(pres.max_len_with_vp() as i64);
    let lambda = rg * pd_rsym.slope + rat(1, 2);
    (f, pd_rsym, dehn, z(384) * lambda * rg * (rg - one) + z(64))
}

#[test]
fn dehn_bounds_recompute() {
    let free = {
        let p = Pregroup::free_product(&[], &["a".to_string(), "b".to_string()]).unwrap();
        let r = rsym::families::parse(&p, "BababbaabAAba");
        Presentation::new(p, vec![r]).unwrap()
    };
    let cases = [
        (tri(3, 7), rat(1, 6), Some(Mode::TrivInt)),
        (tri(3, 7), rat(1, 10), None),
        (tri(3, 8), rat(1, 10), Some(Mode::Plain)),
        (tri(5, 10), rat(1, 10), None),
        (two_three(13, 7), rat(1, 10), None),
        (free, rat(1, 10), None),
    ];
    for (pres, eps, mode) in cases {
        let b = dehn_bounds(&pres, eps, mode);
        let (f, pd_rsym, dehn, gamma) = expected(&pres, eps, mode);
        assert_eq!((b.f, b.pd_rsym, b.dehn, b.gamma), (f, pd_rsym, dehn, gamma));
    }
}

#[test]
fn pinned_bounds() {
    let b = dehn_bounds(&tri(3, 7), rat(1, 6), Some(Mode::TrivInt));
    assert_eq!(b.f, Linear { slope: rat(71, 1), offset: rat(102, 1) });
    assert_eq!(b.part, BoundPart::Untwisted);
    assert_eq!(b.pd_solver, Some(Linear { slope: rat(3, 1), offset: rat(0, 1) }));
    let r = rat(14, 1);
    assert_eq!(b.gamma, z(384) * b.lambda * r * (r - 1) + 64);

    let p = Pregroup::free_product(&[], &["a".to_string(), "b".to_string()]).unwrap();
    let w = rsym::families::parse(&p, "BababbaabAAba");
    let free = Presentation::new(p, vec![w]).unwrap();
    let b = dehn_bounds(&free, rat(1, 10), None);
    assert_eq!(b.part, BoundPart::EmptyVp);
    assert_eq!(b.pd_rsym, Linear { slope: rat(6, 1), offset: rat(10, 1) });
}
