use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rsym::families::c2_cm;
use rsym::{FiniteGroup, Pregroup};

#[path = "support/axioms.rs"]
mod axioms;

#[test]
fn mutated_tables_are_flagged() {
    let c3c3 = Pregroup::free_product(&[FiniteGroup::cyclic("a", 3), FiniteGroup::cyclic("b", 3)], &[]).unwrap();
    for (seed, p) in [(1, c2_cm(3)), (2, c3c3), (3, c2_cm(7))] {
        let st = axioms::fuzz(&p, 1000, &mut ChaCha8Rng::seed_from_u64(seed));
        assert_eq!((st.false_accepts, st.false_rejects), (0, 0), "{st:?}");
        assert!(st.broken > 900, "{st:?}");
    }
}

#[test]
fn brute_evaluator_accepts_constructed_pregroups() {
    for p in [c2_cm(3), c2_cm(5), Pregroup::free_product(&[FiniteGroup::cyclic("a", 4)], &["b".into()]).unwrap()] {
        let n = p.len();
        let sigma: Vec<_> = (0..n as u16).map(|e| p.sigma(e)).collect();
        assert!(axioms::brute_ok(n, &sigma, &axioms::table(&p)));
    }
}
