//! A brute-force pregroup axiom evaluator over raw tables, and single-entry table mutation.

use rand::Rng;
use rsym::{Elem, Pregroup};

/// Quantifies each axiom literally over a table `m[x * n + y]` and involution `s`, with
/// element 0 as the identity.
pub fn brute_ok(n: usize, s: &[Elem], m: &[Option<Elem>]) -> bool {
    let d = |x: usize, y: usize| m[x * n + y].map(usize::from);
    let sg = |x: usize| s[x] as usize;
    let all = |f: &dyn Fn(usize) -> bool| (0..n).all(f);
    let p1 = all(&|x| d(0, x) == Some(x) && d(x, 0) == Some(x));
    let p2 = all(&|x| d(x, sg(x)) == Some(0) && d(sg(x), x) == Some(0));
    let p3 = all(&|x| all(&|y| d(x, y).is_none_or(|xy| d(sg(y), sg(x)) == Some(sg(xy)))));
    let p4 = all(&|x| {
        all(&|y| {
            all(&|z| match (d(x, y), d(y, z)) {
                (Some(xy), Some(yz)) => d(xy, z) == d(x, yz),
                _ => true,
            })
        })
    });
    let p5 = all(&|x| {
        all(&|y| {
            all(&|z| {
                all(&|t| match (d(x, y), d(y, z), d(z, t)) {
                    (Some(xy), Some(yz), Some(_)) => d(xy, z).is_some() || d(yz, t).is_some(),
                    _ => true,
                })
            })
        })
    });
    let inv = all(&|x| all(&|y| d(x, y) != Some(0) || y == sg(x)));
    p1 && p2 && p3 && p4 && p5 && inv
}

pub fn table(p: &Pregroup) -> Vec<Option<Elem>> {
    let n = p.len() as Elem;
    (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).map(|(x, y)| p.mult(x, y)).collect()
}

#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct FuzzStats {
    pub mutations: usize,
    pub broken: usize,
    pub false_accepts: usize,
    pub false_rejects: usize,
}

/// Changes one table entry at a time to a different value, undefined included, and compares
/// the validator against [`brute_ok`].
pub fn fuzz(p: &Pregroup, count: usize, rng: &mut impl Rng) -> FuzzStats {
    let n = p.len();
    let sigma: Vec<Elem> = (0..n as Elem).map(|e| p.sigma(e)).collect();
    let base = table(p);
    assert!(brute_ok(n, &sigma, &base));
    let mut st = FuzzStats::default();
    for _ in 0..count {
        let mut m = base.clone();
        let k = rng.random_range(0..n * n);
        let new = loop {
            let v = rng.random_range(0..=n);
            let v = (v < n).then_some(v as Elem);
            if v != m[k] {
                break v;
            }
        };
        m[k] = new;
        let q = Pregroup::from_parts(p.names().to_vec(), sigma.clone(), m.clone()).expect("well-formed table");
        let brute = brute_ok(n, &sigma, &m);
        let flagged = !q.validate_axioms().is_empty();
        st.mutations += 1;
        st.broken += usize::from(!brute);
        st.false_accepts += usize::from(!brute && !flagged);
        st.false_rejects += usize::from(brute && flagged);
    }
    st
}
