//! Property tests for pregroups, presentations and the verifier's building blocks,
//! each against an independent evaluator.

use proptest::prelude::*;
use rsym::families::{c2_cm, tri, two_three};
use rsym::presentation::power_decomposition;
use rsym::verifier::{gusu_start_index, vertex_bound, Colour, GVertex, VertexGraph, INF};
use rsym::{rat, Elem, FiniteGroup, Pregroup, Rat, Verifier};

type M = [i128; 4];

fn mat_mul(a: &M, b: &M) -> M {
    [a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]]
}

/// The faithful action of `C2 * C3` on the plane, read modulo `±I`.
fn psl2z(p: &Pregroup, w: &[Elem]) -> M {
    let x: M = [0, -1, 1, 0];
    let y: M = [0, -1, 1, 1];
    let yy = mat_mul(&y, &y);
    w.iter().fold([1, 0, 0, 1], |acc, &e| {
        let m = match p.name(e) {
            "x" => x,
            "y" => y,
            "Y" => yy,
            _ => [1, 0, 0, 1],
        };
        mat_mul(&acc, &m)
    })
}

fn is_pm_identity(m: &M) -> bool {
    *m == [1, 0, 0, 1] || *m == [-1, 0, 0, -1]
}

fn same_up_to_sign(a: &M, b: &M) -> bool {
    a == b || a.iter().zip(b).all(|(x, y)| *x == -*y)
}

fn word(p: &Pregroup, max: usize) -> impl Strategy<Value = Vec<Elem>> {
    let letters: Vec<Elem> = p.letters().collect();
    prop::collection::vec(prop::sample::select(letters), 0..=max)
}

fn factors() -> impl Strategy<Value = (Vec<usize>, usize)> {
    (prop::collection::vec(2usize..=6, 0..=3), 0usize..=2).prop_filter("nonempty", |(f, r)| !f.is_empty() || *r > 0)
}

fn build(orders: &[usize], rank: usize) -> Pregroup {
    let names = ["p", "q", "s"];
    let fs: Vec<FiniteGroup> = orders.iter().zip(names).map(|(&m, g)| FiniteGroup::cyclic(g, m)).collect();
    let free: Vec<String> = ["a", "b"][..rank].iter().map(|s| s.to_string()).collect();
    Pregroup::free_product(&fs, &free).unwrap()
}

/// Intermult by its definition, scanning every middle element.
fn intermult_brute(p: &Pregroup, a: Elem, b: Elem) -> bool {
    if b == p.sigma(a) {
        return false;
    }
    p.defined(a, b) || p.letters().any(|x| p.defined(a, x) && p.defined(p.sigma(x), b))
}

/// Least weight of a walk with at least one edge, by dynamic programming over walk length.
fn walk_weights(n: usize, edges: &[(u32, u32)], green: &[bool]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![INF; n]; n];
    for (s, row) in out.iter_mut().enumerate() {
        let mut best = vec![INF; n];
        for &(a, b) in edges.iter().filter(|e| e.0 as usize == s) {
            best[b as usize] = best[b as usize].min(u32::from(green[a as usize]));
        }
        for _ in 0..=n {
            let mut next = best.clone();
            for &(a, b) in edges {
                if best[a as usize] != INF {
                    let w = best[a as usize] + u32::from(green[a as usize]);
                    next[b as usize] = next[b as usize].min(w);
                }
            }
            best = next;
        }
        *row = best;
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn constructed_pregroups_satisfy_the_axioms((orders, rank) in factors()) {
        let p = build(&orders, rank);
        prop_assert!(p.validate_axioms().is_empty());
        for a in 0..p.len() as Elem {
            prop_assert_eq!(p.sigma(p.sigma(a)), a);
        }
    }

    #[test]
    fn intermult_matches_definition((orders, rank) in factors()) {
        let p = build(&orders, rank);
        let t = p.intermult_table();
        for a in p.letters() {
            for b in p.letters() {
                prop_assert_eq!(t.get(a, b), intermult_brute(&p, a, b), "({}, {})", p.name(a), p.name(b));
            }
        }
    }

    #[test]
    fn p_reduce_agrees_with_matrices(w in word(&c2_cm(3), 30)) {
        let p = c2_cm(3);
        let r = p.p_reduce(&w).unwrap();
        prop_assert!(r.len() <= w.len());
        prop_assert!(r.windows(2).all(|x| !p.defined(x[0], x[1])));
        prop_assert!(same_up_to_sign(&psl2z(&p, &r), &psl2z(&p, &w)));
        prop_assert_eq!(r.is_empty(), is_pm_identity(&psl2z(&p, &w)));
    }

    #[test]
    fn cyclic_reduction_keeps_the_conjugacy_class(w in word(&c2_cm(3), 30)) {
        let p = c2_cm(3);
        let c = p.cyclically_p_reduce(&w).unwrap();
        prop_assert!(p.is_cyclically_p_reduced(&c));
        let tr = |m: M| (m[0] + m[3]).abs();
        prop_assert_eq!(tr(psl2z(&p, &c)), tr(psl2z(&p, &w)));
    }

    #[test]
    fn power_decomposition_recomposes(base in word(&c2_cm(5), 6), k in 1usize..5) {
        prop_assume!(!base.is_empty());
        let r: Vec<Elem> = base.iter().copied().cycle().take(base.len() * k).collect();
        let (w, j) = power_decomposition(&r);
        prop_assert_eq!(w.iter().copied().cycle().take(w.len() * j).collect::<Vec<_>>(), r.clone());
        prop_assert_eq!(j % k, 0);
    }

    #[test]
    fn vp_products_are_all_defined((orders, rank) in factors()) {
        let p = build(&orders, rank);
        for w in p.build_vp() {
            prop_assert_eq!(w.len(), 3);
            prop_assert!((0..3).all(|i| p.defined(w[i], w[(i + 1) % 3])));
            prop_assert!(p.p_reduce(&w).unwrap().is_empty());
        }
    }

    #[test]
    fn path_weights_match_walks(
        n in 1usize..=8,
        green in prop::collection::vec(any::<bool>(), 8),
        raw in prop::collection::vec((0u32..8, 0u32..8), 0..20),
    ) {
        let edges: Vec<(u32, u32)> = raw.into_iter().filter(|&(a, b)| (a as usize) < n && (b as usize) < n).collect();
        let verts: Vec<GVertex> = (0..n)
            .map(|i| GVertex { a: i as Elem, b: 0, colour: if green[i] { Colour::Green } else { Colour::Red } })
            .collect();
        let g = VertexGraph::from_edges(verts, &edges);
        prop_assert_eq!(g.min_path_weights(), walk_weights(n, &edges, &green[..n]));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn gusu_index_has_nonnegative_partial_sums(
        seq in prop::collection::vec((-12i64..=12, 1i64..=6).prop_map(|(n, d)| rat(n, d)), 1..=12)
    ) {
        let n = seq.len();
        let good = |j: usize| {
            let mut s = Rat::from_integer(0);
            (0..n).all(|k| {
                s += seq[(j + k) % n];
                s >= Rat::from_integer(0)
            })
        };
        let exists = (0..n).any(good);
        let total: Rat = seq.iter().sum();
        match gusu_start_index(&seq) {
            Some(j) => {
                prop_assert!(total >= Rat::from_integer(0));
                prop_assert!(good(j), "index {} of {:?}", j, seq);
            }
            None => prop_assert!(!exists),
        }
        prop_assert_eq!(exists, total >= Rat::from_integer(0));
    }
}

#[test]
fn vertex_bound_stays_in_range() {
    for pres in [tri(3, 7), tri(4, 5), two_three(13, 7)] {
        let v = Verifier::new(&pres).unwrap();
        let g = v.graph();
        for nu in 0..g.len() as u32 {
            if g.vertices()[nu as usize].colour != Colour::Green {
                continue;
            }
            for nu1 in (0..g.len() as u32).filter(|&a| g.has_edge(a, nu)) {
                for &nu2 in g.successors(nu) {
                    let b = vertex_bound(g, nu1, nu, nu2);
                    assert!(b >= rat(-1, 3) && b <= rat(0, 1));
                }
            }
        }
    }
}

#[test]
fn p23_reduction_is_exact_on_all_short_words() {
    // Exhaustive over words of length at most 6.
    let p = c2_cm(3);
    let letters: Vec<Elem> = p.letters().collect();
    let mut frontier: Vec<Vec<Elem>> = vec![vec![]];
    for _ in 0..6 {
        let mut next = Vec::new();
        for w in &frontier {
            for &a in &letters {
                let mut v = w.clone();
                v.push(a);
                let r = p.p_reduce(&v).unwrap();
                assert_eq!(r.is_empty(), is_pm_identity(&psl2z(&p, &v)), "{}", p.format_word(&v));
                next.push(v);
            }
        }
        frontier = next;
    }
}
