//! Standard presentations used by tests, benches and experiment presets.

use crate::pregroup::{FiniteGroup, Pregroup, Word};
use crate::presentation::Presentation;
use crate::words::Lexicon;

/// Parses `s` over every letter of `p`, panicking on malformed input.
pub fn parse(p: &Pregroup, s: &str) -> Word {
    Lexicon::new(p).parse(s).unwrap_or_else(|e| panic!("{s:?}: {e}"))
}

/// The free product `C2 * Cm` with generators `x` and `y`.
pub fn c2_cm(m: usize) -> Pregroup {
    Pregroup::free_product(&[FiniteGroup::cyclic("x", 2), FiniteGroup::cyclic("y", m)], &[])
        .expect("cyclic factors form a pregroup")
}

/// The triangle group `<x, y | x^2, y^m, (xy)^n>`.
pub fn tri(m: usize, n: usize) -> Presentation {
    let p = c2_cm(m);
    let r = parse(&p, &format!("(xy)^{n}"));
    Presentation::new(p, vec![r]).expect("triangle relator is cyclically reduced")
}

/// `<x, y | x^2, y^3, (xy)^m, (xyxY)^n>`.
pub fn two_three(m: usize, n: usize) -> Presentation {
    let p = c2_cm(3);
    let rels = vec![parse(&p, &format!("(xy)^{m}")), parse(&p, &format!("(xyxY)^{n}"))];
    Presentation::new(p, rels).expect("relators are cyclically reduced")
}
