//! Letter images in `PSL(2, p)`, used to certify that words are nontrivial.

use crate::pregroup::{Elem, Pregroup};

type Mat = [u32; 4];

/// A map from letters to `2 × 2` matrices over `Z/p`, read modulo `±I`.
#[derive(Debug, Clone)]
pub struct ProjectiveRep {
    p: u32,
    images: Vec<Mat>,
}

impl ProjectiveRep {
    /// Images for every letter, with the identity element mapped to `I`.
    pub fn new(p: u32, images: Vec<Mat>) -> Self {
        ProjectiveRep { p, images }
    }

    /// `C2 * C3 -> PSL(2, 7)` with `x` of order 2, `y` of order 3 and `xy` of order 7.
    pub fn psl2_7(pg: &Pregroup) -> Self {
        let x = [0, 6, 1, 0];
        let y = [0, 6, 1, 1];
        let rep = ProjectiveRep { p: 7, images: Vec::new() };
        let yy = rep.mul(&y, &y);
        let mut images = vec![[1, 0, 0, 1]; pg.len()];
        for (name, m) in [("x", x), ("y", y), ("Y", yy)] {
            if let Some(e) = pg.lookup(name) {
                images[e as usize] = m;
            }
        }
        ProjectiveRep { p: 7, images }
    }

    fn mul(&self, a: &Mat, b: &Mat) -> Mat {
        let p = self.p as u64;
        let f = |i: usize, j: usize| {
            ((a[2 * i] as u64 * b[j] as u64 + a[2 * i + 1] as u64 * b[2 + j] as u64) % p) as u32
        };
        [f(0, 0), f(0, 1), f(1, 0), f(1, 1)]
    }

    pub fn image(&self, w: &[Elem]) -> Mat {
        w.iter().fold([1, 0, 0, 1], |acc, &e| self.mul(&acc, &self.images[e as usize]))
    }

    pub fn is_identity(&self, m: &Mat) -> bool {
        let minus = self.p - 1;
        *m == [1, 0, 0, 1] || *m == [minus, 0, 0, minus]
    }

    pub fn kills(&self, w: &[Elem]) -> bool {
        self.is_identity(&self.image(w))
    }

    /// Checks that every defined product is respected.
    pub fn is_homomorphism(&self, pg: &Pregroup) -> bool {
        pg.letters().all(|a| {
            pg.letters().all(|b| match pg.mult(a, b) {
                Some(c) => {
                    let lhs = self.mul(&self.images[a as usize], &self.images[b as usize]);
                    let rhs = self.images[c as usize];
                    self.is_identity(&self.mul(&lhs, &self.inverse(&rhs)))
                }
                None => true,
            })
        })
    }

    fn inverse(&self, m: &Mat) -> Mat {
        let p = self.p;
        [m[3], (p - m[1]) % p, (p - m[2]) % p, m[0]]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;

    #[test]
    fn psl_orders() {
        let pres = tri(3, 7);
        let pg = pres.pregroup();
        let rep = ProjectiveRep::psl2_7(pg);
        assert!(rep.is_homomorphism(pg));
        assert!(rep.kills(&pres.relators()[0]));
        assert!(!rep.kills(&parse(pg, "xy")));
        assert!(!rep.kills(&parse(pg, "(xy)^3")));
        assert!(!rep.kills(&parse(pg, "x")));
    }
}
