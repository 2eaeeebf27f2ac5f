//! A second action for the solver: permutations of the integers that are
//! affine (`x -> x + t` or `x -> -x + t`) outside a finite set.
//!
//! Every non-identity affine part has infinite support, and finite-support
//! permutations complete any finite partial permutation, so the action is
//! highly transitive in the sense the solver needs.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ActionContext, PartialInjection};
use crate::error::{Error, Result};
use crate::groups::GroupOps;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinePerm {
    flip: bool,
    shift: i64,
    exceptions: BTreeMap<i64, i64>,
    inverse_exceptions: BTreeMap<i64, i64>,
}

impl LinePerm {
    pub fn identity() -> Self {
        Self::affine(false, 0)
    }

    pub fn translation(t: i64) -> Self {
        Self::affine(false, t)
    }

    /// `x -> t - x`.
    pub fn reflection(t: i64) -> Self {
        Self::affine(true, t)
    }

    fn affine(flip: bool, shift: i64) -> Self {
        LinePerm { flip, shift, exceptions: BTreeMap::new(), inverse_exceptions: BTreeMap::new() }
    }

    /// The affine map overridden by `table`; fails unless the result is a
    /// bijection.
    pub fn with_exceptions(flip: bool, shift: i64, table: BTreeMap<i64, i64>) -> Result<Self> {
        let base = Self::affine(flip, shift);
        let moved: BTreeSet<i64> = table.keys().map(|x| base.affine_apply(*x)).collect();
        let images: BTreeSet<i64> = table.values().copied().collect();
        if images.len() != table.len() || images != moved {
            return Err(Error::InvalidElement("exception table does not give a bijection".into()));
        }
        let exceptions: BTreeMap<i64, i64> =
            table.into_iter().filter(|(x, y)| base.affine_apply(*x) != *y).collect();
        let inverse_exceptions = exceptions.iter().map(|(x, y)| (*y, *x)).collect();
        Ok(LinePerm { flip, shift, exceptions, inverse_exceptions })
    }

    /// Finite-support permutation closing every chain of `sigma` into a
    /// cycle.
    pub fn completing(sigma: &PartialInjection<i64>) -> Result<Self> {
        let mut table: BTreeMap<i64, i64> = sigma.pairs().iter().copied().collect();
        for (start, _) in sigma.pairs() {
            if sigma.get_inverse(start).is_some() {
                continue;
            }
            let mut end = *start;
            while let Some(next) = sigma.get(&end) {
                end = *next;
            }
            table.insert(end, *start);
        }
        Self::with_exceptions(false, 0, table)
    }

    fn affine_apply(&self, x: i64) -> i64 {
        if self.flip { self.shift - x } else { x + self.shift }
    }

    fn affine_apply_inverse(&self, y: i64) -> i64 {
        if self.flip { self.shift - y } else { y - self.shift }
    }

    pub fn apply(&self, x: i64) -> i64 {
        self.exceptions.get(&x).copied().unwrap_or_else(|| self.affine_apply(x))
    }

    pub fn apply_inverse(&self, y: i64) -> i64 {
        self.inverse_exceptions.get(&y).copied().unwrap_or_else(|| self.affine_apply_inverse(y))
    }

    pub fn exception_count(&self) -> usize {
        self.exceptions.len()
    }
}

impl GroupOps for LinePerm {
    fn mul(&self, rhs: &Self) -> Result<Self> {
        let flip = self.flip != rhs.flip;
        let shift = if rhs.flip { rhs.shift - self.shift } else { self.shift + rhs.shift };
        let candidates: BTreeSet<i64> = self
            .exceptions
            .keys()
            .copied()
            .chain(rhs.exceptions.keys().map(|y| self.apply_inverse(*y)))
            .collect();
        let table = candidates.into_iter().map(|x| (x, rhs.apply(self.apply(x)))).collect();
        LinePerm::with_exceptions(flip, shift, table)
    }

    fn inv(&self) -> Self {
        let shift = if self.flip { self.shift } else { -self.shift };
        LinePerm {
            flip: self.flip,
            shift,
            exceptions: self.inverse_exceptions.clone(),
            inverse_exceptions: self.exceptions.clone(),
        }
    }

    fn is_identity(&self) -> bool {
        !self.flip && self.shift == 0 && self.exceptions.is_empty()
    }

    fn identity_like(&self) -> Self {
        LinePerm::identity()
    }
}

/// `0, 1, -1, 2, -2, ...`
fn integers() -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..).flat_map(|i| [i, -i]))
}

#[derive(Clone, Copy, Debug, Default)]
pub struct LineContext;

impl ActionContext for LineContext {
    type Point = i64;
    type Element = LinePerm;

    fn apply(&self, g: &LinePerm, p: &i64) -> Result<i64> {
        Ok(g.apply(*p))
    }

    fn fresh_point(&self, avoid: &BTreeSet<i64>) -> i64 {
        integers().find(|p| !avoid.contains(p)).expect("the integers are infinite")
    }

    fn moved_point(&self, a: &LinePerm, avoid: &BTreeSet<i64>, require_moved: bool) -> Result<(i64, i64)> {
        // fewer than this many candidates can fail when `a` has infinite support
        let bound = 2 * (avoid.len() + a.exception_count()) + 4;
        integers()
            .take(bound)
            .filter(|x| !avoid.contains(x))
            .map(|x| (x, a.apply(x)))
            .find(|(x, y)| !avoid.contains(y) && (!require_moved || x != y))
            .ok_or_else(|| Error::Hypothesis("coefficient does not have infinite support".into()))
    }

    fn extend(&self, sigma: &PartialInjection<i64>) -> Result<LinePerm> {
        LinePerm::completing(sigma)
    }

    fn base_points(&self, m: usize, seed: u64) -> Vec<i64> {
        let offset = ChaCha8Rng::seed_from_u64(seed).gen_range(-50..50);
        (0..m as i64).map(|i| offset + 3 * i).collect()
    }
}

/// A random permutation with non-identity affine part and a few exceptions.
pub fn random_line_perm<R: Rng + ?Sized>(rng: &mut R) -> LinePerm {
    let flip = rng.gen_bool(0.5);
    let shift = loop {
        let t = rng.gen_range(-5..=5);
        if flip || t != 0 {
            break t;
        }
    };
    let mut g = LinePerm::affine(flip, shift);
    for _ in 0..rng.gen_range(0..4) {
        let a = rng.gen_range(-8..=8);
        let b = rng.gen_range(-8..=8);
        if a != b {
            let swap = LinePerm::with_exceptions(false, 0, [(a, b), (b, a)].into_iter().collect())
                .expect("a transposition is a bijection");
            g = g.mul(&swap).expect("line permutations compose");
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_and_inverse_pointwise() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let f = random_line_perm(&mut rng);
            let g = random_line_perm(&mut rng);
            let fg = f.mul(&g).unwrap();
            assert!(f.mul(&f.inv()).unwrap().is_identity());
            assert!(f.inv().mul(&f).unwrap().is_identity());
            for x in -20..20 {
                assert_eq!(fg.apply(x), g.apply(f.apply(x)));
                assert_eq!(f.inv().apply(f.apply(x)), x);
            }
        }
    }

    #[test]
    fn completion_closes_chains() {
        let sigma = PartialInjection::from_pairs([(0, 5), (5, 7), (9, 2), (2, 9)]).unwrap();
        let g = LinePerm::completing(&sigma).unwrap();
        assert_eq!(g.apply(0), 5);
        assert_eq!(g.apply(5), 7);
        assert_eq!(g.apply(7), 0);
        assert_eq!(g.apply(9), 2);
        assert_eq!(g.apply(100), 100);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(LinePerm::with_exceptions(false, 0, [(0, 1)].into_iter().collect()).is_err());
        assert!(LinePerm::with_exceptions(false, 1, [(0, 2), (1, 2)].into_iter().collect()).is_err());
    }

    #[test]
    fn finite_support_violates_the_hypothesis() {
        let swap = LinePerm::with_exceptions(false, 0, [(0, 1), (1, 0)].into_iter().collect()).unwrap();
        let avoid: BTreeSet<i64> = [0, 1].into_iter().collect();
        assert!(matches!(LineContext.moved_point(&swap, &avoid, true), Err(Error::Hypothesis(_))));
        assert!(LineContext.moved_point(&LinePerm::identity(), &avoid, false).is_ok());
    }
}
