use std::collections::BTreeSet;
use std::fmt::Debug;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::PartialInjection;
use crate::error::{Error, Result};
use crate::groups::{extend_partial, GroupElement, GroupOps, OrbitPoint};

/// What the solver needs from a highly transitive action whose non-identity
/// elements have infinite support.
pub trait ActionContext {
    type Point: Ord + Clone + Debug;
    type Element: GroupOps;

    fn apply(&self, g: &Self::Element, p: &Self::Point) -> Result<Self::Point>;

    /// The first point, in a fixed enumeration, outside `avoid`.
    fn fresh_point(&self, avoid: &BTreeSet<Self::Point>) -> Self::Point;

    /// A pair `(x, (x)a)` with both points outside `avoid`, and `x` moved
    /// when `require_moved`.
    fn moved_point(
        &self,
        a: &Self::Element,
        avoid: &BTreeSet<Self::Point>,
        require_moved: bool,
    ) -> Result<(Self::Point, Self::Point)>;

    /// A group element agreeing with `sigma` on every pair.
    fn extend(&self, sigma: &PartialInjection<Self::Point>) -> Result<Self::Element>;

    /// `m` distinct starting points, chosen deterministically from `seed`.
    fn base_points(&self, m: usize, seed: u64) -> Vec<Self::Point>;
}

/// `V_n` acting on the orbit of `000...` in the `n`-ary Cantor space.
#[derive(Clone, Copy, Debug)]
pub struct CantorContext {
    n: u32,
}

impl CantorContext {
    pub fn new(n: u32) -> Result<Self> {
        if !(2..=crate::groups::MAX_ALPHABET).contains(&n) {
            return Err(Error::InvalidInput(format!("alphabet size {n} is out of range")));
        }
        Ok(CantorContext { n })
    }

    pub fn alphabet_size(&self) -> u32 {
        self.n
    }

    fn prefix<'a>(&self, g: &'a GroupElement) -> Result<&'a crate::groups::PrefixMap> {
        g.as_prefix()
            .filter(|p| p.alphabet_size() == self.n)
            .ok_or_else(|| Error::kind_mismatch(g.kind().to_string(), format!("prefix(n={})", self.n)))
    }
}

impl ActionContext for CantorContext {
    type Point = OrbitPoint;
    type Element = GroupElement;

    fn apply(&self, g: &GroupElement, p: &OrbitPoint) -> Result<OrbitPoint> {
        self.prefix(g)?.apply(p)
    }

    fn fresh_point(&self, avoid: &BTreeSet<OrbitPoint>) -> OrbitPoint {
        OrbitPoint::enumerate(self.n).find(|p| !avoid.contains(p)).expect("the orbit is infinite")
    }

    fn moved_point(
        &self,
        a: &GroupElement,
        avoid: &BTreeSet<OrbitPoint>,
        require_moved: bool,
    ) -> Result<(OrbitPoint, OrbitPoint)> {
        self.prefix(a)?.find_moved_point(avoid, require_moved)
    }

    fn extend(&self, sigma: &PartialInjection<OrbitPoint>) -> Result<GroupElement> {
        Ok(extend_partial(sigma, self.n)?.into())
    }

    fn base_points(&self, m: usize, seed: u64) -> Vec<OrbitPoint> {
        let offset = ChaCha8Rng::seed_from_u64(seed).gen_range(0..32);
        OrbitPoint::enumerate(self.n).skip(offset).take(m).collect()
    }
}
