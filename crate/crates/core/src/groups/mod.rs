//! Exact elements of `F_n`, `T_n` and `V_n` behind one group interface.
//!
//! All products are written left to right: `f.compose(g)` is the map
//! `x -> ((x)f)g`.

mod circle_map;
mod element;
mod interval;
mod metric;
mod pl;
mod prefix;
pub mod sample;

pub use circle_map::{circle_bump, CircleMap};
pub use element::{ElementKind, GroupElement};
pub use interval::{make_bump, PlMap};
pub(crate) use interval::bump_knots;
pub use metric::d_infinity;
pub use pl::{Knot, PlFn};
pub use prefix::{
    extend_partial, format_digits, parse_digits, random_code, random_prefix_map, OrbitPoint, PrefixMap, MAX_ALPHABET,
};

use std::fmt::Debug;

use crate::error::Result;

/// The operations the word layer and the solver need from a group.
pub trait GroupOps: Clone + Debug + PartialEq {
    /// Left-to-right product: first `self`, then `rhs`.
    fn mul(&self, rhs: &Self) -> Result<Self>;
    fn inv(&self) -> Self;
    fn is_identity(&self) -> bool;

    fn identity_like(&self) -> Self {
        self.mul(&self.inv()).expect("an element multiplies with its inverse")
    }

    /// `self^k` by repeated squaring.
    fn pow(&self, k: i64) -> Self {
        let mut base = if k < 0 { self.inv() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.identity_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("powers share a kind");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("powers share a kind");
            }
        }
        acc
    }

    /// `g^-1 self g`.
    fn conjugate_by(&self, g: &Self) -> Result<Self> {
        g.inv().mul(self)?.mul(g)
    }

    /// `self^-1 g^-1 self g`.
    fn commutator_with(&self, g: &Self) -> Result<Self> {
        self.inv().mul(&g.inv())?.mul(self)?.mul(g)
    }
}

impl GroupOps for PrefixMap {
    fn mul(&self, rhs: &Self) -> Result<Self> {
        self.compose(rhs)
    }

    fn inv(&self) -> Self {
        self.inverse()
    }

    fn is_identity(&self) -> bool {
        PrefixMap::is_identity(self)
    }

    fn identity_like(&self) -> Self {
        PrefixMap::identity(self.alphabet_size())
    }
}
