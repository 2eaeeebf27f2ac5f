use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;

use crate::error::{Error, Result};

/// A finite bijection between two finite sets of points, kept in insertion
/// order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialInjection<P: Ord> {
    pairs: Vec<(P, P)>,
    forward: BTreeMap<P, P>,
    backward: BTreeMap<P, P>,
}

impl<P: Ord + Clone + Debug> Default for PartialInjection<P> {
    fn default() -> Self {
        Self::new()
    }
}

impl<P: Ord + Clone + Debug> PartialInjection<P> {
    pub fn new() -> Self {
        PartialInjection { pairs: Vec::new(), forward: BTreeMap::new(), backward: BTreeMap::new() }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (P, P)>) -> Result<Self> {
        let mut s = Self::new();
        for (a, b) in pairs {
            s.insert(a, b)?;
        }
        Ok(s)
    }

    pub fn insert(&mut self, from: P, to: P) -> Result<()> {
        if self.forward.contains_key(&from) {
            return Err(Error::Precondition(format!("{from:?} already has an image")));
        }
        if self.backward.contains_key(&to) {
            return Err(Error::Precondition(format!("{to:?} already has a preimage")));
        }
        self.forward.insert(from.clone(), to.clone());
        self.backward.insert(to.clone(), from.clone());
        self.pairs.push((from, to));
        Ok(())
    }

    pub fn get(&self, p: &P) -> Option<&P> {
        self.forward.get(p)
    }

    pub fn get_inverse(&self, p: &P) -> Option<&P> {
        self.backward.get(p)
    }

    /// `p` under `sigma^k`, composing as a relation: undefined as soon as an
    /// intermediate point leaves the domain.
    pub fn power_apply(&self, p: &P, k: i64) -> Option<P> {
        let steps = k.unsigned_abs();
        let mut cur = p.clone();
        let mut done = 0u64;
        while done < steps {
            cur = if k > 0 { self.get(&cur)? } else { self.get_inverse(&cur)? }.clone();
            done += 1;
            if &cur == p {
                // p lies on a cycle of length `done`
                let rest = (steps - done) % done;
                return self.power_apply(p, if k > 0 { rest as i64 } else { -(rest as i64) });
            }
        }
        Some(cur)
    }

    pub fn pairs(&self) -> &[(P, P)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn domain(&self) -> impl Iterator<Item = &P> {
        self.forward.keys()
    }

    pub fn image(&self) -> impl Iterator<Item = &P> {
        self.backward.keys()
    }

    /// `p ∈ dom ∪ im`.
    pub fn touches(&self, p: &P) -> bool {
        self.forward.contains_key(p) || self.backward.contains_key(p)
    }

    pub fn support_points(&self) -> BTreeSet<P> {
        self.forward.keys().chain(self.backward.keys()).cloned().collect()
    }
}
