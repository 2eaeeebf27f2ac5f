//! Strictly increasing piecewise-linear bijections between closed intervals.
//!
//! This is the engine behind both [`PlMap`](super::PlMap) and
//! [`CircleMap`](super::CircleMap); it is also used directly when the
//! separation gadget needs maps restricted to a small window.

use crate::error::{Error, Result};
use crate::numbers::Rational;

pub type Knot = (Rational, Rational);

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PlFn {
    knots: Vec<Knot>,
}

fn interpolate(a: &Knot, b: &Knot, x: &Rational) -> Rational {
    &a.1 + (x - &a.0) * (&b.1 - &a.1) / (&b.0 - &a.0)
}

fn collinear(a: &Knot, b: &Knot, c: &Knot) -> bool {
    (&b.1 - &a.1) * (&c.0 - &b.0) == (&c.1 - &b.1) * (&b.0 - &a.0)
}

impl PlFn {
    /// Validates strict monotonicity in both coordinates and drops collinear
    /// interior knots.
    pub fn new(knots: Vec<Knot>) -> Result<Self> {
        if knots.len() < 2 {
            return Err(Error::InvalidElement("a piecewise-linear map needs at least two knots".into()));
        }
        for w in knots.windows(2) {
            if w[0].0 >= w[1].0 || w[0].1 >= w[1].1 {
                return Err(Error::InvalidElement(format!(
                    "knots ({}, {}) and ({}, {}) are not strictly increasing",
                    w[0].0, w[0].1, w[1].0, w[1].1
                )));
            }
        }
        Ok(Self::from_sorted(knots))
    }

    /// Caller guarantees strict monotonicity.
    pub(crate) fn from_sorted(knots: Vec<Knot>) -> Self {
        debug_assert!(knots.len() >= 2);
        debug_assert!(knots.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 < w[1].1));
        let mut f = PlFn { knots };
        f.canonicalize();
        f
    }

    pub fn identity_on(lo: Rational, hi: Rational) -> Self {
        PlFn { knots: vec![(lo.clone(), lo), (hi.clone(), hi)] }
    }

    fn canonicalize(&mut self) {
        if self.knots.len() <= 2 {
            return;
        }
        let mut out: Vec<Knot> = Vec::with_capacity(self.knots.len());
        for k in self.knots.drain(..) {
            while out.len() >= 2 && collinear(&out[out.len() - 2], &out[out.len() - 1], &k) {
                out.pop();
            }
            out.push(k);
        }
        self.knots = out;
    }

    pub fn knots(&self) -> &[Knot] {
        &self.knots
    }

    pub fn into_knots(self) -> Vec<Knot> {
        self.knots
    }

    pub fn domain_start(&self) -> &Rational {
        &self.knots[0].0
    }

    pub fn domain_end(&self) -> &Rational {
        &self.knots[self.knots.len() - 1].0
    }

    pub fn range_start(&self) -> &Rational {
        &self.knots[0].1
    }

    pub fn range_end(&self) -> &Rational {
        &self.knots[self.knots.len() - 1].1
    }

    /// Index `i` of the segment `[x_i, x_{i+1}]` containing `x` (the last
    /// segment for the right endpoint).
    fn segment_of(&self, x: &Rational) -> usize {
        let idx = self.knots.partition_point(|k| &k.0 <= x);
        idx.saturating_sub(1).min(self.knots.len() - 2)
    }

    fn segment_of_value(&self, y: &Rational) -> usize {
        let idx = self.knots.partition_point(|k| &k.1 <= y);
        idx.saturating_sub(1).min(self.knots.len() - 2)
    }

    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        if x < self.domain_start() || x > self.domain_end() {
            return None;
        }
        let i = self.segment_of(x);
        Some(interpolate(&self.knots[i], &self.knots[i + 1], x))
    }

    pub fn eval_inverse(&self, y: &Rational) -> Option<Rational> {
        if y < self.range_start() || y > self.range_end() {
            return None;
        }
        let i = self.segment_of_value(y);
        let (a, b) = (&self.knots[i], &self.knots[i + 1]);
        Some(&a.0 + (y - &a.1) * (&b.0 - &a.0) / (&b.1 - &a.1))
    }

    pub fn slopes(&self) -> impl Iterator<Item = Rational> + '_ {
        self.knots.windows(2).map(|w| (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0))
    }

    pub fn inverse(&self) -> PlFn {
        PlFn { knots: self.knots.iter().map(|(x, y)| (y.clone(), x.clone())).collect() }
    }

    pub fn shifted(&self, dx: &Rational, dy: &Rational) -> PlFn {
        PlFn { knots: self.knots.iter().map(|(x, y)| (x + dx, y + dy)).collect() }
    }

    /// `x -> other(self(x))`. The range of `self` must lie inside the domain
    /// of `other`.
    pub fn then(&self, other: &PlFn) -> Result<PlFn> {
        if self.range_start() < other.domain_start() || self.range_end() > other.domain_end() {
            return Err(Error::InvariantBreach(format!(
                "composition range [{}, {}] escapes domain [{}, {}]",
                self.range_start(),
                self.range_end(),
                other.domain_start(),
                other.domain_end()
            )));
        }
        let mut out: Vec<Knot> = Vec::with_capacity(self.knots.len() + other.knots.len());
        let ok = &other.knots;
        // j: segment of `other` containing the current image value
        let mut j = other.segment_of(&self.knots[0].1);
        for w in self.knots.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            while j + 2 < ok.len() && ok[j + 1].0 <= a.1 {
                j += 1;
            }
            out.push((a.0.clone(), interpolate(&ok[j], &ok[j + 1], &a.1)));
            // knots of `other` strictly inside the image of this segment
            let mut t = j + 1;
            while t < ok.len() && ok[t].0 < b.1 {
                if ok[t].0 > a.1 {
                    let x = &a.0 + (&ok[t].0 - &a.1) * (&b.0 - &a.0) / (&b.1 - &a.1);
                    out.push((x, ok[t].1.clone()));
                }
                t += 1;
            }
        }
        let last = &self.knots[self.knots.len() - 1];
        let jl = other.segment_of(&last.1);
        out.push((last.0.clone(), interpolate(&ok[jl], &ok[jl + 1], &last.1)));
        Ok(PlFn::from_sorted(out))
    }

    /// Restriction to `[lo, hi]`, which must lie inside the domain.
    pub fn restrict(&self, lo: &Rational, hi: &Rational) -> Option<PlFn> {
        if lo >= hi || lo < self.domain_start() || hi > self.domain_end() {
            return None;
        }
        let mut out = vec![(lo.clone(), self.eval(lo)?)];
        let start = self.knots.partition_point(|k| &k.0 <= lo);
        for k in &self.knots[start..] {
            if &k.0 >= hi {
                break;
            }
            out.push(k.clone());
        }
        out.push((hi.clone(), self.eval(hi)?));
        Some(PlFn::from_sorted(out))
    }

    /// Extends by the identity to `[lo, hi]`. The map must fix its own
    /// endpoints when they are interior to `[lo, hi]`.
    pub fn extend_by_identity(&self, lo: &Rational, hi: &Rational) -> Result<PlFn> {
        let mut knots = Vec::with_capacity(self.knots.len() + 2);
        if lo < self.domain_start() {
            knots.push((lo.clone(), lo.clone()));
        }
        knots.extend(self.knots.iter().cloned());
        if hi > self.domain_end() {
            knots.push((hi.clone(), hi.clone()));
        }
        PlFn::new(knots)
    }

    pub fn is_identity(&self) -> bool {
        self.knots.iter().all(|(x, y)| x == y)
    }

    /// True iff the map fixes every point outside `(p, q)` and moves every
    /// point of `(p, q)` upward.
    pub fn is_positive_bump_on(&self, p: &Rational, q: &Rational) -> bool {
        let (Some(fp), Some(fq)) = (self.eval(p), self.eval(q)) else {
            return false;
        };
        if &fp != p || &fq != q {
            return false;
        }
        self.knots.iter().all(|(x, y)| if x > p && x < q { y > x } else { x == y })
    }
}
