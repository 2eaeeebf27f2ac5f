use num_bigint::BigInt;

use super::interval::{bump_knots, PlMap};
use super::pl::{Knot, PlFn};
use crate::error::{Error, Result};
use crate::numbers::{CirclePoint, Rational};

/// Orientation-preserving piecewise-linear homeomorphism of the circle
/// `[0, 1)`, stored as its lift on `[0, 1]` with `F(0) = base_image` in
/// `[0, 1)` and `F(1) = base_image + 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CircleMap {
    lift: PlFn,
}

impl CircleMap {
    pub fn identity() -> Self {
        CircleMap { lift: PlFn::identity_on(Rational::zero(), Rational::one()) }
    }

    pub fn rotation(angle: &Rational) -> Self {
        let b = angle.fract_part();
        CircleMap { lift: PlFn::from_sorted(vec![(Rational::zero(), b.clone()), (Rational::one(), b + Rational::one())]) }
    }

    pub fn from_lift(base_image: Rational, knots: Vec<Knot>) -> Result<Self> {
        let lift = PlFn::new(knots)?;
        let one = Rational::one();
        if base_image.is_negative() || base_image >= one {
            return Err(Error::InvalidElement(format!("base image {base_image} is outside [0, 1)")));
        }
        if lift.domain_start() != &Rational::zero()
            || lift.domain_end() != &one
            || lift.range_start() != &base_image
            || lift.range_end() != &(&base_image + &one)
        {
            return Err(Error::InvalidElement(
                "a circle lift must run from (0, b) to (1, b + 1)".into(),
            ));
        }
        Ok(CircleMap { lift })
    }

    /// Canonical map from a lift given on any window `[c, c + 1]` whose
    /// values rise by exactly one.
    pub(crate) fn from_window(window: &PlFn) -> Result<Self> {
        let c = window.domain_start().clone();
        if &(&c + Rational::one()) != window.domain_end()
            || &(window.range_start() + Rational::one()) != window.range_end()
        {
            return Err(Error::InvariantBreach("lift window does not span one period".into()));
        }
        let shift = Rational::integer(c.floor());
        let w = window.shifted(&-&shift, &Rational::zero());
        let c = &c - &shift;
        let one = Rational::one();
        let mut knots: Vec<Knot> = Vec::with_capacity(w.knots().len() + 2);
        if c.is_zero() {
            knots.extend(w.knots().iter().cloned());
        } else {
            let at_one = w.eval(&one).expect("1 lies in the window");
            knots.push((Rational::zero(), &at_one - &one));
            for (x, y) in w.knots() {
                if x > &one {
                    knots.push((x - &one, y - &one));
                }
            }
            for (x, y) in w.knots() {
                if x < &one {
                    knots.push((x.clone(), y.clone()));
                }
            }
            knots.push((one.clone(), at_one));
            // the knot at c appears in the second pass; the first pass stops
            // strictly before c + 1
            knots.retain({
                let mut seen_c = false;
                move |(x, _)| {
                    if x == &c {
                        if seen_c {
                            return false;
                        }
                        seen_c = true;
                    }
                    true
                }
            });
        }
        let base_shift = Rational::integer(knots[0].1.floor());
        let knots = knots.into_iter().map(|(x, y)| (x, y - &base_shift)).collect();
        Ok(CircleMap { lift: PlFn::new(knots)? })
    }

    pub fn base_image(&self) -> &Rational {
        self.lift.range_start()
    }

    pub fn lift_knots(&self) -> &[Knot] {
        self.lift.knots()
    }

    pub fn lift(&self) -> &PlFn {
        &self.lift
    }

    /// The lift extended to the whole real line, `F(x + 1) = F(x) + 1`.
    pub fn lift_eval(&self, x: &Rational) -> Rational {
        let m = x.floor();
        let local = x - Rational::integer(m.clone());
        self.lift.eval(&local).expect("local coordinate in [0, 1)") + Rational::integer(m)
    }

    pub fn lift_eval_inverse(&self, y: &Rational) -> Rational {
        // F maps [0, 1] onto [b, b + 1]
        let m = (y - self.base_image()).floor();
        let local = y - Rational::integer(m.clone());
        self.lift.eval_inverse(&local).expect("value inside the lift range") + Rational::integer(m)
    }

    pub fn evaluate(&self, x: &CirclePoint) -> CirclePoint {
        CirclePoint::wrap(&self.lift_eval(x.value()))
    }

    /// The lift restricted to `[c, c + 1]`.
    pub(crate) fn window(&self, c: &Rational) -> PlFn {
        let m = c.floor();
        let shift = Rational::integer(m);
        let local = c - &shift;
        let one = Rational::one();
        let mut knots: Vec<Knot> = Vec::with_capacity(self.lift.knots().len() + 2);
        knots.push((local.clone(), self.lift.eval(&local).expect("in [0, 1)")));
        for (x, y) in self.lift.knots() {
            if x > &local && x < &one {
                knots.push((x.clone(), y.clone()));
            }
        }
        if !local.is_zero() {
            knots.push((one.clone(), self.lift.range_end().clone()));
            for (x, y) in self.lift.knots() {
                if x.is_positive() && x < &local {
                    knots.push((x + &one, y + &one));
                }
            }
        }
        let end = &knots[0].1 + &one;
        knots.push((&local + &one, end));
        PlFn::from_sorted(knots).shifted(&shift, &shift)
    }

    /// `x -> ((x)self)other`.
    pub fn compose(&self, other: &CircleMap) -> CircleMap {
        let outer = other.window(self.base_image());
        let h = self.lift.then(&outer).expect("window covers the lift range");
        let m: BigInt = h.range_start().floor();
        let shift = Rational::integer(m);
        CircleMap { lift: h.shifted(&Rational::zero(), &-shift) }
    }

    pub fn inverse(&self) -> CircleMap {
        CircleMap::from_window(&self.lift.inverse()).expect("inverse lift spans one period")
    }

    pub fn is_identity(&self) -> bool {
        self.lift.is_identity()
    }

    /// Membership in Thompson's group `T_n`.
    pub fn is_in_thompson_t(&self, n: u32) -> bool {
        self.lift.knots().iter().all(|(x, y)| x.is_n_adic(n) && y.is_n_adic(n))
            && self.lift.slopes().all(|s| s.power_of(n).is_some())
    }

    /// The interval map viewed as a circle map fixing 0.
    pub fn from_interval(f: &PlMap) -> CircleMap {
        CircleMap { lift: f.graph().clone() }
    }

    /// The interval map this circle map restricts to, when it fixes 0.
    pub fn to_interval(&self) -> Option<PlMap> {
        if self.base_image().is_zero() {
            PlMap::from_graph(self.lift.clone()).ok()
        } else {
            None
        }
    }
}

/// An element of `T_n` whose support is exactly the open arc from `p` to `q`
/// (wrapping through 0 when `p > q`).
pub fn circle_bump(p: &CirclePoint, q: &CirclePoint, n: u32) -> Result<CircleMap> {
    if p == q {
        return Err(Error::Precondition("a circle bump needs distinct endpoints".into()));
    }
    let (a, b) = (p.value().clone(), q.value().clone());
    let b = if b <= a { b + Rational::one() } else { b };
    let core = PlFn::new(bump_knots(&a, &b, n)?)?;
    // core covers [a, b] inside the window [a, a + 1]
    let window = core.extend_by_identity(&a, &(&a + Rational::one()))?;
    CircleMap::from_window(&window)
}
