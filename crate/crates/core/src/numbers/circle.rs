use std::fmt;

use serde::{Deserialize, Serialize};

use super::Rational;
use crate::error::{Error, Result};

/// A point of the circle, modelled as `[0, 1)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Rational", into = "Rational")]
pub struct CirclePoint(Rational);

impl CirclePoint {
    pub fn new(value: Rational) -> Result<Self> {
        if value.is_negative() || value >= Rational::one() {
            return Err(Error::InvalidInput(format!("circle point {value} is outside [0, 1)")));
        }
        Ok(CirclePoint(value))
    }

    /// Reduces any rational modulo 1.
    pub fn wrap(value: &Rational) -> Self {
        CirclePoint(value.fract_part())
    }

    pub fn zero() -> Self {
        CirclePoint(Rational::zero())
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }
}

impl TryFrom<Rational> for CirclePoint {
    type Error = Error;
    fn try_from(value: Rational) -> Result<Self> {
        CirclePoint::new(value)
    }
}

impl From<CirclePoint> for Rational {
    fn from(p: CirclePoint) -> Self {
        p.0
    }
}

impl fmt::Debug for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The open arc travelling counterclockwise from `from` to `to`.
///
/// Direction matters: `(1/5, 3/5)` and `(3/5, 1/5)` are complementary arcs.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct OpenArc {
    from: CirclePoint,
    to: CirclePoint,
}

impl OpenArc {
    pub fn new(from: CirclePoint, to: CirclePoint) -> Result<Self> {
        if from == to {
            return Err(Error::InvalidInput("an open arc needs distinct endpoints".into()));
        }
        Ok(OpenArc { from, to })
    }

    pub fn from(&self) -> &CirclePoint {
        &self.from
    }

    pub fn to(&self) -> &CirclePoint {
        &self.to
    }

    pub fn reversed(&self) -> OpenArc {
        OpenArc { from: self.to.clone(), to: self.from.clone() }
    }

    pub fn wraps_zero(&self) -> bool {
        self.from > self.to
    }
}

/// `min(|x - y|, 1 - |x - y|)`.
pub fn circle_distance(x: &CirclePoint, y: &CirclePoint) -> Rational {
    let d = (x.value() - y.value()).abs();
    let other = Rational::one() - &d;
    Rational::min_of(d, other)
}

/// Lebesgue measure of an open arc: `(to - from) mod 1`.
pub fn arc_measure(arc: &OpenArc) -> Rational {
    (arc.to.value() - arc.from.value()).fract_part()
}

/// Strict membership in the cyclic interval.
pub fn point_in_arc(z: &CirclePoint, arc: &OpenArc) -> bool {
    let (x, y) = (&arc.from, &arc.to);
    (x < z && z < y) || (y < x && x < z) || (z < y && y < x)
}

pub fn is_n_adic(r: &Rational, n: u32) -> bool {
    r.is_n_adic(n)
}
