use std::collections::BTreeSet;

use super::{GroupElement, PlFn};
use crate::error::{Error, Result};
use crate::numbers::Rational;

/// Uniform distance `sup_x d((x)f, (x)g)`.
///
/// Interval maps use `|a - b|` on `[0, 1]`; circle maps use the circle
/// metric. The difference of two piecewise-linear maps is linear between
/// merged knots, so the supremum is attained at a knot, or equals `1/2` when
/// the difference of lifts crosses a half-integer inside a segment.
pub fn d_infinity(f: &GroupElement, g: &GroupElement) -> Result<Rational> {
    match (f, g) {
        (GroupElement::Pl(a), GroupElement::Pl(b)) => {
            Ok(differences(a.graph(), b.graph()).into_iter().map(|d| d.abs()).max().expect("at least two knots"))
        }
        (GroupElement::Circle(a), GroupElement::Circle(b)) => Ok(circle_sup(&differences(a.lift(), b.lift()))),
        (GroupElement::Prefix(_), _) | (_, GroupElement::Prefix(_)) => Err(Error::InvalidInput(
            "the uniform metric is only defined for interval and circle maps".into(),
        )),
        _ => Err(Error::kind_mismatch(f.kind().to_string(), g.kind().to_string())),
    }
}

/// `f(x) - g(x)` at every knot of either map, in increasing `x`.
fn differences(f: &PlFn, g: &PlFn) -> Vec<Rational> {
    let xs: BTreeSet<&Rational> = f.knots().iter().chain(g.knots()).map(|(x, _)| x).collect();
    xs.into_iter()
        .map(|x| f.eval(x).expect("shared domain") - g.eval(x).expect("shared domain"))
        .collect()
}

fn distance_to_integer(r: &Rational) -> Rational {
    let frac = r.fract_part();
    let other = Rational::one() - &frac;
    Rational::min_of(frac, other)
}

fn circle_sup(diffs: &[Rational]) -> Rational {
    let half = Rational::ratio(1, 2);
    for w in diffs.windows(2) {
        let (lo, hi) = if w[0] <= w[1] { (&w[0], &w[1]) } else { (&w[1], &w[0]) };
        // some m + 1/2 lies in [lo, hi]
        if (hi - &half).floor() >= (lo - &half).ceil() {
            return half;
        }
    }
    diffs.iter().map(distance_to_integer).max().expect("at least two knots")
}
