//! Seeded random elements built from pairs of random `n`-ary trees.

use rand::Rng;

use super::{random_prefix_map, CircleMap, ElementKind, GroupElement, PlMap};
use crate::numbers::Rational;

/// Leaves of a random `n`-ary subdivision of `[0, 1]` with exactly
/// `1 + splits (n - 1)` leaves, returned as the sorted list of left
/// endpoints followed by `1`.
fn random_subdivision<R: Rng + ?Sized>(rng: &mut R, n: u32, splits: usize) -> Vec<Rational> {
    let mut leaves: Vec<(Rational, Rational)> = vec![(Rational::zero(), Rational::one())];
    for _ in 0..splits {
        let i = rng.gen_range(0..leaves.len());
        let (a, b) = leaves.remove(i);
        let step = (&b - &a) / Rational::integer(n);
        for j in (0..n).rev() {
            let lo = &a + &step * Rational::integer(j);
            leaves.insert(i, (lo.clone(), lo + &step));
        }
    }
    let mut points: Vec<Rational> = leaves.into_iter().map(|(a, _)| a).collect();
    points.push(Rational::one());
    points
}

fn random_splits<R: Rng + ?Sized>(rng: &mut R, n: u32, max_leaves: usize) -> usize {
    let max_splits = max_leaves.saturating_sub(1) / (n as usize - 1);
    rng.gen_range(0..=max_splits)
}

/// A random element of `F_n` given by a tree pair with at most `max_leaves`
/// leaves.
pub fn random_f<R: Rng + ?Sized>(rng: &mut R, n: u32, max_leaves: usize) -> PlMap {
    let splits = random_splits(rng, n, max_leaves);
    let dom = random_subdivision(rng, n, splits);
    let ran = random_subdivision(rng, n, splits);
    PlMap::from_breakpoints(dom.into_iter().zip(ran).collect()).expect("tree pairs give monotone maps")
}

/// A random element of `T_n`: a tree pair whose leaves are matched after a
/// random cyclic shift.
pub fn random_t<R: Rng + ?Sized>(rng: &mut R, n: u32, max_leaves: usize) -> CircleMap {
    let splits = random_splits(rng, n, max_leaves);
    let dom = random_subdivision(rng, n, splits);
    let ran = random_subdivision(rng, n, splits);
    let leaves = dom.len() - 1;
    let shift = rng.gen_range(0..leaves);
    let one = Rational::one();
    let knots = (0..=leaves)
        .map(|i| {
            let j = i + shift;
            let y = if j >= leaves { &ran[j - leaves] + &one } else { ran[j].clone() };
            (dom[i].clone(), y)
        })
        .collect();
    CircleMap::from_lift(ran[shift].clone(), knots).expect("cyclic tree pairs give circle lifts")
}

/// A random element of the given kind; `size` bounds leaves or cones.
pub fn random_element<R: Rng + ?Sized>(rng: &mut R, kind: ElementKind, n: u32, size: usize) -> GroupElement {
    match kind {
        ElementKind::Interval => random_f(rng, n, size).into(),
        ElementKind::Circle => random_t(rng, n, size).into(),
        ElementKind::Prefix(m) => random_prefix_map(rng, m, size).into(),
    }
}
