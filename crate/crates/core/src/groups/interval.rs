use super::pl::{Knot, PlFn};
use crate::error::{Error, Result};
use crate::numbers::Rational;

/// Orientation-preserving piecewise-linear homeomorphism of `[0, 1]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PlMap {
    graph: PlFn,
}

impl PlMap {
    pub fn identity() -> Self {
        PlMap { graph: PlFn::identity_on(Rational::zero(), Rational::one()) }
    }

    pub fn from_breakpoints(knots: Vec<Knot>) -> Result<Self> {
        let graph = PlFn::new(knots)?;
        Self::from_graph(graph)
    }

    pub(crate) fn from_graph(graph: PlFn) -> Result<Self> {
        let zero = Rational::zero();
        let one = Rational::one();
        if graph.domain_start() != &zero
            || graph.range_start() != &zero
            || graph.domain_end() != &one
            || graph.range_end() != &one
        {
            return Err(Error::InvalidElement("an interval map must run from (0,0) to (1,1)".into()));
        }
        Ok(PlMap { graph })
    }

    pub fn breakpoints(&self) -> &[Knot] {
        self.graph.knots()
    }

    pub fn graph(&self) -> &PlFn {
        &self.graph
    }

    pub fn evaluate(&self, x: &Rational) -> Result<Rational> {
        self.graph
            .eval(x)
            .ok_or_else(|| Error::InvalidInput(format!("{x} is outside [0, 1]")))
    }

    /// `x -> ((x)self)other`.
    pub fn compose(&self, other: &PlMap) -> PlMap {
        let graph = self.graph.then(&other.graph).expect("both maps act on [0, 1]");
        PlMap { graph }
    }

    pub fn inverse(&self) -> PlMap {
        PlMap { graph: self.graph.inverse() }
    }

    pub fn is_identity(&self) -> bool {
        self.graph.is_identity()
    }

    /// Membership in Thompson's group `F_n`: every slope a power of `n`,
    /// every breakpoint `n`-adic.
    pub fn is_in_thompson_f(&self, n: u32) -> bool {
        self.graph.knots().iter().all(|(x, y)| x.is_n_adic(n) && y.is_n_adic(n))
            && self.graph.slopes().all(|s| s.power_of(n).is_some())
    }

    pub fn has_support_exactly(&self, p: &Rational, q: &Rational) -> bool {
        self.graph.is_positive_bump_on(p, q)
    }
}

/// Knots of the standard bump on `[p, q]` (domain only, fixed endpoints).
///
/// The map runs through `(p, p)`, `(p + s, p + n s)`, `(q - n s, q - s)`,
/// `(q, q)` with `s = n^-m` the largest such power with `(n + 1) s < q - p`;
/// its slopes are `n`, `1`, `1/n`.
pub(crate) fn bump_knots(p: &Rational, q: &Rational, n: u32) -> Result<Vec<Knot>> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("alphabet size {n} is below 2")));
    }
    if !p.is_n_adic(n) || !q.is_n_adic(n) {
        return Err(Error::Precondition(format!("bump endpoints {p}, {q} must be {n}-adic")));
    }
    if p >= q {
        return Err(Error::Precondition(format!("bump endpoints need {p} < {q}")));
    }
    let len = q - p;
    let nn = Rational::integer(n);
    let mut s = Rational::one();
    let n1 = Rational::integer(n + 1);
    while &s * &n1 >= len {
        s = &s / &nn;
    }
    let ns = &nn * &s;
    Ok(vec![
        (p.clone(), p.clone()),
        (p + &s, p + &ns),
        (q - &ns, q - &s),
        (q.clone(), q.clone()),
    ])
}

/// An element of `F_n` whose support is exactly `(p, q)`, moving every
/// interior point upward.
pub fn make_bump(p: &Rational, q: &Rational, n: u32) -> Result<PlMap> {
    let zero = Rational::zero();
    let one = Rational::one();
    if p < &zero || q > &one {
        return Err(Error::Precondition(format!("bump ({p}, {q}) leaves [0, 1]")));
    }
    let core = PlFn::new(bump_knots(p, q, n)?)?;
    PlMap::from_graph(core.extend_by_identity(&zero, &one)?)
}
