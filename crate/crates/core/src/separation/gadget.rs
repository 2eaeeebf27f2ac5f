use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{circle_bump, make_bump, CircleMap, GroupElement, Knot, PlFn};
use crate::numbers::{CirclePoint, Rational};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GadgetMode {
    /// Homeomorphisms of `[0, 1]`, seen as circle maps fixing 0.
    Interval,
    Circle,
}

impl fmt::Display for GadgetMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GadgetMode::Interval => "interval",
            GadgetMode::Circle => "circle",
        })
    }
}

impl FromStr for GadgetMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "interval" => Ok(GadgetMode::Interval),
            "circle" => Ok(GadgetMode::Circle),
            _ => Err(Error::InvalidInput(format!("unknown mode {s:?}; expected interval or circle"))),
        }
    }
}

/// Everything needed to rebuild a gadget.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct GadgetParams {
    pub epsilon: Rational,
    pub n: u32,
    pub mode: GadgetMode,
    pub k: u64,
}

fn check_n(n: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("n = {n} is below 2")));
    }
    Ok(())
}

/// Rounds `eps` down to an `n`-adic rational below `1/64`.
///
/// Values of at least `1/64` are first replaced by `1/65`. Non-`n`-adic
/// values are truncated to `n^-(m + 6)` precision, where `n^-m` is the
/// largest power of `n` not above `eps`.
pub fn snap_epsilon(eps: &Rational, n: u32) -> Result<Rational> {
    check_n(n)?;
    if !eps.is_positive() {
        return Err(Error::InvalidInput(format!("epsilon must be positive, got {eps}")));
    }
    let eps = if eps >= &Rational::ratio(1, 64) { Rational::ratio(1, 65) } else { eps.clone() };
    if eps.is_n_adic(n) {
        return Ok(eps);
    }
    let mut m = 0u32;
    while Rational::inverse_power(n, m) > eps {
        m += 1;
    }
    let scale = Rational::inverse_power(n, m + 6).recip();
    Ok(Rational::integer((&eps * &scale).floor()) / scale)
}

/// The basic Zariski-open set cut out by commutator conditions between
/// conjugated grid bumps and small window bumps.
///
/// Grid points are `p_i = i/k`, windows are `(p_i - w, p_i + w)`, and for
/// `0 < i < k - 1` the conditions read
/// `[t_i^g, w_i] != 1` and `[t_i^g, w_{i+1}] != 1`.
/// Bumps are produced on demand rather than stored.
#[derive(Clone, Debug)]
pub struct SeparationGadget {
    requested_epsilon: Rational,
    epsilon: Rational,
    n: u32,
    mode: GadgetMode,
    k: u64,
    spacing: Rational,
    half_width: Rational,
    // bump on [0, 1/k] and on [-w, w], translated into place on demand
    grid_template: Vec<Knot>,
    window_template: Vec<Knot>,
    // which of the two conditions the identity satisfies, per grid index
    certificate: Vec<(bool, bool)>,
    // failing certificate entries below each index
    certificate_failures: Vec<u32>,
}

fn translate(knots: &[Knot], by: &Rational) -> Vec<Knot> {
    knots.iter().map(|(x, y)| (x + by, y + by)).collect()
}

impl SeparationGadget {
    pub fn build(epsilon: &Rational, n: u32, mode: GadgetMode) -> Result<Self> {
        let snapped = snap_epsilon(epsilon, n)?;
        let bound = Rational::integer(64) / &snapped;
        let nn = Rational::integer(n);
        let mut k_rat = Rational::one();
        while k_rat <= bound {
            k_rat = &k_rat * &nn;
        }
        let k = k_rat
            .to_u64()
            .filter(|k| *k <= super::MAX_GRID)
            .ok_or_else(|| Error::InvalidInput(format!("epsilon {snapped} needs too fine a grid")))?;
        let spacing = k_rat.recip();
        // least m with 2 n^-m < eps / (64 k^2)
        let width_bound = &snapped / (Rational::integer(64) * &k_rat * &k_rat);
        let mut m = 0u32;
        while Rational::integer(2) * Rational::inverse_power(n, m) >= width_bound {
            m += 1;
        }
        let half_width = Rational::inverse_power(n, m);
        let grid_template = crate::groups::bump_knots(&Rational::zero(), &spacing, n)?;
        let window_template = crate::groups::bump_knots(&-&half_width, &half_width, n)?;
        let mut gadget = SeparationGadget {
            requested_epsilon: epsilon.clone(),
            epsilon: snapped,
            n,
            mode,
            k,
            spacing,
            half_width,
            grid_template,
            window_template,
            certificate: Vec::new(),
            certificate_failures: Vec::new(),
        };
        let identity = PlFn::identity_on(Rational::zero(), Rational::one());
        gadget.certificate = (0..k)
            .map(|i| {
                if i == 0 || i + 1 >= k {
                    return Ok((true, true));
                }
                let (lo, hi) = (gadget.grid_point(i), gadget.grid_point(i + 1));
                let a = gadget.local_commutes(&identity, &lo, &hi, i, i)?.expect("grid cells are short");
                let b = gadget.local_commutes(&identity, &lo, &hi, i, i + 1)?.expect("grid cells are short");
                Ok((!a, !b))
            })
            .collect::<Result<_>>()?;
        let mut failures = vec![0u32];
        for &(a, b) in &gadget.certificate {
            failures.push(failures.last().unwrap() + u32::from(!(a && b)));
        }
        gadget.certificate_failures = failures;
        Ok(gadget)
    }

    pub fn params(&self) -> GadgetParams {
        GadgetParams { epsilon: self.epsilon.clone(), n: self.n, mode: self.mode, k: self.k }
    }

    pub fn requested_epsilon(&self) -> &Rational {
        &self.requested_epsilon
    }

    pub fn epsilon(&self) -> &Rational {
        &self.epsilon
    }

    pub fn was_snapped(&self) -> bool {
        self.requested_epsilon != self.epsilon
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn mode(&self) -> GadgetMode {
        self.mode
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    /// Half-width `w` of every window.
    pub fn half_width(&self) -> &Rational {
        &self.half_width
    }

    pub fn grid_point(&self, i: u64) -> Rational {
        Rational::integer(i) * &self.spacing
    }

    /// `(p_{i,l}, p_{i,r})` for `0 < i < k`.
    pub fn window(&self, i: u64) -> (Rational, Rational) {
        let p = self.grid_point(i);
        (&p - &self.half_width, &p + &self.half_width)
    }

    /// Indices `i` with conditions: `0 < i < k - 1`.
    pub fn condition_indices(&self) -> std::ops::Range<u64> {
        1..self.k - 1
    }

    fn grid_knots(&self, i: u64) -> Vec<Knot> {
        translate(&self.grid_template, &self.grid_point(i))
    }

    fn window_knots(&self, i: u64, by: &Rational) -> Vec<Knot> {
        translate(&self.window_template, &(self.grid_point(i) + by))
    }

    /// The grid bump `t_{p_i, p_{i+1}}` as an element of the gadget's group.
    pub fn grid_bump(&self, i: u64) -> Result<GroupElement> {
        self.bump(&self.grid_point(i), &self.grid_point(i + 1))
    }

    /// The window bump `t_{p_{i,l}, p_{i,r}}`.
    pub fn window_bump(&self, i: u64) -> Result<GroupElement> {
        let (l, r) = self.window(i);
        self.bump(&l, &r)
    }

    fn bump(&self, p: &Rational, q: &Rational) -> Result<GroupElement> {
        Ok(match self.mode {
            GadgetMode::Interval => make_bump(p, q, self.n)?.into(),
            GadgetMode::Circle => {
                circle_bump(&CirclePoint::wrap(p), &CirclePoint::wrap(q), self.n)?.into()
            }
        })
    }

    /// Whether the identity satisfies both conditions at every index,
    /// computed exactly when the gadget was built.
    pub fn identity_is_member(&self) -> bool {
        self.condition_indices().all(|i| {
            let (a, b) = self.certificate[i as usize];
            a && b
        })
    }

    fn lift_of(&self, g: &GroupElement) -> Result<CircleMap> {
        match (self.mode, g) {
            (GadgetMode::Interval, GroupElement::Pl(f)) => Ok(CircleMap::from_interval(f)),
            (GadgetMode::Circle, GroupElement::Circle(f)) => Ok(f.clone()),
            _ => Err(Error::kind_mismatch(g.kind().to_string(), format!("{} gadget", self.mode))),
        }
    }

    /// Exact membership of `g` in the gadget's set.
    ///
    /// Each condition is decided from where the lift of `g` sends the two
    /// ends of a grid cell; see [`Self::local_commutes`].
    pub fn member(&self, g: &GroupElement) -> Result<bool> {
        let lift = self.lift_of(g)?;
        let knots = lift.lift().knots();
        let k = Rational::integer(self.k);
        let at = |i: u64| lift.lift().eval(&self.grid_point(i)).expect("grid points lie in [0, 1]");
        let last_index = self.k - 2;
        let mut seg = 0;
        let mut i = 1;
        while i <= last_index {
            let p = self.grid_point(i);
            while knots[seg + 1].0 <= p {
                seg += 1;
            }
            let (a, b) = (&knots[seg], &knots[seg + 1]);
            let offset = &a.1 - &a.0;
            if offset.is_integer() && &b.1 - &b.0 == offset {
                // an integer translation on a whole run of cells acts there
                // exactly like the identity
                let end: u64 = (&b.0 * &k).floor().try_into().expect("grid indices fit in u64");
                let last = end.saturating_sub(1).min(last_index);
                if last >= i {
                    if self.certificate_failures[last as usize + 1] != self.certificate_failures[i as usize] {
                        return Ok(false);
                    }
                    i = last + 1;
                    continue;
                }
            }
            let (lo, hi) = (at(i), at(i + 1));
            for j in [i, i + 1] {
                let holds = match self.local_commutes(lift.lift(), &lo, &hi, i, j)? {
                    Some(commutes) => !commutes,
                    None => self.condition_reference(g, i, j)?,
                };
                if !holds {
                    return Ok(false);
                }
            }
            i += 1;
        }
        Ok(true)
    }

    /// Membership by composing full group elements; slow but direct.
    pub fn member_reference(&self, g: &GroupElement) -> Result<bool> {
        self.lift_of(g)?;
        for i in self.condition_indices() {
            if !self.condition_reference(g, i, i)? || !self.condition_reference(g, i, i + 1)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `[t_i^g, w_j] != 1` for `j` in `{i, i + 1}`, decided as in
    /// [`Self::member`].
    pub fn condition(&self, g: &GroupElement, i: u64, j: u64) -> Result<bool> {
        if !self.condition_indices().contains(&i) || (j != i && j != i + 1) {
            return Err(Error::InvalidInput(format!("no condition with indices ({i}, {j})")));
        }
        let lift = self.lift_of(g)?;
        let at = |x: u64| lift.lift().eval(&self.grid_point(x)).expect("grid points lie in [0, 1]");
        match self.local_commutes(lift.lift(), &at(i), &at(i + 1), i, j)? {
            Some(commutes) => Ok(!commutes),
            None => self.condition_reference(g, i, j),
        }
    }

    /// `[t_i^g, w_j] != 1` by full compositions.
    pub fn condition_reference(&self, g: &GroupElement, i: u64, j: u64) -> Result<bool> {
        let t = self.grid_bump(i)?.conjugate(g)?;
        Ok(!t.commutator(&self.window_bump(j)?)?.is_identity())
    }

    /// Whether `t_i^g` commutes with `w_j`, where `lift` is the lift of `g`
    /// and `(lo, hi)` the image of `(p_i, p_{i+1})`, which is the support
    /// of the conjugated bump. `None` when the supports are too spread out
    /// for a computation on one period.
    ///
    /// Commuting maps preserve each other's supports. The window supports
    /// are translates whose left ends sit exactly 1 apart, and the bump moves
    /// points by less than 1, so it cannot preserve them once a window end
    /// falls inside `(lo, hi)`. Likewise a window bump moves any end of
    /// `(lo, hi)` lying inside its window. Only disjoint supports and the
    /// case where `(lo, hi)` is itself a window remain; the latter is
    /// settled by composing the maps on one period.
    fn local_commutes(&self, lift: &PlFn, lo: &Rational, hi: &Rational, i: u64, j: u64) -> Result<Option<bool>> {
        let p_j = self.grid_point(j);
        let w = &self.half_width;
        // integer translates m with (p_j - w + m, p_j + w + m) meeting (lo, hi)
        let lo_m: num_bigint::BigInt = (lo - &p_j - w).floor() + 1;
        let hi_m: num_bigint::BigInt = (hi - &p_j + w).ceil() - 1;
        if lo_m > hi_m {
            return Ok(Some(true));
        }
        let start = &p_j - w + Rational::integer(lo_m.clone());
        if lo_m != hi_m || &start != lo || &(&start + w + w) != hi {
            return Ok(Some(false));
        }
        let shift = Rational::integer(lo_m);
        let cell = lift.restrict(&self.grid_point(i), &self.grid_point(i + 1)).expect("cells lie in [0, 1]");
        let (r_lo, r_hi) = (lo.clone(), hi.clone());
        if &r_hi - &r_lo >= Rational::one() {
            return Ok(None);
        }
        let t = PlFn::new(self.grid_knots(i))?;
        let a = cell.inverse().then(&t)?.then(&cell)?;
        let b = PlFn::new(self.window_knots(j, &shift))?;
        Ok(Some(a.then(&b)? == b.then(&a)?))
    }

    /// Exact check of every structural requirement on the grid, windows
    /// and bumps; returns the list of failures.
    pub fn structural_audit(&self) -> Result<Vec<String>> {
        let mut failures = Vec::new();
        let eps = &self.epsilon;
        let k = Rational::integer(self.k);
        let mut fail = |cond: bool, what: String| {
            if !cond {
                failures.push(what);
            }
        };
        fail(eps.is_positive() && eps < &Rational::ratio(1, 64), format!("epsilon {eps} not in (0, 1/64)"));
        fail(eps.is_n_adic(self.n), format!("epsilon {eps} is not {}-adic", self.n));
        let step_bound = eps / Rational::integer(64);
        for i in 0..self.k {
            let d = self.grid_point(i + 1) - self.grid_point(i);
            if !(d.is_positive() && d < step_bound) {
                fail(false, format!("grid step {i} has length {d}"));
            }
        }
        let p1 = self.grid_point(1);
        fail(p1.is_positive() && p1 < step_bound, format!("p_1 = {p1} too large"));
        let pk1 = self.grid_point(self.k - 1);
        fail(
            pk1 > Rational::integer(63) * eps / Rational::integer(64) && pk1 < Rational::one(),
            format!("p_(k-1) = {pk1} out of range"),
        );
        fail(self.spacing.is_n_adic(self.n) && self.half_width.is_n_adic(self.n), "grid not n-adic".into());
        // the per-j width bound, which is the same for every j on a uniform grid
        let width = Rational::integer(2) * &self.half_width;
        let min_step = self.spacing.clone();
        fail(
            width.is_positive() && width < eps * &min_step / (Rational::integer(64) * &k),
            format!("window width {width} too large"),
        );
        fail(&self.half_width < &self.spacing, "windows overlap".into());
        for i in 1..self.k {
            let (l, r) = self.window(i);
            let p = self.grid_point(i);
            if !(l < p && p < r && !l.is_negative() && r <= Rational::one()) {
                fail(false, format!("window {i} does not straddle its grid point"));
            }
        }
        for i in 0..self.k {
            let (p, q) = (self.grid_point(i), self.grid_point(i + 1));
            let t = self.grid_bump(i)?;
            let on_demand = PlFn::new(self.grid_knots(i))?;
            if !bump_matches(&t, &on_demand, &p, &q, self.n) {
                fail(false, format!("grid bump {i} has the wrong support"));
            }
        }
        for i in 1..self.k {
            let (l, r) = self.window(i);
            let t = self.window_bump(i)?;
            let on_demand = PlFn::new(self.window_knots(i, &Rational::zero()))?;
            if !bump_matches(&t, &on_demand, &l, &r, self.n) {
                fail(false, format!("window bump {i} has the wrong support"));
            }
        }
        Ok(failures)
    }

    /// The gadget set as an explicit system over variable `x`, with `x`
    /// replaced by `shift^-1 x` when a shift is given.
    pub fn to_system_spec(&self, shift: Option<&GroupElement>) -> Result<crate::words::SystemSpec> {
        let mut elements = std::collections::BTreeMap::new();
        let mut words = Vec::new();
        let (pre, post) = match shift {
            Some(f) => {
                elements.insert("f".to_string(), f.clone());
                elements.insert("finv".to_string(), f.inverse());
                ("f ", " finv")
            }
            None => ("", ""),
        };
        for i in 1..self.k {
            let w = self.window_bump(i)?;
            elements.insert(format!("W_{i}"), w.inverse());
            elements.insert(format!("w_{i}"), w);
        }
        for i in self.condition_indices() {
            let t = self.grid_bump(i)?;
            elements.insert(format!("T_{i}"), t.inverse());
            elements.insert(format!("t_{i}"), t);
            for j in [i, i + 1] {
                words.push(format!("x^-1 {pre}T_{i}{post} x W_{j} x^-1 {pre}t_{i}{post} x w_{j}"));
            }
        }
        let words: Vec<&str> = words.iter().map(String::as_str).collect();
        Ok(crate::words::SystemSpec::from_text(elements, &words))
    }
}

fn bump_matches(t: &GroupElement, on_demand: &PlFn, p: &Rational, q: &Rational, n: u32) -> bool {
    let extended = on_demand.extend_by_identity(&Rational::zero(), &Rational::one());
    match t {
        GroupElement::Pl(f) => {
            f.has_support_exactly(p, q) && f.is_in_thompson_f(n) && extended.as_ref().ok() == Some(f.graph())
        }
        GroupElement::Circle(f) => {
            f.is_in_thompson_t(n)
                && f.to_interval().is_some_and(|g| g.has_support_exactly(p, q) && extended.as_ref().ok() == Some(g.graph()))
        }
        GroupElement::Prefix(_) => false,
    }
}
