use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::gadget::{GadgetMode, SeparationGadget};
use crate::error::Result;
use crate::groups::sample::{random_f, random_t};
use crate::groups::{d_infinity, CircleMap, ElementKind, GroupElement, PlFn, PlMap};
use crate::numbers::Rational;
use crate::seeds::derive_seed;

/// Leaf bound for the random samples of an audit.
pub const AUDIT_LEAVES: usize = 16;

#[derive(Clone, Debug, Serialize)]
pub struct AuditViolation {
    pub sample: String,
    pub element: GroupElement,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub mode: GadgetMode,
    pub n: u32,
    pub requested_epsilon: Rational,
    pub epsilon: Rational,
    pub snapped: bool,
    pub k: u64,
    pub half_width: Rational,
    pub structural_ok: bool,
    pub structural_failures: Vec<String>,
    pub identity_member: bool,
    pub samples: usize,
    pub members: usize,
    pub non_members: usize,
    /// Built-in elements that are members, by name.
    pub witness_members: Vec<String>,
    pub violations: Vec<AuditViolation>,
    pub seed: u64,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.structural_ok && self.identity_member && self.violations.is_empty()
    }
}

impl SeparationGadget {
    pub fn element_kind(&self) -> ElementKind {
        match self.mode() {
            GadgetMode::Interval => ElementKind::Interval,
            GadgetMode::Circle => ElementKind::Circle,
        }
    }

    fn sample(&self, seed: u64, index: u64) -> GroupElement {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, index));
        match self.mode() {
            GadgetMode::Interval => random_f(&mut rng, self.n(), AUDIT_LEAVES).into(),
            GadgetMode::Circle => random_t(&mut rng, self.n(), AUDIT_LEAVES).into(),
        }
    }

    /// Elements known to lie close to the identity and expected to be
    /// members: the identity, the product of all grid bumps and its inverse,
    /// and in circle mode a rotation shorter than a window.
    pub fn injected_elements(&self) -> Result<Vec<(String, GroupElement)>> {
        let mut knots = Vec::new();
        for i in 0..self.k() {
            let (p, q) = (self.grid_point(i), self.grid_point(i + 1));
            for kn in crate::groups::bump_knots(&p, &q, self.n())? {
                if knots.last().is_some_and(|last: &(Rational, Rational)| last.0 == kn.0) {
                    continue;
                }
                knots.push(kn);
            }
        }
        let product = PlMap::from_breakpoints(knots)?;
        let lift = |f: &PlMap| -> GroupElement {
            match self.mode() {
                GadgetMode::Interval => f.clone().into(),
                GadgetMode::Circle => CircleMap::from_interval(f).into(),
            }
        };
        let mut out = vec![
            ("identity".to_string(), GroupElement::identity(self.element_kind())),
            ("grid-bump product".to_string(), lift(&product)),
            ("inverse grid-bump product".to_string(), lift(&product.inverse())),
        ];
        if self.mode() == GadgetMode::Circle {
            let angle = self.half_width() / Rational::integer(self.n());
            out.push(("small rotation".to_string(), CircleMap::rotation(&angle).into()));
        }
        Ok(out)
    }

    /// Consequences of membership that must hold for `g`: it lies within
    /// `epsilon` of the identity and every inner grid cell keeps almost all
    /// of its length.
    pub fn member_consequences(&self, g: &GroupElement) -> Result<Vec<String>> {
        let mut problems = Vec::new();
        let d = d_infinity(g, &GroupElement::identity(self.element_kind()))?;
        if &d >= self.epsilon() {
            problems.push(format!("distance {d} to the identity is not below {}", self.epsilon()));
        }
        let lift: PlFn = match g {
            GroupElement::Pl(f) => f.graph().clone(),
            GroupElement::Circle(f) => f.lift().clone(),
            GroupElement::Prefix(_) => unreachable!("kind checked by d_infinity"),
        };
        let at = |x: &Rational| lift.eval(x).expect("grid points lie in [0, 1]");
        let slack = self.epsilon() / Rational::integer(32 * self.k());
        let k = Rational::integer(self.k());
        let inner = |i: u64| i >= 1 && i + 2 <= self.k();
        let cell_of = |x: &Rational| -> u64 { (x * &k).floor().try_into().expect("grid indices fit in u64") };
        let knots = lift.knots();
        // cells with a knot strictly inside are checked one by one
        let mut broken: Vec<u64> = knots.iter().map(|(x, _)| x).filter(|x| !(*x * &k).is_integer()).map(cell_of).collect();
        broken.dedup();
        for &i in &broken {
            let (p, q) = (self.grid_point(i), self.grid_point(i + 1));
            let image = at(&q) - at(&p);
            if inner(i) && image < &q - &p - &slack {
                problems.push(format!("cell {i} shrinks to length {image}"));
            }
        }
        // every other cell lies inside one linear piece
        let spacing = self.grid_point(1);
        for ((x0, y0), (x1, y1)) in knots.iter().zip(&knots[1..]) {
            let slope = (y1 - y0) / (x1 - x0);
            let image = &slope * &spacing;
            if image >= &spacing - &slack {
                continue;
            }
            let first: u64 = (x0 * &k).ceil().try_into().expect("grid indices fit in u64");
            let end: u64 = cell_of(x1);
            let shrinking: Vec<u64> = (first..end).filter(|&i| inner(i) && !broken.contains(&i)).take(1).collect();
            if let Some(i) = shrinking.first() {
                problems.push(format!("cells {i}..{end} shrink to length {image}"));
            }
        }
        // the images telescope
        let total = at(&Rational::one()) - at(&Rational::zero());
        if !total.is_one() {
            problems.push(format!("cell images add up to {total}"));
        }
        Ok(problems)
    }

    /// Checks the structure exactly, then samples `samples` random elements
    /// and confirms every member is close to the identity.
    pub fn audit(&self, samples: usize, seed: u64, parallel: bool) -> Result<AuditReport> {
        let structural_failures = self.structural_audit()?;
        let mut violations = Vec::new();
        let mut witness_members = Vec::new();
        let mut identity_member = false;
        for (name, g) in self.injected_elements()? {
            let fast = self.member(&g)?;
            if name == "identity" {
                identity_member = fast && self.identity_is_member();
            }
            if fast {
                witness_members.push(name.clone());
                for reason in self.member_consequences(&g)? {
                    violations.push(AuditViolation { sample: name.clone(), element: g.clone(), reason });
                }
            }
        }
        let check = |i: usize| -> Result<(bool, Vec<AuditViolation>)> {
            let g = self.sample(seed, i as u64);
            if !self.member(&g)? {
                return Ok((false, Vec::new()));
            }
            let found = self
                .member_consequences(&g)?
                .into_iter()
                .map(|reason| AuditViolation { sample: format!("sample {i}"), element: g.clone(), reason })
                .collect();
            Ok((true, found))
        };
        let outcomes: Vec<(bool, Vec<AuditViolation>)> = if parallel {
            (0..samples).into_par_iter().map(check).collect::<Result<_>>()?
        } else {
            (0..samples).map(check).collect::<Result<_>>()?
        };
        let mut members = 0;
        for (is_member, found) in outcomes {
            members += is_member as usize;
            violations.extend(found);
        }
        Ok(AuditReport {
            mode: self.mode(),
            n: self.n(),
            requested_epsilon: self.requested_epsilon().clone(),
            epsilon: self.epsilon().clone(),
            snapped: self.was_snapped(),
            k: self.k(),
            half_width: self.half_width().clone(),
            structural_ok: structural_failures.is_empty(),
            structural_failures,
            identity_member,
            samples,
            members,
            non_members: samples - members,
            witness_members,
            violations,
            seed,
        })
    }
}
