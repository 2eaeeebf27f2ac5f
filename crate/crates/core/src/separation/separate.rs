use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::{Serialize, Serializer};

use super::gadget::{GadgetMode, GadgetParams, SeparationGadget};
use crate::error::{Error, Result};
use crate::groups::{d_infinity, GroupElement};
use crate::numbers::Rational;
use crate::words::SystemSpec;

/// Grids finer than this are refused rather than built.
pub const MAX_GRID: u64 = 1 << 22;

/// A gadget moved to `shift`: `h` is a member iff `shift^-1 h` is a member
/// of the gadget. Serializes as its parameters and the shift, never as the
/// expanded system.
#[derive(Clone, Debug)]
pub struct ShiftedGadget {
    gadget: Arc<SeparationGadget>,
    shift: GroupElement,
}

impl ShiftedGadget {
    pub fn new(gadget: Arc<SeparationGadget>, shift: GroupElement) -> Self {
        ShiftedGadget { gadget, shift }
    }

    pub fn gadget(&self) -> &SeparationGadget {
        &self.gadget
    }

    pub fn shift(&self) -> &GroupElement {
        &self.shift
    }

    pub fn member(&self, h: &GroupElement) -> Result<bool> {
        self.gadget.member(&self.shift.inverse().compose(h)?)
    }

    pub fn member_reference(&self, h: &GroupElement) -> Result<bool> {
        self.gadget.member_reference(&self.shift.inverse().compose(h)?)
    }

    /// The explicit inequation system over `x`.
    pub fn materialize(&self) -> Result<SystemSpec> {
        self.gadget.to_system_spec(Some(&self.shift))
    }
}

#[derive(Serialize)]
struct ShiftedRepr<'a> {
    params: GadgetParams,
    shift: &'a GroupElement,
}

impl Serialize for ShiftedGadget {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ShiftedRepr { params: self.gadget.params(), shift: &self.shift }.serialize(s)
    }
}

/// Gadgets are costly to certify, so they are shared per parameter set.
#[derive(Default)]
pub struct GadgetCache {
    built: Mutex<HashMap<(Rational, u32, GadgetMode), Arc<SeparationGadget>>>,
}

impl GadgetCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, epsilon: &Rational, n: u32, mode: GadgetMode) -> Result<Arc<SeparationGadget>> {
        let key = (epsilon.clone(), n, mode);
        if let Some(g) = self.built.lock().expect("cache lock").get(&key) {
            return Ok(g.clone());
        }
        let g = Arc::new(SeparationGadget::build(epsilon, n, mode)?);
        self.built.lock().expect("cache lock").entry(key).or_insert(g.clone());
        Ok(g)
    }

    pub fn len(&self) -> usize {
        self.built.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Separation {
    pub distance: Rational,
    pub epsilon: Rational,
    /// Open set containing `f` but not `g`.
    pub around_f: ShiftedGadget,
    /// Open set containing `g` but not `f`.
    pub around_g: ShiftedGadget,
    pub f_in_around_f: bool,
    pub g_in_around_f: bool,
    pub g_in_around_g: bool,
    pub f_in_around_g: bool,
}

impl Separation {
    pub fn separates(&self) -> bool {
        self.f_in_around_f && !self.g_in_around_f && self.g_in_around_g && !self.f_in_around_g
    }
}

/// The largest power `n^-m` not above `min(distance / 3, 1/65)`.
pub fn separation_epsilon(distance: &Rational, n: u32) -> Rational {
    let cap = Rational::min_of(distance / Rational::integer(3), Rational::ratio(1, 65));
    let mut m = 0;
    while Rational::inverse_power(n, m) > cap {
        m += 1;
    }
    Rational::inverse_power(n, m)
}

/// Two basic open sets, one around each of two distinct elements of `F_n`
/// (or of `T_n`), each excluding the other element.
pub fn separate(f: &GroupElement, g: &GroupElement, n: u32, cache: &GadgetCache) -> Result<Separation> {
    let mode = match (f, g) {
        (GroupElement::Pl(_), GroupElement::Pl(_)) => GadgetMode::Interval,
        (GroupElement::Circle(_), GroupElement::Circle(_)) => GadgetMode::Circle,
        _ if f.kind() != g.kind() => return Err(Error::kind_mismatch(f.kind().to_string(), g.kind().to_string())),
        _ => return Err(Error::InvalidInput(format!("cannot separate {} elements", f.kind()))),
    };
    if f == g {
        return Err(Error::Precondition("the two elements are equal".into()));
    }
    let distance = d_infinity(f, g)?;
    let epsilon = separation_epsilon(&distance, n);
    let bound = Rational::integer(64) / &epsilon;
    if bound >= Rational::integer(MAX_GRID) {
        return Err(Error::InvalidInput(format!(
            "elements at distance {distance} need a grid finer than {MAX_GRID}"
        )));
    }
    let gadget = cache.get(&epsilon, n, mode)?;
    let around_f = ShiftedGadget::new(gadget.clone(), f.clone());
    let around_g = ShiftedGadget::new(gadget, g.clone());
    Ok(Separation {
        f_in_around_f: around_f.member(f)?,
        g_in_around_f: around_f.member(g)?,
        g_in_around_g: around_g.member(g)?,
        f_in_around_g: around_g.member(f)?,
        distance,
        epsilon,
        around_f,
        around_g,
    })
}
