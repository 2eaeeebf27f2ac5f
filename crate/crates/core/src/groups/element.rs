use std::fmt;

use serde::{Deserialize, Serialize};

use super::{CircleMap, GroupOps, Knot, OrbitPoint, PlMap, PrefixMap};
use super::prefix::{format_digits, parse_digits};
use crate::error::{Error, Result};
use crate::numbers::Rational;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ElementKind {
    Interval,
    Circle,
    Prefix(u32),
}

impl fmt::Display for ElementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementKind::Interval => f.write_str("pl"),
            ElementKind::Circle => f.write_str("circle"),
            ElementKind::Prefix(n) => write!(f, "prefix(n={n})"),
        }
    }
}

/// One of the three concrete element kinds.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "ElementRepr", into = "ElementRepr")]
pub enum GroupElement {
    Pl(PlMap),
    Circle(CircleMap),
    Prefix(PrefixMap),
}

impl GroupElement {
    pub fn kind(&self) -> ElementKind {
        match self {
            GroupElement::Pl(_) => ElementKind::Interval,
            GroupElement::Circle(_) => ElementKind::Circle,
            GroupElement::Prefix(p) => ElementKind::Prefix(p.alphabet_size()),
        }
    }

    pub fn identity(kind: ElementKind) -> Self {
        match kind {
            ElementKind::Interval => GroupElement::Pl(PlMap::identity()),
            ElementKind::Circle => GroupElement::Circle(CircleMap::identity()),
            ElementKind::Prefix(n) => GroupElement::Prefix(PrefixMap::identity(n)),
        }
    }

    fn mismatch(&self, other: &GroupElement) -> Error {
        Error::kind_mismatch(self.kind().to_string(), other.kind().to_string())
    }

    /// `x -> ((x)self)other`.
    pub fn compose(&self, other: &GroupElement) -> Result<GroupElement> {
        match (self, other) {
            (GroupElement::Pl(f), GroupElement::Pl(g)) => Ok(GroupElement::Pl(f.compose(g))),
            (GroupElement::Circle(f), GroupElement::Circle(g)) => Ok(GroupElement::Circle(f.compose(g))),
            (GroupElement::Prefix(f), GroupElement::Prefix(g)) => Ok(GroupElement::Prefix(f.compose(g)?)),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn inverse(&self) -> GroupElement {
        match self {
            GroupElement::Pl(f) => GroupElement::Pl(f.inverse()),
            GroupElement::Circle(f) => GroupElement::Circle(f.inverse()),
            GroupElement::Prefix(f) => GroupElement::Prefix(f.inverse()),
        }
    }

    /// `g^-1 self g`.
    pub fn conjugate(&self, g: &GroupElement) -> Result<GroupElement> {
        self.conjugate_by(g)
    }

    /// `self^-1 g^-1 self g`.
    pub fn commutator(&self, g: &GroupElement) -> Result<GroupElement> {
        self.commutator_with(g)
    }

    pub fn is_identity(&self) -> bool {
        match self {
            GroupElement::Pl(f) => f.is_identity(),
            GroupElement::Circle(f) => f.is_identity(),
            GroupElement::Prefix(f) => f.is_identity(),
        }
    }

    pub fn as_prefix(&self) -> Option<&PrefixMap> {
        match self {
            GroupElement::Prefix(p) => Some(p),
            _ => None,
        }
    }

    /// Applies a `V_n` element to an orbit point.
    pub fn apply_to_orbit_point(&self, x: &OrbitPoint) -> Result<OrbitPoint> {
        match self {
            GroupElement::Prefix(p) => p.apply(x),
            _ => Err(Error::kind_mismatch(self.kind().to_string(), "orbit point")),
        }
    }
}

impl GroupOps for GroupElement {
    fn mul(&self, rhs: &Self) -> Result<Self> {
        self.compose(rhs)
    }

    fn inv(&self) -> Self {
        self.inverse()
    }

    fn is_identity(&self) -> bool {
        GroupElement::is_identity(self)
    }

    fn identity_like(&self) -> Self {
        GroupElement::identity(self.kind())
    }
}

impl From<PlMap> for GroupElement {
    fn from(f: PlMap) -> Self {
        GroupElement::Pl(f)
    }
}

impl From<CircleMap> for GroupElement {
    fn from(f: CircleMap) -> Self {
        GroupElement::Circle(f)
    }
}

impl From<PrefixMap> for GroupElement {
    fn from(f: PrefixMap) -> Self {
        GroupElement::Prefix(f)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum ElementRepr {
    Pl { breakpoints: Vec<Knot> },
    Circle { base_image: Rational, lift: Vec<Knot> },
    Prefix { n: u32, pairs: Vec<(String, String)> },
}

impl TryFrom<ElementRepr> for GroupElement {
    type Error = Error;

    fn try_from(repr: ElementRepr) -> Result<Self> {
        Ok(match repr {
            ElementRepr::Pl { breakpoints } => GroupElement::Pl(PlMap::from_breakpoints(breakpoints)?),
            ElementRepr::Circle { base_image, lift } => GroupElement::Circle(CircleMap::from_lift(base_image, lift)?),
            ElementRepr::Prefix { n, pairs } => {
                let pairs = pairs
                    .iter()
                    .map(|(a, b)| Ok((parse_digits(a, n)?, parse_digits(b, n)?)))
                    .collect::<Result<Vec<_>>>()?;
                GroupElement::Prefix(PrefixMap::new(n, pairs)?)
            }
        })
    }
}

impl From<GroupElement> for ElementRepr {
    fn from(e: GroupElement) -> Self {
        match e {
            GroupElement::Pl(f) => ElementRepr::Pl { breakpoints: f.breakpoints().to_vec() },
            GroupElement::Circle(f) => {
                ElementRepr::Circle { base_image: f.base_image().clone(), lift: f.lift_knots().to_vec() }
            }
            GroupElement::Prefix(f) => ElementRepr::Prefix {
                n: f.alphabet_size(),
                pairs: f.pairs().iter().map(|(a, b)| (format_digits(a), format_digits(b))).collect(),
            },
        }
    }
}
