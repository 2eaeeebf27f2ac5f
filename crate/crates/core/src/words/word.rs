use std::collections::BTreeMap;

use super::parse::{parse_terms, Term};
use crate::error::{Error, Result};
use crate::groups::GroupOps;
use crate::solver::PartialInjection;

/// `a_0 x^{k_0} a_1 ... x^{k_{l-1}} a_l` before normalization. `None`
/// stands for the identity so that words over any group can be built
/// without an identity constructor.
#[derive(Clone, PartialEq, Debug)]
pub struct GroupWord<E> {
    pub head: Option<E>,
    pub segments: Vec<(i64, Option<E>)>,
}

fn times<E: GroupOps>(a: Option<E>, b: Option<&E>) -> Result<Option<E>> {
    Ok(match (a, b) {
        (a, None) => a,
        (None, Some(b)) => Some(b.clone()),
        (Some(a), Some(b)) => Some(a.mul(b)?),
    })
}

fn non_trivial<E: GroupOps>(a: Option<E>) -> Option<E> {
    a.filter(|a| !a.is_identity())
}

impl<E: GroupOps> GroupWord<E> {
    pub fn from_terms(terms: &[Term], store: &BTreeMap<String, E>) -> Result<Self> {
        let mut word = GroupWord { head: None, segments: Vec::new() };
        for term in terms {
            match term {
                Term::Var(k) => word.segments.push((*k, None)),
                Term::Name(name) => {
                    let e = store.get(name).ok_or_else(|| Error::UnknownName(name.clone()))?;
                    let slot = match word.segments.last_mut() {
                        Some((_, slot)) => slot,
                        None => &mut word.head,
                    };
                    *slot = times(slot.take(), Some(e))?;
                }
            }
        }
        Ok(word)
    }

    pub fn parse(text: &str, store: &BTreeMap<String, E>) -> Result<Self> {
        Self::from_terms(&parse_terms(text)?, store)
    }

    pub fn evaluate(&self, x: &E) -> Result<E> {
        let mut acc = self.head.clone().unwrap_or_else(|| x.identity_like());
        for (k, a) in &self.segments {
            acc = acc.mul(&x.pow(*k))?;
            if let Some(a) = a {
                acc = acc.mul(a)?;
            }
        }
        Ok(acc)
    }

    /// Groups powers, drops zero exponents, and conjugates the leading
    /// coefficient round to the tail.
    pub fn normalize(&self) -> Result<Normalized<E>> {
        let mut coeffs: Vec<Option<E>> = vec![non_trivial(self.head.clone())];
        let mut powers: Vec<i64> = Vec::new();
        for (k, a) in &self.segments {
            let top = coeffs.len() - 1;
            if *k == 0 {
                coeffs[top] = non_trivial(times(coeffs[top].take(), a.as_ref())?);
            } else if top > 0 && coeffs[top].is_none() {
                // x^j 1 x^k = x^{j+k}
                let merged = powers[top - 1] + k;
                coeffs[top] = non_trivial(a.clone());
                if merged == 0 {
                    powers.pop();
                    let a = coeffs.pop().expect("top exists");
                    coeffs[top - 1] = non_trivial(times(coeffs[top - 1].take(), a.as_ref())?);
                } else {
                    powers[top - 1] = merged;
                }
            } else {
                powers.push(*k);
                coeffs.push(non_trivial(a.clone()));
            }
        }
        if powers.is_empty() {
            return Ok(if coeffs[0].is_none() { Normalized::Empty } else { Normalized::Full });
        }
        let head = coeffs.remove(0);
        let last = coeffs.len() - 1;
        if let Some(h) = head {
            coeffs[last] = non_trivial(times(coeffs[last].take(), Some(&h))?);
        }
        let word = NormalWord { powers, coeffs };
        debug_assert!(word.is_normal());
        Ok(Normalized::Word(word))
    }
}

/// Result of normalizing the set `{x : w(x) != 1}`.
#[derive(Clone, PartialEq, Debug)]
pub enum Normalized<E> {
    /// `w` is the identity constant.
    Empty,
    /// `w` is a non-identity constant.
    Full,
    Word(NormalWord<E>),
}

/// `x^{k_0} a_1 x^{k_1} a_2 ... x^{k_{l-1}} a_l` with every `k_j` non-zero
/// and every coefficient except possibly `a_l` different from the identity.
#[derive(Clone, PartialEq, Debug)]
pub struct NormalWord<E> {
    powers: Vec<i64>,
    coeffs: Vec<Option<E>>,
}

impl<E: GroupOps> NormalWord<E> {
    /// Checks the normal-form conditions.
    pub fn new(powers: Vec<i64>, coeffs: Vec<Option<E>>) -> Result<Self> {
        let coeffs = coeffs.into_iter().map(non_trivial).collect();
        let w = NormalWord { powers, coeffs };
        if !w.is_normal() {
            return Err(Error::InvalidInput("word is not in normal form".into()));
        }
        Ok(w)
    }

    pub fn is_normal(&self) -> bool {
        let l = self.powers.len();
        l > 0
            && self.coeffs.len() == l
            && self.powers.iter().all(|k| *k != 0)
            && self.coeffs[..l - 1].iter().all(|a| a.as_ref().is_some_and(|a| !a.is_identity()))
            && self.coeffs[l - 1].as_ref().is_none_or(|a| !a.is_identity())
    }

    /// `l`, the number of powers of `x`.
    pub fn len(&self) -> usize {
        self.powers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.powers.is_empty()
    }

    pub fn power(&self, j: usize) -> i64 {
        self.powers[j]
    }

    /// `a_{j+1}`, the coefficient after the `j`-th power.
    pub fn coeff_after(&self, j: usize) -> Option<&E> {
        self.coeffs[j].as_ref()
    }

    pub fn powers(&self) -> &[i64] {
        &self.powers
    }

    pub fn coeffs(&self) -> &[Option<E>] {
        &self.coeffs
    }

    pub fn to_raw(&self) -> GroupWord<E> {
        GroupWord { head: None, segments: self.powers.iter().copied().zip(self.coeffs.iter().cloned()).collect() }
    }

    pub fn evaluate(&self, x: &E) -> Result<E> {
        self.to_raw().evaluate(x)
    }

    pub fn try_map<F, T>(&self, mut f: F) -> Result<NormalWord<T>>
    where
        F: FnMut(&E) -> Result<T>,
        T: GroupOps,
    {
        let coeffs = self.coeffs.iter().map(|a| a.as_ref().map(&mut f).transpose()).collect::<Result<Vec<_>>>()?;
        NormalWord::new(self.powers.clone(), coeffs)
    }
}

/// Follows `p` through `sigma^{k_0} a_1 sigma^{k_1} a_2 ...` with `sigma`
/// composed as a relation, stopping where `p` leaves the domain.
///
/// Returns the number of completed `sigma^{k_j} a_{j+1}` factors together
/// with the image of `p` under them.
pub fn word_trace<E, P, A>(w: &NormalWord<E>, sigma: &PartialInjection<P>, p: &P, act: A) -> Result<(usize, P)>
where
    E: GroupOps,
    P: Ord + Clone + std::fmt::Debug,
    A: Fn(&E, &P) -> Result<P>,
{
    let mut point = p.clone();
    for j in 0..w.len() {
        let Some(next) = sigma.power_apply(&point, w.power(j)) else {
            return Ok((j, point));
        };
        point = match w.coeff_after(j) {
            Some(a) => act(a, &next)?,
            None => next,
        };
    }
    Ok((w.len(), point))
}
