//! Seeded random normalized systems for exercising the solver.

use std::collections::BTreeMap;

use rand::Rng;

use super::line::{random_line_perm, LinePerm};
use crate::groups::{random_prefix_map, GroupElement, GroupOps, PrefixMap};
use crate::words::{InequationSystem, NormalWord, SystemSpec, Term, print_terms};

/// Shape limits for random systems.
#[derive(Clone, Copy, Debug)]
pub struct SystemShape {
    pub max_words: usize,
    pub max_len: usize,
    pub max_exponent: i64,
    pub max_cones: usize,
}

impl Default for SystemShape {
    fn default() -> Self {
        SystemShape { max_words: 3, max_len: 3, max_exponent: 2, max_cones: 8 }
    }
}

fn random_exponent<R: Rng + ?Sized>(rng: &mut R, max: i64) -> i64 {
    let k = rng.gen_range(1..=max);
    if rng.gen_bool(0.5) { k } else { -k }
}

fn non_identity_prefix_map<R: Rng + ?Sized>(rng: &mut R, n: u32, max_cones: usize) -> PrefixMap {
    loop {
        let a = random_prefix_map(rng, n, max_cones);
        if !a.is_identity() {
            return a;
        }
    }
}

/// A random system over `V_n` whose words are already in normal form; the
/// final coefficient of a word is the identity one time in four.
pub fn random_prefix_system<R: Rng + ?Sized>(rng: &mut R, n: u32, shape: SystemShape, prefix: &str) -> SystemSpec {
    let mut elements = BTreeMap::new();
    let mut words = Vec::new();
    for i in 0..rng.gen_range(1..=shape.max_words) {
        let l = rng.gen_range(1..=shape.max_len);
        let mut terms = Vec::new();
        for j in 1..=l {
            terms.push(Term::Var(random_exponent(rng, shape.max_exponent)));
            if j == l && rng.gen_ratio(1, 4) {
                continue;
            }
            let name = format!("{prefix}{i}_{j}");
            elements.insert(name.clone(), GroupElement::from(non_identity_prefix_map(rng, n, shape.max_cones)));
            terms.push(Term::Name(name));
        }
        words.push(print_terms(&terms));
    }
    let words: Vec<&str> = words.iter().map(String::as_str).collect();
    SystemSpec::from_text(elements, &words)
}

/// A random normalized system over the integer line.
pub fn random_line_system<R: Rng + ?Sized>(rng: &mut R, shape: SystemShape) -> InequationSystem<LinePerm> {
    let words = (0..rng.gen_range(1..=shape.max_words))
        .map(|_| {
            let l = rng.gen_range(1..=shape.max_len);
            let powers = (0..l).map(|_| random_exponent(rng, shape.max_exponent)).collect();
            let coeffs = (0..l)
                .map(|j| {
                    if j + 1 == l && rng.gen_ratio(1, 4) {
                        None
                    } else {
                        let g = random_line_perm(rng);
                        debug_assert!(!g.is_identity());
                        Some(g)
                    }
                })
                .collect();
            NormalWord::new(powers, coeffs).expect("generated words are normal")
        })
        .collect();
    InequationSystem::new(words)
}
