//! Gadget membership against the metric and against full compositions.

mod common;

use std::sync::OnceLock;

use proptest::prelude::*;
use rand::Rng;

use zariski::groups::{make_bump, CircleMap, ElementKind, GroupElement, PlMap};
use zariski::numbers::Rational;
use zariski::separation::{GadgetCache, GadgetMode, SeparationGadget};

fn gadget(mode: GadgetMode) -> &'static SeparationGadget {
    static GADGETS: OnceLock<[SeparationGadget; 2]> = OnceLock::new();
    let g = GADGETS.get_or_init(|| {
        let eps = Rational::ratio(1, 65);
        [
            SeparationGadget::build(&eps, 2, GadgetMode::Interval).unwrap(),
            SeparationGadget::build(&eps, 2, GadgetMode::Circle).unwrap(),
        ]
    });
    &g[(mode == GadgetMode::Circle) as usize]
}

/// A product of a few bumps on random dyadic intervals of widely varying
/// length, so that some products stay within a window of the identity.
fn near_identity<R: Rng>(r: &mut R, mode: GadgetMode) -> GroupElement {
    let mut f = PlMap::identity();
    for _ in 0..r.gen_range(1..4) {
        let depth = r.gen_range(2..45u32);
        let start = r.gen_range(0..(1u64 << depth));
        let a = Rational::integer(start) * Rational::inverse_power(2, depth);
        let denom = Rational::inverse_power(2, depth);
        let b = &a + &denom;
        let mut bump = make_bump(&a, &b, 2).unwrap();
        if r.gen_bool(0.5) {
            bump = bump.inverse();
        }
        f = f.compose(&bump);
    }
    match mode {
        GadgetMode::Interval => f.into(),
        GadgetMode::Circle => {
            let angle = Rational::inverse_power(2, r.gen_range(1..50));
            CircleMap::from_interval(&f).compose(&CircleMap::rotation(&angle)).into()
        }
    }
}

fn mode() -> impl Strategy<Value = GadgetMode> {
    prop::sample::select(vec![GadgetMode::Interval, GadgetMode::Circle])
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 500, ..ProptestConfig::default() })]

    #[test]
    fn members_are_close_to_the_identity(mode in mode(), seed in any::<u64>()) {
        let g = gadget(mode);
        let mut r = common::rng(seed, 9);
        let e = near_identity(&mut r, mode);
        if g.member(&e).unwrap() {
            prop_assert_eq!(g.member_consequences(&e).unwrap(), Vec::<String>::new());
        }
        for _ in 0..3 {
            let i = r.gen_range(1..g.k() - 1);
            let j = i + r.gen_range(0..2);
            prop_assert_eq!(g.condition(&e, i, j).unwrap(), g.condition_reference(&e, i, j).unwrap());
        }
    }

    #[test]
    fn random_elements_obey_containment(mode in mode(), seed in any::<u64>()) {
        let g = gadget(mode);
        let kind = if mode == GadgetMode::Interval { ElementKind::Interval } else { ElementKind::Circle };
        let e = common::element(&mut common::rng(seed, 10), kind);
        if g.member(&e).unwrap() {
            prop_assert!(g.member_consequences(&e).unwrap().is_empty());
        }
    }
}

#[test]
fn some_perturbations_are_members() {
    let mut members = 0;
    for mode in [GadgetMode::Interval, GadgetMode::Circle] {
        let g = gadget(mode);
        for i in 0..60 {
            let e = near_identity(&mut common::rng(77, i), mode);
            if g.member(&e).unwrap() {
                members += 1;
                assert!(g.member_consequences(&e).unwrap().is_empty());
            }
        }
    }
    assert!(members > 0);
}

#[test]
fn random_pairs_are_separated() {
    let cache = GadgetCache::new();
    for kind in [ElementKind::Interval, ElementKind::Circle] {
        let (tally, _) = common::separation_run(kind, 10, 3, &cache);
        assert!(tally.ok(), "{:?}", tally.examples);
    }
}
