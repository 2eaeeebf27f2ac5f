//! Group laws and metric properties over seeded random elements. The
//! acceptance run repeats these at 10^4 cases per property.

mod common;

use proptest::prelude::*;

use zariski::groups::{d_infinity, ElementKind, GroupElement};

fn config() -> ProptestConfig {
    ProptestConfig { cases: 1_000, ..ProptestConfig::default() }
}

fn kind() -> impl Strategy<Value = ElementKind> {
    prop::sample::select(common::KINDS.to_vec())
}

fn triple(kind: ElementKind, seed: u64) -> (GroupElement, GroupElement, GroupElement) {
    let mut r = common::rng(seed, 0);
    (common::element(&mut r, kind), common::element(&mut r, kind), common::element(&mut r, kind))
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn composition_is_associative(kind in kind(), seed in any::<u64>()) {
        let (f, g, h) = triple(kind, seed);
        prop_assert_eq!(
            f.compose(&g).unwrap().compose(&h).unwrap(),
            f.compose(&g.compose(&h).unwrap()).unwrap()
        );
    }

    #[test]
    fn inverses_cancel(kind in kind(), seed in any::<u64>()) {
        let (f, _, _) = triple(kind, seed);
        prop_assert!(f.compose(&f.inverse()).unwrap().is_identity());
        prop_assert!(f.inverse().compose(&f).unwrap().is_identity());
        prop_assert_eq!(f.inverse().inverse(), f);
    }

    #[test]
    fn canonical_form_round_trips(kind in kind(), seed in any::<u64>()) {
        let (f, _, _) = triple(kind, seed);
        let json = serde_json::to_string(&f).unwrap();
        let back: GroupElement = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), json);
        prop_assert_eq!(back, f);
    }

    #[test]
    fn commutator_of_element_with_itself_is_trivial(kind in kind(), seed in any::<u64>()) {
        let (f, g, _) = triple(kind, seed);
        prop_assert!(f.commutator(&f).unwrap().is_identity());
        let c = f.commutator(&g).unwrap();
        prop_assert!(c.compose(&g.commutator(&f).unwrap()).unwrap().is_identity());
    }

    #[test]
    fn metric_axioms(interval in any::<bool>(), seed in any::<u64>()) {
        let kind = if interval { ElementKind::Interval } else { ElementKind::Circle };
        let (f, g, h) = triple(kind, seed);
        let d = |a: &GroupElement, b: &GroupElement| d_infinity(a, b).unwrap();
        prop_assert!(d(&f, &f).is_zero());
        prop_assert_eq!(d(&f, &g), d(&g, &f));
        prop_assert_eq!(f == g, d(&f, &g).is_zero());
        prop_assert!(d(&f, &h) <= d(&f, &g) + d(&g, &h));
    }

    #[test]
    fn metric_is_invariant_under_precomposition(interval in any::<bool>(), seed in any::<u64>()) {
        let kind = if interval { ElementKind::Interval } else { ElementKind::Circle };
        let (f, g, h) = triple(kind, seed);
        let lhs = d_infinity(&h.compose(&f).unwrap(), &h.compose(&g).unwrap()).unwrap();
        prop_assert_eq!(lhs, d_infinity(&f, &g).unwrap());
    }
}

#[test]
fn seeded_suite_has_no_failures() {
    for (name, tally) in common::group_core_suite(300, 11) {
        assert!(tally.ok(), "{name}: {:?}", tally.examples);
        assert_eq!(tally.cases, 300);
    }
}
