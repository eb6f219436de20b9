//! Property tests for the algebraic laws the operations promise.

mod common;

use common::frac;
use proptest::prelude::*;

use rulebase::closure::{close, enumerate_closures};
use rulebase::dataset::Dataset;
use rulebase::implications::{implies, iteration_free_basis, ImplicationSet};
use rulebase::itemset::{equivalent_by_reflexivity, ItemSet, Rule};
use rulebase::redundancy::{
    closure_redundant, covers, derive, plainly_redundant, Mode,
};

const UNIVERSE: u32 = 6;

fn arb_itemset() -> impl Strategy<Value = ItemSet> {
    prop::collection::vec(0..UNIVERSE, 0..6).prop_map(ItemSet::from_items)
}

fn arb_rule() -> impl Strategy<Value = Rule> {
    (arb_itemset(), arb_itemset()).prop_map(|(a, c)| Rule::new(a, c))
}

fn arb_dataset() -> impl Strategy<Value = Dataset> {
    prop::collection::vec(prop::collection::vec(0..UNIVERSE, 0..6), 1..14)
        .prop_map(|txs| {
            Dataset::from_itemsets(UNIVERSE, txs.into_iter().map(ItemSet::from_items).collect())
        })
}

proptest! {
    #[test]
    fn itemset_algebra_laws(a in arb_itemset(), b in arb_itemset(), c in arb_itemset()) {
        prop_assert_eq!(a.union(&b), b.union(&a));
        prop_assert_eq!(a.intersection(&b), b.intersection(&a));
        prop_assert_eq!(a.union(&b).union(&c), a.union(&b.union(&c)));
        prop_assert!(a.intersection(&b).is_subset(&a));
        prop_assert!(a.is_subset(&a.union(&b)));
        prop_assert_eq!(a.difference(&b).union(&a.intersection(&b)), a.clone());
        prop_assert_eq!(a.is_subset(&b), a.difference(&b).is_empty());
    }

    #[test]
    fn support_is_antitone(d in arb_dataset(), x in arb_itemset(), extra in arb_itemset()) {
        let y = x.union(&extra);
        prop_assert!(d.support(&x).unwrap() >= d.support(&y).unwrap());
    }

    #[test]
    fn confidence_invariant_under_reflexive_equivalence(
        d in arb_dataset(),
        x in arb_itemset(),
        y in arb_itemset(),
        sub in prop::collection::vec(any::<bool>(), 6),
    ) {
        // X -> Y, X -> XY, and X -> X'Y coincide for any X' inside X
        let xp = ItemSet::from_items(x.iter().zip(&sub).filter(|(_, k)| **k).map(|(i, _)| i));
        let r0 = Rule::new(x.clone(), y.clone());
        let r1 = Rule::new(x.clone(), x.union(&y));
        let r2 = Rule::new(x.clone(), xp.union(&y));
        prop_assert!(equivalent_by_reflexivity(&r0, &r1));
        prop_assert_eq!(d.confidence(&r0), d.confidence(&r1));
        prop_assert_eq!(d.confidence(&r0), d.confidence(&r2));
        let z = r0.full_itemset();
        prop_assert_eq!(d.support(&z).unwrap(), d.support(&r1.full_itemset()).unwrap());
    }

    #[test]
    fn closure_operator_laws(d in arb_dataset(), x in arb_itemset(), y in arb_itemset()) {
        let cx = close(&d, &x);
        prop_assert!(x.is_subset(&cx), "extensive");
        prop_assert_eq!(close(&d, &cx), cx.clone(), "idempotent");
        let cy = close(&d, &y);
        if x.is_subset(&y) {
            prop_assert!(cx.is_subset(&cy), "monotone");
        }
        // closure distributes over union through closures of the parts
        let cxy = close(&d, &x.union(&y));
        prop_assert_eq!(&close(&d, &cx.union(&y)), &cxy);
        prop_assert_eq!(&close(&d, &cx.union(&cy)), &cxy);
        prop_assert_eq!(d.support(&x).unwrap(), d.support(&cx).unwrap());
    }

    #[test]
    fn cover_decides_plain_redundancy(r1 in arb_rule(), r0 in arb_rule()) {
        // the syntactic forms agree
        let red = plainly_redundant(&r1, &r0);
        let expected = r0.is_trivial() || covers(&r1, &r0);
        prop_assert_eq!(red, expected);
        // plain redundancy is closure redundancy with no implications
        prop_assert_eq!(red, closure_redundant(&ImplicationSet::empty(), &r1, &r0));
    }

    #[test]
    fn plain_redundancy_bounds_confidence_on_every_dataset(
        d in arb_dataset(),
        r1 in arb_rule(),
        r0 in arb_rule(),
    ) {
        if plainly_redundant(&r1, &r0) {
            prop_assert!(d.confidence(&r0) >= d.confidence(&r1));
            prop_assert!(
                d.support(&r0.full_itemset()).unwrap() >= d.support(&r1.full_itemset()).unwrap()
                    || r0.is_trivial()
            );
        }
    }

    #[test]
    fn derivations_replay_through_the_checker(r1 in arb_rule(), r0 in arb_rule()) {
        let b = ImplicationSet::empty();
        if let Ok(trace) = derive(&b, &r1, &r0, Mode::Plain) {
            prop_assert!(trace.check(&b));
            prop_assert!(trace.steps.len() <= 4);
        } else {
            prop_assert!(!plainly_redundant(&r1, &r0));
        }
    }

    #[test]
    fn closure_derivations_replay(d in arb_dataset(), r1 in arb_rule(), r0 in arb_rule()) {
        let lat = enumerate_closures(&d, 1);
        let b = iteration_free_basis(&lat, &d);
        match derive(&b, &r1, &r0, Mode::Closure) {
            Ok(trace) => {
                prop_assert!(trace.check(&b));
                prop_assert!(closure_redundant(&b, &r1, &r0));
            }
            Err(_) => prop_assert!(!closure_redundant(&b, &r1, &r0)),
        }
    }

    #[test]
    fn gamma_antecedent_chain_property(
        d in arb_dataset(),
        x in arb_itemset(),
        mid in arb_itemset(),
        top in arb_itemset(),
        num in 1u64..10,
    ) {
        let gamma = frac(num.min(9), 10);
        let z = x.union(&mid);
        let y = z.union(&top);
        let ant = |a: &ItemSet, b: &ItemSet| {
            rulebase::bases::is_gamma_antecedent(&d, a, b, gamma).unwrap()
        };
        if ant(&x, &y) {
            prop_assert!(ant(&x, &z), "lower link");
            prop_assert!(ant(&z, &y), "upper link");
        }
    }

    #[test]
    fn implication_soundness_of_implies(d in arb_dataset(), r in arb_rule()) {
        let lat = enumerate_closures(&d, 0);
        let b = iteration_free_basis(&lat, &d);
        // implies agrees with full-confidence evaluation on the dataset
        prop_assert_eq!(implies(&b, &r), d.confidence(&r).is_one());
    }
}
