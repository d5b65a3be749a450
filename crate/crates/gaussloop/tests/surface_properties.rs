use gaussloop::algebra::{relation, Generator, Presentation};
use gaussloop::gauss::PairShape;
use gaussloop::surface::*;
use gaussloop::Error;
use proptest::prelude::*;

fn class(g: usize) -> impl Strategy<Value = HomologyClass> {
    prop::collection::vec(-2i64..=2, 2 * g).prop_map(HomologyClass)
}

fn triple(g: usize) -> impl Strategy<Value = [HomologyClass; 3]> {
    (class(g), class(g), class(g)).prop_map(|(a, b, c)| [a, b, c])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn pairing_is_bilinear_and_antisymmetric([a, b, c] in (1usize..=2).prop_flat_map(triple)) {
        let dot = |x: &HomologyClass, y: &HomologyClass| intersection_number(x, y).unwrap();
        prop_assert_eq!(dot(&a, &b), -dot(&b, &a));
        prop_assert_eq!(dot(&a, &a), 0);
        prop_assert_eq!(dot(&a.add(&b), &c), dot(&a, &c) + dot(&b, &c));
        prop_assert_eq!(dot(&a.sub(&b), &c), dot(&a, &c) - dot(&b, &c));
    }

    #[test]
    fn relations_reduce_to_zero(labels in triple(2), inward in any::<bool>()) {
        let shape = if inward { PairShape::Inward } else { PairShape::Outward };
        let r = relation::<Homological>(shape, labels.clone());
        prop_assert!(r.clone().reduce().is_zero());
        let image = hat_phi_sigma_raw(&r);
        prop_assert!(image.reduce().is_zero());
    }

    #[test]
    fn gv_functionals_vanish_on_relations(labels in triple(1), basis in triple(1), inward in any::<bool>()) {
        let shape = if inward { PairShape::Inward } else { PairShape::Outward };
        let r = relation::<Homological>(shape, labels);
        let [al, be, ga] = &basis;
        if gv_admissible(al, be, ga) {
            prop_assert_eq!(r.pair_raw(&basis), 0);
            prop_assert_eq!(gv_functional(&r.reduce(), al, be, ga).unwrap(), 0);
        } else {
            prop_assert_eq!(gv_functional(&ASigmaCombination::zero(), al, be, ga), Err(Error::Hypothesis));
        }
    }
}

#[test]
fn zero_classes_vanish() {
    let z = HomologyClass::zero(1);
    let a = HomologyClass(vec![1, 0]);
    assert!(Homological::vanishes(&Generator::parallel([a.clone(), z, a.clone()])));
    assert!(!Homological::vanishes(&Generator::parallel([a.clone(), a.clone(), a])));
}

#[test]
fn genus_mismatch_is_an_error() {
    let a = HomologyClass(vec![1, 0]);
    let b = HomologyClass(vec![1, 0, 0, 1]);
    assert!(matches!(intersection_number(&a, &b), Err(Error::GenusMismatch(..))));
}
