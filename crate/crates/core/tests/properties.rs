use com_varchenko::constructions::{all_posets, contract_antichain, cycle_om, ideals_com, random_com, ranking_com, RandomBudget};
use com_varchenko::lemmas::{gate_uniqueness, pairing};
use com_varchenko::varchenko::{evaluation_check_factored, exponents, face_assignment};
use com_varchenko::{
    build_signed, closed_form_det, verify, ElementOrder, ElementSet, SignSystem, SignVector, Variable, VerifyOptions,
};
use proptest::prelude::*;

fn small() -> RandomBudget {
    RandomBudget { max_topes: 10, ..RandomBudget::default() }
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn system_and_order() -> impl Strategy<Value = (SignSystem, ElementOrder)> {
    (0u64..500).prop_flat_map(|seed| {
        let sys = random_com(seed, small()).unwrap();
        let n = sys.num_elements();
        (Just(sys), permutation(n).prop_map(|p| ElementOrder::new(p).unwrap()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_coms_are_simple_coms(seed in 0u64..10_000) {
        let s = random_com(seed, RandomBudget::default()).unwrap();
        prop_assert!(s.check_axioms().is_com());
        prop_assert!(s.is_simple());
        prop_assert!(s.topes().len() <= 14);
    }

    #[test]
    fn chain_and_blocks_hold_in_any_order((sys, order) in system_and_order()) {
        let opts = VerifyOptions { order: Some(order), symbolic_limit: 0, crucial_limit: Some(8), ..Default::default() };
        let r = verify(&sys, &opts).unwrap();
        prop_assert!(r.chain_holds && r.lemma_fac_holds && r.lemma_fac1_holds);
        prop_assert!(r.blocks_hold());
        prop_assert!(r.matches);
        prop_assert!(evaluation_check_factored(&r.matrix, &r.closed_form, 1, 5).unwrap());
    }

    #[test]
    fn exponents_do_not_depend_on_order((sys, order) in system_and_order()) {
        let natural = exponents(&sys, &ElementOrder::natural(sys.num_elements())).unwrap();
        prop_assert_eq!(exponents(&sys, &order).unwrap(), natural);
    }

    #[test]
    fn exponents_are_positive_on_proper_covectors(seed in 0u64..500) {
        let sys = random_com(seed, small()).unwrap();
        let order = ElementOrder::natural(sys.num_elements());
        for (y, b) in exponents(&sys, &order).unwrap() {
            prop_assert!(b > 0);
            prop_assert!(!y.zero_set().is_empty());
        }
    }

    #[test]
    fn transpose_swaps_signed_variables(seed in 0u64..500) {
        let sys = random_com(seed, small()).unwrap();
        let v = build_signed(&sys).unwrap();
        let all = ElementSet::full(sys.num_elements());
        let swapped = v.matrix.map(|p| p.swap_signs(all));
        prop_assert_eq!(v.matrix.transpose(), swapped);
    }

    #[test]
    fn reorientation_swaps_signed_variables_in_closed_form(seed in 0u64..500, mask in any::<u128>()) {
        let sys = random_com(seed, small()).unwrap();
        let set = ElementSet::from_bits(mask).intersection(ElementSet::full(sys.num_elements()));
        let re = sys.reorient(set).unwrap();
        let f = closed_form_det(&sys, true).unwrap().expand();
        prop_assert_eq!(closed_form_det(&re, true).unwrap().expand(), f.swap_signs(set));
    }

    #[test]
    fn gates_and_pairing(seed in 0u64..500) {
        let sys = random_com(seed, small()).unwrap();
        prop_assert!(gate_uniqueness(&sys).unwrap().holds());
        prop_assert!(pairing(&sys).unwrap().holds());
    }

    #[test]
    fn face_assignment_is_below_the_tope(seed in 0u64..500) {
        let sys = random_com(seed, small()).unwrap();
        for e in 0..sys.num_elements() {
            for (t, y) in sys.topes().iter().zip(face_assignment(&sys, e)) {
                if let Some(y) = y {
                    prop_assert!(y.le(t));
                    prop_assert!(y.zero_set().contains(e));
                    prop_assert!(sys.contains(&y));
                }
            }
        }
    }

    #[test]
    fn unsigned_closed_form_is_the_specialization(seed in 0u64..200) {
        let sys = random_com(seed, small()).unwrap();
        let f = closed_form_det(&sys, true).unwrap().expand();
        let u = closed_form_det(&sys, false).unwrap().expand();
        prop_assert_eq!(f.unsigned_specialize(), u);
    }
}

#[test]
fn topes_of_products_multiply() {
    let a = cycle_om(3).unwrap();
    let b = ideals_com(&all_posets(2)[0]).unwrap();
    let p = a.product(&b.with_ground(com_varchenko::GroundSet::new(["p", "q"]).unwrap()).unwrap()).unwrap();
    assert_eq!(p.topes().len(), a.topes().len() * b.topes().len());
    let order = ElementOrder::natural(p.num_elements());
    let r = verify(&p, &VerifyOptions { order: Some(order), ..Default::default() }).unwrap();
    assert!(r.all_hold());
}

#[test]
fn ranking_contractions_are_posets() {
    for n in 2..=5 {
        for p in all_posets(n) {
            let s = ranking_com(&p, None).unwrap();
            assert!(s.check_axioms().is_com());
            for a in com_varchenko::constructions::antichains(&p).into_iter().filter(|a| a.len() >= 2) {
                let c = contract_antichain(&p, a).unwrap();
                assert_eq!(c.len(), n - a.len() + 1);
            }
        }
    }
}

#[test]
fn unsigned_variables_only_in_unsigned_matrix() {
    let s = cycle_om(3).unwrap();
    let v = build_signed(&s).unwrap();
    assert!(v.matrix.variables().iter().all(|x| *x != Variable::unsigned(0)));
    assert!(v.unsigned().matrix.variables().iter().all(|x| *x == Variable::unsigned(0)
        || *x == Variable::unsigned(1)
        || *x == Variable::unsigned(2)));
    let t: SignVector = "+-+".parse().unwrap();
    assert!(v.index_of(&t).is_some());
}
