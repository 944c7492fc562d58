use peakhcl::combinatorics::{compositions_of, descent_class};
use peakhcl::hclifford::Morphism;
use peakhcl::supermodules::*;
use peakhcl::{Composition, Supermodule};
use proptest::prelude::*;

fn arb_comp(max: usize) -> impl Strategy<Value = Composition> {
    (1..=max).prop_flat_map(|n| {
        let comps = compositions_of(n).unwrap();
        (0..comps.len()).prop_map(move |i| comps[i])
    })
}

#[test]
fn induced_dimensions() {
    for n in 1..=4 {
        for a in compositions_of(n).unwrap() {
            assert_eq!(simple_induced(&a).unwrap().dim(), 1 << n);
            let p = projective_induced(&a).unwrap();
            assert_eq!(p.dim(), (1 << n) * descent_class(&a).unwrap().len());
            assert_eq!(p.graded_dims().0, p.graded_dims().1);
        }
    }
}

#[test]
fn small_isomorphism_classes() {
    let s12 = simple_induced(&Composition::of(&[1, 2])).unwrap();
    let s3 = simple_induced(&Composition::of(&[3])).unwrap();
    let s21 = simple_induced(&Composition::of(&[2, 1])).unwrap();
    assert!(matches!(is_isomorphic(&s12, &s3).unwrap(), IsoOutcome::Isomorphic(_)));
    assert!(matches!(is_isomorphic(&s12, &s21).unwrap(), IsoOutcome::NotIsomorphic));
}

#[test]
fn parity_shift_of_type_q_is_evenly_isomorphic() {
    for a in [&[3][..], &[1, 2], &[2, 2, 1]] {
        let split = split_simple(&Composition::of(a)).unwrap();
        assert_eq!(split.component_type, SimpleType::Q);
        let c = &split.components[0];
        assert!(is_isomorphic(c, &parity_shift(c)).unwrap().is_even_iso());
    }
}

#[test]
fn type_m_component_is_not_its_parity_shift() {
    let split = split_simple(&Composition::of(&[2, 1])).unwrap();
    assert_eq!(split.component_type, SimpleType::M);
    assert_eq!(split.components.len(), 2);
    let c = &split.components[0];
    assert!(!is_isomorphic(c, &parity_shift(c)).unwrap().is_even_iso());
    assert!(split.passes_up_to_parity());
}

#[test]
fn filtration_of_p21() {
    let steps = bruhat_filtration(&Composition::of(&[2, 1])).unwrap();
    assert!(steps.iter().all(|s| s.isomorphic));
    let names: Vec<String> = steps.iter().map(|s| s.composition.to_string()).collect();
    assert_eq!(names, ["1,2", "2,1"]);
}

#[test]
fn restriction_splitting_small() {
    for n in 1..=5 {
        assert!(restriction_splitting(n).unwrap().passes(), "n = {n}");
    }
}

#[test]
fn oversized_requests_hit_resource_limits() {
    let a = Composition::of(&[2, 2, 2]);
    assert!(matches!(split_simple(&a), Err(peakhcl::Error::ResourceLimit { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn constructed_modules_satisfy_relations(a in arb_comp(4)) {
        prop_assert!(simple_induced(&a).unwrap().check_module().is_empty());
        prop_assert!(projective_induced(&a).unwrap().check_module().is_empty());
        prop_assert!(projective_hecke(&a).unwrap().check_module().is_empty());
    }

    #[test]
    fn json_round_trip(a in arb_comp(3)) {
        let m = projective_induced(&a).unwrap();
        let back = Supermodule::from_json(&m.to_json()).unwrap();
        prop_assert_eq!(back.to_json(), m.to_json());
    }

    #[test]
    fn twisted_isomorphisms_hold(a in arb_comp(3)) {
        for s in TwistStatement::ALL {
            prop_assert!(twisted_isomorphism(s, &a).unwrap().passes(), "{} {}", s.name(), a);
        }
    }

    #[test]
    fn twisting_twice_by_an_involution_is_identity(a in arb_comp(3)) {
        let m = simple_induced(&a).unwrap();
        let back = twist(&twist(&m, Morphism::Phi).unwrap(), Morphism::Phi).unwrap();
        prop_assert_eq!(back.to_json(), m.to_json());
    }

    #[test]
    fn end_theorem(a in arb_comp(4)) {
        prop_assert!(end_clifford_check(&a).unwrap().passes());
    }
}
