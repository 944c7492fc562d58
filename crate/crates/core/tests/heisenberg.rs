use peakhcl::combinatorics::compositions_of;
use peakhcl::field::rat;
use peakhcl::heisenberg::*;
use peakhcl::hopf::{convert, product, q_gen, Basis, FreeElement};
use peakhcl::Composition;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn arb_comp(max: usize) -> impl Strategy<Value = Composition> {
    (1..=max).prop_flat_map(|n| {
        let comps = compositions_of(n).unwrap();
        (0..comps.len()).prop_map(move |i| comps[i])
    })
}

#[test]
fn vacuum_is_annihilated() {
    for m in 1..=4 {
        assert!(fock_action(&q_gen(m), &FreeElement::one(Basis::K)).unwrap().is_zero());
    }
}

#[test]
fn subalgebras_of_the_double() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (a, b) = (random_peak(&mut rng, 2), random_peak(&mut rng, 1));
    let one = FreeElement::one(Basis::K);
    let lhs = double_multiply(&DoubleElement::pure(&one, &a).unwrap(), &DoubleElement::pure(&one, &b).unwrap()).unwrap();
    let ab = convert(&product(&a, &b).unwrap(), Basis::Xi).unwrap();
    assert_eq!(lhs, DoubleElement::pure(&one, &ab).unwrap());
}

#[test]
fn freeness_to_degree_six() {
    let c = free_basis_over_omega(6).unwrap();
    assert!(c.passes());
    let counts = c.generator_counts();
    let fib = [1, 1, 1, 2, 3, 5, 8];
    let omega: Vec<usize> = (0..=6).map(|d| omega_basis(d).unwrap().len()).collect();
    for n in 0..=6 {
        assert_eq!((0..=n).map(|e| counts[e] * omega[n - e]).sum::<usize>(), fib[n]);
        assert_eq!(peak_count(n), fib[n]);
    }
}

#[test]
fn vacuum_orbit_is_omega() {
    let dims = vacuum_orbit_dims(5).unwrap();
    let omega: Vec<usize> = (0..=5).map(|d| omega_basis(d).unwrap().len()).collect();
    assert_eq!(dims, omega);
}

#[test]
fn degree_limit() {
    assert!(matches!(filtration_component(0, 9), Err(peakhcl::Error::ResourceLimit { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lowering_property(a in arb_comp(6), m in 1usize..=6) {
        prop_assume!(m <= a.size());
        prop_assert!(lowering_check(&a, m).unwrap());
    }

    #[test]
    fn module_algebra_law(seed in any::<u64>()) {
        prop_assert!(module_algebra_random(4, 2, seed).unwrap());
    }

    #[test]
    fn fock_action_preserves_integrality(a in arb_comp(4), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_dual(&mut rng, a.size() + 1);
        let y = fock_action(&convert(&FreeElement::basis_element(Basis::R, peakhcl::Index::Comp(a)), Basis::H)
            .and_then(|h| peakhcl::hopf::theta_transform(&h)).unwrap(), &x).unwrap();
        let y = convert(&y, Basis::K).unwrap();
        prop_assert!(y.terms().all(|(_, c)| c.is_integer()));
        prop_assert_eq!(y.homogeneous_degree().unwrap_or(1), 1);
    }

    #[test]
    fn double_is_associative(seed in 0u64..1000) {
        prop_assert!(double_random_checks(3, 1, seed).unwrap());
    }
}

#[test]
fn q1_on_n1_is_two() {
    let r = fock_action(&q_gen(1), &n_element(&Composition::of(&[1]))).unwrap();
    assert_eq!(convert(&r, Basis::K).unwrap(), FreeElement::one(Basis::K).scale(&rat(2)));
}
