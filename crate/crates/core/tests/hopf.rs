use peakhcl::combinatorics::{all_permutations, compositions_of, peak_sets_in};
use peakhcl::field::rat;
use peakhcl::hopf::*;
use peakhcl::{Composition, Rational};
use proptest::prelude::*;

fn el(b: Basis, p: &[usize]) -> FreeElement {
    FreeElement::comp(b, p)
}

#[test]
fn euler_relations_small() {
    for n in 1..=6 {
        let mut acc = FreeElement::zero(Basis::H);
        for r in 0..=n {
            let t = convert(&product(&q_gen(r), &q_gen(n - r)).unwrap(), Basis::H).unwrap();
            acc = if r % 2 == 0 { acc.add(&t).unwrap() } else { acc.sub(&t).unwrap() };
        }
        assert!(acc.is_zero(), "n = {n}");
    }
}

#[test]
fn q_as_hook_ribbons() {
    for n in 1..=6 {
        let mut r = FreeElement::zero(Basis::R);
        for k in 0..n {
            let mut parts = vec![1; k];
            parts.push(n - k);
            r = r.add(&el(Basis::R, &parts).scale(&rat(2))).unwrap();
        }
        assert_eq!(convert(&q_gen(n), Basis::R).unwrap(), r);
    }
}

#[test]
fn theta_on_ribbons_matches_closed_form() {
    for n in 1..=6 {
        for a in compositions_of(n).unwrap() {
            let x = FreeElement::basis_element(Basis::R, Index::Comp(a));
            assert_eq!(theta_transform(&x).unwrap(), theta_ribbon_formula(&a), "α = {a}");
        }
    }
}

#[test]
fn duality_chain() {
    for n in 1..=5 {
        let comps = compositions_of(n).unwrap();
        for a in &comps {
            let ra = FreeElement::basis_element(Basis::R, Index::Comp(*a));
            let t = theta_transform(&ra).unwrap();
            for b in &comps {
                let fb = FreeElement::basis_element(Basis::F, Index::Comp(*b));
                let v = vartheta(&fb).unwrap();
                let lhs = pairing(&t, &fb).unwrap();
                assert_eq!(lhs, pairing(&ra, &v).unwrap());
                assert_eq!(lhs, peak_pairing(&t, &v).unwrap());
            }
        }
    }
}

#[test]
fn k_forms_agree() {
    for n in 1..=6 {
        for p in peak_sets_in(n) {
            let (f, m) = k_expansions(&p);
            assert_eq!(convert(&m, Basis::F).unwrap(), f);
        }
        let total: FreeElement = compositions_of(n)
            .unwrap()
            .into_iter()
            .fold(FreeElement::zero(Basis::F), |acc, a| acc.add(&FreeElement::basis_element(Basis::F, Index::Comp(a))).unwrap());
        let q = sym_to_qsym(&el(Basis::OmegaQ, &[n])).unwrap();
        assert_eq!(convert(&q, Basis::F).unwrap(), total.scale(&rat(2)));
        assert_eq!(k_expansions(&peak_sets_in(n)[0]).0, total.scale(&rat(2)));
    }
}

#[test]
fn gessel_pairing_counts_permutations() {
    for n in 1..=5 {
        let perms = all_permutations(n).unwrap();
        for a in compositions_of(n).unwrap() {
            let r = forgetful_pi(&FreeElement::basis_element(Basis::R, Index::Comp(a))).unwrap();
            let f = sym_to_qsym(&r).unwrap();
            for b in compositions_of(n).unwrap() {
                let rb = FreeElement::basis_element(Basis::R, Index::Comp(b));
                let count = perms
                    .iter()
                    .filter(|w| w.descent_composition() == a && w.inverse().descent_composition() == b)
                    .count();
                assert_eq!(pairing(&rb, &f).unwrap(), rat(count as i64));
            }
        }
    }
}

#[test]
fn diagram_commutes_on_generators() {
    for n in 1..=6 {
        let h = el(Basis::H, &[n]);
        let left = theta_sym(&forgetful_pi(&h).unwrap()).unwrap();
        let right = forgetful_pi(&theta_transform(&h).unwrap()).unwrap();
        assert_eq!(convert(&right, Basis::SymP).unwrap(), convert(&left, Basis::SymP).unwrap());
        let g = el(Basis::SymH, &[n]);
        let via_qsym = vartheta(&sym_to_qsym(&g).unwrap()).unwrap();
        let via_omega = sym_to_qsym(&theta_sym(&g).unwrap()).unwrap();
        assert_eq!(convert(&via_qsym, Basis::M).unwrap(), via_omega);
    }
}

#[test]
fn peak_subalgebras_closed() {
    for p in peak_sets_in(3) {
        for q in peak_sets_in(2) {
            let x = FreeElement::basis_element(Basis::Xi, Index::Peak(p));
            let y = FreeElement::basis_element(Basis::Xi, Index::Peak(q));
            assert!(product(&x, &y).is_ok());
            let u = FreeElement::basis_element(Basis::K, Index::Peak(p));
            let v = FreeElement::basis_element(Basis::K, Index::Peak(q));
            let uv = product(&u, &v).unwrap();
            let direct = product(&convert(&u, Basis::F).unwrap(), &convert(&v, Basis::F).unwrap()).unwrap();
            assert_eq!(convert(&uv, Basis::F).unwrap(), direct);
        }
    }
    let d = coproduct(&FreeElement::basis_element(Basis::Xi, Index::Peak(peak_sets_in(4)[1]))).unwrap();
    assert_eq!(d.bases(), (Basis::Xi, Basis::Xi));
}

#[test]
fn n_coproduct_is_deconcatenation() {
    let n = el(Basis::N, &[1, 2]);
    let as_k = coproduct(&convert(&n, Basis::K).unwrap()).unwrap();
    let native = coproduct(&n).unwrap().convert_legs(Basis::K, Basis::K).unwrap();
    assert_eq!(as_k, native);
}

fn arb_comp(max: usize) -> impl Strategy<Value = Composition> {
    (1..=max).prop_flat_map(|n| (Just(n), 0u32..(1 << (n - 1)))).prop_map(|(n, m)| Composition::from_mask(n, m).unwrap())
}

fn arb_element(b: Basis, max: usize) -> impl Strategy<Value = FreeElement> {
    prop::collection::vec((arb_comp(max), -3i64..=3), 1..4).prop_map(move |v| {
        FreeElement::from_terms(b, v.into_iter().map(|(c, k)| (Index::Comp(c), rat(k))))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn nsym_round_trips(x in arb_element(Basis::H, 5)) {
        for b in [Basis::R, Basis::E] {
            prop_assert_eq!(convert(&convert(&x, b).unwrap(), Basis::H).unwrap(), x.clone());
        }
    }

    #[test]
    fn qsym_round_trips(x in arb_element(Basis::M, 5)) {
        prop_assert_eq!(convert(&convert(&x, Basis::F).unwrap(), Basis::M).unwrap(), x);
    }

    #[test]
    fn qsym_product_commutes(x in arb_element(Basis::M, 3), y in arb_element(Basis::F, 3)) {
        let y = convert(&y, Basis::M).unwrap();
        prop_assert_eq!(product(&x, &y).unwrap(), product(&y, &x).unwrap());
    }

    #[test]
    fn product_associative(x in arb_element(Basis::R, 3), y in arb_element(Basis::R, 2), z in arb_element(Basis::R, 2)) {
        let l = product(&product(&x, &y).unwrap(), &z).unwrap();
        let r = product(&x, &product(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn coproduct_is_multiplicative(x in arb_element(Basis::H, 3), y in arb_element(Basis::H, 3)) {
        let lhs = coproduct(&product(&x, &y).unwrap()).unwrap();
        let rhs = coproduct(&x).unwrap().multiply(&coproduct(&y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn m_coproduct_is_multiplicative(x in arb_element(Basis::M, 3), y in arb_element(Basis::M, 2)) {
        let lhs = coproduct(&product(&x, &y).unwrap()).unwrap();
        let rhs = coproduct(&x).unwrap().multiply(&coproduct(&y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pairing_is_basis_independent(x in arb_element(Basis::R, 4), f in arb_element(Basis::M, 4)) {
        let a = pairing(&x, &f).unwrap();
        let b = pairing(&convert(&x, Basis::E).unwrap(), &convert(&f, Basis::F).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn theta_is_multiplicative(x in arb_element(Basis::H, 3), y in arb_element(Basis::H, 3)) {
        let lhs = theta_transform(&product(&x, &y).unwrap()).unwrap();
        let rhs = product(&theta_transform(&x).unwrap(), &theta_transform(&y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn vartheta_is_multiplicative(x in arb_element(Basis::F, 3), y in arb_element(Basis::F, 3)) {
        let lhs = vartheta(&product(&x, &y).unwrap()).unwrap();
        let rhs = product(&vartheta(&x).unwrap(), &vartheta(&y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn diagram_commutes(x in arb_element(Basis::R, 5)) {
        let left = theta_sym(&forgetful_pi(&x).unwrap()).unwrap();
        let right = forgetful_pi(&theta_transform(&x).unwrap()).unwrap();
        prop_assert_eq!(convert(&right, Basis::SymP).unwrap(), convert(&left, Basis::SymP).unwrap());
    }
}

#[test]
fn zero_scalar() {
    assert!(el(Basis::H, &[1]).scale(&Rational::from_integer(0.into())).is_zero());
}
