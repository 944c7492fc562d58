use peakhcl::combinatorics::Permutation;
use peakhcl::field::{Field, GaussianRational};
use peakhcl::hclifford::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_homogeneous(n: usize, rng: &mut ChaCha8Rng, keys: &[BasisKey]) -> AlgebraElement {
    let parity = rng.gen_range(0..2u8);
    let pool: Vec<&BasisKey> = keys.iter().filter(|k| k.parity() == parity).collect();
    let mut x = AlgebraElement::zero(n);
    for _ in 0..rng.gen_range(1..4) {
        let k = pool[rng.gen_range(0..pool.len())];
        let c = GaussianRational::from_i64(rng.gen_range(-3..=3));
        x.add_term(k.clone(), &c);
    }
    x
}

#[test]
fn associativity_and_grading() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 1..=4 {
        let keys = basis_keys(n).unwrap();
        for _ in 0..60 {
            let a = random_homogeneous(n, &mut rng, &keys);
            let b = random_homogeneous(n, &mut rng, &keys);
            let c = random_homogeneous(n, &mut rng, &keys);
            let ab = a.mul(&b).unwrap();
            assert_eq!(ab.mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
            if let (Some(pa), Some(pb), Some(pab)) = (a.parity(), b.parity(), ab.parity()) {
                assert_eq!(pab, (pa + pb) % 2);
            }
        }
    }
}

#[test]
fn frobenius_form_nondegenerate_and_nakayama() {
    for n in 1..=3 {
        let g = gram_matrix(n).unwrap();
        assert!(g.is_invertible(), "n = {n}");
        let keys = basis_keys(n).unwrap();
        for a in &keys {
            let ea = AlgebraElement::from_key(n, a);
            for b in &keys {
                let eb = AlgebraElement::from_key(n, b);
                let lhs = frobenius_form(&ea, &eb).unwrap();
                let rhs = frobenius_form(&apply_morphism(Morphism::Phi, &eb).unwrap(), &ea).unwrap();
                let sign = if a.parity() * b.parity() == 1 { -1 } else { 1 };
                assert_eq!(lhs, rhs.mul_ref(&GaussianRational::from_i64(sign)));
            }
        }
    }
}

#[test]
fn involutions() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 2..=4 {
        let keys = basis_keys(n).unwrap();
        for _ in 0..20 {
            let a = random_homogeneous(n, &mut rng, &keys);
            let b = random_homogeneous(n, &mut rng, &keys);
            let ab = a.mul(&b).unwrap();
            for m in [Morphism::Phi, Morphism::PhiPrime] {
                let lhs = apply_morphism(m, &ab).unwrap();
                let rhs = apply_morphism(m, &a).unwrap().mul(&apply_morphism(m, &b).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
                assert_eq!(apply_morphism(m, &apply_morphism(m, &a).unwrap()).unwrap(), a);
            }
            for m in [Morphism::Psi, Morphism::PsiPrime] {
                let lhs = apply_morphism(m, &ab).unwrap();
                let rhs = apply_morphism(m, &b).unwrap().mul(&apply_morphism(m, &a).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
                assert_eq!(apply_morphism(m, &apply_morphism(m, &a).unwrap()).unwrap(), a);
            }
        }
    }
}

#[test]
fn leading_terms_all_small() {
    for n in 1..=4 {
        for w in peakhcl::combinatorics::all_permutations(n).unwrap() {
            for d in 0u32..1 << n {
                let lt = leading_term_check(&w, d);
                assert!(lt.coefficient_matches && lt.lower_terms_below, "w = {w}, D = {d:b}");
            }
        }
    }
}

#[test]
fn phibar_is_an_involution_on_hecke() {
    let w = Permutation::parse("2431").unwrap();
    let x = AlgebraElement::t_w(&w);
    let y = apply_morphism(Morphism::PhiBar, &apply_morphism(Morphism::PhiBar, &x).unwrap()).unwrap();
    assert_eq!(x, y);
}
