use peakhcl::combinatorics::{compositions_of, peak_sets_in};
use peakhcl::field::rat_frac;
use peakhcl::hopf::{Basis, FreeElement, Index};
use peakhcl::parse::{parse, parse_element, Parsed};
use peakhcl::Error;
use proptest::prelude::*;

fn arb_element() -> impl Strategy<Value = FreeElement> {
    let bases = [Basis::H, Basis::R, Basis::F, Basis::M, Basis::Xi, Basis::K, Basis::N, Basis::Q];
    (0..bases.len(), 1usize..=4, prop::collection::vec((0usize..64, -9i64..=9, 1i64..=4), 0..5)).prop_map(move |(b, n, terms)| {
        let basis = bases[b];
        let indices: Vec<Index> = if basis.peak_indexed() {
            peak_sets_in(n).into_iter().map(Index::Peak).collect()
        } else {
            compositions_of(n).unwrap().into_iter().map(Index::Comp).collect()
        };
        FreeElement::from_terms(basis, terms.into_iter().map(|(i, p, q)| (indices[i % indices.len()], rat_frac(p, q))))
    })
}

proptest! {
    #[test]
    fn display_and_json_round_trip(x in arb_element()) {
        prop_assume!(!x.is_zero());
        prop_assert_eq!(parse_element(&x.to_string()).unwrap(), x.clone());
        prop_assert_eq!(FreeElement::from_json(&x.to_json()).unwrap(), x);
    }

    #[test]
    fn never_panics(s in "[HRKQ0-9\\[\\]{}@,+*/() i-]{0,16}") {
        let _ = parse(&s);
    }
}

#[test]
fn scalars_and_products() {
    assert!(matches!(parse("2 * (1/2 - i)").unwrap(), Parsed::Scalar(_)));
    let x = parse_element("H[1]*H[2] - H[1,2]").unwrap();
    assert!(x.is_zero());
}

#[test]
fn expected_tokens_are_reported() {
    let Err(Error::Parse { position, expected }) = parse("K{2@4") else { panic!() };
    assert_eq!(position, 3);
    assert!(expected.contains("'}'"));
    let Err(Error::Parse { position, .. }) = parse("H[1] + ") else { panic!() };
    assert_eq!(position, 7);
}
