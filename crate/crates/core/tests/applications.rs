use std::collections::BTreeMap;

use com_varchenko::constructions::{
    all_posets, antichains, contract_antichain, ideals_closed_form, ideals_com, k4_subdivision_topes,
    linear_extensions, poset_q, ranking_closed_form, ranking_closed_form_weighted, ranking_com,
};
use com_varchenko::{build_unsigned, build_unsigned_from_topes, closed_form_det, Factorization, FinitePoset, Poly};

fn as_map(f: &Factorization) -> BTreeMap<String, u32> {
    let mut m = BTreeMap::new();
    for (p, k) in f.factors() {
        *m.entry(format!("{p:?}")).or_default() += k;
    }
    m
}

#[test]
fn ideals_closed_form_matches_general_formula() {
    for n in 0..=5 {
        for p in all_posets(n) {
            let s = ideals_com(&p).unwrap();
            let general = closed_form_det(&s, false).unwrap();
            assert_eq!(as_map(&general), as_map(&ideals_closed_form(&p)), "{:?}", p.to_json());
        }
    }
}

#[test]
fn ideals_topes_are_ideals() {
    for p in all_posets(4) {
        let s = ideals_com(&p).unwrap();
        assert_eq!(s.topes().len(), com_varchenko::constructions::ideals(&p).len());
    }
}

#[test]
fn weighted_ranking_formula_matches_general_formula() {
    for n in 0..=5 {
        for p in all_posets(n) {
            let s = ranking_com(&p, None).unwrap();
            assert_eq!(s.topes().len(), linear_extensions(&p).len());
            let general = closed_form_det(&s, false).unwrap();
            let (_, weighted) = ranking_closed_form_weighted(&p, None).unwrap();
            assert_eq!(as_map(&general), as_map(&weighted), "{}", p.to_json());
        }
    }
}

/// The unweighted antichain product is the determinant exactly when every
/// antichain contraction is a chain.
#[test]
fn unweighted_ranking_formula_needs_unique_contractions() {
    let mut agree = 0;
    let mut disagree = 0;
    for n in 0..=5 {
        for p in all_posets(n) {
            let s = ranking_com(&p, None).unwrap();
            let general = closed_form_det(&s, false).unwrap();
            let (_, plain) = ranking_closed_form(&p, None).unwrap();
            let unique = antichains(&p)
                .into_iter()
                .filter(|a| a.len() >= 2)
                .all(|a| linear_extensions(&contract_antichain(&p, a).unwrap()).len() == 1);
            assert_eq!(as_map(&general) == as_map(&plain), unique, "{}", p.to_json());
            if unique {
                agree += 1;
            } else {
                disagree += 1;
            }
        }
    }
    assert!(agree > 0 && disagree > 0);
}

#[test]
fn three_antichain_ranking_determinant() {
    let p = FinitePoset::antichain(3);
    let v = build_unsigned(&ranking_com(&p, None).unwrap()).unwrap();
    let det = v.det().unwrap();
    assert_eq!(det, v.matrix.cofactor_det().unwrap());
    let g = &v.ground;
    let mut expected = Poly::parse("1 - x[ab]^2*x[ac]^2*x[bc]^2", g).unwrap();
    for e in ["ab", "ac", "bc"] {
        expected = &expected * &Poly::parse(&format!("1 - x[{e}]^2"), g).unwrap().pow(2);
    }
    assert_eq!(det, expected);
}

#[test]
fn q_ranking_exponents() {
    let q = poset_q();
    let s = ranking_com(&q, None).unwrap();
    assert_eq!(s.topes().len(), 14);
    let g = s.ground().clone();
    let f = closed_form_det(&s, false).unwrap();
    for (text, k) in [
        ("1 - x[ab]^2", 6),
        ("1 - x[ae]^2", 2),
        ("1 - x[cd]^2", 5),
        ("1 - x[ce]^2", 4),
        ("1 - x[de]^2", 4),
        ("1 - x[cd]^2*x[ce]^2*x[de]^2", 2),
    ] {
        assert_eq!(f.exponent_of(&Poly::parse(text, &g).unwrap()), k, "{text}");
    }
}

#[test]
fn k4_subdivision_is_not_a_product_of_linear_factors() {
    let (g, t) = k4_subdivision_topes();
    let v = build_unsigned_from_topes(g.clone(), t).unwrap();
    let det = v.det().unwrap();
    // (1 - x^2)^3 divides for every coordinate, the remaining factor is not of the form 1 - monomial
    let mut rest = det.clone();
    for e in 1..=4 {
        let f = Poly::parse(&format!("1 - x[{e}]^2"), &g).unwrap().pow(3);
        rest = rest.exact_div(&f).unwrap();
    }
    assert_eq!(rest.num_terms(), 6);
    assert!(rest.exact_div(&Poly::parse("1 - x[1]^2", &g).unwrap()).is_err());
}
