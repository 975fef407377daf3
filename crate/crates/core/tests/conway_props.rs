mod common;

use conwaykit::catalog::{self, pretzel};
use conwaykit::conway::{evaluate, evaluate_with, homfly, homfly_with, EvalOptions, FiniteAlgebraTable, HomflyAlgebra};
use conwaykit::diagram::parse_braid;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{braid, homfly_skein, markov_chain, parity_and_divisibility, redundancy, sum_laws, swap_xy};

fn small_catalog() -> impl Iterator<Item = &'static catalog::CatalogEntry> {
    catalog::catalog().iter().filter(|e| e.diagram.crossing_count() <= 9)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn skein_relation_at_every_crossing(w in braid(8)) {
        homfly_skein(&w.closure()).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn markov_moves_preserve_ambient_invariants(w in braid(6), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        markov_chain(&mut rng, &w, 6).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn global_reversal_and_mirror(w in braid(8)) {
        let d = w.closure();
        let p = homfly(&d);
        prop_assert_eq!(homfly(&d.reverse_all()), p.clone());
        prop_assert_eq!(homfly(&d.mirror()), swap_xy(&p));
    }

    #[test]
    fn sums_parity_and_redundancy(a in braid(6), b in braid(6)) {
        let (da, db) = (a.closure(), b.closure());
        sum_laws(&da, &db).map_err(TestCaseError::fail)?;
        parity_and_divisibility(&da).map_err(TestCaseError::fail)?;
        redundancy(&db).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn evaluation_strategies_agree(w in braid(10)) {
        let d = w.closure();
        let p = homfly_with(&d, EvalOptions::literal());
        prop_assert_eq!(homfly_with(&d, EvalOptions::cached()), p.clone());
        prop_assert_eq!(homfly_with(&d, EvalOptions::sequential()), p.clone());
        prop_assert_eq!(homfly(&d), p);
        for t in [FiniteAlgebraTable::three_element(), FiniteAlgebraTable::four_element()] {
            let a = evaluate_with(&d, &t, EvalOptions::literal()).unwrap();
            prop_assert_eq!(evaluate_with(&d, &t, EvalOptions::cached()).unwrap(), a);
        }
    }

    #[test]
    fn components_table_counts_components(w in braid(10)) {
        let d = w.closure();
        let t = FiniteAlgebraTable::components_table(5);
        prop_assert_eq!(evaluate(&d, &t).unwrap() as usize + 1, d.component_count());
    }
}

#[test]
fn catalog_homfly_laws() {
    for e in small_catalog() {
        homfly_skein(&e.diagram).unwrap_or_else(|m| panic!("{}: {m}", e.name));
        parity_and_divisibility(&e.diagram).unwrap_or_else(|m| panic!("{}: {m}", e.name));
    }
}

#[test]
fn amphicheiral_link_is_invisible_to_mirror() {
    let d = &catalog::entry("8^3_2").unwrap().diagram;
    let m = d.mirror();
    assert_eq!(homfly(&m), homfly(d));
    for t in [FiniteAlgebraTable::three_element(), FiniteAlgebraTable::four_element()] {
        assert_eq!(evaluate(&m, &t).unwrap(), evaluate(d, &t).unwrap());
    }
}

#[test]
fn pretzel_homfly_matches_its_mirror() {
    let d = pretzel(&[3, 5, 3, -5, -3, -3]).unwrap();
    assert_eq!(homfly(&d.mirror()), homfly(&d));
}

#[test]
fn unknot_and_unlink() {
    let v = HomflyAlgebra::new().vars().clone();
    let unknot = parse_braid("s1 s2^-1").unwrap().closure();
    assert_eq!(homfly(&unknot), conwaykit::poly::LaurentPoly::one(&v));
    let unlink = parse_braid("s1 s1^-1").unwrap().closure();
    let s = &conwaykit::poly::LaurentPoly::var(&v, "x") + &conwaykit::poly::LaurentPoly::var(&v, "y");
    assert_eq!(homfly(&unlink), s);
}
