mod common;

use conwaykit::catalog;
use conwaykit::kauffman::{
    evaluate_regular_with, evaluate_unoriented_with, jck, kauffman_l, KauffmanLAlgebra, KauffmanOptions,
    TernaryResolvingTree,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{braid, jones_kauffman, kauffman_skein, mirror_laws, regular_chain, reversing};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn skein_relation_at_every_crossing(w in braid(7)) {
        kauffman_skein(&w.closure()).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn regular_moves_and_stabilization(w in braid(6), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        regular_chain(&mut rng, &w, 5).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn l_ignores_orientation(w in braid(8)) {
        let d = w.closure();
        let l = kauffman_l(&d);
        for i in 0..d.component_count() {
            prop_assert_eq!(kauffman_l(&d.reverse_component(i).unwrap()), l.clone());
        }
        let alg = KauffmanLAlgebra::new();
        let seq = KauffmanOptions { parallel: false, ..Default::default() };
        prop_assert_eq!(evaluate_unoriented_with(&d, &alg, seq).unwrap(), l.clone());
        for seed in [1u64, 2, 3] {
            let opts = KauffmanOptions { reorient_seed: Some(seed), ..seq };
            prop_assert_eq!(evaluate_regular_with(&d, &alg, opts).unwrap(), l.clone());
            prop_assert_eq!(evaluate_unoriented_with(&d, &alg, opts).unwrap(), l.clone());
        }
        let plain = KauffmanOptions { rebase: false, ..seq };
        prop_assert_eq!(evaluate_regular_with(&d, &alg, plain).unwrap(), l.clone());
        prop_assert_eq!(evaluate_regular_with(&d, &alg, KauffmanOptions::cached()).unwrap(), l);
    }

    #[test]
    fn jones_from_both_trees_and_recursion(w in braid(7)) {
        jones_kauffman(&w.closure()).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn mirror_images(w in braid(7)) {
        mirror_laws(&w.closure()).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn reversing_on_two_component_links(w in braid(8)) {
        let d = w.closure();
        prop_assume!(d.component_count() == 2);
        reversing(&d).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn explicit_tree_matches_evaluator(w in braid(6)) {
        let d = w.closure();
        let tree = TernaryResolvingTree::build(&d);
        let (nodes, leaves, height) = tree.stats();
        prop_assert!(leaves <= nodes && height <= nodes);
        prop_assert_eq!(tree.evaluate(&conwaykit::kauffman::JckAlgebra::new()).unwrap(), jck(&d));
    }
}

#[test]
fn catalog_laws() {
    for e in catalog::catalog().iter().filter(|e| e.diagram.crossing_count() <= 8) {
        let d = &e.diagram;
        kauffman_skein(d).unwrap_or_else(|m| panic!("{}: {m}", e.name));
        mirror_laws(d).unwrap_or_else(|m| panic!("{}: {m}", e.name));
        jones_kauffman(d).unwrap_or_else(|m| panic!("{}: {m}", e.name));
        if d.component_count() == 2 {
            reversing(d).unwrap_or_else(|m| panic!("{}: {m}", e.name));
        }
    }
}
