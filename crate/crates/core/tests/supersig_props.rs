mod common;

use conwaykit::catalog;
use conwaykit::conway::{EvalError, EvalOptions, ResolvingTree};
use conwaykit::diagram::LinkDiagram;
use conwaykit::supersig::{parse_rational, supersignature, table_parameters, Q, SupersigValue};
use proptest::prelude::*;

use common::{braid, skein_quad};

fn q(s: &str) -> Q {
    parse_rational(s).unwrap()
}

/// Undefined and tree-dependent values are legitimate outcomes off the
/// diagonal; anything else is a bug.
fn sig(d: &LinkDiagram, u: &Q, v: &Q) -> Option<SupersigValue<Q>> {
    match supersignature(d, u, v) {
        Ok(s) => Some(s),
        Err(EvalError::Undefined { .. } | EvalError::TreeDependent(..)) if u != v => None,
        Err(e) => panic!("{e} on\n{}", d.to_text()),
    }
}

fn params() -> impl Strategy<Value = (Q, Q)> {
    prop::sample::select(table_parameters().to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn switching_positive_crossing_never_lowers(w in braid(7), (u, v) in params()) {
        let d = w.closure();
        for p in 0..d.crossing_count() {
            let (lp, lm, _, _) = skein_quad(&d, p);
            let (Some(a), Some(b)) = (sig(&lp, &u, &v), sig(&lm, &u, &v)) else { continue };
            if let (Some(za), Some(zb)) = (a.z, b.z) {
                prop_assert!(za <= zb, "crossing {}: {} vs {}", p, a, b);
            }
        }
    }

    #[test]
    fn disjoint_sum_adds(a in braid(5), b in braid(5), (u, v) in params()) {
        let (da, db) = (a.closure(), b.closure());
        let (Some(sa), Some(sb)) = (sig(&da, &u, &v), sig(&db, &u, &v)) else { return Ok(()) };
        let Some(s) = sig(&da.disjoint_sum(&db), &u, &v) else { return Ok(()) };
        let eps = match u.cmp(&v) {
            std::cmp::Ordering::Greater => Some(1),
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Less => Some(-1),
        };
        let want = match (sa.z, sb.z, eps) {
            (Some(x), Some(y), Some(e)) => Some(x + y + e),
            _ => None,
        };
        prop_assert_eq!(s.z, want);
    }

    #[test]
    fn phase_of_r_follows_z_on_the_diagonal(w in braid(8)) {
        let d = w.closure();
        for (u, v) in [(q("1/2"), q("1/2")), (q("2"), q("2"))] {
            let s = sig(&d, &u, &v).unwrap();
            if let Some(z) = s.z {
                prop_assert_eq!(s.r.phase(), Some(z.rem_euclid(4)), "{}", s);
            } else {
                prop_assert!(s.r.is_zero());
            }
        }
    }

    #[test]
    fn tree_height_bounds_signature(w in braid(8), (u, v) in params()) {
        let d = w.closure();
        let Some(s) = sig(&d, &u, &v) else { return Ok(()) };
        let Some(z) = s.z else { return Ok(()) };
        let slack = if u == v { 0 } else { d.component_count() as i64 - 1 };
        let height = ResolvingTree::build(&d, EvalOptions::default()).stats().height as i64;
        prop_assert!(2 * height >= z.abs() - 2 * slack, "height {} but {}", height, s);
    }

    #[test]
    fn mirror_negates_on_the_diagonal(w in braid(8)) {
        let d = w.closure();
        let (u, v) = (q("1/2"), q("1/2"));
        let (a, b) = (sig(&d, &u, &v).unwrap(), sig(&d.mirror(), &u, &v).unwrap());
        prop_assert_eq!(a.z.map(|z| -z), b.z);
    }
}

#[test]
fn catalog_knots_have_even_diagonal_signature() {
    for e in catalog::catalog().iter().filter(|e| e.diagram.component_count() == 1) {
        let s = supersignature(&e.diagram, &q("1/2"), &q("1/2")).unwrap();
        let z = s.z.unwrap_or_else(|| panic!("{}: infinite", e.name));
        assert_eq!(z.rem_euclid(2), 0, "{}", e.name);
    }
}
