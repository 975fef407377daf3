use conwaykit::catalog::{self, pretzel, verify_entry, Outcome};
use conwaykit::conway::{homfly, weighted_simplex};
use conwaykit::diagram::LinkDiagram;

#[test]
fn every_entry_verifies() {
    let mut bad = Vec::new();
    for e in catalog::catalog() {
        assert!(e.diagram.validate().is_ok(), "{}", e.name);
        for c in verify_entry(e) {
            if c.outcome != Outcome::Pass {
                bad.push(format!("{} {}: want {} got {}", c.entry, c.invariant, c.expected, c.actual));
            }
        }
    }
    assert!(bad.is_empty(), "{}", bad.join("\n"));
}

#[test]
fn entries_round_trip_through_text() {
    for e in catalog::catalog() {
        let back = LinkDiagram::parse_text(&e.diagram.to_text()).unwrap();
        assert_eq!(back.canonical_key(), e.diagram.canonical_key(), "{}", e.name);
        if let Some(b) = &e.braid {
            assert_eq!(b.closure().canonical_key(), e.diagram.canonical_key(), "{}", e.name);
        }
    }
}

#[test]
fn pretzel_is_homfly_amphicheiral() {
    let d = pretzel(&[3, 5, 3, -5, -3, -3]).unwrap();
    assert_eq!(homfly(&d), homfly(&d.mirror()));
}

#[test]
fn skein_pair_is_told_apart_by_linking_simplices() {
    let a = &catalog::entry("lk_pair_a").unwrap().diagram;
    let b = &catalog::entry("lk_pair_b").unwrap().diagram;
    assert_eq!(homfly(a), homfly(b));
    let lk = |d: &LinkDiagram| d.total_linking();
    let (sa, sb) = (weighted_simplex(a, lk).unwrap(), weighted_simplex(b, lk).unwrap());
    assert!(!sa.equivalent(&sb));
    assert!(sa.equivalent(&sa));
    // HOMFLY on sublinks does not see the difference by itself at the top face
    let h = |d: &LinkDiagram| homfly(d);
    let full = (1u32 << a.component_count()) - 1;
    assert_eq!(weighted_simplex(a, h).unwrap().faces[&full], weighted_simplex(b, h).unwrap().faces[&full]);
}

#[test]
fn unknown_entry() {
    assert!(catalog::entry("no_such_knot").is_err());
}
