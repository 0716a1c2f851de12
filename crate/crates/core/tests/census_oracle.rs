mod common;

use std::collections::BTreeSet;

use soberlab::census::{enumerate_preorders, enumerate_topologies, enumerate_topologies_with_ceiling, CensusError};
use soberlab::frame::open_lattice;
use soberlab::Space;

fn as_masks(space: &Space) -> Vec<u64> {
    let mut v: Vec<u64> = space.opens().iter().map(|o| o.bits()).collect();
    v.sort();
    v
}

#[test]
fn enumeration_matches_family_search_up_to_three_points() {
    for n in 0..=3 {
        let oracle = common::topologies_by_family_search(n);
        let ours: BTreeSet<Vec<u64>> = enumerate_topologies(n).unwrap().map(|s| as_masks(&s)).collect();
        assert_eq!(ours, oracle, "n = {n}");
    }
}

#[test]
fn enumeration_has_no_duplicates() {
    for n in 0..=4 {
        let all: Vec<Vec<u64>> = enumerate_topologies(n).unwrap().map(|s| as_masks(&s)).collect();
        let distinct: BTreeSet<_> = all.iter().cloned().collect();
        assert_eq!(all.len(), distinct.len());
    }
}

#[test]
fn preorders_are_reflexive_and_transitive() {
    for n in 0..=4 {
        for p in enumerate_preorders(n) {
            assert!(p.is_reflexive() && p.is_transitive());
        }
    }
}

#[test]
fn ceiling_is_enforced() {
    assert!(matches!(
        enumerate_topologies_with_ceiling(6, 5).err(),
        Some(CensusError::CeilingExceeded { n: 6, ceiling: 5 })
    ));
    assert!(enumerate_topologies_with_ceiling(6, 6).is_ok());
}

#[test]
fn open_filters_match_brute_force_on_small_lattices() {
    for n in 0..=3 {
        for space in enumerate_topologies(n).unwrap() {
            let lat = open_lattice(&space);
            let elems: Vec<u64> = lat.elements().iter().map(|s| s.bits()).collect();
            let oracle = common::filters_by_brute_force(&elems);
            // finite lattice: every filter is principal
            assert_eq!(oracle.len(), lat.len());
            let ours: BTreeSet<Vec<bool>> = lat.scott_open_filters().into_iter().map(|f| f.members).collect();
            let oracle: BTreeSet<Vec<bool>> = oracle.into_iter().collect();
            assert_eq!(ours, oracle);
        }
    }
}

#[test]
fn closure_agrees_with_neighbourhood_definition() {
    for n in 0..=4 {
        for space in enumerate_topologies(n).unwrap() {
            let opens: Vec<u64> = space.opens().iter().map(|o| o.bits()).collect();
            for a in soberlab::Subset::all(n) {
                assert_eq!(space.closure(a).bits(), common::closure_by_neighbourhoods(n, &opens, a.bits()));
            }
        }
    }
}

#[test]
fn primes_are_complements_of_irreducible_closed_sets() {
    for n in 0..=4 {
        for space in enumerate_topologies(n).unwrap() {
            let lat = open_lattice(&space);
            let primes: BTreeSet<u64> = lat.prime_elements().into_iter().map(|p| lat.element(p).bits()).collect();
            // irreducible by definition: nonempty, not inside a union of two closed sets
            // unless inside one of them
            let closed = space.closed_sets();
            let irr: BTreeSet<u64> = closed
                .iter()
                .filter(|c| !c.is_empty())
                .filter(|c| {
                    closed
                        .iter()
                        .all(|f| closed.iter().all(|g| !c.is_subset(f.union(*g)) || c.is_subset(*f) || c.is_subset(*g)))
                })
                .map(|c| c.complement().bits())
                .collect();
            assert_eq!(primes, irr);
        }
    }
}
