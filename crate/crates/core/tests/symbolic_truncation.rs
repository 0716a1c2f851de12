mod common;

use common::{sample_sets, Truncation};
use soberlab::symbolic::{symbolic_rclass_membership, Answer, Family, SobPoint, SymbolicSpace, SymbolicSubset};

const FAMILIES: [Family; 2] = [Family::CofiniteNat, Family::UpperNat];
const DEPTHS: [usize; 3] = [5, 20, 100];

fn project(t: &Truncation, a: &SymbolicSubset) -> Vec<bool> {
    t.project(a).expect("sample set fits the truncation")
}

#[test]
fn open_and_closed_agree() {
    for family in FAMILIES {
        let space = SymbolicSpace::new(family);
        for k in DEPTHS {
            let t = Truncation::new(family, k);
            for a in sample_sets(k as u64, 200, k as u64) {
                let p = project(&t, &a);
                assert_eq!(space.is_open(&a), t.is_open(&p), "{family} k={k} open {a}");
                assert_eq!(space.is_closed(&a), t.is_closed(&p), "{family} k={k} closed {a}");
            }
        }
    }
}

#[test]
fn closure_and_saturation_agree() {
    for family in FAMILIES {
        let space = SymbolicSpace::new(family);
        for k in DEPTHS {
            let t = Truncation::new(family, k);
            for a in sample_sets(k as u64, 200, 7 * k as u64) {
                let p = project(&t, &a);
                // the truncated closure of a set touching only real points stays
                // below the tail point exactly when the symbolic closure is finite
                let cl = space.closure(&a);
                if let Some(q) = t.project(&cl) {
                    assert_eq!(q, t.closure(&p), "{family} k={k} closure {a}");
                } else {
                    assert!(t.closure(&p)[k], "{family} k={k} closure {a} reaches the tail");
                }
                let sat = space.saturation(&a);
                assert_eq!(t.below(&sat), t.saturation_below(&p), "{family} k={k} saturation {a}");
            }
        }
    }
}

#[test]
fn point_closures_are_distinct_below_the_horizon() {
    for family in FAMILIES {
        let space = SymbolicSpace::new(family);
        for k in DEPTHS {
            let t = Truncation::new(family, k);
            for x in 0..k {
                assert_eq!(project(&t, &space.point_closure(x as u64)), t.point_closure(x));
                assert!(space.zero_closure(&SymbolicSubset::finite([x as u64])).count() == Some(1));
                let single: Vec<bool> = (0..=k).map(|i| i == x).collect();
                assert_eq!(t.zero_closure(&single), single);
            }
        }
    }
}

#[test]
fn naturals_have_no_generic_point() {
    for family in FAMILIES {
        let space = SymbolicSpace::new(family);
        assert!(!space.is_quasisober());
        let v = space.irreducible_closed(&SymbolicSubset::naturals());
        assert!(matches!(v.answer, Answer::Irreducible { irreducible: true, generic: None, .. }));
        for k in DEPTHS {
            let t = Truncation::new(family, k);
            let full = vec![true; k + 1];
            for x in 0..k {
                assert_ne!(t.point_closure(x), full, "{family}: {x} is not generic");
            }
        }
    }
}

#[test]
fn reducing_pairs_are_valid() {
    let space = SymbolicSpace::new(Family::CofiniteNat);
    for a in [SymbolicSubset::finite([0, 1]), SymbolicSubset::finite([3, 9, 27])] {
        match space.irreducible_closed(&a).answer {
            Answer::Irreducible { irreducible: false, reducing_pair: Some((f, g)), .. } => {
                assert!(space.is_closed(&f) && space.is_closed(&g));
                assert!(a.is_subset(&f.union(&g)));
                assert!(!a.is_subset(&f) && !a.is_subset(&g));
            }
            other => panic!("expected a reducing pair, got {other:?}"),
        }
    }
}

#[test]
fn sigma_matches_prime_definition() {
    for family in FAMILIES {
        let space = SymbolicSpace::new(family);
        for g in sample_sets(30, 100, 3).into_iter().filter(|g| space.is_open(g)) {
            let closed = space.sigma(&g);
            for x in 0..40 {
                let p = SobPoint::Point(x);
                assert_eq!(space.sigma_contains(&g, p), closed.contains(p));
                assert_eq!(space.sigma_contains(&g, space.xi(x)), g.contains(x));
            }
            assert_eq!(space.sigma_contains(&g, SobPoint::Omega), closed.contains(SobPoint::Omega));
        }
    }
}

#[test]
fn r_membership_agrees_with_truncations() {
    for family in FAMILIES {
        let space = SymbolicSpace::new(family);
        for k in DEPTHS {
            for a in sample_sets(k as u64, 100, 11 * k as u64) {
                let member = symbolic_rclass_membership(&space, &a).member;
                assert_eq!(member, common::image_saturated_below(&space, &a, k as u64), "{family} k={k} {a}");
            }
        }
    }
}
