//! Compact saturated sets `Q(X)`, the class `R(X)`, filtered families and the
//! Hofmann–Mislove correspondence on finite spaces.
//!
//! `R(X)` consists of the 0-closed subsets `R` whose image `ξ(R)` is compact
//! saturated in the sobrification. On a finite space compactness is
//! automatic, so membership reduces to two checks: 0-closedness in `X` and
//! saturation of the image in `S`.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frame::{open_lattice, Filter};
use crate::sobrification::{sobrify, SobrificationResult};
use crate::space::Space;
use crate::subset::Subset;

/// All compact saturated subsets, in canonical order.
pub fn compact_saturated_family(space: &Space) -> Vec<Subset> {
    let mut q: Vec<Subset> = Subset::all(space.len()).filter(|a| space.is_saturated(*a)).collect();
    q.sort_by(Subset::canonical_cmp);
    q
}

/// Which of the two defining conditions of `R(X)` a set fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Exclusion {
    NotZeroClosed,
    ImageNotSaturated,
}

impl std::fmt::Display for Exclusion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Exclusion::NotZeroClosed => "not 0-closed",
            Exclusion::ImageNotSaturated => "ξ-image not saturated in S",
        })
    }
}

/// Membership test for `R(X)` against a precomputed sobrification.
pub fn r_membership(space: &Space, sob: &SobrificationResult, a: Subset) -> Result<(), Exclusion> {
    if !space.is_zero_closed(a) {
        return Err(Exclusion::NotZeroClosed);
    }
    if !sob.s.is_saturated(sob.image_of(a)) {
        return Err(Exclusion::ImageNotSaturated);
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RClassReport {
    pub q: Vec<Subset>,
    pub r: Vec<Subset>,
    pub quasisober: bool,
    /// `⋃ R(X) = X`
    pub covers: bool,
    /// `R(X) = Q(X)`
    pub equal: bool,
    /// Members of `Q(X)` outside `R(X)` and the condition they fail.
    pub exclusions: Vec<(Subset, Exclusion)>,
}

impl RClassReport {
    pub fn r_within_q(&self) -> bool {
        self.r.iter().all(|a| self.q.contains(a))
    }

    /// quasisober ⇔ covers ⇔ equal.
    pub fn equivalence_holds(&self) -> bool {
        self.quasisober == self.covers && self.covers == self.equal
    }

    pub fn contains_r(&self, a: Subset) -> bool {
        self.r.binary_search_by(|b| b.canonical_cmp(&a)).is_ok()
    }

    pub fn contains_q(&self, a: Subset) -> bool {
        self.q.binary_search_by(|b| b.canonical_cmp(&a)).is_ok()
    }

    /// First pair of `R(X)` members whose union falls outside `R(X)`.
    pub fn union_violation(&self) -> Option<(Subset, Subset)> {
        for (i, &a) in self.r.iter().enumerate() {
            for &b in &self.r[i..] {
                if !self.contains_r(a.union(b)) {
                    return Some((a, b));
                }
            }
        }
        None
    }
}

pub fn rclass_analyze(space: &Space) -> RClassReport {
    rclass_analyze_with(space, &sobrify(space))
}

pub fn rclass_analyze_with(space: &Space, sob: &SobrificationResult) -> RClassReport {
    let q = compact_saturated_family(space);
    let mut r = Vec::new();
    let mut exclusions = Vec::new();
    for a in Subset::all(space.len()) {
        match r_membership(space, sob, a) {
            Ok(()) => r.push(a),
            Err(why) if space.is_saturated(a) => exclusions.push((a, why)),
            Err(_) => {}
        }
    }
    r.sort_by(Subset::canonical_cmp);
    exclusions.sort_by(|x, y| x.0.canonical_cmp(&y.0));
    let covers = r.iter().fold(space.empty_set(), |acc, a| acc.union(*a)) == space.full_set();
    let equal = r == q;
    RClassReport { q, r, quasisober: space.properties().quasisober, covers, equal, exclusions }
}

/// Which class the members of a filtered family are drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MemberClass {
    /// `R(X)`
    R,
    /// compact saturated sets
    Q,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FilteredError {
    #[error("a filtered family needs at least one member")]
    EmptyFamily,
    #[error("family is not filtered: no member lies inside {left} ∩ {right}")]
    NotFiltered { left: String, right: String },
    #[error("member {0} is not in the class")]
    MemberNotInClass(String),
    #[error("{0} is not open")]
    NotOpen(String),
}

/// A nonempty, downward-directed family of subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilteredFamily {
    members: Vec<Subset>,
}

impl FilteredFamily {
    pub fn new(members: Vec<Subset>) -> Result<Self, FilteredError> {
        if members.is_empty() {
            return Err(FilteredError::EmptyFamily);
        }
        Ok(FilteredFamily { members })
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    /// A pair with no member below their intersection, if any.
    pub fn directedness_witness(&self) -> Option<(Subset, Subset)> {
        for (i, &a) in self.members.iter().enumerate() {
            for &b in &self.members[i + 1..] {
                let m = a.intersection(b);
                if !self.members.iter().any(|c| c.is_subset(m)) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn intersection(&self) -> Subset {
        let w = self.members[0].width();
        self.members.iter().fold(Subset::full(w), |acc, a| acc.intersection(*a))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Escape {
    pub open: Subset,
    /// Whether the family's intersection lies inside `open`.
    pub applies: bool,
    /// A member inside `open`, when one exists.
    pub member: Option<Subset>,
}

impl Escape {
    pub fn holds(&self) -> bool {
        !self.applies || self.member.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilteredReport {
    pub intersection: Subset,
    pub intersection_in_class: bool,
    pub escape: Option<Escape>,
    /// Two class members whose union leaves the class.
    pub union_violation: Option<(Subset, Subset)>,
    pub pass: bool,
}

/// Checks the filtered-intersection properties for one family.
pub fn filtered_family_check(
    space: &Space,
    fam: &FilteredFamily,
    class: MemberClass,
    g: Option<Subset>,
) -> Result<FilteredReport, FilteredError> {
    filtered_family_check_with(space, &rclass_analyze(space), fam, class, g)
}

pub fn filtered_family_check_with(
    space: &Space,
    report: &RClassReport,
    fam: &FilteredFamily,
    class: MemberClass,
    g: Option<Subset>,
) -> Result<FilteredReport, FilteredError> {
    let in_class = |a: Subset| match class {
        MemberClass::R => report.contains_r(a),
        MemberClass::Q => report.contains_q(a),
    };
    if let Some(bad) = fam.members().iter().find(|a| !in_class(**a)) {
        return Err(FilteredError::MemberNotInClass(space.show(*bad)));
    }
    if let Some((a, b)) = fam.directedness_witness() {
        return Err(FilteredError::NotFiltered { left: space.show(a), right: space.show(b) });
    }
    if let Some(g) = g {
        if !space.is_open(g) {
            return Err(FilteredError::NotOpen(space.show(g)));
        }
    }
    let intersection = fam.intersection();
    let intersection_in_class = in_class(intersection);
    let escape = g.map(|open| {
        let applies = intersection.is_subset(open);
        let member = fam.members().iter().copied().find(|m| m.is_subset(open));
        Escape { open, applies, member: if applies { member } else { None } }
    });
    let union_violation = match class {
        MemberClass::R => report.union_violation(),
        MemberClass::Q => {
            let mut bad = None;
            'outer: for (i, &a) in report.q.iter().enumerate() {
                for &b in &report.q[i..] {
                    if !report.contains_q(a.union(b)) {
                        bad = Some((a, b));
                        break 'outer;
                    }
                }
            }
            bad
        }
    };
    let pass = intersection_in_class && escape.as_ref().is_none_or(Escape::holds) && union_violation.is_none();
    Ok(FilteredReport { intersection, intersection_in_class, escape, union_violation, pass })
}

/// Draws a random filtered family from `class`.
///
/// Picks a few members, then restores directedness by adding pairwise
/// intersections that stay in the class and dropping members otherwise.
pub fn random_filtered_family<R: Rng>(class: &[Subset], rng: &mut R) -> FilteredFamily {
    assert!(!class.is_empty());
    let k = rng.gen_range(1..=4.min(class.len()));
    let mut members: Vec<Subset> = class.choose_multiple(rng, k).copied().collect();
    loop {
        let fam = FilteredFamily { members: members.clone() };
        match fam.directedness_witness() {
            None => return fam,
            Some((a, b)) => {
                let m = a.intersection(b);
                if class.contains(&m) {
                    members.push(m);
                } else {
                    members.retain(|c| *c != b);
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HofmannMisloveReport {
    pub sober: bool,
    pub filters: usize,
    pub compact_saturated: usize,
    /// `φ(Q) = {G open : Q ⊆ G}` is a filter for every `Q`.
    pub phi_into_filters: bool,
    /// `ψ(U) = ⋂U` is compact saturated for every filter `U`.
    pub psi_into_q: bool,
    pub psi_phi_identity: bool,
    pub phi_psi_identity: bool,
    pub bijection: bool,
    /// Sober spaces must give a bijection; otherwise the outcome is informational.
    pub pass: bool,
}

pub fn hofmann_mislove_check(space: &Space) -> HofmannMisloveReport {
    let lattice = open_lattice(space);
    let q = compact_saturated_family(space);
    let filters = lattice.scott_open_filters();
    let phi = |a: Subset| Filter { members: lattice.elements().iter().map(|g| a.is_subset(*g)).collect() };
    let psi = |f: &Filter| f.indices().fold(space.full_set(), |acc, i| acc.intersection(lattice.element(i)));

    let phi_into_filters = q.iter().all(|a| lattice.is_filter(&phi(*a)));
    let psi_into_q = filters.iter().all(|f| q.contains(&psi(f)));
    let psi_phi_identity = q.iter().all(|a| psi(&phi(*a)) == *a);
    let phi_psi_identity = filters.iter().all(|f| phi(psi(f)) == *f);
    let bijection = phi_into_filters && psi_into_q && psi_phi_identity && phi_psi_identity;
    let sober = space.properties().sober;
    HofmannMisloveReport {
        sober,
        filters: filters.len(),
        compact_saturated: q.len(),
        phi_into_filters,
        psi_into_q,
        psi_phi_identity,
        phi_psi_identity,
        bijection,
        pass: !sober || bijection,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::named::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn compact_saturated_examples() {
        let s = sierpinski();
        assert_eq!(compact_saturated_family(&s), s.opens().to_vec());
        let i = indiscrete2();
        assert_eq!(compact_saturated_family(&i), vec![i.empty_set(), i.full_set()]);
        assert_eq!(compact_saturated_family(&discrete2()).len(), 4);
    }

    #[test]
    fn rclass_examples() {
        let s = sierpinski();
        let rep = rclass_analyze(&s);
        assert_eq!(rep.r, s.opens().to_vec());
        assert!(rep.quasisober && rep.covers && rep.equal);

        let i = indiscrete2();
        let rep = rclass_analyze(&i);
        assert_eq!(rep.r, vec![i.empty_set(), i.full_set()]);
        assert!(rep.quasisober && rep.covers && rep.equal);
        let a = i.subset_of(&["a"]).unwrap();
        assert_eq!(r_membership(&i, &sobrify(&i), a), Err(Exclusion::NotZeroClosed));

        let e = empty();
        let rep = rclass_analyze(&e);
        assert_eq!(rep.r, vec![e.empty_set()]);
        assert!(rep.quasisober && rep.covers && rep.equal);
    }

    #[test]
    fn filtered_examples() {
        let s = sierpinski();
        let one = s.subset_of(&["1"]).unwrap();
        let fam = FilteredFamily::new(vec![s.full_set(), one]).unwrap();
        let rep = filtered_family_check(&s, &fam, MemberClass::R, Some(one)).unwrap();
        assert_eq!(rep.intersection, one);
        assert!(rep.pass);
        assert_eq!(rep.escape.unwrap().member, Some(one));

        let single = FilteredFamily::new(vec![one]).unwrap();
        let rep = filtered_family_check(&s, &single, MemberClass::R, Some(s.full_set())).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.escape.unwrap().member, Some(one));
    }

    #[test]
    fn filtered_errors() {
        let d = discrete2();
        let a = d.subset_of(&["a"]).unwrap();
        let b = d.subset_of(&["b"]).unwrap();
        assert_eq!(FilteredFamily::new(vec![]), Err(FilteredError::EmptyFamily));
        let fam = FilteredFamily::new(vec![a, b]).unwrap();
        assert!(matches!(
            filtered_family_check(&d, &fam, MemberClass::R, None),
            Err(FilteredError::NotFiltered { .. })
        ));
        let s = sierpinski();
        let zero = s.subset_of(&["0"]).unwrap();
        let fam = FilteredFamily::new(vec![zero]).unwrap();
        assert!(matches!(
            filtered_family_check(&s, &fam, MemberClass::Q, None),
            Err(FilteredError::MemberNotInClass(_))
        ));
        let fam = FilteredFamily::new(vec![s.full_set()]).unwrap();
        assert!(matches!(filtered_family_check(&s, &fam, MemberClass::Q, Some(zero)), Err(FilteredError::NotOpen(_))));
    }

    #[test]
    fn random_families_are_filtered() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let d = discrete2();
        let class = compact_saturated_family(&d);
        for _ in 0..50 {
            let fam = random_filtered_family(&class, &mut rng);
            assert!(fam.directedness_witness().is_none());
            assert!(fam.members().iter().all(|m| class.contains(m)));
        }
    }

    #[test]
    fn hofmann_mislove_examples() {
        let rep = hofmann_mislove_check(&sierpinski());
        assert_eq!((rep.filters, rep.compact_saturated), (3, 3));
        assert!(rep.sober && rep.bijection && rep.pass);
        let rep = hofmann_mislove_check(&point());
        assert_eq!((rep.filters, rep.compact_saturated), (2, 2));
        assert!(rep.bijection);
        let rep = hofmann_mislove_check(&indiscrete2());
        assert!(!rep.sober && rep.bijection && rep.pass);
    }
}
