//! Two infinite non-sober spaces on `ℕ` with an exact subset algebra.
//!
//! * `COFINITE_NAT`: the open sets are `∅` and the cofinite sets.
//! * `UPPER_NAT`: the open sets are `∅`, `ℕ` and the up-segments `[n,∞)`.
//!
//! Subsets are restricted to the finite and "finite part plus tail" sets,
//! which is enough to state every query on these families and is closed
//! under the Boolean operations. Both spaces have the same sobrification
//! shape: `S = ℕ ∪ {ω}` where `ω` is the prime `∅` of `O(X)`, a generic point
//! for all of `X`, and `ξ(x)` is the prime `X ∖ cl{x}`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Largest number accepted by the text parser. Complements materialize
/// every point below a tail, so the finite parts must stay small.
pub const MAX_ELEMENT: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymbolicError {
    #[error("unknown space family `{0}` (expected cofinite or upper)")]
    UnknownFamily(String),
    #[error("`{0}` is not a representable subset of ℕ")]
    NotRepresentable(String),
    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),
    #[error("cover misses point {0}")]
    NotACover(u64),
    #[error("cover member {0} is not open")]
    CoverMemberNotOpen(String),
}

/// `finite ∪ [tail,∞)`, kept in a canonical form: every finite element lies
/// below the tail and the tail start is as small as possible.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SymbolicSubset {
    finite: BTreeSet<u64>,
    tail: Option<u64>,
}

impl SymbolicSubset {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn naturals() -> Self {
        Self::up_from(0)
    }

    /// `[n,∞)`
    pub fn up_from(n: u64) -> Self {
        Self { finite: BTreeSet::new(), tail: Some(n) }
    }

    /// `[0,n)`
    pub fn below(n: u64) -> Self {
        Self::finite((0..n).collect::<Vec<_>>())
    }

    pub fn finite<I: IntoIterator<Item = u64>>(it: I) -> Self {
        Self::new(it.into_iter().collect(), None)
    }

    pub fn new(finite: BTreeSet<u64>, tail: Option<u64>) -> Self {
        let mut s = Self { finite, tail };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if let Some(mut t) = self.tail {
            self.finite.retain(|&x| x < t);
            while t > 0 && self.finite.remove(&(t - 1)) {
                t -= 1;
            }
            self.tail = Some(t);
        }
    }

    pub fn finite_part(&self) -> &BTreeSet<u64> {
        &self.finite
    }

    pub fn tail(&self) -> Option<u64> {
        self.tail
    }

    pub fn contains(&self, x: u64) -> bool {
        self.finite.contains(&x) || self.tail.is_some_and(|t| x >= t)
    }

    pub fn is_empty(&self) -> bool {
        self.finite.is_empty() && self.tail.is_none()
    }

    pub fn is_full(&self) -> bool {
        self.tail == Some(0)
    }

    pub fn is_finite(&self) -> bool {
        self.tail.is_none()
    }

    pub fn min(&self) -> Option<u64> {
        self.finite.iter().next().copied().or(self.tail)
    }

    /// Largest element of a finite set.
    pub fn max(&self) -> Option<u64> {
        if self.tail.is_some() {
            None
        } else {
            self.finite.iter().next_back().copied()
        }
    }

    /// Number of elements, or `None` for infinite sets.
    pub fn count(&self) -> Option<usize> {
        self.is_finite().then_some(self.finite.len())
    }

    /// A bound above which the set is constant: every `x ≥ bound` is in the
    /// set iff the set has a tail.
    pub fn horizon(&self) -> u64 {
        let f = self.finite.iter().next_back().map_or(0, |m| m + 1);
        f.max(self.tail.unwrap_or(0))
    }

    pub fn union(&self, other: &Self) -> Self {
        let tail = match (self.tail, other.tail) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        Self::new(self.finite.union(&other.finite).copied().collect(), tail)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let tail = match (self.tail, other.tail) {
            (Some(a), Some(b)) => Some(a.max(b)),
            _ => None,
        };
        let finite = self
            .finite
            .iter()
            .filter(|&&x| other.contains(x))
            .chain(other.finite.iter().filter(|&&x| self.contains(x)))
            .copied()
            .collect();
        Self::new(finite, tail)
    }

    pub fn complement(&self) -> Self {
        let h = self.horizon();
        let finite = (0..h).filter(|&x| !self.contains(x)).collect();
        let tail = if self.tail.is_some() { None } else { Some(h) };
        Self::new(finite, tail)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.intersection(&other.complement())
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.difference(other).is_empty()
    }

    /// ASCII rendering, e.g. `{0,2}U[9,inf)`.
    pub fn to_ascii(&self) -> String {
        self.to_string().replace('∅', "{}").replace('ℕ', "N").replace('∞', "inf").replace('∪', "U")
    }
}

impl fmt::Display for SymbolicSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("∅");
        }
        if self.is_full() {
            return f.write_str("ℕ");
        }
        if !self.finite.is_empty() {
            let items: Vec<String> = self.finite.iter().map(u64::to_string).collect();
            write!(f, "{{{}}}", items.join(","))?;
            if self.tail.is_some() {
                f.write_str("∪")?;
            }
        }
        if let Some(t) = self.tail {
            write!(f, "[{t},∞)")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SymbolicSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for SymbolicSubset {
    type Err = SymbolicError;

    /// Accepts `∅`, `{}`, `ℕ`, `N`, `{1,4,7}`, `[n,∞)`, `[n,inf)`, `[a,b)`
    /// and unions of these joined by `∪` or `U`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = || SymbolicError::NotRepresentable(text.to_string());
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let num = |t: &str| t.parse::<u64>().ok().filter(|&v| v <= MAX_ELEMENT).ok_or_else(bad);
        let mut acc = SymbolicSubset::empty();
        for part in compact.split(['∪', 'U']) {
            let piece = match part {
                "∅" | "{}" => SymbolicSubset::empty(),
                "ℕ" | "N" => SymbolicSubset::naturals(),
                p if p.starts_with('{') && p.ends_with('}') => {
                    let inner = &p[1..p.len() - 1];
                    let items: Result<Vec<u64>, _> = inner.split(',').map(num).collect();
                    SymbolicSubset::finite(items?)
                }
                p if p.starts_with('[') && p.ends_with(')') => {
                    let (lo, hi) = p[1..p.len() - 1].split_once(',').ok_or_else(bad)?;
                    let lo = num(lo)?;
                    match hi {
                        "∞" | "inf" | "" => SymbolicSubset::up_from(lo),
                        hi => SymbolicSubset::finite(lo..num(hi)?),
                    }
                }
                _ => return Err(bad()),
            };
            acc = acc.union(&piece);
        }
        Ok(acc)
    }
}

impl Serialize for SymbolicSubset {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SymbolicSubset {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Family {
    CofiniteNat,
    UpperNat,
}

impl FromStr for Family {
    type Err = SymbolicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "cofinite" | "cofinite_nat" => Ok(Family::CofiniteNat),
            "upper" | "upper_nat" => Ok(Family::UpperNat),
            _ => Err(SymbolicError::UnknownFamily(s.to_string())),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::CofiniteNat => "COFINITE_NAT",
            Family::UpperNat => "UPPER_NAT",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Predicate {
    IsOpen,
    IsClosed,
    Closure,
    Saturation,
    IsIrreducibleClosed,
    IsCompact,
    IsZeroClosed,
}

impl Predicate {
    pub const ALL: [Predicate; 7] = [
        Predicate::IsOpen,
        Predicate::IsClosed,
        Predicate::Closure,
        Predicate::Saturation,
        Predicate::IsIrreducibleClosed,
        Predicate::IsCompact,
        Predicate::IsZeroClosed,
    ];
}

impl FromStr for Predicate {
    type Err = SymbolicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.to_ascii_lowercase().replace('-', "_");
        let s = s.strip_prefix("is_").unwrap_or(&s);
        Ok(match s {
            "open" => Predicate::IsOpen,
            "closed" => Predicate::IsClosed,
            "closure" => Predicate::Closure,
            "saturation" => Predicate::Saturation,
            "irreducible_closed" | "irreducible" => Predicate::IsIrreducibleClosed,
            "compact" => Predicate::IsCompact,
            "zero_closed" | "0_closed" => Predicate::IsZeroClosed,
            _ => return Err(SymbolicError::UnknownPredicate(s.to_string())),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Answer {
    Bool {
        value: bool,
    },
    Set {
        value: SymbolicSubset,
    },
    Irreducible {
        irreducible: bool,
        /// Point whose closure is the set, when one exists.
        generic: Option<u64>,
        /// Two closed sets covering the input without either containing it.
        #[serde(skip_serializing_if = "Option::is_none", default)]
        reducing_pair: Option<(SymbolicSubset, SymbolicSubset)>,
    },
}

/// A decided query and the finite argument backing it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub answer: Answer,
    pub certificate: String,
}

impl Verdict {
    pub fn as_bool(&self) -> Option<bool> {
        match self.answer {
            Answer::Bool { value } => Some(value),
            Answer::Irreducible { irreducible, .. } => Some(irreducible),
            Answer::Set { .. } => None,
        }
    }

    pub fn as_set(&self) -> Option<&SymbolicSubset> {
        match &self.answer {
            Answer::Set { value } => Some(value),
            _ => None,
        }
    }
}

fn yes(value: bool, certificate: impl Into<String>) -> Verdict {
    Verdict { answer: Answer::Bool { value }, certificate: certificate.into() }
}

fn set(value: SymbolicSubset, certificate: impl Into<String>) -> Verdict {
    Verdict { answer: Answer::Set { value }, certificate: certificate.into() }
}

/// A point of the sobrification `S = ℕ ∪ {ω}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SobPoint {
    Point(u64),
    Omega,
}

/// A subset of `S`: a subset of the image of `ξ` plus possibly `ω`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SobSubset {
    pub image: SymbolicSubset,
    pub omega: bool,
}

impl SobSubset {
    pub fn contains(&self, p: SobPoint) -> bool {
        match p {
            SobPoint::Point(x) => self.image.contains(x),
            SobPoint::Omega => self.omega,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RMembership {
    pub member: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SymbolicSpace {
    family: Family,
}

pub fn make_symbolic_space(tag: &str) -> Result<SymbolicSpace, SymbolicError> {
    Ok(SymbolicSpace { family: tag.parse()? })
}

impl SymbolicSpace {
    pub fn new(family: Family) -> Self {
        SymbolicSpace { family }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn is_open(&self, a: &SymbolicSubset) -> bool {
        match self.family {
            Family::CofiniteNat => a.is_empty() || !a.is_finite(),
            Family::UpperNat => a.is_empty() || (a.finite_part().is_empty() && a.tail().is_some()),
        }
    }

    pub fn is_closed(&self, a: &SymbolicSubset) -> bool {
        self.is_open(&a.complement())
    }

    pub fn closure(&self, a: &SymbolicSubset) -> SymbolicSubset {
        if a.is_empty() {
            return SymbolicSubset::empty();
        }
        match (self.family, a.max()) {
            (_, None) => SymbolicSubset::naturals(),
            (Family::CofiniteNat, Some(_)) => a.clone(),
            (Family::UpperNat, Some(m)) => SymbolicSubset::below(m + 1),
        }
    }

    pub fn point_closure(&self, x: u64) -> SymbolicSubset {
        self.closure(&SymbolicSubset::finite([x]))
    }

    pub fn saturation(&self, a: &SymbolicSubset) -> SymbolicSubset {
        match (self.family, a.min()) {
            (_, None) => SymbolicSubset::empty(),
            (Family::CofiniteNat, Some(_)) => a.clone(),
            (Family::UpperNat, Some(m)) => SymbolicSubset::up_from(m),
        }
    }

    pub fn zero_closure(&self, a: &SymbolicSubset) -> SymbolicSubset {
        // point closures are pairwise distinct in both families
        a.clone()
    }

    /// Irreducibility of a closed set, with generic point or reducing pair.
    pub fn irreducible_closed(&self, a: &SymbolicSubset) -> Verdict {
        let irr = |irreducible, generic, reducing_pair, cert: String| Verdict {
            answer: Answer::Irreducible { irreducible, generic, reducing_pair },
            certificate: cert,
        };
        if a.is_empty() {
            return irr(false, None, None, "irreducible sets are nonempty".into());
        }
        if !self.is_closed(a) {
            return irr(false, None, None, format!("{a} is not closed"));
        }
        if a.is_full() {
            let why = match self.family {
                Family::CofiniteNat => {
                    "the proper closed sets are finite and a union of two finite sets is finite, \
                     so ℕ lies in no union of two proper closed sets; every point closure is a \
                     singleton, so ℕ has no generic point"
                }
                Family::UpperNat => {
                    "the closed sets form a chain, so ℕ ⊆ F ∪ F' forces ℕ ⊆ F or ℕ ⊆ F'; every \
                     point closure [0,x+1) is finite, so ℕ has no generic point"
                }
            };
            return irr(true, None, None, why.into());
        }
        match self.family {
            Family::CofiniteNat => {
                let m = a.min().expect("nonempty");
                if a.count() == Some(1) {
                    irr(true, Some(m), None, format!("{a} = cl{{{m}}}"))
                } else {
                    let first = SymbolicSubset::finite([m]);
                    let rest = a.difference(&first);
                    irr(
                        false,
                        None,
                        Some((first.clone(), rest.clone())),
                        format!("{a} ⊆ {first} ∪ {rest}, both finite hence closed, neither contains {a}"),
                    )
                }
            }
            Family::UpperNat => {
                let top = a.max().expect("closed proper nonempty sets are finite");
                irr(true, Some(top), None, format!("closed sets form a chain and {a} = cl{{{top}}}"))
            }
        }
    }

    pub fn is_compact(&self, _a: &SymbolicSubset) -> Verdict {
        let cert = match self.family {
            Family::CofiniteNat => {
                "any member of an open cover is cofinite, so it misses finitely many points, each \
                 covered by one more member"
            }
            Family::UpperNat => {
                "every nonempty subset of ℕ has a minimum; the cover member containing it is an \
                 up-segment containing the whole set"
            }
        };
        yes(true, cert)
    }

    /// Extracts a finite subcover of `a` from `cover`.
    pub fn subcover(&self, a: &SymbolicSubset, cover: &[SymbolicSubset]) -> Result<Vec<SymbolicSubset>, SymbolicError> {
        if let Some(g) = cover.iter().find(|g| !self.is_open(g)) {
            return Err(SymbolicError::CoverMemberNotOpen(g.to_string()));
        }
        let mut remaining = a.clone();
        let mut picked = Vec::new();
        while let Some(x) = remaining.min() {
            let g = cover.iter().find(|g| g.contains(x)).ok_or(SymbolicError::NotACover(x))?;
            remaining = remaining.difference(g);
            picked.push(g.clone());
        }
        Ok(picked)
    }

    pub fn query(&self, predicate: Predicate, a: &SymbolicSubset) -> Verdict {
        match predicate {
            Predicate::IsOpen => {
                let v = self.is_open(a);
                let cert = match self.family {
                    Family::CofiniteNat => "open iff empty or cofinite",
                    Family::UpperNat => "open iff empty or an up-segment [n,∞)",
                };
                yes(v, cert)
            }
            Predicate::IsClosed => {
                let v = self.is_closed(a);
                yes(v, format!("complement {} is {}open", a.complement(), if v { "" } else { "not " }))
            }
            Predicate::Closure => {
                let c = self.closure(a);
                let cert = match self.family {
                    Family::CofiniteNat => "finite sets are closed; an infinite set is dense",
                    Family::UpperNat => "least down-segment [0,max+1) containing the set, or ℕ if unbounded",
                };
                set(c, cert)
            }
            Predicate::Saturation => {
                let s = self.saturation(a);
                let cert = match self.family {
                    Family::CofiniteNat => "T1: each point outside the set is avoided by a cofinite open",
                    Family::UpperNat => "the opens containing the set are [n,∞) with n ≤ min",
                };
                set(s, cert)
            }
            Predicate::IsIrreducibleClosed => self.irreducible_closed(a),
            Predicate::IsCompact => self.is_compact(a),
            Predicate::IsZeroClosed => yes(
                self.zero_closure(a) == *a,
                "T0: distinct points have distinct closures, so every ∼-class is a singleton",
            ),
        }
    }

    /// Whether every irreducible closed set has a generic point, decided on
    /// the one candidate that could lack one.
    pub fn is_quasisober(&self) -> bool {
        !matches!(
            self.irreducible_closed(&SymbolicSubset::naturals()).answer,
            Answer::Irreducible { irreducible: true, generic: None, .. }
        )
    }

    // Sobrification.

    pub fn xi(&self, x: u64) -> SobPoint {
        SobPoint::Point(x)
    }

    /// The prime open of `X` that a point of `S` stands for.
    pub fn prime_of(&self, p: SobPoint) -> SymbolicSubset {
        match p {
            SobPoint::Point(x) => self.point_closure(x).complement(),
            SobPoint::Omega => SymbolicSubset::empty(),
        }
    }

    /// `P ∈ σ(G)` iff `G ⊄ P`, straight from the hull-kernel definition.
    pub fn sigma_contains(&self, g: &SymbolicSubset, p: SobPoint) -> bool {
        !g.is_subset(&self.prime_of(p))
    }

    /// Closed form of `σ(G)`: `ξ(G)`, plus `ω` when `G` is nonempty.
    pub fn sigma(&self, g: &SymbolicSubset) -> SobSubset {
        SobSubset { image: g.clone(), omega: !g.is_empty() }
    }

    /// `ξ(A)` is saturated in `S` only for `A = ∅`: every nonempty open of `S`
    /// contains `ω`, which lies outside `ξ(A)`.
    pub fn image_saturated(&self, a: &SymbolicSubset) -> bool {
        a.is_empty()
    }
}

pub fn symbolic_query(space: &SymbolicSpace, predicate: Predicate, a: &SymbolicSubset) -> Verdict {
    space.query(predicate, a)
}

pub fn symbolic_rclass_membership(space: &SymbolicSpace, a: &SymbolicSubset) -> RMembership {
    if space.zero_closure(a) != *a {
        return RMembership { member: false, reason: Some("not 0-closed".into()) };
    }
    if space.image_saturated(a) {
        RMembership { member: true, reason: None }
    } else {
        RMembership {
            member: false,
            reason: Some(format!("ξ({a}) not saturated in S: every nonempty open of S contains ω ∉ ξ({a})")),
        }
    }
}

/// The final-theorem view of a symbolic space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolicRClassSummary {
    pub family: Family,
    pub quasisober: bool,
    /// `R(X)`; always `{∅}` for the two families.
    pub r: Vec<SymbolicSubset>,
    pub covers: bool,
    pub equal: bool,
    /// A compact saturated set outside `R(X)`.
    pub q_not_r: Option<SymbolicSubset>,
}

pub fn symbolic_rclass_summary(space: &SymbolicSpace) -> SymbolicRClassSummary {
    let r = vec![SymbolicSubset::empty()];
    let union = r.iter().fold(SymbolicSubset::empty(), |acc, a| acc.union(a));
    // ℕ is compact and saturated in both families
    let full = SymbolicSubset::naturals();
    let q_not_r = (space.is_compact(&full).as_bool() == Some(true)
        && space.saturation(&full) == full
        && !symbolic_rclass_membership(space, &full).member)
        .then_some(full);
    SymbolicRClassSummary {
        family: space.family(),
        quasisober: space.is_quasisober(),
        covers: union.is_full(),
        equal: q_not_r.is_none(),
        r,
        q_not_r,
    }
}

/// `j ↦ [start + j, ∞)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescendingChain {
    pub family: Family,
    pub start: u64,
    pub rule: String,
    pub monotonicity: String,
    pub symbolic_intersection: SymbolicSubset,
}

impl DescendingChain {
    pub fn member(&self, j: u64) -> SymbolicSubset {
        SymbolicSubset::up_from(self.start + j)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainRecord {
    pub checked_up_to: u64,
    pub members_nonempty: bool,
    pub members_compact_saturated: bool,
    pub monotone: bool,
    /// Every `x < checked_up_to` is missed by some member `Q_j`, `j ≤ checked_up_to`.
    pub prefix_intersection_empty: bool,
    /// `⋂ = ∅ ⊆ ∅` and `∅` is open, yet no member lies in `∅`.
    pub escape_fails: bool,
    /// The only chain in `R(X) = {∅}` is constantly `∅`; its escape holds.
    pub r_chain_escape_holds: bool,
    pub verified: bool,
}

/// A filtered family of nonempty compact saturated sets with empty
/// intersection, checked on `j ≤ j_max`.
pub fn counterexample_family(space: &SymbolicSpace, j_max: u64) -> (DescendingChain, ChainRecord) {
    let (start, rule) = match space.family() {
        Family::CofiniteNat => (1, "Q_j = ℕ ∖ [0,j] = [j+1,∞)"),
        Family::UpperNat => (0, "Q_j = [j,∞)"),
    };
    let chain = DescendingChain {
        family: space.family(),
        start,
        rule: rule.into(),
        monotonicity: "tail start grows with j, so Q_{j+1} ⊆ Q_j".into(),
        symbolic_intersection: SymbolicSubset::empty(),
    };
    let mut members_nonempty = true;
    let mut members_compact_saturated = true;
    let mut monotone = true;
    for j in 0..=j_max {
        let q = chain.member(j);
        members_nonempty &= !q.is_empty();
        members_compact_saturated &= space.is_compact(&q).as_bool() == Some(true) && space.saturation(&q) == q;
        monotone &= chain.member(j + 1).is_subset(&q);
    }
    let prefix_intersection_empty = (0..j_max).all(|x| (0..=j_max).any(|j| !chain.member(j).contains(x)));
    let empty_open = SymbolicSubset::empty();
    let escape_fails = space.is_open(&empty_open)
        && chain.symbolic_intersection.is_subset(&empty_open)
        && (0..=j_max).all(|j| !chain.member(j).is_subset(&empty_open));
    let r_chain_escape_holds = symbolic_rclass_membership(space, &SymbolicSubset::empty()).member
        && SymbolicSubset::empty().is_subset(&empty_open);
    let verified = members_nonempty
        && members_compact_saturated
        && monotone
        && prefix_intersection_empty
        && escape_fails
        && r_chain_escape_holds;
    let record = ChainRecord {
        checked_up_to: j_max,
        members_nonempty,
        members_compact_saturated,
        monotone,
        prefix_intersection_empty,
        escape_fails,
        r_chain_escape_holds,
        verified,
    };
    (chain, record)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> SymbolicSubset {
        t.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(s("{1,4,7}").to_string(), "{1,4,7}");
        assert_eq!(s("{0,2}∪[9,∞)").to_string(), "{0,2}∪[9,∞)");
        assert_eq!(s("{0,2}U[9,inf)"), s("{0,2}∪[9,∞)"));
        assert_eq!(s("[3,∞)").to_string(), "[3,∞)");
        assert_eq!(s("∅"), SymbolicSubset::empty());
        assert_eq!(s("N"), SymbolicSubset::naturals());
        assert_eq!(s("ℕ").to_string(), "ℕ");
        // tail absorbs adjacent finite points
        assert_eq!(s("{7,8}∪[9,∞)").to_string(), "[7,∞)");
        assert_eq!(s("{0,1,2}∪[3,inf)"), SymbolicSubset::naturals());
        assert_eq!(s("[2,5)"), s("{2,3,4}"));
        assert_eq!(s("{0,2}U[9,inf)").to_ascii(), "{0,2}U[9,inf)");
        for bad in ["evens", "{1,x}", "", "[3,", "{99999999999}"] {
            assert!(matches!(bad.parse::<SymbolicSubset>(), Err(SymbolicError::NotRepresentable(_))));
        }
    }

    #[test]
    fn algebra() {
        let a = s("{1,3}∪[10,∞)");
        assert_eq!(a.complement().to_string(), "{0,2,4,5,6,7,8,9}");
        assert_eq!(a.complement().complement(), a);
        assert_eq!(a.intersection(&s("[2,12)")).to_string(), "{3,10,11}");
        assert_eq!(a.union(&s("{2}")).to_string(), "{1,2,3}∪[10,∞)");
        assert!(s("[12,∞)").is_subset(&a));
        assert!(!a.is_subset(&s("[1,∞)").difference(&s("{2}")).difference(&s("{3}"))));
    }

    #[test]
    fn families() {
        let cof = make_symbolic_space("cofinite").unwrap();
        let up = make_symbolic_space("UPPER_NAT").unwrap();
        assert!(matches!(make_symbolic_space("UNKNOWN"), Err(SymbolicError::UnknownFamily(_))));

        assert!(cof.is_closed(&s("{1,2,3}")) && cof.is_closed(&s("ℕ")) && !cof.is_closed(&s("[4,∞)")));
        assert!(up.is_closed(&s("[0,4)")) && !up.is_closed(&s("{1,2}")) && up.is_closed(&s("∅")));
        assert!(up.is_open(&s("[4,∞)")) && !up.is_open(&s("{3}∪[5,∞)")));
    }

    #[test]
    fn query_examples() {
        let cof = SymbolicSpace::new(Family::CofiniteNat);
        let up = SymbolicSpace::new(Family::UpperNat);
        match cof.query(Predicate::IsIrreducibleClosed, &s("ℕ")).answer {
            Answer::Irreducible { irreducible, generic, .. } => {
                assert!(irreducible);
                assert_eq!(generic, None);
            }
            _ => panic!(),
        }
        assert!(!cof.is_quasisober() && !up.is_quasisober());
        assert_eq!(up.query(Predicate::Saturation, &s("{3}")).as_set(), Some(&s("[3,∞)")));
        assert_eq!(cof.query(Predicate::IsZeroClosed, &s("{0,2}∪[9,∞)")).as_bool(), Some(true));
        match cof.query(Predicate::IsIrreducibleClosed, &s("{2,5}")).answer {
            Answer::Irreducible { irreducible: false, reducing_pair: Some((f, g)), .. } => {
                assert_eq!((f.to_string(), g.to_string()), ("{2}".into(), "{5}".into()));
            }
            other => panic!("{other:?}"),
        }
        match up.query(Predicate::IsIrreducibleClosed, &s("[0,4)")).answer {
            Answer::Irreducible { irreducible: true, generic: Some(3), .. } => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn subcovers() {
        let cof = SymbolicSpace::new(Family::CofiniteNat);
        let cover = vec![s("[5,∞)"), s("ℕ").difference(&s("{7}")), s("[1,∞)")];
        let sub = cof.subcover(&s("ℕ"), &cover).unwrap();
        assert_eq!(sub.len(), 2);
        assert!(sub.iter().fold(SymbolicSubset::empty(), |acc, g| acc.union(g)).is_full());
        assert!(matches!(cof.subcover(&s("{0}"), &[s("[1,∞)")]), Err(SymbolicError::NotACover(0))));
        let up = SymbolicSpace::new(Family::UpperNat);
        assert!(matches!(up.subcover(&s("{0}"), &[s("{0}")]), Err(SymbolicError::CoverMemberNotOpen(_))));
    }

    #[test]
    fn rclass_membership_examples() {
        let cof = SymbolicSpace::new(Family::CofiniteNat);
        let up = SymbolicSpace::new(Family::UpperNat);
        assert!(symbolic_rclass_membership(&cof, &s("∅")).member);
        let m = symbolic_rclass_membership(&cof, &s("[5,∞)"));
        assert!(!m.member && m.reason.unwrap().contains("ω"));
        assert!(!symbolic_rclass_membership(&up, &s("[3,∞)")).member);
        for fam in [cof, up] {
            let sum = symbolic_rclass_summary(&fam);
            assert!(!sum.quasisober && !sum.covers && !sum.equal);
            assert_eq!(sum.r, vec![SymbolicSubset::empty()]);
        }
    }

    #[test]
    fn counterexamples() {
        for fam in [Family::CofiniteNat, Family::UpperNat] {
            let (chain, rec) = counterexample_family(&SymbolicSpace::new(fam), 200);
            assert!(rec.verified, "{rec:?}");
            assert!(chain.symbolic_intersection.is_empty());
        }
        let (chain, _) = counterexample_family(&SymbolicSpace::new(Family::CofiniteNat), 3);
        assert_eq!(chain.member(0), s("ℕ").difference(&s("{0}")));
        let (chain, _) = counterexample_family(&SymbolicSpace::new(Family::UpperNat), 3);
        assert_eq!(chain.member(4), s("[4,∞)"));
    }
}
