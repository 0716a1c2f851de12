//! Finite topological spaces and their point-set constructions.
//!
//! A [`Space`] stores its open sets explicitly, sorted canonically, so that
//! two spaces over the same point list are equal exactly when they carry the
//! same topology. Everything else (closed sets, point closures, the
//! specialization preorder) is derived from that family.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::subset::{Subset, MAX_POINTS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("duplicate point label `{0}`")]
    DuplicatePoint(String),
    #[error("open set mentions unknown point `{0}`")]
    UnknownPoint(String),
    #[error("{0} points exceed the supported maximum of {MAX_POINTS}")]
    TooManyPoints(usize),
    #[error("opens must contain both the empty set and the full set (missing {missing})")]
    MissingEmptyOrFull { missing: String },
    #[error("opens are not closed under union: {left} ∪ {right} = {result} is missing")]
    NotClosedUnderUnion { left: String, right: String, result: String },
    #[error("opens are not closed under intersection: {left} ∩ {right} = {result} is missing")]
    NotClosedUnderIntersection { left: String, right: String, result: String },
    #[error("cover does not contain point `{0}` of the subset")]
    NotACover(String),
    #[error("cover member {0} is not open")]
    CoverMemberNotOpen(String),
}

/// On-disk description of a finite space.
///
/// Opens are listed as arrays of point labels; [`validate_space`] turns this
/// into a canonical [`Space`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceFile {
    #[serde(default)]
    pub name: String,
    pub points: Vec<String>,
    pub opens: Vec<Vec<String>>,
}

/// A finite topological space.
#[derive(Clone, PartialEq, Eq)]
pub struct Space {
    name: String,
    points: Vec<String>,
    opens: Vec<Subset>,
    // derived
    closed: Vec<Subset>,
    point_closures: Vec<Subset>,
}

impl fmt::Debug for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opens: Vec<String> = self.opens.iter().map(|g| self.show(*g)).collect();
        f.debug_struct("Space").field("name", &self.name).field("points", &self.points).field("opens", &opens).finish()
    }
}

/// Checks a raw description and returns the canonical space.
pub fn validate_space(candidate: &SpaceFile) -> Result<Space, SpaceError> {
    let n = candidate.points.len();
    if n > MAX_POINTS {
        return Err(SpaceError::TooManyPoints(n));
    }
    let mut seen = HashSet::new();
    for p in &candidate.points {
        if !seen.insert(p.as_str()) {
            return Err(SpaceError::DuplicatePoint(p.clone()));
        }
    }
    let mut opens = Vec::with_capacity(candidate.opens.len());
    for labels in &candidate.opens {
        let mut g = Subset::empty(n);
        for l in labels {
            let i = candidate.points.iter().position(|p| p == l).ok_or_else(|| SpaceError::UnknownPoint(l.clone()))?;
            g.insert(i);
        }
        opens.push(g);
    }
    Space::new(candidate.name.clone(), candidate.points.clone(), opens)
}

impl Space {
    /// Builds a space from labels and a family of open sets, canonicalizing
    /// and validating the family.
    pub fn new(name: impl Into<String>, points: Vec<String>, opens: Vec<Subset>) -> Result<Space, SpaceError> {
        let n = points.len();
        if n > MAX_POINTS {
            return Err(SpaceError::TooManyPoints(n));
        }
        let mut seen = HashSet::new();
        for p in &points {
            if !seen.insert(p.as_str()) {
                return Err(SpaceError::DuplicatePoint(p.clone()));
            }
        }
        let mut opens = opens;
        assert!(opens.iter().all(|g| g.width() == n), "open set width mismatch");
        opens.sort_by(Subset::canonical_cmp);
        opens.dedup();

        let set: HashSet<Subset> = opens.iter().copied().collect();
        let show = |s: Subset| s.display_with(&points).to_string();
        let empty = Subset::empty(n);
        let full = Subset::full(n);
        match (set.contains(&empty), set.contains(&full)) {
            (true, true) => {}
            (false, true) => return Err(SpaceError::MissingEmptyOrFull { missing: "∅".into() }),
            (true, false) => return Err(SpaceError::MissingEmptyOrFull { missing: show(full) }),
            (false, false) => {
                return Err(SpaceError::MissingEmptyOrFull { missing: format!("∅ and {}", show(full)) })
            }
        }
        for (i, &a) in opens.iter().enumerate() {
            for &b in &opens[i + 1..] {
                let u = a.union(b);
                if !set.contains(&u) {
                    return Err(SpaceError::NotClosedUnderUnion { left: show(a), right: show(b), result: show(u) });
                }
                let m = a.intersection(b);
                if !set.contains(&m) {
                    return Err(SpaceError::NotClosedUnderIntersection {
                        left: show(a),
                        right: show(b),
                        result: show(m),
                    });
                }
            }
        }
        Ok(Space::assemble(name.into(), points, opens))
    }

    fn assemble(name: String, points: Vec<String>, opens: Vec<Subset>) -> Space {
        let n = points.len();
        let mut closed: Vec<Subset> = opens.iter().map(|g| g.complement()).collect();
        closed.sort_by(Subset::canonical_cmp);
        let full = Subset::full(n);
        let point_closures =
            (0..n).map(|x| closed.iter().filter(|f| f.contains(x)).fold(full, |acc, f| acc.intersection(*f))).collect();
        Space { name, points, opens, closed, point_closures }
    }

    /// Builds the Alexandrov space of a preorder: opens are the up-closed sets.
    pub fn from_preorder(name: impl Into<String>, points: Vec<String>, order: &Preorder) -> Space {
        assert_eq!(points.len(), order.len());
        let opens = order.up_sets();
        Space::new(name, points, opens).expect("up-sets of a preorder form a topology")
    }

    /// Points labelled `0..n`.
    pub fn numeric_labels(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Open sets in canonical order.
    pub fn opens(&self) -> &[Subset] {
        &self.opens
    }

    /// Closed sets in canonical order.
    pub fn closed_sets(&self) -> &[Subset] {
        &self.closed
    }

    pub fn empty_set(&self) -> Subset {
        Subset::empty(self.len())
    }

    pub fn full_set(&self) -> Subset {
        Subset::full(self.len())
    }

    pub fn point_index(&self, label: &str) -> Option<usize> {
        self.points.iter().position(|p| p == label)
    }

    /// Builds a subset from point labels.
    pub fn subset_of(&self, labels: &[&str]) -> Result<Subset, SpaceError> {
        let mut s = self.empty_set();
        for l in labels {
            let i = self.point_index(l).ok_or_else(|| SpaceError::UnknownPoint(l.to_string()))?;
            s.insert(i);
        }
        Ok(s)
    }

    pub fn show(&self, a: Subset) -> String {
        a.display_with(&self.points).to_string()
    }

    pub fn labels_of(&self, a: Subset) -> Vec<String> {
        a.iter().map(|i| self.points[i].clone()).collect()
    }

    pub fn is_open(&self, a: Subset) -> bool {
        self.fits(a);
        self.opens.binary_search_by(|g| g.canonical_cmp(&a)).is_ok()
    }

    pub fn is_closed(&self, a: Subset) -> bool {
        self.fits(a);
        self.closed.binary_search_by(|f| f.canonical_cmp(&a)).is_ok()
    }

    /// Index of an open set in [`Space::opens`].
    pub fn open_index(&self, a: Subset) -> Option<usize> {
        self.opens.binary_search_by(|g| g.canonical_cmp(&a)).ok()
    }

    pub fn closed_index(&self, a: Subset) -> Option<usize> {
        self.closed.binary_search_by(|f| f.canonical_cmp(&a)).ok()
    }

    fn fits(&self, a: Subset) {
        assert_eq!(a.width(), self.len(), "subset width does not match space `{}`", self.name);
    }

    /// Least closed superset: the intersection of all closed sets containing `a`.
    pub fn closure(&self, a: Subset) -> Subset {
        self.fits(a);
        self.closed.iter().filter(|f| a.is_subset(**f)).fold(self.full_set(), |acc, f| acc.intersection(*f))
    }

    /// Closure of a single point.
    pub fn point_closure(&self, x: usize) -> Subset {
        self.point_closures[x]
    }

    /// Least saturated superset: the intersection of all opens containing `a`.
    pub fn saturation(&self, a: Subset) -> Subset {
        self.fits(a);
        self.opens.iter().filter(|g| a.is_subset(**g)).fold(self.full_set(), |acc, g| acc.intersection(*g))
    }

    pub fn is_saturated(&self, a: Subset) -> bool {
        self.saturation(a) == a
    }

    /// `x ≤ y` iff `x ∈ cl{y}`.
    pub fn specialization_preorder(&self) -> Preorder {
        let n = self.len();
        let mut order = Preorder::discrete(n);
        for y in 0..n {
            for x in self.point_closures[y].iter() {
                order.set(x, y, true);
            }
        }
        order
    }

    /// Extracts a finite subcover of `cover` for `a`.
    ///
    /// Always succeeds when `cover` really covers `a`, since every subset of a
    /// finite space is compact. The subcover is chosen greedily, one member
    /// per uncovered point.
    pub fn is_compact(&self, a: Subset, cover: &[Subset]) -> Result<Vec<Subset>, SpaceError> {
        self.fits(a);
        for g in cover {
            if !self.is_open(*g) {
                return Err(SpaceError::CoverMemberNotOpen(self.show(*g)));
            }
        }
        let mut picked: Vec<Subset> = Vec::new();
        let mut covered = self.empty_set();
        for x in a.iter() {
            if covered.contains(x) {
                continue;
            }
            let g =
                cover.iter().find(|g| g.contains(x)).ok_or_else(|| SpaceError::NotACover(self.points[x].clone()))?;
            covered = covered.union(*g);
            picked.push(*g);
        }
        Ok(picked)
    }

    /// Two closed sets `F, F'` with `c ⊆ F ∪ F'` but `c ⊄ F` and `c ⊄ F'`.
    ///
    /// Only closed subsets of `c` need to be tried, since `F ∩ c` is closed
    /// whenever `c` and `F` are.
    pub fn reducibility_witness(&self, c: Subset) -> Option<(Subset, Subset)> {
        let inside: Vec<Subset> = self.closed.iter().copied().filter(|f| f.is_subset(c) && *f != c).collect();
        for (i, &f) in inside.iter().enumerate() {
            for &g in &inside[i..] {
                if c.is_subset(f.union(g)) {
                    return Some((f, g));
                }
            }
        }
        None
    }

    /// Irreducible: nonempty, and not covered by two closed sets without
    /// being inside one of them.
    pub fn is_irreducible(&self, c: Subset) -> bool {
        !c.is_empty() && self.reducibility_witness(c).is_none()
    }

    /// Every irreducible closed set, with its generic points.
    pub fn irreducible_closed_subsets(&self) -> Vec<IrreducibleClosed> {
        self.closed
            .iter()
            .filter(|c| self.is_irreducible(**c))
            .map(|&set| {
                let generic_points =
                    Subset::from_indices(self.len(), (0..self.len()).filter(|&x| self.point_closures[x] == set));
                IrreducibleClosed { set, generic_points }
            })
            .collect()
    }

    pub fn properties(&self) -> Properties {
        let t0 = self.specialization_preorder().is_antisymmetric();
        let quasisober = self.irreducible_closed_subsets().iter().all(|c| c.generic().is_some());
        Properties { t0, quasisober, sober: t0 && quasisober }
    }

    /// Adds every point sharing its closure with some member of `a`.
    pub fn zero_closure(&self, a: Subset) -> Subset {
        self.fits(a);
        let mut out = a;
        for x in 0..self.len() {
            if a.iter().any(|y| self.point_closures[y] == self.point_closures[x]) {
                out.insert(x);
            }
        }
        out
    }

    pub fn is_zero_closed(&self, a: Subset) -> bool {
        self.zero_closure(a) == a
    }

    /// Quotient by "same point closure", with the quotient topology.
    pub fn t0_quotient(&self) -> T0Quotient {
        let n = self.len();
        let mut projection = vec![usize::MAX; n];
        let mut classes: Vec<Subset> = Vec::new();
        for x in 0..n {
            if projection[x] != usize::MAX {
                continue;
            }
            let class = self.zero_closure(Subset::singleton(n, x));
            for y in class.iter() {
                projection[y] = classes.len();
            }
            classes.push(class);
        }
        let m = classes.len();
        let mut labels: Vec<String> = classes.iter().map(|c| format!("[{}]", self.labels_of(*c).join(","))).collect();
        dedupe_labels(&mut labels);
        // Open sets are unions of classes, so their images are exactly the
        // quotient opens.
        let opens = self.opens.iter().map(|g| Subset::from_indices(m, g.iter().map(|x| projection[x]))).collect();
        let quotient = Space::new(format!("{}/~", self.name), labels, opens)
            .expect("image of a topology under the T0 projection is a topology");
        T0Quotient { quotient, projection, classes }
    }

    /// Relative topology on the points of `a`.
    pub fn subspace(&self, a: Subset) -> Space {
        self.fits(a);
        let idx: Vec<usize> = a.iter().collect();
        let m = idx.len();
        let restrict =
            |g: Subset| Subset::from_indices(m, idx.iter().enumerate().filter(|(_, &x)| g.contains(x)).map(|(k, _)| k));
        let opens = self.opens.iter().map(|g| restrict(*g)).collect();
        let points = idx.iter().map(|&x| self.points[x].clone()).collect();
        Space::new(format!("{}|{}", self.name, self.show(a)), points, opens).expect("relative topology is a topology")
    }

    pub fn to_file(&self) -> SpaceFile {
        SpaceFile {
            name: self.name.clone(),
            points: self.points.clone(),
            opens: self.opens.iter().map(|g| self.labels_of(*g)).collect(),
        }
    }

    /// Hex SHA-256 of the canonical JSON form.
    pub fn digest(&self) -> String {
        let json = serde_json::to_vec(&self.to_file()).expect("space serializes");
        hex::encode(Sha256::digest(json))
    }
}

pub(crate) fn dedupe_labels(labels: &mut [String]) {
    let mut seen = HashSet::new();
    for l in labels.iter_mut() {
        while !seen.insert(l.clone()) {
            l.push('\'');
        }
    }
}

/// An irreducible closed set together with the points whose closure it is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IrreducibleClosed {
    pub set: Subset,
    pub generic_points: Subset,
}

impl IrreducibleClosed {
    /// The first generic point, if any.
    pub fn generic(&self) -> Option<usize> {
        self.generic_points.iter().next()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Properties {
    pub t0: bool,
    pub quasisober: bool,
    pub sober: bool,
}

/// The quotient `X0` and projection `π0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct T0Quotient {
    pub quotient: Space,
    /// `projection[x]` is the quotient point of `x`.
    pub projection: Vec<usize>,
    /// Equivalence classes, indexed like the quotient points.
    pub classes: Vec<Subset>,
}

impl T0Quotient {
    pub fn preimage(&self, b: Subset) -> Subset {
        Subset::from_indices(
            self.projection.len(),
            (0..self.projection.len()).filter(|&x| b.contains(self.projection[x])),
        )
    }

    pub fn is_bijective(&self) -> bool {
        self.quotient.len() == self.projection.len()
    }
}

/// A reflexive, transitive relation on `0..n` stored as a dense matrix.
///
/// Entry `(x, y)` set means `x ≤ y`, i.e. `x ∈ cl{y}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Preorder {
    n: usize,
    rel: Vec<bool>,
}

impl Preorder {
    /// The identity relation.
    pub fn discrete(n: usize) -> Self {
        let mut rel = vec![false; n * n];
        for i in 0..n {
            rel[i * n + i] = true;
        }
        Preorder { n, rel }
    }

    /// Wraps a raw matrix; returns `None` unless it is reflexive and transitive.
    pub fn from_matrix(n: usize, rel: Vec<bool>) -> Option<Self> {
        let p = Preorder { n, rel };
        (p.rel.len() == n * n && p.is_reflexive() && p.is_transitive()).then_some(p)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.rel[x * self.n + y]
    }

    pub(crate) fn set(&mut self, x: usize, y: usize, v: bool) {
        self.rel[x * self.n + y] = v;
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|x| self.leq(x, x))
    }

    pub fn is_transitive(&self) -> bool {
        let n = self.n;
        (0..n).all(|x| (0..n).all(|y| !self.leq(x, y) || (0..n).all(|z| !self.leq(y, z) || self.leq(x, z))))
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.n;
        (0..n).all(|x| (0..n).all(|y| x == y || !(self.leq(x, y) && self.leq(y, x))))
    }

    pub fn up_closure(&self, a: Subset) -> Subset {
        Subset::from_indices(self.n, (0..self.n).filter(|&y| a.iter().any(|x| self.leq(x, y))))
    }

    pub fn down_closure(&self, a: Subset) -> Subset {
        Subset::from_indices(self.n, (0..self.n).filter(|&x| a.iter().any(|y| self.leq(x, y))))
    }

    /// All up-closed subsets, found by closing every union of principal
    /// up-sets. Output is canonical.
    pub fn up_sets(&self) -> Vec<Subset> {
        let n = self.n;
        let principal: Vec<Subset> = (0..n).map(|x| self.up_closure(Subset::singleton(n, x))).collect();
        let mut found: HashSet<Subset> = HashSet::new();
        let mut stack = vec![Subset::empty(n)];
        found.insert(Subset::empty(n));
        while let Some(u) = stack.pop() {
            for p in &principal {
                let v = u.union(*p);
                if found.insert(v) {
                    stack.push(v);
                }
            }
        }
        let mut out: Vec<Subset> = found.into_iter().collect();
        out.sort_by(Subset::canonical_cmp);
        out
    }
}

/// Convenience constructors for the small named spaces used throughout the
/// tests and docs.
pub mod named {
    use super::*;

    fn build(name: &str, points: &[&str], opens: &[&[&str]]) -> Space {
        let file = SpaceFile {
            name: name.into(),
            points: points.iter().map(|s| s.to_string()).collect(),
            opens: opens.iter().map(|g| g.iter().map(|s| s.to_string()).collect()).collect(),
        };
        validate_space(&file).expect("named space is valid")
    }

    /// Sierpiński space: points `0, 1`, opens `∅, {1}, {0,1}`.
    pub fn sierpinski() -> Space {
        build("sierpinski", &["0", "1"], &[&[], &["1"], &["0", "1"]])
    }

    /// Two-point indiscrete space.
    pub fn indiscrete2() -> Space {
        build("indiscrete2", &["a", "b"], &[&[], &["a", "b"]])
    }

    pub fn discrete2() -> Space {
        build("discrete2", &["a", "b"], &[&[], &["a"], &["b"], &["a", "b"]])
    }

    pub fn point() -> Space {
        build("point", &["*"], &[&[], &["*"]])
    }

    pub fn empty() -> Space {
        build("empty", &[], &[&[]])
    }
}
