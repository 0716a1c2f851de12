//! Exhaustive enumeration of labelled finite topologies and batch execution
//! of every property suite over them.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frame::open_lattice;
use crate::rclass::{
    filtered_family_check_with, hofmann_mislove_check, random_filtered_family, rclass_analyze_with, MemberClass,
};
use crate::sobrification::{sobrify, verify_sobrification};
use crate::space::{validate_space, Preorder, Space};
use crate::subset::Subset;

pub const DEFAULT_CEILING: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("{n} points exceed the census ceiling of {ceiling}")]
    CeilingExceeded { n: usize, ceiling: usize },
    #[error("could not build a worker pool: {0}")]
    Pool(String),
}

/// All preorders on `0..n`, by backtracking over the off-diagonal entries
/// with a transitivity check after each assignment.
pub fn enumerate_preorders(n: usize) -> Vec<Preorder> {
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    // None = undecided
    let mut rel: Vec<Option<bool>> = vec![None; n * n];
    for i in 0..n {
        rel[i * n + i] = Some(true);
    }
    let mut out = Vec::new();
    backtrack(n, &pairs, 0, &mut rel, &mut out);
    out
}

fn backtrack(n: usize, pairs: &[(usize, usize)], k: usize, rel: &mut [Option<bool>], out: &mut Vec<Preorder>) {
    if k == pairs.len() {
        let m = rel.iter().map(|v| v.expect("all decided")).collect();
        out.push(Preorder::from_matrix(n, m).expect("pruning keeps transitivity"));
        return;
    }
    let (i, j) = pairs[k];
    for v in [false, true] {
        rel[i * n + j] = Some(v);
        if consistent_around(n, rel, i, j) {
            backtrack(n, pairs, k + 1, rel, out);
        }
    }
    rel[i * n + j] = None;
}

/// No decided triple through the pair `(i, j)` breaks transitivity.
fn consistent_around(n: usize, rel: &[Option<bool>], i: usize, j: usize) -> bool {
    let get = |a: usize, b: usize| rel[a * n + b];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let touches = (a == i && b == j) || (b == i && c == j) || (a == i && c == j);
                if touches && get(a, b) == Some(true) && get(b, c) == Some(true) && get(a, c) == Some(false) {
                    return false;
                }
            }
        }
    }
    true
}

/// Every topology on `n` labelled points, each exactly once.
pub fn enumerate_topologies(n: usize) -> Result<impl Iterator<Item = Space>, CensusError> {
    enumerate_topologies_with_ceiling(n, DEFAULT_CEILING)
}

pub fn enumerate_topologies_with_ceiling(n: usize, ceiling: usize) -> Result<impl Iterator<Item = Space>, CensusError> {
    if n > ceiling {
        return Err(CensusError::CeilingExceeded { n, ceiling });
    }
    Ok(enumerate_preorders(n)
        .into_iter()
        .enumerate()
        .map(move |(k, p)| Space::from_preorder(format!("T{n}_{k}"), Space::numeric_labels(n), &p)))
}

/// Random preorder on `n` points: a random relation closed reflexively and
/// transitively.
pub fn random_preorder<R: Rng>(n: usize, density: f64, rng: &mut R) -> Preorder {
    let mut rel = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            rel[i * n + j] = i == j || rng.gen_bool(density);
        }
    }
    // Warshall
    for k in 0..n {
        for i in 0..n {
            if rel[i * n + k] {
                for j in 0..n {
                    if rel[k * n + j] {
                        rel[i * n + j] = true;
                    }
                }
            }
        }
    }
    Preorder::from_matrix(n, rel).expect("transitive closure of a reflexive relation")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Validate,
    Sobrification,
    RClass,
    Filtered,
    HofmannMislove,
    Lemma,
    ClosureLaws,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Validate,
        Suite::Sobrification,
        Suite::RClass,
        Suite::Filtered,
        Suite::HofmannMislove,
        Suite::Lemma,
        Suite::ClosureLaws,
    ];
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusConfig {
    pub suites: Vec<Suite>,
    pub seed: u64,
    /// Random filtered families drawn per space, for each class.
    pub families_per_space: usize,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    pub ceiling: usize,
}

impl Default for CensusConfig {
    fn default() -> Self {
        CensusConfig {
            suites: Suite::ALL.to_vec(),
            seed: 0x5eed,
            families_per_space: 8,
            jobs: None,
            ceiling: DEFAULT_CEILING,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// Canonical JSON of the offending space.
    pub space: String,
    pub digest: String,
    pub suite: Suite,
    pub witness: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub t0: usize,
    pub quasisober: usize,
    pub sober: usize,
    pub filtered_families: usize,
    pub saturated_subspaces: usize,
}

impl Tally {
    fn merge(mut self, o: Tally) -> Tally {
        self.t0 += o.t0;
        self.quasisober += o.quasisober;
        self.sober += o.sober;
        self.filtered_families += o.filtered_families;
        self.saturated_subspaces += o.saturated_subspaces;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub n: usize,
    pub topology_count: usize,
    pub suites: Vec<Suite>,
    pub seed: u64,
    pub tally: Tally,
    pub violations: Vec<Violation>,
    pub elapsed_ms: u128,
}

impl CensusReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn run_census_suite(n: usize, config: &CensusConfig) -> Result<CensusReport, CensusError> {
    let start = Instant::now();
    let spaces: Vec<Space> = enumerate_topologies_with_ceiling(n, config.ceiling)?.collect();
    let work = || {
        spaces.par_iter().enumerate().map(|(k, space)| check_space(space, k as u64, config)).reduce(
            || (Tally::default(), Vec::new()),
            |(ta, mut va), (tb, vb)| {
                va.extend(vb);
                (ta.merge(tb), va)
            },
        )
    };
    let (tally, mut violations) = match config.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| CensusError::Pool(e.to_string()))?
            .install(work),
        None => work(),
    };
    violations.sort_by(|a, b| (&a.digest, a.suite as u8, &a.witness).cmp(&(&b.digest, b.suite as u8, &b.witness)));
    Ok(CensusReport {
        n,
        topology_count: spaces.len(),
        suites: config.suites.clone(),
        seed: config.seed,
        tally,
        violations,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// Runs the selected suites on one space.
pub fn check_space(space: &Space, index: u64, config: &CensusConfig) -> (Tally, Vec<Violation>) {
    let mut out = Vec::new();
    let mut tally = Tally::default();
    let mut flag = |suite: Suite, witness: String| {
        out.push(Violation {
            space: serde_json::to_string(&space.to_file()).expect("space serializes"),
            digest: space.digest(),
            suite,
            witness,
        })
    };
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ index.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let props = space.properties();
    tally.t0 += props.t0 as usize;
    tally.quasisober += props.quasisober as usize;
    tally.sober += props.sober as usize;
    let sob = sobrify(space);
    let rc = rclass_analyze_with(space, &sob);

    for suite in &config.suites {
        match suite {
            Suite::Validate => match validate_space(&space.to_file()) {
                Ok(back) if back == *space => {}
                Ok(_) => flag(Suite::Validate, "re-validation changed the space".into()),
                Err(e) => flag(Suite::Validate, e.to_string()),
            },
            Suite::Sobrification => match verify_sobrification(space, &sob) {
                Ok(rep) => {
                    for c in rep.clauses.iter().filter(|c| !c.pass) {
                        flag(
                            Suite::Sobrification,
                            format!("clause {}: {}", c.clause, c.witness.clone().unwrap_or_default()),
                        );
                    }
                    if !rep.s_sober {
                        flag(Suite::Sobrification, "S is not sober".into());
                    }
                    let again = sobrify(&sob.s);
                    if !(again.is_injective() && again.is_surjective()) {
                        flag(Suite::Sobrification, "sobrification of S is not a bijection".into());
                    }
                }
                Err(e) => flag(Suite::Sobrification, e.to_string()),
            },
            Suite::RClass => {
                if !rc.r_within_q() {
                    flag(Suite::RClass, "R(X) ⊄ Q(X)".into());
                }
                if !rc.equivalence_holds() {
                    flag(
                        Suite::RClass,
                        format!("quasisober={} covers={} equal={}", rc.quasisober, rc.covers, rc.equal),
                    );
                }
                if let Some((a, b)) = rc.union_violation() {
                    flag(Suite::RClass, format!("{} ∪ {} ∉ R(X)", space.show(a), space.show(b)));
                }
                if !props.quasisober {
                    flag(Suite::RClass, "finite space reported non-quasisober".into());
                }
                if rc.r != space.opens() || rc.q != space.opens() {
                    flag(Suite::RClass, "R(X) = Q(X) = O(X) fails".into());
                }
                // spot-check compactness with random covers
                for _ in 0..4 {
                    let a = Subset::from_bits(space.len(), rng.gen());
                    let mut cover: Vec<Subset> = space.opens().iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
                    cover.push(space.saturation(a));
                    if let Err(e) = space.is_compact(a, &cover) {
                        flag(Suite::RClass, format!("compactness of {}: {e}", space.show(a)));
                    }
                }
            }
            Suite::Filtered => {
                for class in [MemberClass::R, MemberClass::Q] {
                    let pool = match class {
                        MemberClass::R => &rc.r,
                        MemberClass::Q => &rc.q,
                    };
                    if class == MemberClass::Q && !props.sober {
                        continue;
                    }
                    for _ in 0..config.families_per_space {
                        let fam = random_filtered_family(pool, &mut rng);
                        tally.filtered_families += 1;
                        let inter = fam.intersection();
                        let mut opens: Vec<Option<Subset>> =
                            space.opens().iter().filter(|g| inter.is_subset(**g)).map(|g| Some(*g)).collect();
                        opens.push(None);
                        for g in opens {
                            match filtered_family_check_with(space, &rc, &fam, class, g) {
                                Ok(rep) if rep.pass => {}
                                Ok(rep) => {
                                    flag(Suite::Filtered, format!("{class:?} family {:?}: {rep:?}", fam.members()))
                                }
                                Err(e) => flag(Suite::Filtered, e.to_string()),
                            }
                        }
                    }
                }
            }
            Suite::HofmannMislove => {
                let hm = hofmann_mislove_check(space);
                if !hm.pass {
                    flag(Suite::HofmannMislove, format!("{hm:?}"));
                }
                let lat = open_lattice(space);
                if lat.distributivity_violation().is_some() || lat.law_violation().is_some() {
                    flag(Suite::HofmannMislove, "O(X) is not a distributive lattice".into());
                }
                let primes: Vec<Subset> = lat.prime_elements().iter().map(|&p| lat.element(p)).collect();
                let mut expected: Vec<Subset> =
                    space.irreducible_closed_subsets().iter().map(|c| c.set.complement()).collect();
                expected.sort_by(Subset::canonical_cmp);
                if primes != expected {
                    flag(Suite::HofmannMislove, "primes of O(X) ≠ complements of irreducible closed sets".into());
                }
            }
            Suite::Lemma => {
                for a in Subset::all(space.len()).filter(|a| space.is_saturated(*a)) {
                    tally.saturated_subspaces += 1;
                    if !space.subspace(a).properties().quasisober {
                        flag(Suite::Lemma, format!("subspace on {} is not quasisober", space.show(a)));
                    }
                }
            }
            Suite::ClosureLaws => {
                if let Some(w) = closure_law_violation(space, Subset::all(space.len())) {
                    flag(Suite::ClosureLaws, w);
                }
            }
        }
    }
    (tally, out)
}

/// Checks extensive, monotone and idempotent laws of closure, saturation and
/// 0-closure over the given subsets (pairs for monotonicity), plus the fixed
/// points of 0-closure and openness of saturations.
pub fn closure_law_violation(space: &Space, subsets: impl Iterator<Item = Subset>) -> Option<String> {
    let subsets: Vec<Subset> = subsets.collect();
    let ops: [(&str, &dyn Fn(Subset) -> Subset); 3] = [
        ("closure", &|a| space.closure(a)),
        ("saturation", &|a| space.saturation(a)),
        ("zero_closure", &|a| space.zero_closure(a)),
    ];
    for (name, op) in ops {
        let images: Vec<Subset> = subsets.iter().map(|a| op(*a)).collect();
        for (a, ia) in subsets.iter().zip(&images) {
            if !a.is_subset(*ia) {
                return Some(format!("{name} not extensive at {}", space.show(*a)));
            }
            if op(*ia) != *ia {
                return Some(format!("{name} not idempotent at {}", space.show(*a)));
            }
        }
        for (i, a) in subsets.iter().enumerate() {
            for (j, b) in subsets.iter().enumerate() {
                if a.is_subset(*b) && !images[i].is_subset(images[j]) {
                    return Some(format!("{name} not monotone at {} ⊆ {}", space.show(*a), space.show(*b)));
                }
            }
        }
    }
    for a in &subsets {
        if !space.is_open(space.saturation(*a)) {
            return Some(format!("saturation of {} is not open", space.show(*a)));
        }
        if !space.is_closed(space.closure(*a)) {
            return Some(format!("closure of {} is not closed", space.show(*a)));
        }
    }
    for f in space.closed_sets().iter().chain(space.opens()) {
        if !space.is_zero_closed(*f) {
            return Some(format!("{} is closed or saturated but not 0-closed", space.show(*f)));
        }
    }
    None
}
