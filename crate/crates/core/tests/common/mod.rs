//! Independent oracles shared by the integration tests.
//!
//! Nothing here goes through the library's enumeration, closure or symbolic
//! code paths; each oracle works from the raw definitions.

#![allow(dead_code)]

use std::collections::BTreeSet;

use soberlab::symbolic::{Family, SobPoint, SymbolicSpace, SymbolicSubset};

/// Every topology on `n` points found by brute force over all families of
/// subsets containing `∅` and `X`, as sorted lists of bitmasks.
pub fn topologies_by_family_search(n: usize) -> BTreeSet<Vec<u64>> {
    let full = (1u64 << n) - 1;
    let middle: Vec<u64> = (1..full).collect();
    let mut out = BTreeSet::new();
    for pick in 0u64..1 << middle.len() {
        let mut fam: Vec<u64> = vec![0, full];
        if n == 0 {
            fam = vec![0];
        }
        fam.extend(middle.iter().enumerate().filter(|(k, _)| pick >> k & 1 == 1).map(|(_, &m)| m));
        let set: BTreeSet<u64> = fam.iter().copied().collect();
        let closed = fam.iter().all(|&a| fam.iter().all(|&b| set.contains(&(a | b)) && set.contains(&(a & b))));
        if closed {
            out.insert(set.into_iter().collect());
        }
    }
    out
}

/// All nonempty up-closed, meet-closed subsets of a lattice of sets, by brute
/// force over every subset of elements.
pub fn filters_by_brute_force(elements: &[u64]) -> Vec<Vec<bool>> {
    let m = elements.len();
    assert!(m <= 20);
    let mut out = Vec::new();
    for pick in 1u64..1 << m {
        let has = |i: usize| pick >> i & 1 == 1;
        let idx = |v: u64| elements.iter().position(|&e| e == v);
        let ok = (0..m).filter(|&i| has(i)).all(|i| {
            (0..m).all(|j| {
                let up = elements[i] & !elements[j] != 0 || has(j);
                let meet = !has(j) || idx(elements[i] & elements[j]).is_some_and(has);
                up && meet
            })
        });
        if ok {
            out.push((0..m).map(has).collect());
        }
    }
    out
}

/// `x ∈ cl(A)` iff every open set containing `x` meets `A`.
pub fn closure_by_neighbourhoods(n: usize, opens: &[u64], a: u64) -> u64 {
    (0..n).filter(|&x| opens.iter().filter(|&&g| g >> x & 1 == 1).all(|&g| g & a != 0)).fold(0, |acc, x| acc | 1 << x)
}

/// Finite stand-in for a symbolic family: points `0..k` plus a point `k`
/// standing for the whole tail `[k,∞)`.
///
/// A set of these points is open when its preimage in `ℕ` is open under the
/// family's definition. Sets are plain `Vec<bool>` of length `k + 1`.
pub struct Truncation {
    pub family: Family,
    pub k: usize,
    /// Smallest open neighbourhood of each point.
    pub nbhd: Vec<Vec<bool>>,
}

impl Truncation {
    pub fn new(family: Family, k: usize) -> Self {
        let mut t = Truncation { family, k, nbhd: Vec::new() };
        // candidate opens: full, and every set missing exactly one real point,
        // and every up-segment; keep those open by definition
        let mut candidates: Vec<Vec<bool>> = vec![vec![true; k + 1]];
        for y in 0..=k {
            if y < k {
                let mut v = vec![true; k + 1];
                v[y] = false;
                candidates.push(v);
            }
            candidates.push((0..=k).map(|x| x >= y).collect());
        }
        candidates.retain(|c| t.is_open(c));
        t.nbhd = (0..=k)
            .map(|x| {
                let mut u = vec![true; k + 1];
                for c in candidates.iter().filter(|c| c[x]) {
                    for i in 0..=k {
                        u[i] &= c[i];
                    }
                }
                u
            })
            .collect();
        for u in &t.nbhd {
            assert!(t.is_open(u), "minimal neighbourhood must be open");
        }
        t
    }

    /// Openness straight from the family definition, applied to the preimage
    /// `finite part ∪ ([k,∞) if the tail point is in)`.
    pub fn is_open(&self, s: &[bool]) -> bool {
        let k = self.k;
        let empty = s.iter().all(|b| !b);
        match self.family {
            // cofinite preimage: contains the tail
            Family::CofiniteNat => empty || s[k],
            // up-segment preimage: tail in, and no gap after the first point
            Family::UpperNat => {
                empty || {
                    let first = s.iter().position(|&b| b).unwrap();
                    s[first..].iter().all(|&b| b)
                }
            }
        }
    }

    pub fn is_closed(&self, s: &[bool]) -> bool {
        let c: Vec<bool> = s.iter().map(|b| !b).collect();
        self.is_open(&c)
    }

    pub fn closure(&self, s: &[bool]) -> Vec<bool> {
        (0..=self.k).map(|x| (0..=self.k).any(|y| self.nbhd[x][y] && s[y])).collect()
    }

    pub fn saturation(&self, s: &[bool]) -> Vec<bool> {
        (0..=self.k).map(|y| (0..=self.k).any(|x| s[x] && self.nbhd[x][y])).collect()
    }

    /// Saturation restricted to the real points `0..k`. Opens of `ℕ` that
    /// split the tail are invisible here, so only these points are reliable.
    pub fn saturation_below(&self, s: &[bool]) -> Vec<bool> {
        self.saturation(s)[..self.k].to_vec()
    }

    /// The real-point part of a symbolic set.
    pub fn below(&self, a: &SymbolicSubset) -> Vec<bool> {
        (0..self.k as u64).map(|x| a.contains(x)).collect()
    }

    pub fn point_closure(&self, x: usize) -> Vec<bool> {
        let mut s = vec![false; self.k + 1];
        s[x] = true;
        self.closure(&s)
    }

    pub fn zero_closure(&self, s: &[bool]) -> Vec<bool> {
        let cl: Vec<Vec<bool>> = (0..=self.k).map(|x| self.point_closure(x)).collect();
        (0..=self.k).map(|x| s[x] || (0..=self.k).any(|y| s[y] && cl[y] == cl[x])).collect()
    }

    /// Image of a symbolic set whose finite part lies below `k` and whose tail
    /// (if any) starts at or below `k`.
    pub fn project(&self, a: &SymbolicSubset) -> Option<Vec<bool>> {
        if a.finite_part().iter().any(|&x| x as usize >= self.k) || a.tail().is_some_and(|t| t as usize > self.k) {
            return None;
        }
        Some((0..=self.k as u64).map(|x| a.contains(x)).collect())
    }
}

/// Deterministic sample of symbolic sets that project onto a truncation.
pub fn sample_sets(k: u64, count: usize, seed: u64) -> Vec<SymbolicSubset> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![
        SymbolicSubset::empty(),
        SymbolicSubset::naturals(),
        SymbolicSubset::finite([0]),
        SymbolicSubset::up_from(k.saturating_sub(1)),
        SymbolicSubset::below(k.min(3)),
    ];
    while out.len() < count {
        let size = rng.gen_range(0..=k.min(6));
        let finite: Vec<u64> = (0..size).map(|_| rng.gen_range(0..k)).collect();
        let tail = rng.gen_bool(0.5).then(|| rng.gen_range(0..=k));
        let set = SymbolicSubset::finite(finite);
        out.push(match tail {
            Some(t) => set.union(&SymbolicSubset::up_from(t)),
            None => set,
        });
    }
    out
}

/// Opens of `X` that matter below `k`, listed from the family definition.
pub fn window_opens(family: Family, k: u64) -> Vec<SymbolicSubset> {
    let mut v = vec![SymbolicSubset::empty(), SymbolicSubset::naturals()];
    for n in 0..=k {
        v.push(SymbolicSubset::up_from(n));
        if family == Family::CofiniteNat && n < k {
            v.push(SymbolicSubset::finite([n]).complement());
        }
    }
    v
}

/// `ξ(A)` is saturated in `S` when every point of `S` outside it (checked for
/// `ω` and the points below `k`) is avoided by some `σ(G) ⊇ ξ(A)`. Membership
/// in `σ(G)` is read off the prime definition.
pub fn image_saturated_below(space: &SymbolicSpace, a: &SymbolicSubset, k: u64) -> bool {
    let opens = window_opens(space.family(), k);
    (0..k)
        .filter(|&x| !a.contains(x))
        .map(SobPoint::Point)
        .chain([SobPoint::Omega])
        .all(|p| opens.iter().any(|g| a.is_subset(g) && !space.sigma_contains(g, p)))
}
