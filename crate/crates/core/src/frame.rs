//! Finite lattices of sets: `O(X)`, `F(X)`, their primes and filters.

use serde::{Deserialize, Serialize};

use crate::space::Space;
use crate::subset::Subset;

/// A finite bounded lattice whose elements are subsets of a fixed point set,
/// ordered by inclusion.
///
/// Meet and join tables are precomputed; for a family closed under union and
/// intersection they coincide with `∩` and `∪`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    elements: Vec<Subset>,
    leq: Vec<bool>,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl Lattice {
    /// Lattice of a family closed under binary union and intersection.
    ///
    /// Returns `None` if the family is empty or not closed.
    pub fn of_family(elements: Vec<Subset>) -> Option<Lattice> {
        let m = elements.len();
        if m == 0 {
            return None;
        }
        let index = |s: Subset| elements.iter().position(|e| *e == s);
        let mut leq = vec![false; m * m];
        let mut meet = vec![0; m * m];
        let mut join = vec![0; m * m];
        for i in 0..m {
            for j in 0..m {
                leq[i * m + j] = elements[i].is_subset(elements[j]);
                meet[i * m + j] = index(elements[i].intersection(elements[j]))?;
                join[i * m + j] = index(elements[i].union(elements[j]))?;
            }
        }
        let bottom = (0..m).find(|&i| (0..m).all(|j| leq[i * m + j]))?;
        let top = (0..m).find(|&i| (0..m).all(|j| leq[j * m + i]))?;
        Some(Lattice { elements, leq, meet, join, bottom, top })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Subset] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> Subset {
        self.elements[i]
    }

    pub fn index_of(&self, s: Subset) -> Option<usize> {
        self.elements.iter().position(|e| *e == s)
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// First violated lattice law, if any.
    pub fn law_violation(&self) -> Option<String> {
        let m = self.len();
        for a in 0..m {
            if !self.leq(self.bottom, a) || !self.leq(a, self.top) {
                return Some(format!("bounds fail at element {a}"));
            }
            if self.meet(a, a) != a || self.join(a, a) != a {
                return Some(format!("idempotence fails at {a}"));
            }
            for b in 0..m {
                if self.leq(a, b) && self.leq(b, a) && a != b {
                    return Some(format!("antisymmetry fails at ({a}, {b})"));
                }
                if self.meet(a, b) != self.meet(b, a) || self.join(a, b) != self.join(b, a) {
                    return Some(format!("commutativity fails at ({a}, {b})"));
                }
                if self.meet(a, self.join(a, b)) != a || self.join(a, self.meet(a, b)) != a {
                    return Some(format!("absorption fails at ({a}, {b})"));
                }
                if self.leq(a, b) != (self.meet(a, b) == a) {
                    return Some(format!("order and meet disagree at ({a}, {b})"));
                }
                for c in 0..m {
                    if self.meet(self.meet(a, b), c) != self.meet(a, self.meet(b, c))
                        || self.join(self.join(a, b), c) != self.join(a, self.join(b, c))
                    {
                        return Some(format!("associativity fails at ({a}, {b}, {c})"));
                    }
                    if self.leq(a, b) && self.leq(b, c) && !self.leq(a, c) {
                        return Some(format!("transitivity fails at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        None
    }

    /// A triple breaking `a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c)`, if any.
    pub fn distributivity_violation(&self) -> Option<(usize, usize, usize)> {
        let m = self.len();
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    if self.meet(a, self.join(b, c)) != self.join(self.meet(a, b), self.meet(a, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// Covering pairs `(lower, upper)` of the Hasse diagram.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let m = self.len();
        let mut edges = Vec::new();
        for a in 0..m {
            for b in 0..m {
                if a != b && self.leq(a, b) && !(0..m).any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b)) {
                    edges.push((a, b));
                }
            }
        }
        edges
    }

    /// `P ≠ top` with `u ∧ v ≤ P ⇒ u ≤ P or v ≤ P`.
    pub fn is_prime(&self, p: usize) -> bool {
        if p == self.top {
            return false;
        }
        let m = self.len();
        (0..m).all(|u| (0..m).all(|v| !self.leq(self.meet(u, v), p) || self.leq(u, p) || self.leq(v, p)))
    }

    /// Prime elements in index order.
    pub fn prime_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&p| self.is_prime(p)).collect()
    }

    /// `↑a`.
    pub fn principal_filter(&self, a: usize) -> Filter {
        Filter { members: (0..self.len()).map(|b| self.leq(a, b)).collect() }
    }

    /// Every filter of the lattice, in the order of their least elements.
    ///
    /// Each filter of a finite lattice contains the meet of all its members,
    /// so it is the principal filter of that meet; and any directed family has
    /// its supremum as a member, so every filter is Scott-open.
    pub fn scott_open_filters(&self) -> Vec<Filter> {
        (0..self.len()).map(|a| self.principal_filter(a)).collect()
    }

    /// Nonempty, up-closed and meet-closed.
    pub fn is_filter(&self, f: &Filter) -> bool {
        let m = self.len();
        if f.members.len() != m || !f.members.iter().any(|&b| b) {
            return false;
        }
        for a in 0..m {
            if !f.members[a] {
                continue;
            }
            for b in 0..m {
                if self.leq(a, b) && !f.members[b] {
                    return false;
                }
                if f.members[b] && !f.members[self.meet(a, b)] {
                    return false;
                }
            }
        }
        true
    }
}

/// Membership flags over the elements of a [`Lattice`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Filter {
    pub members: Vec<bool>,
}

impl Filter {
    pub fn contains(&self, i: usize) -> bool {
        self.members[i]
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }
}

/// `O(X)` ordered by inclusion, elements in the space's canonical open order.
pub fn open_lattice(space: &Space) -> Lattice {
    Lattice::of_family(space.opens().to_vec()).expect("opens of a space form a lattice")
}

/// `F(X)` ordered by inclusion, elements in the space's canonical closed order.
pub fn closed_lattice(space: &Space) -> Lattice {
    Lattice::of_family(space.closed_sets().to_vec()).expect("closed sets of a space form a lattice")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::named::*;

    #[test]
    fn open_lattice_examples() {
        let s = sierpinski();
        let l = open_lattice(&s);
        assert_eq!(l.len(), 3);
        assert_eq!(l.hasse_edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(l.element(1), s.subset_of(&["1"]).unwrap());
        assert_eq!(open_lattice(&indiscrete2()).len(), 2);
        let d = open_lattice(&discrete2());
        assert_eq!(d.len(), 4);
        assert_eq!(d.hasse_edges().len(), 4);
        for l in [l, d] {
            assert!(l.law_violation().is_none());
            assert!(l.distributivity_violation().is_none());
        }
    }

    #[test]
    fn prime_examples() {
        let s = sierpinski();
        let l = open_lattice(&s);
        let primes: Vec<Subset> = l.prime_elements().into_iter().map(|p| l.element(p)).collect();
        assert_eq!(primes, vec![s.empty_set(), s.subset_of(&["1"]).unwrap()]);

        let i = indiscrete2();
        let l = open_lattice(&i);
        assert_eq!(l.prime_elements(), vec![l.bottom()]);

        let d = discrete2();
        let l = open_lattice(&d);
        let primes: Vec<Subset> = l.prime_elements().into_iter().map(|p| l.element(p)).collect();
        assert_eq!(primes, vec![d.subset_of(&["a"]).unwrap(), d.subset_of(&["b"]).unwrap()]);
        assert!(!l.is_prime(l.bottom()));
    }

    #[test]
    fn filter_examples() {
        let l = open_lattice(&sierpinski());
        let fs = l.scott_open_filters();
        assert_eq!(fs.len(), 3);
        assert_eq!(fs[2].members, vec![false, false, true]);
        assert_eq!(fs[1].members, vec![false, true, true]);
        assert_eq!(fs[0].members, vec![true, true, true]);
        assert!(fs.iter().all(|f| l.is_filter(f)));
        assert_eq!(open_lattice(&indiscrete2()).scott_open_filters().len(), 2);
        assert_eq!(open_lattice(&discrete2()).scott_open_filters().len(), 4);
    }

    #[test]
    fn non_filters_rejected() {
        let l = open_lattice(&discrete2());
        // {a} and {b} without their meet
        let atoms = Filter { members: vec![false, true, true, true] };
        assert!(!l.is_filter(&atoms));
        assert!(!l.is_filter(&Filter { members: vec![false; 4] }));
        assert!(!l.is_filter(&Filter { members: vec![false, true, false, false] }));
    }

    #[test]
    fn family_not_closed_is_rejected() {
        let fam = vec![Subset::empty(2), Subset::singleton(2, 0), Subset::singleton(2, 1)];
        assert!(Lattice::of_family(fam).is_none());
    }
}
