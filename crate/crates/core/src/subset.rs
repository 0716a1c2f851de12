//! Bitset subsets of a finite point set.

use std::cmp::Ordering;
use std::fmt;

/// Largest point count a [`Subset`] can address.
pub const MAX_POINTS: usize = 64;

/// A subset of `{0, .., width-1}`, stored as a bitset.
///
/// Bit `i` corresponds to the `i`-th point of the owning space.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subset {
    bits: u64,
    width: u8,
}

impl Subset {
    pub fn empty(width: usize) -> Self {
        assert!(width <= MAX_POINTS, "width {width} exceeds {MAX_POINTS}");
        Subset { bits: 0, width: width as u8 }
    }

    pub fn full(width: usize) -> Self {
        let mut s = Self::empty(width);
        s.bits = mask(width);
        s
    }

    pub fn singleton(width: usize, i: usize) -> Self {
        let mut s = Self::empty(width);
        s.insert(i);
        s
    }

    /// Builds a subset from raw bits; bits at or above `width` are dropped.
    pub fn from_bits(width: usize, bits: u64) -> Self {
        let mut s = Self::empty(width);
        s.bits = bits & mask(width);
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(width: usize, it: I) -> Self {
        let mut s = Self::empty(width);
        for i in it {
            s.insert(i);
        }
        s
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn width(self) -> usize {
        self.width as usize
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        i < self.width() && self.bits >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.width(), "point {i} out of range for width {}", self.width);
        self.bits |= 1 << i;
    }

    pub fn remove(&mut self, i: usize) {
        if i < self.width() {
            self.bits &= !(1 << i);
        }
    }

    #[inline]
    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn is_full(self) -> bool {
        self.bits == mask(self.width())
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        debug_assert_eq!(self.width, other.width);
        Subset { bits: self.bits | other.bits, width: self.width }
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        debug_assert_eq!(self.width, other.width);
        Subset { bits: self.bits & other.bits, width: self.width }
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        debug_assert_eq!(self.width, other.width);
        Subset { bits: self.bits & !other.bits, width: self.width }
    }

    #[inline]
    pub fn complement(self) -> Self {
        Subset { bits: !self.bits & mask(self.width()), width: self.width }
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.bits & !other.bits == 0
    }

    #[inline]
    pub fn intersects(self, other: Self) -> bool {
        self.bits & other.bits != 0
    }

    /// Iterates over member indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.bits;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// All `2^width` subsets of a `width`-point set, in numeric order.
    pub fn all(width: usize) -> impl Iterator<Item = Subset> {
        assert!(width < MAX_POINTS, "cannot enumerate the powerset of {width} points");
        (0..1u64 << width).map(move |b| Subset::from_bits(width, b))
    }

    /// Canonical order: by cardinality, then by numeric value.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then(self.bits.cmp(&other.bits))
    }

    /// Renders the subset with the given point labels, e.g. `{a,c}` or `∅`.
    pub fn display_with<'a>(self, labels: &'a [String]) -> LabeledSubset<'a> {
        LabeledSubset { set: self, labels }
    }
}

fn mask(width: usize) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}/{}", self.width)
    }
}

pub struct LabeledSubset<'a> {
    set: Subset,
    labels: &'a [String],
}

impl fmt::Display for LabeledSubset<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.set.is_empty() {
            return write!(f, "∅");
        }
        write!(f, "{{")?;
        for (k, i) in self.set.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.labels[i])?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let a = Subset::from_indices(4, [0, 2]);
        let b = Subset::from_indices(4, [2, 3]);
        assert_eq!(a.union(b), Subset::from_indices(4, [0, 2, 3]));
        assert_eq!(a.intersection(b), Subset::singleton(4, 2));
        assert_eq!(a.complement(), Subset::from_indices(4, [1, 3]));
        assert!(Subset::singleton(4, 2).is_subset(a));
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![0, 2]);
        assert!(Subset::full(4).is_full());
        assert!(Subset::full(0).is_full() && Subset::full(0).is_empty());
        assert_eq!(Subset::full(64).len(), 64);
    }

    #[test]
    fn canonical_order_is_cardinality_first() {
        let mut v = [
            Subset::from_bits(3, 0b100),
            Subset::from_bits(3, 0b011),
            Subset::from_bits(3, 0b000),
            Subset::from_bits(3, 0b001),
        ];
        v.sort_by(Subset::canonical_cmp);
        let bits: Vec<u64> = v.iter().map(|s| s.bits()).collect();
        assert_eq!(bits, vec![0b000, 0b001, 0b100, 0b011]);
    }

    #[test]
    fn labeled_display() {
        let labels: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        assert_eq!(Subset::from_indices(3, [0, 2]).display_with(&labels).to_string(), "{a,c}");
        assert_eq!(Subset::empty(3).display_with(&labels).to_string(), "∅");
    }
}
