//! Subsets of a ground set `{1, ..., n}` with `n <= 64`, stored as bitmasks.
//!
//! All public indices are 1-based, matching how ground sets are written in
//! input files and reports.

use std::fmt;

pub const MAX_ELEMENTS: usize = 64;

#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet(u64);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    /// `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_ELEMENTS, "ground set too large: {n}");
        if n == MAX_ELEMENTS {
            ElementSet(u64::MAX)
        } else {
            ElementSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(e: usize) -> Self {
        ElementSet::EMPTY.with(e)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices.into_iter().fold(ElementSet::EMPTY, ElementSet::with)
    }

    pub const fn from_bits(bits: u64) -> Self {
        ElementSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, e: usize) -> bool {
        (1..=MAX_ELEMENTS).contains(&e) && self.0 & (1u64 << (e - 1)) != 0
    }

    #[must_use]
    pub fn with(self, e: usize) -> Self {
        assert!((1..=MAX_ELEMENTS).contains(&e), "element index out of range: {e}");
        ElementSet(self.0 | (1u64 << (e - 1)))
    }

    #[must_use]
    pub fn without(self, e: usize) -> Self {
        if !(1..=MAX_ELEMENTS).contains(&e) {
            return self;
        }
        ElementSet(self.0 & !(1u64 << (e - 1)))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        ElementSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ElementSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ElementSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest element, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    /// Elements in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let e = bits.trailing_zeros() as usize + 1;
            bits &= bits - 1;
            Some(e)
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Renumbers the set after the elements of `removed` are deleted from the
    /// ground set, preserving the relative order of the survivors. Elements
    /// of `self` inside `removed` are dropped.
    pub fn compress(self, removed: ElementSet) -> Self {
        let mut out = 0u64;
        let mut pos = 0;
        let mut bit = 0;
        while bit < 64 && (self.0 >> bit) != 0 {
            if removed.0 & (1u64 << bit) == 0 {
                if self.0 & (1u64 << bit) != 0 {
                    out |= 1u64 << pos;
                }
                pos += 1;
            }
            bit += 1;
        }
        ElementSet(out)
    }

    /// Inverse of [`compress`](Self::compress): maps indices of the smaller
    /// ground set back to the original labels given by `labels`.
    pub fn expand(self, labels: &[usize]) -> Self {
        ElementSet::from_indices(self.iter().map(|e| labels[e - 1]))
    }

    /// All subsets of `self`, starting from the empty set.
    pub fn subsets(self) -> impl Iterator<Item = ElementSet> {
        let mask = self.0;
        let mut current = Some(0u64);
        std::iter::from_fn(move || {
            let sub = current?;
            current = if sub == mask { None } else { Some((sub.wrapping_sub(mask)) & mask) };
            Some(ElementSet(sub))
        })
    }
}

/// Surviving labels after removing `removed` from `{1, ..., n}`: entry `k`
/// is the original index of new element `k + 1`.
pub fn surviving_labels(n: usize, removed: ElementSet) -> Vec<usize> {
    (1..=n).filter(|&e| !removed.contains(e)).collect()
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        ElementSet::from_indices(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let s = ElementSet::from_indices([1, 3]);
        assert!(s.contains(1) && !s.contains(2) && s.contains(3));
        assert_eq!(s.len(), 2);
        assert_eq!(s.to_vec(), vec![1, 3]);
        assert_eq!(s.first(), Some(1));
        assert_eq!(ElementSet::full(3).difference(s).to_vec(), vec![2]);
        assert_eq!(format!("{s:?}"), "{1, 3}");
    }

    #[test]
    fn compress_and_expand() {
        let removed = ElementSet::from_indices([2]);
        let s = ElementSet::from_indices([1, 2, 3, 4]);
        assert_eq!(s.compress(removed).to_vec(), vec![1, 2, 3]);
        let labels = surviving_labels(4, removed);
        assert_eq!(labels, vec![1, 3, 4]);
        assert_eq!(ElementSet::from_indices([2, 3]).expand(&labels).to_vec(), vec![3, 4]);
    }

    #[test]
    fn subsets_enumerates_everything() {
        let s = ElementSet::from_indices([2, 4, 5]);
        let subs: Vec<_> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|t| t.is_subset(s)));
        assert_eq!(ElementSet::EMPTY.subsets().count(), 1);
    }
}
