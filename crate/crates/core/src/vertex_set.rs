//! Fixed-width subsets of a labeled ground set.
//!
//! Labels are 1-based and at most [`MAX_LABEL`]; label `i` lives in bit `i - 1`.
//! A Bier sphere on `[m]` uses labels `1..=m` for the original vertices and
//! `m + 1..=2m` for their primed copies, so `m <= 16` fits one word.

use std::cmp::Ordering;
use std::fmt;

/// Largest label a [`VertexSet`] can hold.
pub const MAX_LABEL: usize = 32;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(u32);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u32) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    /// The interval `{1, ..., n}`.
    pub fn range(n: usize) -> Self {
        assert!(n <= MAX_LABEL, "label {n} exceeds {MAX_LABEL}");
        if n == 32 {
            VertexSet(u32::MAX)
        } else {
            VertexSet((1u32 << n) - 1)
        }
    }

    /// The interval `{lo, ..., hi}`; empty when `lo > hi`.
    pub fn interval(lo: usize, hi: usize) -> Self {
        if lo > hi {
            return Self::EMPTY;
        }
        Self::range(hi).difference(Self::range(lo - 1))
    }

    pub fn singleton(v: usize) -> Self {
        assert!((1..=MAX_LABEL).contains(&v), "label {v} out of range");
        VertexSet(1u32 << (v - 1))
    }

    pub fn from_labels<I: IntoIterator<Item = usize>>(labels: I) -> Self {
        labels.into_iter().fold(Self::EMPTY, |acc, v| acc.with(v))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        (1..=MAX_LABEL).contains(&v) && self.0 & (1u32 << (v - 1)) != 0
    }

    #[must_use]
    pub fn with(self, v: usize) -> Self {
        self.union(Self::singleton(v))
    }

    #[must_use]
    pub fn without(self, v: usize) -> Self {
        self.difference(Self::singleton(v))
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 32 - self.0.leading_zeros() as usize)
    }

    /// Labels in ascending order.
    pub fn iter(self) -> Labels {
        Labels(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Every subset of `self`, starting with the empty set.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(0),
        }
    }

    /// Shift every label by `offset` (used to build primed copies).
    pub fn shifted(self, offset: usize) -> Self {
        if let Some(top) = self.max() {
            assert!(top + offset <= MAX_LABEL, "shift leaves the label range");
        }
        VertexSet(self.0 << offset)
    }

    /// Labels above `offset`, shifted down by `offset`. Labels at or below are dropped.
    pub fn unshifted(self, offset: usize) -> Self {
        VertexSet(self.0.checked_shr(offset as u32).unwrap_or(0))
    }

    /// Image under a label map; panics if some label is unmapped.
    pub fn map(self, f: impl Fn(usize) -> usize) -> Self {
        self.iter().fold(Self::EMPTY, |acc, v| acc.with(f(v)))
    }

    /// Compare by cardinality first, then lexicographically on the ascending label list.
    pub fn cmp_graded(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.cmp_lex(other))
    }

    /// Lexicographic comparison of the ascending label lists.
    pub fn cmp_lex(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Serialized as the ascending list of labels.
impl serde::Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Self::from_labels(iter)
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = Labels;
    fn into_iter(self) -> Labels {
        self.iter()
    }
}

#[derive(Clone, Debug)]
pub struct Labels(u32);

impl Iterator for Labels {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize + 1;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Labels {}

/// Subset enumeration by the standard `(s - mask) & mask` walk.
#[derive(Clone, Debug)]
pub struct Subsets {
    mask: u32,
    next: Option<u32>,
}

impl Iterator for Subsets {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        let cur = self.next?;
        let nxt = cur.wrapping_sub(self.mask) & self.mask;
        self.next = (nxt != 0).then_some(nxt);
        Some(VertexSet(cur))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_arithmetic() {
        let a = VertexSet::from_labels([1, 3, 5]);
        let b = VertexSet::from_labels([3, 4]);
        assert_eq!(a.len(), 3);
        assert_eq!(a.union(b).to_vec(), vec![1, 3, 4, 5]);
        assert_eq!(a.intersection(b).to_vec(), vec![3]);
        assert_eq!(a.difference(b).to_vec(), vec![1, 5]);
        assert!(VertexSet::from_labels([3]).is_subset(a));
        assert_eq!(a.min(), Some(1));
        assert_eq!(a.max(), Some(5));
        assert_eq!(VertexSet::EMPTY.max(), None);
    }

    #[test]
    fn subsets_cover_power_set() {
        let s = VertexSet::from_labels([2, 4, 7]);
        let subs: Vec<_> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert_eq!(subs[0], VertexSet::EMPTY);
        assert!(subs.iter().all(|t| t.is_subset(s)));
        assert_eq!(VertexSet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn full_width() {
        let all = VertexSet::range(32);
        assert_eq!(all.len(), 32);
        assert!(all.contains(32));
        assert_eq!(all.max(), Some(32));
        assert_eq!(VertexSet::interval(3, 5).to_vec(), vec![3, 4, 5]);
        assert_eq!(VertexSet::range(16).shifted(16).min(), Some(17));
        assert_eq!(
            VertexSet::from_labels([2, 18]).unshifted(16),
            VertexSet::singleton(2)
        );
    }

    #[test]
    fn graded_order() {
        let mut v = vec![
            VertexSet::from_labels([2, 3]),
            VertexSet::from_labels([4]),
            VertexSet::from_labels([1, 3]),
            VertexSet::EMPTY,
        ];
        v.sort_by(VertexSet::cmp_graded);
        assert_eq!(
            v,
            vec![
                VertexSet::EMPTY,
                VertexSet::from_labels([4]),
                VertexSet::from_labels([1, 3]),
                VertexSet::from_labels([2, 3]),
            ]
        );
    }
}
