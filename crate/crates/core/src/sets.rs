//! Set types for objects (rows) and condition attributes (columns).

use std::fmt;

use fixedbitset::FixedBitSet;
use smallvec::SmallVec;

/// A subset of the universe, stored as a bitset over row indices.
///
/// Every set built for a given table has the same capacity (`|U|`), so
/// equality and ordering behave as plain set comparison within one table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ObjectSet(FixedBitSet);

impl ObjectSet {
    pub fn empty(universe: usize) -> Self {
        ObjectSet(FixedBitSet::with_capacity(universe))
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        ObjectSet(bits)
    }

    /// Builds a set from indices; indices `>= universe` are a programming error.
    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, items: I) -> Self {
        let mut set = Self::empty(universe);
        for i in items {
            set.insert(i);
        }
        set
    }

    pub fn universe(&self) -> usize {
        self.0.len()
    }

    pub fn insert(&mut self, i: usize) {
        self.0.insert(i);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(i)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn is_subset(&self, other: &ObjectSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &ObjectSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn union(&self, other: &ObjectSet) -> ObjectSet {
        let mut out = self.clone();
        out.0.union_with(&other.0);
        out
    }

    pub fn intersection(&self, other: &ObjectSet) -> ObjectSet {
        let mut out = self.clone();
        out.0.intersect_with(&other.0);
        out
    }

    pub fn difference(&self, other: &ObjectSet) -> ObjectSet {
        let mut out = self.clone();
        out.0.difference_with(&other.0);
        out
    }

    pub fn complement(&self) -> ObjectSet {
        ObjectSet::full(self.universe()).difference(self)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for ObjectSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A subset of condition attributes, identified by column index.
///
/// Unlike [`ObjectSet`] the capacity is not part of the value: trailing zero
/// words are trimmed so two sets with the same members always compare equal.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct AttrSet {
    words: SmallVec<[u64; 1]>,
}

impl AttrSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// All attributes `0..n`.
    pub fn full(n: usize) -> Self {
        (0..n).collect()
    }

    pub fn singleton(a: usize) -> Self {
        let mut s = Self::new();
        s.insert(a);
        s
    }

    pub fn insert(&mut self, a: usize) -> bool {
        let (w, b) = (a / 64, a % 64);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, a: usize) -> bool {
        let (w, b) = (a / 64, a % 64);
        if w >= self.words.len() {
            return false;
        }
        let present = self.words[w] & (1 << b) != 0;
        self.words[w] &= !(1 << b);
        self.trim();
        present
    }

    pub fn contains(&self, a: usize) -> bool {
        let (w, b) = (a / 64, a % 64);
        self.words.get(w).is_some_and(|word| word & (1 << b) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_subset(&self, other: &AttrSet) -> bool {
        self.words
            .iter()
            .enumerate()
            .all(|(i, w)| w & !other.words.get(i).copied().unwrap_or(0) == 0)
    }

    pub fn intersects(&self, other: &AttrSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn union(&self, other: &AttrSet) -> AttrSet {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = long.clone();
        for (w, s) in out.words.iter_mut().zip(&short.words) {
            *w |= s;
        }
        out
    }

    pub fn intersection(&self, other: &AttrSet) -> AttrSet {
        let mut out = AttrSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        };
        out.trim();
        out
    }

    pub fn difference(&self, other: &AttrSet) -> AttrSet {
        let mut out = AttrSet {
            words: self
                .words
                .iter()
                .enumerate()
                .map(|(i, w)| w & !other.words.get(i).copied().unwrap_or(0))
                .collect(),
        };
        out.trim();
        out
    }

    pub fn with(&self, a: usize) -> AttrSet {
        let mut out = self.clone();
        out.insert(a);
        out
    }

    /// Members in ascending index order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn max(&self) -> Option<usize> {
        self.iter().last()
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }
}

impl FromIterator<usize> for AttrSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = AttrSet::new();
        for a in iter {
            s.insert(a);
        }
        s
    }
}

impl<'a> FromIterator<&'a usize> for AttrSet {
    fn from_iter<I: IntoIterator<Item = &'a usize>>(iter: I) -> Self {
        iter.into_iter().copied().collect()
    }
}

impl fmt::Debug for AttrSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Orders by size first, then lexicographically by sorted members.
impl Ord for AttrSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for AttrSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
