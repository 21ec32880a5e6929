//! Dense fixed-width state sets.

use std::fmt;

const WORD_BITS: usize = 64;

/// A subset of `[0, n)` stored as a dense bit-vector.
///
/// All binary operations require both operands to share the same universe
/// size `n`; mixing sizes is a logic error and panics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StateSet {
    len: usize,
    words: Vec<u64>,
}

impl StateSet {
    pub fn empty(len: usize) -> Self {
        StateSet {
            len,
            words: vec![0; len.div_ceil(WORD_BITS)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut set = StateSet {
            len,
            words: vec![u64::MAX; len.div_ceil(WORD_BITS)],
        };
        set.clear_tail();
        set
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, indices: I) -> Self {
        let mut set = StateSet::empty(len);
        for i in indices {
            set.insert(i);
        }
        set
    }

    /// Builds a set from a membership predicate evaluated on every index.
    pub fn from_fn(len: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut set = StateSet::empty(len);
        for (w, word) in set.words.iter_mut().enumerate() {
            let base = w * WORD_BITS;
            let top = (len - base).min(WORD_BITS);
            let mut bits = 0u64;
            for b in 0..top {
                if f(base + b) {
                    bits |= 1 << b;
                }
            }
            *word = bits;
        }
        set
    }

    /// Size of the universe, not the cardinality.
    pub fn universe(&self) -> usize {
        self.len
    }

    pub fn insert(&mut self, i: usize) -> bool {
        assert!(i < self.len, "state {i} out of range for universe {}", self.len);
        let (w, b) = (i / WORD_BITS, i % WORD_BITS);
        let was = self.words[w] >> b & 1 == 1;
        self.words[w] |= 1 << b;
        !was
    }

    pub fn remove(&mut self, i: usize) -> bool {
        assert!(i < self.len, "state {i} out of range for universe {}", self.len);
        let (w, b) = (i / WORD_BITS, i % WORD_BITS);
        let was = self.words[w] >> b & 1 == 1;
        self.words[w] &= !(1 << b);
        was
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn union_with(&mut self, other: &StateSet) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &StateSet) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &StateSet) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn union(&self, other: &StateSet) -> StateSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn intersection(&self, other: &StateSet) -> StateSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn difference(&self, other: &StateSet) -> StateSet {
        let mut out = self.clone();
        out.difference_with(other);
        out
    }

    pub fn complement(&self) -> StateSet {
        let mut out = StateSet {
            len: self.len,
            words: self.words.iter().map(|w| !w).collect(),
        };
        out.clear_tail();
        out
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.check_universe(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &StateSet) -> bool {
        self.check_universe(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            word_idx: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub(crate) fn from_words(len: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), len.div_ceil(WORD_BITS));
        let mut set = StateSet { len, words };
        set.clear_tail();
        set
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    fn check_universe(&self, other: &StateSet) {
        assert_eq!(
            self.len, other.len,
            "state sets over different universes ({} vs {})",
            self.len, other.len
        );
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Ascending iterator over the members of a [`StateSet`].
pub struct Iter<'a> {
    words: &'a [u64],
    word_idx: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word_idx * WORD_BITS + bit);
            }
            self.word_idx += 1;
            if self.word_idx >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word_idx];
        }
    }
}

impl<'a> IntoIterator for &'a StateSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    #[test]
    fn full_and_empty() {
        for n in [0, 1, 63, 64, 65, 130] {
            assert_eq!(StateSet::full(n).count(), n);
            assert!(StateSet::empty(n).is_empty());
            assert_eq!(StateSet::full(n).complement(), StateSet::empty(n));
        }
    }

    #[test]
    fn insert_remove() {
        let mut s = StateSet::empty(70);
        assert!(s.insert(69));
        assert!(!s.insert(69));
        assert!(s.contains(69));
        assert!(!s.contains(70));
        assert!(s.remove(69));
        assert!(s.is_empty());
    }

    #[test]
    #[should_panic]
    fn insert_out_of_range() {
        StateSet::empty(3).insert(3);
    }

    fn arb_pair() -> impl Strategy<Value = (usize, Vec<usize>, Vec<usize>)> {
        (1usize..200).prop_flat_map(|n| {
            (
                Just(n),
                proptest::collection::vec(0..n, 0..n),
                proptest::collection::vec(0..n, 0..n),
            )
        })
    }

    proptest! {
        #[test]
        fn algebra_matches_btreeset((n, a, b) in arb_pair()) {
            let sa = StateSet::from_indices(n, a.iter().copied());
            let sb = StateSet::from_indices(n, b.iter().copied());
            let ba: BTreeSet<usize> = a.into_iter().collect();
            let bb: BTreeSet<usize> = b.into_iter().collect();

            prop_assert_eq!(sa.union(&sb).iter().collect::<Vec<_>>(), ba.union(&bb).copied().collect::<Vec<_>>());
            prop_assert_eq!(sa.intersection(&sb).iter().collect::<Vec<_>>(), ba.intersection(&bb).copied().collect::<Vec<_>>());
            prop_assert_eq!(sa.difference(&sb).iter().collect::<Vec<_>>(), ba.difference(&bb).copied().collect::<Vec<_>>());
            prop_assert_eq!(sa.count(), ba.len());
            prop_assert_eq!(sa.is_subset(&sb), ba.is_subset(&bb));
            prop_assert_eq!(sa.is_disjoint(&sb), ba.is_disjoint(&bb));
            let comp: Vec<usize> = (0..n).filter(|i| !ba.contains(i)).collect();
            prop_assert_eq!(sa.complement().iter().collect::<Vec<_>>(), comp);
            prop_assert_eq!(StateSet::from_fn(n, |i| ba.contains(&i)), sa);
        }
    }
}
