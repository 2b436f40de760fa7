use std::fmt;

use serde::{Deserialize, Serialize};

/// A subset of a carrier of at most 64 elements, stored as a bit mask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ElementSet(u64);

impl ElementSet {
    pub const fn empty() -> Self {
        ElementSet(0)
    }

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= 64);
        if n == 64 {
            ElementSet(u64::MAX)
        } else {
            ElementSet((1u64 << n) - 1)
        }
    }

    pub const fn from_bits(bits: u64) -> Self {
        ElementSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(i: usize) -> Self {
        ElementSet(1u64 << i)
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: ElementSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: ElementSet) -> ElementSet {
        ElementSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ElementSet) -> ElementSet {
        ElementSet(self.0 & other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
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

    /// All nonempty subsets of `{0..n}` ordered by size, then by the sorted
    /// element sequence.
    pub fn nonempty_subsets(n: usize) -> Vec<ElementSet> {
        assert!(n < 32, "powerset of {n} elements is too large");
        let mut all: Vec<ElementSet> = (1u64..(1u64 << n)).map(ElementSet).collect();
        all.sort_by(|a, b| {
            a.len()
                .cmp(&b.len())
                .then_with(|| a.iter().cmp(b.iter()))
        });
        all
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = ElementSet::empty();
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_order() {
        let subsets = ElementSet::nonempty_subsets(3);
        let listed: Vec<Vec<usize>> = subsets.iter().map(|s| s.iter().collect()).collect();
        assert_eq!(
            listed,
            vec![vec![0], vec![1], vec![2], vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 1, 2]]
        );
    }

    proptest! {
        #[test]
        fn iter_roundtrip(bits in any::<u64>()) {
            let s = ElementSet::from_bits(bits);
            let back: ElementSet = s.iter().collect();
            prop_assert_eq!(s, back);
            prop_assert_eq!(s.len(), s.iter().count());
        }
    }
}
