//! Fixed-width bitset over a dense symbol alphabet.
//!
//! Every set carries the width of its universe so that unions and subset
//! tests are plain word-parallel loops. Metric computations dominate the
//! solvers' runtime, so these operations stay allocation-free.

use alloc::vec;
use alloc::vec::Vec;

const WORD_BITS: usize = 64;

/// A set of symbol ids drawn from a universe `0..universe`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymbolSet {
    universe: usize,
    words: Vec<u64>,
}

impl SymbolSet {
    /// The empty set over a universe of the given size.
    pub fn empty(universe: usize) -> Self {
        let words = vec![0u64; universe.div_ceil(WORD_BITS)];
        SymbolSet { universe, words }
    }

    /// Builds a set from symbol ids. Panics if an id is out of range.
    pub fn from_ids(universe: usize, ids: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::empty(universe);
        for id in ids {
            set.insert(id);
        }
        set
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, id: usize) {
        assert!(id < self.universe, "symbol id {id} out of range");
        self.words[id / WORD_BITS] |= 1 << (id % WORD_BITS);
    }

    pub fn remove(&mut self, id: usize) {
        assert!(id < self.universe, "symbol id {id} out of range");
        self.words[id / WORD_BITS] &= !(1 << (id % WORD_BITS));
    }

    pub fn contains(&self, id: usize) -> bool {
        id < self.universe && self.words[id / WORD_BITS] & (1 << (id % WORD_BITS)) != 0
    }

    /// Number of symbols in the set.
    pub fn len(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union_with(&mut self, other: &SymbolSet) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn union(&self, other: &SymbolSet) -> SymbolSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    /// Size of the union without materializing it.
    pub fn union_len(&self, other: &SymbolSet) -> u32 {
        debug_assert_eq!(self.universe, other.universe);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a | b).count_ones())
            .sum()
    }

    pub fn intersects(&self, other: &SymbolSet) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset_of(&self, other: &SymbolSet) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    /// Iterates the member ids in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut bits = word;
            core::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let bit = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(wi * WORD_BITS + bit)
                }
            })
        })
    }
}

impl core::fmt::Debug for SymbolSet {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
