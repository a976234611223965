//! Compact sets of histories, used for potentials, relation slices, and
//! formula extensions.

use crate::world::HistoryIx;

/// A fixed-width bit set over the histories of one universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HistorySet {
    words: Vec<u64>,
    len: usize,
}

impl HistorySet {
    pub fn empty(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::empty(len);
        for i in 0..len {
            s.insert(HistoryIx(i));
        }
        s
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn insert(&mut self, h: HistoryIx) {
        debug_assert!(h.0 < self.len);
        self.words[h.0 / 64] |= 1 << (h.0 % 64);
    }

    pub fn remove(&mut self, h: HistoryIx) {
        debug_assert!(h.0 < self.len);
        self.words[h.0 / 64] &= !(1 << (h.0 % 64));
    }

    pub fn contains(&self, h: HistoryIx) -> bool {
        h.0 < self.len && self.words[h.0 / 64] & (1 << (h.0 % 64)) != 0
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn union_with(&mut self, other: &Self) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn intersect_with(&mut self, other: &Self) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    /// Complement within the universe.
    pub fn negate(&mut self) {
        for w in self.words.iter_mut() {
            *w = !*w;
        }
        self.clear_tail();
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = HistoryIx> + '_ {
        (0..self.len).map(HistoryIx).filter(|h| self.contains(*h))
    }

    fn clear_tail(&mut self) {
        let tail = self.len % 64;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
        if self.len == 0 {
            self.words.clear();
        }
    }
}
