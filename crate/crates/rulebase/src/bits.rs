//! Fixed-width bitsets used inside the closure miner.

use crate::itemset::ItemSet;

#[derive(Clone, PartialEq, Eq)]
pub(crate) struct Bits {
    words: Vec<u64>,
}

impl Bits {
    pub fn zeros(nbits: usize) -> Bits {
        Bits { words: vec![0; nbits.div_ceil(64)] }
    }

    pub fn ones(nbits: usize) -> Bits {
        let mut b = Bits { words: vec![!0u64; nbits.div_ceil(64)] };
        let tail = nbits % 64;
        if tail != 0 {
            if let Some(last) = b.words.last_mut() {
                *last = (1u64 << tail) - 1;
            }
        }
        b
    }

    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1u64 << (i % 64);
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn and_assign(&mut self, other: &Bits) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    /// self & other == self
    pub fn is_subset(&self, other: &Bits) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    pub fn from_itemset(set: &ItemSet, nbits: usize) -> Bits {
        let mut b = Bits::zeros(nbits.max(set.items().last().map_or(0, |&m| m as usize + 1)));
        for id in set.iter() {
            b.set(id as usize);
        }
        b
    }

    pub fn to_itemset(&self) -> ItemSet {
        ItemSet::from_sorted(self.iter_ones().map(|i| i as u32).collect())
    }
}
