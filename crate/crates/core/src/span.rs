//! Bitsets over matrix codes and incremental additive spans.

use alloc::vec;
use alloc::vec::Vec;

use crate::structural::MatrixSpace;

#[derive(Clone, PartialEq, Eq, Hash)]
pub(crate) struct Bits {
    words: Vec<u64>,
}

impl Bits {
    pub(crate) fn new(universe: u64) -> Self {
        Bits { words: vec![0; universe.div_ceil(64) as usize] }
    }

    #[inline]
    pub(crate) fn get(&self, k: u64) -> bool {
        self.words[(k >> 6) as usize] >> (k & 63) & 1 == 1
    }

    /// Returns whether `k` was newly inserted.
    #[inline]
    pub(crate) fn insert(&mut self, k: u64) -> bool {
        let w = &mut self.words[(k >> 6) as usize];
        let bit = 1u64 << (k & 63);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    pub(crate) fn count(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub(crate) fn and(&self, other: &Bits) -> Bits {
        Bits { words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect() }
    }

    pub(crate) fn is_subset(&self, other: &Bits) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Set bits in ascending order.
    pub(crate) fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            core::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as u64;
                w &= w - 1;
                Some(wi as u64 * 64 + t)
            })
        })
    }
}

/// An additive subgroup of `M_n(Z_m)` grown one generator at a time.
///
/// `basis` holds the generators that actually enlarged the span, so its
/// length is at most `log2 |span|`.
pub(crate) struct Span<'a> {
    space: &'a MatrixSpace,
    pub(crate) bits: Bits,
    pub(crate) members: Vec<u64>,
    pub(crate) basis: Vec<u64>,
}

impl<'a> Span<'a> {
    pub(crate) fn new(space: &'a MatrixSpace) -> Self {
        let mut bits = Bits::new(space.universe());
        bits.insert(0);
        Span { space, bits, members: vec![0], basis: Vec::new() }
    }

    #[inline]
    pub(crate) fn contains(&self, code: u64) -> bool {
        self.bits.get(code)
    }

    pub(crate) fn insert(&mut self, code: u64) -> bool {
        self.insert_within(code, None).unwrap_or(false)
    }

    /// Extends the span by `code`, adjoining the cosets `H + k*code` until
    /// a multiple of `code` falls back into `H`. With `allowed` set, fails
    /// (returning `None`) as soon as a new element lies outside it.
    pub(crate) fn insert_within(&mut self, code: u64, allowed: Option<&Bits>) -> Option<bool> {
        if self.contains(code) {
            return Some(false);
        }
        let base = self.members.len();
        let mut shift = code;
        while !self.contains(shift) {
            for idx in 0..base {
                let y = self.space.add_codes(self.members[idx], shift);
                if let Some(allowed) = allowed {
                    if !allowed.get(y) {
                        return None;
                    }
                }
                self.bits.insert(y);
                self.members.push(y);
            }
            shift = self.space.add_codes(shift, code);
        }
        self.basis.push(code);
        Some(true)
    }
}
