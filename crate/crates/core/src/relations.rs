//! Binary relations on `{1..n}` and the lattice of pre-orders.
//!
//! A [`Relation`] is a dense `n x n` incidence table packed into a `u64`
//! (row-major, bit `i * n + j` for 0-based `i, j`), so `n` is capped at 8.
//! The packed word doubles as the canonical encoding used for hashing,
//! sorting and reproducible enumeration order.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{capped, invalid, Result};

/// Largest supported index count.
pub const MAX_N: usize = 8;

/// Largest `n` for which [`enumerate_preorders`] filters all `2^(n^2)` relations.
pub const MAX_ENUMERATION_N: usize = 4;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    n: u8,
    bits: u64,
}

/// Order-theoretic flags of a relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Classification {
    pub reflexive: bool,
    pub transitive: bool,
    pub preorder: bool,
    pub order: bool,
    pub linear: bool,
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_N {
        return Err(invalid!("index count {n} outside 1..={MAX_N}"));
    }
    Ok(())
}

impl Relation {
    /// The empty relation on `n` points.
    pub fn empty(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(Relation { n: n as u8, bits: 0 })
    }

    /// Equality, the minimum of the pre-order lattice.
    pub fn equality(n: usize) -> Result<Self> {
        let mut r = Self::empty(n)?;
        for i in 0..n {
            r.set(i, i);
        }
        Ok(r)
    }

    /// The full relation, the maximum of the pre-order lattice.
    pub fn full(n: usize) -> Result<Self> {
        check_n(n)?;
        let bits = if n * n == 64 { u64::MAX } else { (1u64 << (n * n)) - 1 };
        Ok(Relation { n: n as u8, bits })
    }

    /// The natural order `i <= j`.
    pub fn natural_order(n: usize) -> Result<Self> {
        let mut r = Self::empty(n)?;
        for i in 0..n {
            for j in i..n {
                r.set(i, j);
            }
        }
        Ok(r)
    }

    /// Builds a relation from 1-based pairs, as written in the text form.
    /// Duplicates are ignored.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut r = Self::empty(n)?;
        for &(i, j) in pairs {
            if i == 0 || j == 0 || i > n || j > n {
                return Err(invalid!("pair ({i},{j}) outside 1..={n}"));
            }
            r.set(i - 1, j - 1);
        }
        Ok(r)
    }

    /// Decodes the row-major bit encoding.
    pub fn from_bits(n: usize, bits: u64) -> Result<Self> {
        let full = Self::full(n)?;
        if bits & !full.bits != 0 {
            return Err(invalid!("encoding {bits:#x} has bits beyond {n}x{n}"));
        }
        Ok(Relation { n: n as u8, bits })
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// Row-major bit encoding, bit `i * n + j`.
    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Number of related pairs.
    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    #[inline]
    fn bit(&self, i: usize, j: usize) -> u64 {
        1u64 << (i * self.n() + j)
    }

    /// Whether `i` is related to `j` (0-based).
    #[inline]
    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.bits & self.bit(i, j) != 0
    }

    fn set(&mut self, i: usize, j: usize) {
        self.bits |= self.bit(i, j);
    }

    /// Related pairs in row-major order, 1-based.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.contains(i, j))
            .map(|(i, j)| (i + 1, j + 1))
            .collect()
    }

    /// Containment of pair sets.
    pub fn is_subset(&self, other: &Relation) -> bool {
        self.n == other.n && self.bits & !other.bits == 0
    }

    pub fn classify(&self) -> Classification {
        let n = self.n();
        let reflexive = (0..n).all(|i| self.contains(i, i));
        let transitive = (0..n).all(|i| {
            (0..n).all(|j| !self.contains(i, j) || (0..n).all(|k| !self.contains(j, k) || self.contains(i, k)))
        });
        let antisymmetric =
            (0..n).all(|i| (0..n).all(|j| i == j || !(self.contains(i, j) && self.contains(j, i))));
        let total = (0..n).all(|i| (0..n).all(|j| self.contains(i, j) || self.contains(j, i)));
        let preorder = reflexive && transitive;
        let order = preorder && antisymmetric;
        Classification { reflexive, transitive, preorder, order, linear: order && total }
    }

    pub fn is_preorder(&self) -> bool {
        self.classify().preorder
    }

    pub fn is_order(&self) -> bool {
        self.classify().order
    }

    pub fn is_linear(&self) -> bool {
        self.classify().linear
    }

    /// Least pre-order containing `self`: diagonal first, then Warshall.
    pub fn rt_closure(&self) -> Relation {
        let n = self.n();
        let mut r = *self;
        for i in 0..n {
            r.set(i, i);
        }
        for k in 0..n {
            for i in 0..n {
                if r.contains(i, k) {
                    for j in 0..n {
                        if r.contains(k, j) {
                            r.set(i, j);
                        }
                    }
                }
            }
        }
        r
    }

    fn check_preorder_pair(&self, other: &Relation) -> Result<()> {
        if self.n != other.n {
            return Err(invalid!("relations on {} and {} points", self.n, other.n));
        }
        for r in [self, other] {
            if !r.is_preorder() {
                return Err(invalid!("{r:?} is not a pre-order"));
            }
        }
        Ok(())
    }

    /// Greatest lower bound in the pre-order lattice (intersection).
    pub fn preorder_meet(&self, other: &Relation) -> Result<Relation> {
        self.check_preorder_pair(other)?;
        Ok(Relation { n: self.n, bits: self.bits & other.bits })
    }

    /// Least upper bound in the pre-order lattice (closure of the union).
    pub fn preorder_join(&self, other: &Relation) -> Result<Relation> {
        self.check_preorder_pair(other)?;
        Ok(Relation { n: self.n, bits: self.bits | other.bits }.rt_closure())
    }

    /// Image under the index bijection `s`: `(s(i), s(j))` is related
    /// exactly when `(i, j)` was.
    pub fn relabel(&self, s: &Permutation) -> Result<Relation> {
        if s.n() != self.n() {
            return Err(invalid!("permutation on {} points, relation on {}", s.n(), self.n));
        }
        let n = self.n();
        let mut out = Relation { n: self.n, bits: 0 };
        for i in 0..n {
            for j in 0..n {
                if self.contains(i, j) {
                    out.set(s.apply(i), s.apply(j));
                }
            }
        }
        Ok(out)
    }

    /// All linear orders containing this partial order, ascending by encoding.
    ///
    /// Filters the `n!` linear orders induced by permutations; the result is
    /// never empty for a partial order.
    pub fn linear_extensions(&self) -> Result<Vec<Relation>> {
        if !self.is_order() {
            return Err(invalid!("{self:?} is not a partial order"));
        }
        let natural = Relation::natural_order(self.n())?;
        let mut out: Vec<Relation> = Permutation::all(self.n())?
            .iter()
            .map(|s| natural.relabel(s).expect("same n"))
            .filter(|l| self.is_subset(l))
            .collect();
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// For a linear order, the permutation `s` with
    /// `relabel(natural_order, s) == self`: `s(k)` is the element of rank `k`.
    pub fn ranking(&self) -> Result<Permutation> {
        if !self.is_linear() {
            return Err(invalid!("{self:?} is not a linear order"));
        }
        let n = self.n();
        let mut image = alloc::vec![0; n];
        for x in 0..n {
            let rank = (0..n).filter(|&y| y != x && self.contains(y, x)).count();
            image[rank] = x;
        }
        Permutation::new(image)
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.n)?;
        for (i, j) in self.pairs() {
            write!(f, " {i},{j}")?;
        }
        Ok(())
    }
}

/// All pre-orders on `n` points, ascending by encoding.
pub fn enumerate_preorders(n: usize) -> Result<Vec<Relation>> {
    check_n(n)?;
    if n > MAX_ENUMERATION_N {
        return Err(capped!("pre-order enumeration over 2^{} relations", n * n));
    }
    Ok((0..1u64 << (n * n))
        .map(|bits| Relation { n: n as u8, bits })
        .filter(Relation::is_preorder)
        .collect())
}

/// A bijection of `{0..n}`, stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<u8>,
}

impl Permutation {
    /// From a 0-based image array.
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        check_n(n)?;
        let mut seen = [false; MAX_N];
        for &x in &image {
            if x >= n || seen[x] {
                return Err(invalid!("{image:?} is not a bijection of 0..{n}"));
            }
            seen[x] = true;
        }
        Ok(Permutation { image: image.into_iter().map(|x| x as u8).collect() })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new((0..n).collect())
    }

    /// Every permutation of `n` points in lexicographic order of images.
    pub fn all(n: usize) -> Result<Vec<Permutation>> {
        check_n(n)?;
        let mut current: Vec<u8> = (0..n as u8).collect();
        let mut out = Vec::new();
        loop {
            out.push(Permutation { image: current.clone() });
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).expect("successor exists");
            current.swap(i, j);
            current[i + 1..].reverse();
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.image[i] as usize
    }

    pub fn image(&self) -> Vec<usize> {
        self.image.iter().map(|&x| x as usize).collect()
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = alloc::vec![0u8; self.n()];
        for (i, &x) in self.image.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Permutation { image: inv }
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.n() != other.n() {
            return Err(invalid!("composing permutations on {} and {} points", self.n(), other.n()));
        }
        Ok(Permutation { image: other.image.iter().map(|&x| self.image[x as usize]).collect() })
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.image.iter().map(|&x| x as usize + 1)).finish()
    }
}
