//! Subrings of `M_n(Z_m)` as explicit member sets.
//!
//! A [`MatrixSpace`] fixes `n`, the base ring and the explicit-set cap: the
//! universe `M_n(Z_m)` of `m^(n^2)` codes must fit in `2^max_set_bits`.
//! A [`SubringSet`] is a membership bitset over those codes. Every check in
//! this module is exact set arithmetic.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{capped, invalid, Result};
use crate::ideal_matrices::IdealMatrix;
use crate::matrices::{universe_size, Matrix};
use crate::relations::{Permutation, Relation, MAX_N};
use crate::rings::RingCtx;
use crate::span::{Bits, Span};

pub const DEFAULT_MAX_SET_BITS: u32 = 24;

/// Hard ceiling for `max_set_bits`; a bitset at this size is 512 MiB.
pub const MAX_SET_BITS_CEILING: u32 = 32;

/// Quotient groups larger than this are not enumerated by the subgroup route.
pub const MAX_QUOTIENT_SIZE: u64 = 1 << 16;

/// Largest off-diagonal dimension handled by the subspace route.
pub const MAX_SUBSPACE_DIM: usize = 6;

/// Bound on the number of quotient subgroups visited before giving up.
pub const MAX_SUBGROUPS: usize = 1 << 16;

/// `M_n(Z_m)` together with the explicit-set feasibility cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixSpace {
    n: usize,
    ctx: RingCtx,
    universe: u64,
    powers: [u64; MAX_N * MAX_N],
}

impl MatrixSpace {
    pub fn new(n: usize, ctx: RingCtx) -> Result<Self> {
        Self::with_max_set_bits(n, ctx, DEFAULT_MAX_SET_BITS)
    }

    pub fn with_max_set_bits(n: usize, ctx: RingCtx, max_set_bits: u32) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(invalid!("matrix size {n} outside 1..={MAX_N}"));
        }
        if max_set_bits > MAX_SET_BITS_CEILING {
            return Err(invalid!("set cap 2^{max_set_bits} above 2^{MAX_SET_BITS_CEILING}"));
        }
        let m = ctx.modulus();
        let universe = match universe_size(n, &ctx) {
            Some(u) if u <= 1u64 << max_set_bits => u,
            _ => return Err(capped!("|M_{n}(Z_{m})| = {m}^{} exceeds 2^{max_set_bits}", n * n)),
        };
        let mut powers = [0u64; MAX_N * MAX_N];
        let mut p = 1u64;
        for slot in powers.iter_mut().take(n * n) {
            *slot = p;
            p = p.saturating_mul(m as u64);
        }
        Ok(MatrixSpace { n, ctx, universe, powers })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> RingCtx {
        self.ctx
    }

    /// Number of matrices, `m^(n^2)`.
    pub fn universe(&self) -> u64 {
        self.universe
    }

    pub(crate) fn decode(&self, code: u64) -> Matrix {
        Matrix::decode_unchecked(code, self.n, self.ctx)
    }

    pub(crate) fn encode(&self, a: &Matrix) -> u64 {
        a.encode_unchecked()
    }

    pub fn identity_code(&self) -> u64 {
        (0..self.n).map(|i| self.powers[i * self.n + i]).sum()
    }

    /// Code of the matrix with a single `1` at `(i, j)`.
    pub(crate) fn unit_code(&self, i: usize, j: usize) -> u64 {
        self.powers[i * self.n + j]
    }

    pub(crate) fn add_codes(&self, mut a: u64, mut b: u64) -> u64 {
        let m = self.ctx.modulus() as u64;
        let mut out = 0;
        for k in 0..self.n * self.n {
            out += (a % m + b % m) % m * self.powers[k];
            a /= m;
            b /= m;
        }
        out
    }

    pub(crate) fn mul_codes(&self, a: u64, b: u64) -> u64 {
        self.encode(&self.decode(a).mul_unchecked(&self.decode(b)))
    }

    fn check(&self, a: &Matrix) -> Result<()> {
        if a.n() != self.n || a.ring() != self.ctx {
            return Err(invalid!("matrix is not in M_{}(Z_{})", self.n, self.ctx.modulus()));
        }
        Ok(())
    }

    /// All matrices whose `(i, j)` entry is a multiple of `step(i, j)`, a
    /// divisor of `m` (`m` itself forces zero).
    pub(crate) fn box_set(&self, step: impl Fn(usize, usize) -> u32) -> Bits {
        let m = self.ctx.modulus() as u64;
        let mut codes = vec![0u64];
        for i in 0..self.n {
            for j in 0..self.n {
                let g = step(i, j) as u64;
                if g == m {
                    continue;
                }
                let p = self.powers[i * self.n + j];
                codes = codes
                    .iter()
                    .flat_map(|&c| (0..m).step_by(g as usize).map(move |v| c + v * p))
                    .collect();
            }
        }
        let mut bits = Bits::new(self.universe);
        for c in codes {
            bits.insert(c);
        }
        bits
    }
}

/// How a [`SubringSet`] was produced. Informational only; equality ignores it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Structural(Relation),
    Generated,
    Conjugate,
    Intersection,
    DefinedBy(IdealMatrix),
}

/// A finite set of matrices in `M_n(Z_m)`, usually a subring.
#[derive(Clone)]
pub struct SubringSet {
    n: usize,
    ctx: RingCtx,
    bits: Bits,
    len: u64,
    provenance: Option<Provenance>,
}

impl SubringSet {
    pub(crate) fn from_bits(space: &MatrixSpace, bits: Bits, provenance: Option<Provenance>) -> Self {
        let len = bits.count();
        SubringSet { n: space.n, ctx: space.ctx, bits, len, provenance }
    }

    /// Raw set from matrices; duplicates collapse.
    pub fn from_matrices<'a>(space: &MatrixSpace, items: impl IntoIterator<Item = &'a Matrix>) -> Result<Self> {
        let mut bits = Bits::new(space.universe);
        for a in items {
            space.check(a)?;
            bits.insert(space.encode(a));
        }
        Ok(Self::from_bits(space, bits, None))
    }

    /// Raw set from matrix codes.
    pub fn from_codes(space: &MatrixSpace, codes: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut bits = Bits::new(space.universe);
        for c in codes {
            if c >= space.universe {
                return Err(invalid!("code {c} outside [0, {})", space.universe));
            }
            bits.insert(c);
        }
        Ok(Self::from_bits(space, bits, None))
    }

    /// Every matrix of `M_n(Z_m)`.
    pub fn full(space: &MatrixSpace) -> Self {
        Self::from_bits(space, space.box_set(|_, _| 1), None)
    }

    pub fn space(&self) -> MatrixSpace {
        // the cap was already satisfied when the set was built
        MatrixSpace::with_max_set_bits(self.n, self.ctx, MAX_SET_BITS_CEILING).expect("set already materialized")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> RingCtx {
        self.ctx
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    pub fn with_provenance(mut self, p: Provenance) -> Self {
        self.provenance = Some(p);
        self
    }

    pub fn contains_code(&self, code: u64) -> bool {
        code < universe_size(self.n, &self.ctx).unwrap_or(0) && self.bits.get(code)
    }

    pub fn contains(&self, a: &Matrix) -> bool {
        a.n() == self.n && a.ring() == self.ctx && self.bits.get(a.encode_unchecked())
    }

    /// Member codes in ascending order.
    pub fn codes(&self) -> impl Iterator<Item = u64> + '_ {
        self.bits.iter()
    }

    pub fn matrices(&self) -> impl Iterator<Item = Matrix> + '_ {
        self.bits.iter().map(move |c| Matrix::decode_unchecked(c, self.n, self.ctx))
    }

    fn same_space(&self, other: &SubringSet) -> Result<()> {
        if self.n != other.n || self.ctx != other.ctx {
            return Err(invalid!(
                "sets in M_{}(Z_{}) and M_{}(Z_{})",
                self.n,
                self.ctx.modulus(),
                other.n,
                other.ctx.modulus()
            ));
        }
        Ok(())
    }

    pub fn is_subset(&self, other: &SubringSet) -> Result<bool> {
        self.same_space(other)?;
        Ok(self.bits.is_subset(&other.bits))
    }

    pub fn intersection(&self, other: &SubringSet) -> Result<SubringSet> {
        self.same_space(other)?;
        let bits = self.bits.and(&other.bits);
        let len = bits.count();
        Ok(SubringSet { n: self.n, ctx: self.ctx, bits, len, provenance: Some(Provenance::Intersection) })
    }

    /// Contains `I`, and is closed under `+`, negation and `·`.
    ///
    /// Grows an additive span inside the set from its members in ascending
    /// order; the set is an additive group exactly when that never escapes.
    /// Multiplicative closure is then checked on the span's generators only.
    pub fn is_subring(&self) -> bool {
        let space = self.space();
        if !self.bits.get(0) || !self.bits.get(space.identity_code()) {
            return false;
        }
        let mut span = Span::new(&space);
        for c in self.bits.iter() {
            if span.insert_within(c, Some(&self.bits)).is_none() {
                return false;
            }
        }
        let basis = &span.basis;
        basis.iter().all(|&x| basis.iter().all(|&y| self.bits.get(space.mul_codes(x, y))))
    }

    /// Whether every diagonal matrix is a member.
    pub fn contains_diagonal(&self) -> bool {
        self.missing_diagonal_unit().is_none()
    }

    /// A diagonal matrix unit `E_ii` that is not a member, if any. For
    /// additive groups this decides containment of all diagonal matrices.
    pub(crate) fn missing_diagonal_unit(&self) -> Option<usize> {
        let space = self.space();
        (0..self.n).find(|&i| !self.bits.get(space.unit_code(i, i)))
    }

    /// 64-bit FNV-1a over the ascending member codes, each as 8 little-endian bytes.
    pub fn digest(&self) -> u64 {
        fnv1a(self.codes())
    }
}

pub fn fnv1a(codes: impl IntoIterator<Item = u64>) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    let mut h = OFFSET;
    for c in codes {
        for byte in c.to_le_bytes() {
            h ^= byte as u64;
            h = h.wrapping_mul(PRIME);
        }
    }
    h
}

impl PartialEq for SubringSet {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.ctx == other.ctx && self.bits == other.bits
    }
}

impl Eq for SubringSet {}

impl PartialOrd for SubringSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on the ascending member sequence.
impl Ord for SubringSet {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.n, self.ctx.modulus())
            .cmp(&(other.n, other.ctx.modulus()))
            .then_with(|| self.codes().cmp(other.codes()))
    }
}

impl fmt::Debug for SubringSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubringSet(M_{}(Z_{}), {} members", self.n, self.ctx.modulus(), self.len)?;
        if self.len <= 16 {
            write!(f, ": ")?;
            f.debug_list().entries(self.codes()).finish()?;
        } else {
            write!(f, ", digest {:#018x}", self.digest())?;
        }
        write!(f, ")")
    }
}

/// `{A : A(i,j) = 0 unless i r j}`, with no subring guarantee.
pub fn matrix_set_of_relation(r: &Relation, space: &MatrixSpace) -> Result<SubringSet> {
    if r.n() != space.n {
        return Err(invalid!("relation on {} points for {}x{} matrices", r.n(), space.n, space.n));
    }
    let m = space.ctx.modulus();
    Ok(SubringSet::from_bits(space, space.box_set(|i, j| if r.contains(i, j) { 1 } else { m }), None))
}

/// The structural matrix ring `M_n(θ, Z_m)` of a pre-order `θ`.
pub fn structural_ring(theta: &Relation, space: &MatrixSpace) -> Result<SubringSet> {
    if !theta.is_preorder() {
        return Err(invalid!("{theta:?} is not a pre-order"));
    }
    Ok(matrix_set_of_relation(theta, space)?.with_provenance(Provenance::Structural(*theta)))
}

/// The least subring containing `generators` (and `I`).
///
/// Reduces the generators to an additive basis, then closes that basis
/// under pairwise products in both orders; each product that enlarges the
/// span joins the basis and is processed in turn.
pub fn generated_subring(generators: &[Matrix], space: &MatrixSpace) -> Result<SubringSet> {
    for g in generators {
        space.check(g)?;
    }
    let codes: Vec<u64> = generators.iter().map(|g| space.encode(g)).collect();
    Ok(close_codes(space, codes))
}

/// Subring generated by the union of two sets: the join in the subring lattice.
pub fn subring_join(a: &SubringSet, b: &SubringSet) -> Result<SubringSet> {
    a.same_space(b)?;
    let space = a.space();
    Ok(close_codes(&space, a.codes().chain(b.codes())))
}

fn close_codes(space: &MatrixSpace, codes: impl IntoIterator<Item = u64>) -> SubringSet {
    let mut span = Span::new(space);
    span.insert(space.identity_code());
    for c in codes {
        span.insert(c);
    }
    let mut done = 0;
    while done < span.basis.len() {
        let x = span.basis[done];
        for k in 0..=done {
            let y = span.basis[k];
            span.insert(space.mul_codes(x, y));
            span.insert(space.mul_codes(y, x));
        }
        done += 1;
    }
    SubringSet::from_bits(space, span.bits, Some(Provenance::Generated))
}

pub fn subring_intersection(a: &SubringSet, b: &SubringSet) -> Result<SubringSet> {
    a.intersection(b)
}

/// `{P A P⁻¹ : A ∈ s}` for a permutation matrix `P`.
pub fn conjugate_subring(p: &Matrix, s: &SubringSet) -> Result<SubringSet> {
    let space = s.space();
    space.check(p)?;
    let perm = p.as_permutation().ok_or_else(|| invalid!("conjugator is not a permutation matrix"))?;
    Ok(relabel_set(&space, &perm, s))
}

pub(crate) fn relabel_set(space: &MatrixSpace, perm: &Permutation, s: &SubringSet) -> SubringSet {
    let mut bits = Bits::new(space.universe);
    for a in s.matrices() {
        bits.insert(space.encode(&a.relabel(perm)));
    }
    SubringSet::from_bits(space, bits, Some(Provenance::Conjugate))
}

/// Which enumeration of off-diagonal quotient subgroups to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuotientRoute {
    /// Reduced row echelon bases of `F_p`-subspaces; prime moduli only.
    Subspaces,
    /// Breadth-first closure adding one cyclic generator at a time.
    Subgroups,
}

/// Every subring of `M_n(Z_m)` that contains all diagonal matrices, sorted
/// by member sequence.
///
/// Such a subring is `D + lift(H)` for an additive subgroup `H` of the
/// off-diagonal quotient `(Z_m)^(n^2 - n)`; the candidates that are closed
/// under products are kept. Prime moduli use the subspace route.
pub fn enumerate_diagonal_subrings(space: &MatrixSpace) -> Result<Vec<SubringSet>> {
    let route = if space.ctx.is_prime() { QuotientRoute::Subspaces } else { QuotientRoute::Subgroups };
    enumerate_diagonal_subrings_via(space, route)
}

pub fn enumerate_diagonal_subrings_via(space: &MatrixSpace, route: QuotientRoute) -> Result<Vec<SubringSet>> {
    let quotient = Quotient::new(space);
    let k = quotient.positions.len();
    let m = space.ctx.modulus();
    let subgroups = match route {
        QuotientRoute::Subspaces => {
            if !space.ctx.is_prime() {
                return Err(invalid!("subspace route needs a prime modulus, got {m}"));
            }
            if k > MAX_SUBSPACE_DIM && quotient.size().is_none_or(|s| s > MAX_QUOTIENT_SIZE) {
                return Err(capped!("subspaces of F_{m}^{k}"));
            }
            quotient.subspaces()
        }
        QuotientRoute::Subgroups => {
            if quotient.size().is_none_or(|s| s > MAX_QUOTIENT_SIZE) {
                return Err(capped!("subgroups of (Z_{m})^{k}"));
            }
            quotient.subgroups()?
        }
    };
    let diag_units: Vec<u64> = (0..space.n).map(|i| space.unit_code(i, i)).collect();
    let mut out = Vec::new();
    for (members, gens) in subgroups {
        let lifted: Vec<u64> = gens.iter().map(|&q| quotient.lift(q)).collect();
        let closed = {
            let all: Vec<u64> = diag_units.iter().chain(&lifted).copied().collect();
            all.iter().all(|&x| all.iter().all(|&y| members.get(quotient.project(space.mul_codes(x, y)))))
        };
        if !closed {
            continue;
        }
        let diag = space.box_set(|i, j| if i == j { 1 } else { space.ctx.modulus() });
        let mut bits = Bits::new(space.universe);
        for d in diag.iter() {
            for q in members.iter() {
                bits.insert(space.add_codes(d, quotient.lift(q)));
            }
        }
        out.push(SubringSet::from_bits(space, bits, None));
    }
    out.sort();
    Ok(out)
}

/// The off-diagonal coordinates `(Z_m)^k`, coded base `m` in row-major order.
struct Quotient<'a> {
    space: &'a MatrixSpace,
    positions: Vec<(usize, usize)>,
}

impl<'a> Quotient<'a> {
    fn new(space: &'a MatrixSpace) -> Self {
        let n = space.n;
        let positions = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|(i, j)| i != j).collect();
        Quotient { space, positions }
    }

    fn m(&self) -> u64 {
        self.space.ctx.modulus() as u64
    }

    fn size(&self) -> Option<u64> {
        self.m().checked_pow(self.positions.len() as u32)
    }

    fn digits(&self, mut q: u64) -> Vec<u64> {
        let m = self.m();
        (0..self.positions.len())
            .map(|_| {
                let d = q % m;
                q /= m;
                d
            })
            .collect()
    }

    fn code_of_digits(&self, digits: &[u64]) -> u64 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.m() + d)
    }

    fn lift(&self, q: u64) -> u64 {
        let n = self.space.n;
        self.digits(q)
            .iter()
            .zip(&self.positions)
            .map(|(&d, &(i, j))| d * self.space.powers[i * n + j])
            .sum()
    }

    fn project(&self, code: u64) -> u64 {
        let n = self.space.n;
        let m = self.m();
        let digits: Vec<u64> =
            self.positions.iter().map(|&(i, j)| code / self.space.powers[i * n + j] % m).collect();
        self.code_of_digits(&digits)
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        let m = self.m();
        let d: Vec<u64> = self.digits(a).iter().zip(self.digits(b)).map(|(x, y)| (x + y) % m).collect();
        self.code_of_digits(&d)
    }

    /// `H + <x>` as a bitset over the quotient, given `H`'s members.
    fn extend(&self, members: &Bits, list: &[u64], x: u64) -> (Bits, Vec<u64>) {
        let mut bits = members.clone();
        let mut out = list.to_vec();
        let mut shift = x;
        while !bits.get(shift) {
            for &h in list {
                let y = self.add(h, shift);
                bits.insert(y);
                out.push(y);
            }
            shift = self.add(shift, x);
        }
        (bits, out)
    }

    /// Every subgroup, each with a generating list, found by breadth-first
    /// search from `{0}` adjoining one element at a time.
    fn subgroups(&self) -> Result<Vec<(Bits, Vec<u64>)>> {
        let size = self.size().expect("checked by caller");
        let mut zero = Bits::new(size);
        zero.insert(0);
        let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
        let mut found: Vec<(Bits, Vec<u64>, Vec<u64>)> = vec![(zero, vec![0], Vec::new())];
        seen.insert(vec![0]);
        let mut next = 0;
        while next < found.len() {
            let (bits, list, gens) = found[next].clone();
            next += 1;
            for x in 0..size {
                if bits.get(x) {
                    continue;
                }
                let (nb, mut nl) = self.extend(&bits, &list, x);
                nl.sort_unstable();
                if seen.insert(nl.clone()) {
                    if found.len() >= MAX_SUBGROUPS {
                        return Err(capped!("more than {MAX_SUBGROUPS} quotient subgroups"));
                    }
                    let mut ng = gens.clone();
                    ng.push(x);
                    found.push((nb, nl, ng));
                }
            }
        }
        Ok(found.into_iter().map(|(b, _, g)| (b, g)).collect())
    }

    /// Every `F_p`-subspace, one per reduced row echelon basis.
    fn subspaces(&self) -> Vec<(Bits, Vec<u64>)> {
        let k = self.positions.len();
        let p = self.m();
        let size = self.size().expect("bounded dimension");
        let mut out = Vec::new();
        for pivots_mask in 0u32..(1 << k) {
            let pivots: Vec<usize> = (0..k).filter(|c| pivots_mask >> c & 1 == 1).collect();
            // free cells: (row t, column c) with c > pivot t and c not a pivot
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(t, &pc)| (pc + 1..k).filter(|c| pivots_mask >> c & 1 == 0).map(move |c| (t, c)))
                .collect();
            let combos = p.pow(free.len() as u32);
            for mut assignment in 0..combos {
                let mut rows: Vec<Vec<u64>> = pivots
                    .iter()
                    .map(|&pc| {
                        let mut r = vec![0u64; k];
                        r[pc] = 1;
                        r
                    })
                    .collect();
                for &(t, c) in &free {
                    rows[t][c] = assignment % p;
                    assignment /= p;
                }
                let gens: Vec<u64> = rows.iter().map(|r| self.code_of_digits(r)).collect();
                let mut bits = Bits::new(size);
                bits.insert(0);
                let mut list = vec![0];
                for &g in &gens {
                    (bits, list) = self.extend(&bits, &list, g);
                }
                out.push((bits, gens));
            }
        }
        out
    }
}
