//! Matrices with ideal entries, the ordered semiring `M_n(I(Z_m))`.
//!
//! An [`IdealMatrix`] is an `I(Z_m)`-valued relation on the indices. It is
//! reflexive-transitive when `U^2 + I <= U`; exactly then the set of
//! matrices with `A(i,j) ∈ U(i,j)` is a subring, and these subrings are
//! precisely the subrings containing every diagonal matrix.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{capped, invalid, Result};
use crate::relations::{Relation, MAX_N};
use crate::rings::{gcd, Ideal, RingCtx};
use crate::structural::{MatrixSpace, Provenance, SubringSet};

/// Cap on `d^(n^2)` candidate matrices in [`enumerate_rt_imats`].
pub const MAX_IMAT_ENUMERATION: u64 = 1 << 20;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IdealMatrix {
    n: usize,
    ctx: RingCtx,
    /// Row-major, `n * n` entries.
    entries: Vec<Ideal>,
}

impl IdealMatrix {
    fn filled(n: usize, ctx: RingCtx, f: impl Fn(usize, usize) -> Ideal) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(invalid!("matrix size {n} outside 1..={MAX_N}"));
        }
        let entries = (0..n * n).map(|k| f(k / n, k % n)).collect();
        Ok(IdealMatrix { n, ctx, entries })
    }

    /// The multiplicative neutral element: `(1)` on the diagonal, `(0)` elsewhere.
    pub fn identity(n: usize, ctx: RingCtx) -> Result<Self> {
        Self::filled(n, ctx, |i, j| if i == j { ctx.unit_ideal() } else { ctx.zero_ideal() })
    }

    /// All entries `(0)`; additive neutral and lattice bottom.
    pub fn zero(n: usize, ctx: RingCtx) -> Result<Self> {
        Self::filled(n, ctx, |_, _| ctx.zero_ideal())
    }

    /// All entries `(1)`; lattice top.
    pub fn top(n: usize, ctx: RingCtx) -> Result<Self> {
        Self::filled(n, ctx, |_, _| ctx.unit_ideal())
    }

    /// From rows of canonical generators, each a positive divisor of `m`.
    pub fn from_generators(ctx: RingCtx, rows: &[&[u32]]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(invalid!("row {} has {} entries, expected {n}", i + 1, row.len()));
            }
            for &g in row.iter() {
                entries.push(ctx.ideal(g)?);
            }
        }
        Self::filled(n, ctx, |i, j| entries[i * n + j])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> RingCtx {
        self.ctx
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Ideal {
        self.entries[i * self.n + j]
    }

    /// Generators, row-major.
    pub fn generators(&self) -> Vec<u32> {
        self.entries.iter().map(Ideal::generator).collect()
    }

    fn same_shape(&self, other: &IdealMatrix) -> Result<()> {
        if self.n != other.n || self.ctx != other.ctx {
            return Err(invalid!(
                "ideal matrices {}x{} over Z_{} and {}x{} over Z_{}",
                self.n,
                self.n,
                self.ctx.modulus(),
                other.n,
                other.n,
                other.ctx.modulus()
            ));
        }
        Ok(())
    }

    fn zip(&self, other: &IdealMatrix, f: impl Fn(Ideal, Ideal) -> Ideal) -> IdealMatrix {
        IdealMatrix {
            n: self.n,
            ctx: self.ctx,
            entries: self.entries.iter().zip(&other.entries).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    /// Entrywise ideal sum; also the join of the entrywise order.
    pub fn sum(&self, other: &IdealMatrix) -> Result<IdealMatrix> {
        self.same_shape(other)?;
        Ok(self.zip(other, Ideal::sum_unchecked))
    }

    /// `(UV)(i,j) = Σ_k U(i,k) V(k,j)` with ideal sum and product.
    pub fn product(&self, other: &IdealMatrix) -> Result<IdealMatrix> {
        self.same_shape(other)?;
        Ok(self.product_unchecked(other))
    }

    fn product_unchecked(&self, other: &IdealMatrix) -> IdealMatrix {
        let n = self.n;
        let zero = self.ctx.zero_ideal();
        let entries = (0..n * n)
            .map(|k| {
                let (i, j) = (k / n, k % n);
                (0..n).fold(zero, |acc, t| acc.sum_unchecked(self.get(i, t).product_unchecked(other.get(t, j))))
            })
            .collect();
        IdealMatrix { n, ctx: self.ctx, entries }
    }

    /// Entrywise inclusion.
    pub fn leq(&self, other: &IdealMatrix) -> Result<bool> {
        self.same_shape(other)?;
        Ok(self.leq_unchecked(other))
    }

    fn leq_unchecked(&self, other: &IdealMatrix) -> bool {
        self.entries.iter().zip(&other.entries).all(|(&a, &b)| a.leq_unchecked(b))
    }

    /// Entrywise intersection.
    pub fn meet(&self, other: &IdealMatrix) -> Result<IdealMatrix> {
        self.same_shape(other)?;
        Ok(self.zip(other, Ideal::meet_unchecked))
    }

    /// `U^2 + I <= U`.
    pub fn is_reflexive_transitive(&self) -> bool {
        let id = IdealMatrix::identity(self.n, self.ctx).expect("valid shape");
        let lhs = self.product_unchecked(self).zip(&id, Ideal::sum_unchecked);
        lhs.leq_unchecked(self)
    }

    /// Least reflexive-transitive matrix above `self`: iterate
    /// `U <- U^2 + U + I` to a fixpoint.
    pub fn rt_closure(&self) -> IdealMatrix {
        let id = IdealMatrix::identity(self.n, self.ctx).expect("valid shape");
        let mut u = self.clone();
        loop {
            let next = u.product_unchecked(&u).zip(&u, Ideal::sum_unchecked).zip(&id, Ideal::sum_unchecked);
            if next == u {
                return u;
            }
            u = next;
        }
    }

    /// Join in the lattice of reflexive-transitive matrices.
    pub fn rt_join(&self, other: &IdealMatrix) -> Result<IdealMatrix> {
        Ok(self.sum(other)?.rt_closure())
    }

    /// `G = {A : A(i,j) ∈ U(i,j)}`, always an additive subgroup; a subring
    /// exactly when `U` is reflexive-transitive.
    pub fn defined_subring(&self, space: &MatrixSpace) -> Result<SubringSet> {
        if space.n() != self.n || space.ring() != self.ctx {
            return Err(invalid!("ideal matrix does not live over M_{}(Z_{})", space.n(), space.ring().modulus()));
        }
        let bits = space.box_set(|i, j| self.get(i, j).generator());
        Ok(SubringSet::from_bits(space, bits, Some(Provenance::DefinedBy(self.clone()))))
    }

    /// `U(i,j)` is `(1)` where `θ` relates `i` to `j`, `(0)` elsewhere.
    pub fn from_preorder(theta: &Relation, ctx: RingCtx) -> Result<IdealMatrix> {
        if !theta.is_preorder() {
            return Err(invalid!("{theta:?} is not a pre-order"));
        }
        Self::filled(theta.n(), ctx, |i, j| if theta.contains(i, j) { ctx.unit_ideal() } else { ctx.zero_ideal() })
    }

    /// Entrywise ideal `{A(i,j) : A ∈ s}` of a subring containing all
    /// diagonal matrices, canonicalized as the gcd of the observed entries
    /// with `m`.
    pub fn extract(s: &SubringSet) -> Result<IdealMatrix> {
        if let Some(i) = s.missing_diagonal_unit() {
            return Err(invalid!("set lacks the diagonal unit E{}{}", i + 1, i + 1));
        }
        if !s.is_subring() {
            return Err(invalid!("set is not a subring"));
        }
        let (n, ctx) = (s.n(), s.ring());
        let m = ctx.modulus() as u64;
        let mut g = alloc::vec![m; n * n];
        for a in s.matrices() {
            for (k, slot) in g.iter_mut().enumerate() {
                *slot = gcd(*slot, a.get(k / n, k % n) as u64);
            }
        }
        Self::filled(n, ctx, |i, j| ctx.ideal(g[i * n + j] as u32).expect("gcd with m divides m"))
    }
}

/// Every ideal matrix of size `n` over `Z_m`, in ascending generator order.
pub fn all_imats(n: usize, ctx: RingCtx) -> Result<impl Iterator<Item = IdealMatrix>> {
    let ideals = ctx.ideals();
    let d = ideals.len() as u64;
    let total = d.checked_pow((n * n) as u32).filter(|&t| t <= MAX_IMAT_ENUMERATION);
    let Some(total) = total else {
        return Err(capped!("{d}^{} ideal matrices", n * n));
    };
    IdealMatrix::zero(n, ctx)?;
    Ok((0..total).map(move |mut code| {
        // most significant digit first, so codes ascend with the generator tuple
        let mut entries = alloc::vec![ctx.zero_ideal(); n * n];
        for slot in entries.iter_mut().rev() {
            *slot = ideals[(code % d) as usize];
            code /= d;
        }
        IdealMatrix { n, ctx, entries }
    }))
}

/// All reflexive-transitive ideal matrices, ascending by generator tuple.
pub fn enumerate_rt_imats(n: usize, ctx: RingCtx) -> Result<Vec<IdealMatrix>> {
    Ok(all_imats(n, ctx)?.filter(IdealMatrix::is_reflexive_transitive).collect())
}

impl fmt::Debug for IdealMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.n {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j).generator())?;
            }
        }
        write!(f, "] mod {}", self.ctx.modulus())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structural::structural_ring;

    fn z(m: u32) -> RingCtx {
        RingCtx::new(m).unwrap()
    }

    fn imat(m: u32, rows: &[&[u32]]) -> IdealMatrix {
        IdealMatrix::from_generators(z(m), rows).unwrap()
    }

    /// The 32-element subring of `M_2(Z_4)` with `b ∈ (2)` above the diagonal.
    fn half_upper() -> IdealMatrix {
        imat(4, &[&[1, 2], &[4, 1]])
    }

    #[test]
    fn product_cases() {
        let u = half_upper();
        assert_eq!(u.product(&u).unwrap(), u);
        let ctx = z(12);
        let id = IdealMatrix::identity(2, ctx).unwrap();
        for v in all_imats(2, ctx).unwrap().step_by(7) {
            assert_eq!(id.product(&v).unwrap(), v);
            assert_eq!(v.product(&id).unwrap(), v);
            assert_eq!(v.sum(&IdealMatrix::zero(2, ctx).unwrap()).unwrap(), v);
        }
    }

    #[test]
    fn order_and_meet_cases() {
        let u = half_upper();
        assert!(u.leq(&u).unwrap());
        let ctx = z(4);
        assert!(IdealMatrix::zero(2, ctx).unwrap().leq(&u).unwrap());
        assert!(u.leq(&IdealMatrix::top(2, ctx).unwrap()).unwrap());
        let v = imat(4, &[&[1, 4], &[2, 1]]);
        assert_eq!(u.meet(&v).unwrap(), IdealMatrix::identity(2, ctx).unwrap());
        assert!(u.leq(&imat(6, &[&[1, 2], &[6, 1]])).is_err());
    }

    #[test]
    fn reflexive_transitive_cases() {
        assert!(IdealMatrix::identity(3, z(8)).unwrap().is_reflexive_transitive());
        assert!(half_upper().is_reflexive_transitive());
        let broken = imat(8, &[&[1, 2, 8], &[8, 1, 2], &[8, 8, 1]]);
        assert!(!broken.is_reflexive_transitive());
        let closed = broken.rt_closure();
        assert!(closed.is_reflexive_transitive());
        assert_eq!(closed.get(0, 2).generator(), 4);
        assert!(!IdealMatrix::zero(2, z(4)).unwrap().is_reflexive_transitive());
    }

    #[test]
    fn defined_subring_cases() {
        let sp = MatrixSpace::new(2, z(4)).unwrap();
        let full = IdealMatrix::top(2, z(4)).unwrap().defined_subring(&sp).unwrap();
        assert_eq!(full, SubringSet::full(&sp));
        let g = half_upper().defined_subring(&sp).unwrap();
        assert_eq!(g.len(), 32);
        assert!(g.is_subring());
        for theta in crate::relations::enumerate_preorders(2).unwrap() {
            assert_ne!(g, structural_ring(&theta, &sp).unwrap());
        }
        let sp3 = MatrixSpace::with_max_set_bits(3, z(8), 27).unwrap();
        let broken = imat(8, &[&[1, 2, 8], &[8, 1, 2], &[8, 8, 1]]).defined_subring(&sp3).unwrap();
        assert!(!broken.is_subring());
        assert!(half_upper().defined_subring(&sp3).is_err());
    }

    #[test]
    fn preorder_embedding_cases() {
        let ctx = z(4);
        assert_eq!(
            IdealMatrix::from_preorder(&Relation::equality(3).unwrap(), ctx).unwrap(),
            IdealMatrix::identity(3, ctx).unwrap()
        );
        assert_eq!(
            IdealMatrix::from_preorder(&Relation::full(2).unwrap(), ctx).unwrap(),
            IdealMatrix::top(2, ctx).unwrap()
        );
        let nat = Relation::natural_order(2).unwrap();
        let u = IdealMatrix::from_preorder(&nat, ctx).unwrap();
        assert_eq!(u, imat(4, &[&[1, 1], &[4, 1]]));
        let sp = MatrixSpace::new(2, ctx).unwrap();
        assert_eq!(u.defined_subring(&sp).unwrap(), structural_ring(&nat, &sp).unwrap());
        assert!(IdealMatrix::from_preorder(&Relation::empty(2).unwrap(), ctx).is_err());
    }

    #[test]
    fn extraction_cases() {
        let sp = MatrixSpace::new(2, z(2)).unwrap();
        let diag = structural_ring(&Relation::equality(2).unwrap(), &sp).unwrap();
        assert_eq!(IdealMatrix::extract(&diag).unwrap(), IdealMatrix::identity(2, z(2)).unwrap());
        let upper = structural_ring(&Relation::natural_order(2).unwrap(), &sp).unwrap();
        assert_eq!(IdealMatrix::extract(&upper).unwrap(), imat(2, &[&[1, 1], &[2, 1]]));
        let sp4 = MatrixSpace::new(2, z(4)).unwrap();
        let g = half_upper().defined_subring(&sp4).unwrap();
        assert_eq!(IdealMatrix::extract(&g).unwrap(), half_upper());

        let prime = SubringSet::from_codes(&sp, [0, sp.identity_code()]).unwrap();
        assert!(IdealMatrix::extract(&prime).is_err());
        let not_ring = imat(8, &[&[1, 2, 8], &[8, 1, 2], &[8, 8, 1]])
            .defined_subring(&MatrixSpace::with_max_set_bits(3, z(8), 27).unwrap())
            .unwrap();
        assert!(IdealMatrix::extract(&not_ring).is_err());
    }

    #[test]
    fn rt_enumeration_counts() {
        assert_eq!(enumerate_rt_imats(2, z(2)).unwrap().len(), 4);
        assert_eq!(enumerate_rt_imats(2, z(4)).unwrap().len(), 9);
        assert_eq!(enumerate_rt_imats(3, z(2)).unwrap().len(), 29);
        let sorted = enumerate_rt_imats(2, z(12)).unwrap();
        assert!(sorted.windows(2).all(|w| w[0].generators() < w[1].generators()));
        assert!(matches!(enumerate_rt_imats(4, z(12)), Err(crate::Error::ResourceCap(_))));
    }
}
