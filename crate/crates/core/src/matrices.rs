//! Dense `n x n` matrices over `Z_m`.

use core::fmt;

use crate::error::{capped, invalid, Result};
use crate::relations::{Permutation, MAX_N};
use crate::rings::RingCtx;

const CELLS: usize = MAX_N * MAX_N;

/// A matrix over `Z_m`. Indices are 0-based; unused cells stay zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: u8,
    ctx: RingCtx,
    e: [u32; CELLS],
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_N {
        return Err(invalid!("matrix size {n} outside 1..={MAX_N}"));
    }
    Ok(())
}

/// `m^(n^2)`, or `None` when it does not fit in a `u64`.
pub fn universe_size(n: usize, ctx: &RingCtx) -> Option<u64> {
    (ctx.modulus() as u64).checked_pow((n * n) as u32)
}

impl Matrix {
    pub fn zero(n: usize, ctx: RingCtx) -> Result<Self> {
        check_n(n)?;
        Ok(Matrix { n: n as u8, ctx, e: [0; CELLS] })
    }

    pub fn identity(n: usize, ctx: RingCtx) -> Result<Self> {
        let mut a = Self::zero(n, ctx)?;
        for i in 0..n {
            a.e[i * MAX_N + i] = 1;
        }
        Ok(a)
    }

    /// The elementary matrix with `c` at `(i, j)` (0-based).
    pub fn unit(n: usize, ctx: RingCtx, i: usize, j: usize, c: u32) -> Result<Self> {
        let mut a = Self::zero(n, ctx)?;
        a.set(i, j, c)?;
        Ok(a)
    }

    /// Rows of residues; every entry is reduced mod `m`.
    pub fn from_rows(ctx: RingCtx, rows: &[&[u32]]) -> Result<Self> {
        let n = rows.len();
        let mut a = Self::zero(n, ctx)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(invalid!("row {} has {} entries, expected {n}", i + 1, row.len()));
            }
            for (j, &x) in row.iter().enumerate() {
                a.set(i, j, x)?;
            }
        }
        Ok(a)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn ring(&self) -> RingCtx {
        self.ctx
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.e[i * MAX_N + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: u32) -> Result<()> {
        let n = self.n();
        if i >= n || j >= n {
            return Err(invalid!("position ({},{}) outside {n}x{n}", i + 1, j + 1));
        }
        if x >= self.ctx.modulus() {
            return Err(invalid!("{x} is not a residue mod {}", self.ctx.modulus()));
        }
        self.e[i * MAX_N + j] = x;
        Ok(())
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> + '_ {
        (0..self.n()).map(move |i| &self.e[i * MAX_N..i * MAX_N + self.n()])
    }

    fn same_shape(&self, other: &Matrix) -> Result<()> {
        if self.n != other.n || self.ctx != other.ctx {
            return Err(invalid!(
                "{}x{} over Z_{} vs {}x{} over Z_{}",
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

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn neg(&self) -> Matrix {
        let mut out = self.clone();
        for i in 0..self.n() {
            for j in 0..self.n() {
                out.e[i * MAX_N + j] = self.ctx.neg(self.get(i, j));
            }
        }
        out
    }

    pub(crate) fn add_unchecked(&self, other: &Matrix) -> Matrix {
        let mut out = self.clone();
        for i in 0..self.n() {
            for j in 0..self.n() {
                out.e[i * MAX_N + j] = self.ctx.add(self.get(i, j), other.get(i, j));
            }
        }
        out
    }

    pub(crate) fn mul_unchecked(&self, other: &Matrix) -> Matrix {
        let n = self.n();
        let m = self.ctx.modulus() as u64;
        let mut out = Matrix { n: self.n, ctx: self.ctx, e: [0; CELLS] };
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0u64;
                for k in 0..n {
                    acc = (acc + self.get(i, k) as u64 * other.get(k, j) as u64) % m;
                }
                out.e[i * MAX_N + j] = acc as u32;
            }
        }
        out
    }

    /// `P(i, j) = 1` exactly when `i = s(j)`; inverse is the matrix of `s⁻¹`.
    pub fn permutation(s: &Permutation, ctx: RingCtx) -> Result<Matrix> {
        let mut p = Self::zero(s.n(), ctx)?;
        for j in 0..s.n() {
            p.e[s.apply(j) * MAX_N + j] = 1;
        }
        Ok(p)
    }

    /// Recovers `s` from a permutation matrix, or `None` if `self` is not one.
    pub fn as_permutation(&self) -> Option<Permutation> {
        let n = self.n();
        let mut image = alloc::vec![0usize; n];
        for (j, slot) in image.iter_mut().enumerate() {
            let mut ones = (0..n).filter(|&i| self.get(i, j) != 0);
            let i = ones.next()?;
            if self.get(i, j) != 1 || ones.next().is_some() {
                return None;
            }
            *slot = i;
        }
        Permutation::new(image).ok()
    }

    /// `P A P⁻¹` for a permutation matrix `P`.
    pub fn conjugate_by(&self, p: &Matrix) -> Result<Matrix> {
        self.same_shape(p)?;
        let s = p.as_permutation().ok_or_else(|| invalid!("conjugator is not a permutation matrix"))?;
        Ok(self.relabel(&s))
    }

    /// Moves entry `(i, j)` to `(s(i), s(j))`; equals `P_s A P_s⁻¹`.
    pub(crate) fn relabel(&self, s: &Permutation) -> Matrix {
        let n = self.n();
        let mut out = Matrix { n: self.n, ctx: self.ctx, e: [0; CELLS] };
        for i in 0..n {
            for j in 0..n {
                out.e[s.apply(i) * MAX_N + s.apply(j)] = self.get(i, j);
            }
        }
        out
    }

    /// Row-major little-endian base-`m` code, digit `i * n + j`.
    pub fn encode(&self) -> Result<u64> {
        if universe_size(self.n(), &self.ctx).is_none() {
            return Err(capped!("M_{}(Z_{}) codes exceed 64 bits", self.n, self.ctx.modulus()));
        }
        Ok(self.encode_unchecked())
    }

    pub(crate) fn encode_unchecked(&self) -> u64 {
        let n = self.n();
        let m = self.ctx.modulus() as u64;
        let mut code = 0u64;
        for k in (0..n * n).rev() {
            code = code * m + self.e[(k / n) * MAX_N + k % n] as u64;
        }
        code
    }

    pub fn decode(code: u64, n: usize, ctx: RingCtx) -> Result<Matrix> {
        check_n(n)?;
        match universe_size(n, &ctx) {
            Some(size) if code < size => Ok(Self::decode_unchecked(code, n, ctx)),
            Some(size) => Err(invalid!("code {code} outside [0, {size})")),
            None => Err(capped!("M_{n}(Z_{}) codes exceed 64 bits", ctx.modulus())),
        }
    }

    pub(crate) fn decode_unchecked(mut code: u64, n: usize, ctx: RingCtx) -> Matrix {
        let m = ctx.modulus() as u64;
        let mut a = Matrix { n: n as u8, ctx, e: [0; CELLS] };
        for k in 0..n * n {
            a.e[(k / n) * MAX_N + k % n] = (code % m) as u32;
            code /= m;
        }
        a
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u32) -> RingCtx {
        RingCtx::new(m).unwrap()
    }

    #[test]
    fn unit_law_exhaustive_m2() {
        let ctx = z(2);
        let id = Matrix::identity(2, ctx).unwrap();
        for code in 0..16 {
            let a = Matrix::decode(code, 2, ctx).unwrap();
            assert_eq!(id.mul(&a).unwrap(), a);
            assert_eq!(a.mul(&id).unwrap(), a);
        }
    }

    #[test]
    fn elementary_products() {
        for m in [2, 3, 12] {
            let e12 = Matrix::unit(2, z(m), 0, 1, 1).unwrap();
            assert_eq!(e12.mul(&e12).unwrap(), Matrix::zero(2, z(m)).unwrap());
        }
        let t = Matrix::from_rows(z(2), &[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(t.mul(&t).unwrap(), Matrix::identity(2, z(2)).unwrap());
    }

    #[test]
    fn permutation_matrices() {
        let ctx = z(2);
        assert_eq!(
            Matrix::permutation(&Permutation::identity(3).unwrap(), ctx).unwrap(),
            Matrix::identity(3, ctx).unwrap()
        );
        let swap = Permutation::new(alloc::vec![1, 0]).unwrap();
        assert_eq!(
            Matrix::permutation(&swap, ctx).unwrap(),
            Matrix::from_rows(ctx, &[&[0, 1], &[1, 0]]).unwrap()
        );
        let all = Permutation::all(3).unwrap();
        for s in &all {
            let ps = Matrix::permutation(s, ctx).unwrap();
            assert_eq!(ps.as_permutation().as_ref(), Some(s));
            let pinv = Matrix::permutation(&s.inverse(), ctx).unwrap();
            assert_eq!(ps.mul(&pinv).unwrap(), Matrix::identity(3, ctx).unwrap());
            for t in &all {
                let pt = Matrix::permutation(t, ctx).unwrap();
                let pst = Matrix::permutation(&s.compose(t).unwrap(), ctx).unwrap();
                assert_eq!(ps.mul(&pt).unwrap(), pst);
            }
        }
        assert!(Matrix::identity(2, ctx).unwrap().add(&Matrix::identity(2, ctx).unwrap()).unwrap().as_permutation().is_none());
    }

    #[test]
    fn conjugation_matches_explicit_product() {
        let ctx = z(3);
        let swap = Permutation::new(alloc::vec![1, 0]).unwrap();
        let p = Matrix::permutation(&swap, ctx).unwrap();
        let pinv = Matrix::permutation(&swap.inverse(), ctx).unwrap();
        // [[a,b],[0,d]] -> [[d,0],[b,a]]
        let upper = Matrix::from_rows(ctx, &[&[1, 2], &[0, 0]]).unwrap();
        assert_eq!(upper.conjugate_by(&p).unwrap(), Matrix::from_rows(ctx, &[&[0, 0], &[2, 1]]).unwrap());
        for code in 0..81 {
            let a = Matrix::decode(code, 2, ctx).unwrap();
            let explicit = p.mul(&a).unwrap().mul(&pinv).unwrap();
            assert_eq!(a.conjugate_by(&p).unwrap(), explicit);
            assert_eq!(a.conjugate_by(&Matrix::identity(2, ctx).unwrap()).unwrap(), a);
        }
        let not_perm = Matrix::unit(2, ctx, 0, 1, 1).unwrap();
        assert!(upper.conjugate_by(&not_perm).is_err());
    }

    #[test]
    fn encoding_cases() {
        let ctx = z(2);
        assert_eq!(Matrix::zero(2, ctx).unwrap().encode().unwrap(), 0);
        assert_eq!(Matrix::identity(2, ctx).unwrap().encode().unwrap(), 9);
        for code in 0..16 {
            assert_eq!(Matrix::decode(code, 2, ctx).unwrap().encode().unwrap(), code);
        }
        assert!(Matrix::decode(16, 2, ctx).is_err());
        assert!(matches!(Matrix::identity(8, z(4)).unwrap().encode(), Err(crate::Error::ResourceCap(_))));
    }

    #[test]
    fn shape_mismatch_rejected() {
        let a = Matrix::identity(2, z(2)).unwrap();
        assert!(a.add(&Matrix::identity(3, z(2)).unwrap()).is_err());
        assert!(a.mul(&Matrix::identity(2, z(3)).unwrap()).is_err());
        assert!(Matrix::from_rows(z(2), &[&[0, 1], &[1]]).is_err());
        assert!(Matrix::from_rows(z(2), &[&[0, 2], &[1, 0]]).is_err());
    }
}
