//! Exhaustive axiom checks behind `smr ring`.

use smr_core::ideal_matrices::all_imats;
use smr_core::{IdealMatrix, IdealOp, Matrix, RingCtx};

use crate::error::CliError;

/// Largest number of ideal matrices whose triples are checked exhaustively.
pub const MAX_IMAT_AXIOM_ELEMENTS: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub cases: u64,
    pub failure: Option<String>,
}

impl Check {
    fn run<T: std::fmt::Debug>(name: &'static str, triples: impl Iterator<Item = (T, bool)>) -> Check {
        let mut cases = 0;
        for (t, ok) in triples {
            cases += 1;
            if !ok {
                return Check { name, cases, failure: Some(format!("{t:?}")) };
            }
        }
        Check { name, cases, failure: None }
    }
}

fn cube<T: Clone>(xs: &[T]) -> impl Iterator<Item = (T, T, T)> + '_ {
    xs.iter().flat_map(move |a| xs.iter().flat_map(move |b| xs.iter().map(move |c| (a.clone(), b.clone(), c.clone()))))
}

/// Commutative ring axioms of `Z_m`, including `1 != 0`.
pub fn residue_ring(ctx: RingCtx) -> Result<Check, CliError> {
    let r = ctx;
    let xs: Vec<u32> = ctx.elements()?.collect();
    let mut check = Check::run(
        "residue ring",
        cube(&xs).map(|(a, b, c)| {
            let ok = r.add(r.add(a, b), c) == r.add(a, r.add(b, c))
                && r.add(a, b) == r.add(b, a)
                && r.add(a, 0) == a
                && r.add(a, r.neg(a)) == 0
                && r.mul(r.mul(a, b), c) == r.mul(a, r.mul(b, c))
                && r.mul(a, b) == r.mul(b, a)
                && r.mul(a, 1) == a
                && r.mul(a, r.add(b, c)) == r.add(r.mul(a, b), r.mul(a, c));
            ((a, b, c), ok)
        }),
    );
    if check.failure.is_none() && r.mul(1, 1) == 0 {
        check.failure = Some("1 = 0".into());
    }
    Ok(check)
}

/// Semiring axioms of the ideals under sum and product, both distributive laws.
pub fn ideal_semiring(ctx: RingCtx) -> Check {
    use IdealOp::*;
    let ideals = ctx.ideals();
    let op = |k, a: &smr_core::Ideal, b: &smr_core::Ideal| a.combine(k, b).expect("same modulus");
    Check::run(
        "ideal semiring",
        cube(&ideals).map(|(a, b, c)| {
            let ok = op(Sum, &a, &b) == op(Sum, &b, &a)
                && op(Sum, &op(Sum, &a, &b), &c) == op(Sum, &a, &op(Sum, &b, &c))
                && op(Product, &op(Product, &a, &b), &c) == op(Product, &a, &op(Product, &b, &c))
                && op(Product, &a, &op(Sum, &b, &c)) == op(Sum, &op(Product, &a, &b), &op(Product, &a, &c))
                && op(Product, &op(Sum, &b, &c), &a) == op(Sum, &op(Product, &b, &a), &op(Product, &c, &a));
            ((a, b, c), ok)
        }),
    )
}

/// Ring axioms of `M_n(Z_m)`.
///
/// Associativity and distributivity are multilinear, so triples of scaled
/// matrix units `E_ij` exhaust them; units and negation are checked on
/// the same spanning set.
pub fn matrix_ring(n: usize, ctx: RingCtx) -> Result<Check, CliError> {
    let mut units = Vec::new();
    for i in 0..n {
        for j in 0..n {
            units.push(Matrix::unit(n, ctx, i, j, 1)?);
        }
    }
    let id = Matrix::identity(n, ctx)?;
    let zero = Matrix::zero(n, ctx)?;
    Ok(Check::run(
        "matrix ring",
        cube(&units).map(|(a, b, c)| {
            let add = |x: &Matrix, y: &Matrix| x.add(y).expect("same shape");
            let mul = |x: &Matrix, y: &Matrix| x.mul(y).expect("same shape");
            let ok = mul(&mul(&a, &b), &c) == mul(&a, &mul(&b, &c))
                && mul(&a, &add(&b, &c)) == add(&mul(&a, &b), &mul(&a, &c))
                && mul(&add(&b, &c), &a) == add(&mul(&b, &a), &mul(&c, &a))
                && add(&a, &b) == add(&b, &a)
                && add(&a, &a.neg()) == zero
                && mul(&id, &a) == a
                && mul(&a, &id) == a;
            ((a, b, c), ok)
        }),
    ))
}

/// Semiring axioms of `M_n(I(Z_m))` with the neutral matrix `I`, when
/// the matrices are few enough to check every triple.
pub fn imat_semiring(n: usize, ctx: RingCtx) -> Result<Option<Check>, CliError> {
    let d = ctx.ideals().len() as u64;
    let count = d.checked_pow((n * n) as u32);
    if count.is_none_or(|c| c > MAX_IMAT_AXIOM_ELEMENTS as u64) {
        return Ok(None);
    }
    let all: Vec<IdealMatrix> = all_imats(n, ctx)?.collect();
    let id = IdealMatrix::identity(n, ctx)?;
    let sum = |x: &IdealMatrix, y: &IdealMatrix| x.sum(y).expect("same shape");
    let prod = |x: &IdealMatrix, y: &IdealMatrix| x.product(y).expect("same shape");
    Ok(Some(Check::run(
        "ideal matrix semiring",
        cube(&all).map(|(u, v, w)| {
            let ok = sum(&u, &v) == sum(&v, &u)
                && sum(&sum(&u, &v), &w) == sum(&u, &sum(&v, &w))
                && prod(&prod(&u, &v), &w) == prod(&u, &prod(&v, &w))
                && prod(&u, &sum(&v, &w)) == sum(&prod(&u, &v), &prod(&u, &w))
                && prod(&sum(&v, &w), &u) == sum(&prod(&v, &u), &prod(&w, &u))
                && prod(&u, &id) == u
                && prod(&id, &u) == u;
            ((u, v, w), ok)
        }),
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u32) -> RingCtx {
        RingCtx::new(m).unwrap()
    }

    #[test]
    fn small_rings_pass() {
        for m in [2, 6, 12] {
            assert_eq!(residue_ring(z(m)).unwrap().failure, None);
            assert_eq!(ideal_semiring(z(m)).failure, None);
        }
        let c = matrix_ring(3, z(4)).unwrap();
        assert_eq!((c.cases, c.failure), (729, None));
        let c = imat_semiring(2, z(4)).unwrap().unwrap();
        assert_eq!((c.cases, c.failure), (81 * 81 * 81, None));
        assert!(imat_semiring(2, z(12)).unwrap().is_none());
    }

    #[test]
    fn a_failing_law_is_reported() {
        let c = Check::run("demo", [(1, true), (2, false), (3, true)].into_iter());
        assert_eq!(c.cases, 2);
        assert_eq!(c.failure.as_deref(), Some("2"));
    }
}
