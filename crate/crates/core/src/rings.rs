//! The base ring `Z_m` and its ideal semiring.
//!
//! Every ideal of `Z_m` is principal and generated by a unique positive
//! divisor `g` of `m`; the ideal is `{g * k mod m}`. `g = m` is the zero
//! ideal, `g = 1` is the whole ring. Sum, product and intersection reduce to
//! gcd/lcm arithmetic on generators.

use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use crate::error::{capped, invalid, Result};

pub const MAX_MODULUS: u32 = 1 << 16;

/// Largest modulus whose elements matrix-level routines will enumerate.
pub const MAX_ENUMERABLE_MODULUS: u32 = 64;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// The ring `Z_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RingCtx {
    m: u32,
}

impl RingCtx {
    pub fn new(m: u32) -> Result<Self> {
        if !(2..=MAX_MODULUS).contains(&m) {
            return Err(invalid!("modulus {m} outside 2..={MAX_MODULUS}"));
        }
        Ok(RingCtx { m })
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    pub fn is_prime(&self) -> bool {
        let m = self.m;
        (2..).take_while(|d| d * d <= m).all(|d| !m.is_multiple_of(d))
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.m as u64) as u32
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.m as u64) as u32
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.m - a
        }
    }

    /// All residues `0..m`, refused above [`MAX_ENUMERABLE_MODULUS`].
    pub fn elements(&self) -> Result<Range<u32>> {
        if self.m > MAX_ENUMERABLE_MODULUS {
            return Err(capped!("element enumeration of Z_{}", self.m));
        }
        Ok(0..self.m)
    }

    /// Ideals of `Z_m`, one per divisor, ascending by generator.
    pub fn ideals(&self) -> Vec<Ideal> {
        (1..=self.m).filter(|d| self.m.is_multiple_of(*d)).map(|g| Ideal { m: self.m, g }).collect()
    }

    /// Ideal generated by `x`; generator `gcd(x, m)` with `gcd(0, m) = m`.
    pub fn canonical_ideal(&self, x: u32) -> Result<Ideal> {
        if x >= self.m {
            return Err(invalid!("{x} is not a residue mod {}", self.m));
        }
        Ok(Ideal { m: self.m, g: gcd(x as u64, self.m as u64) as u32 })
    }

    /// Ideal from a generator that must already be a positive divisor of `m`.
    pub fn ideal(&self, g: u32) -> Result<Ideal> {
        if g == 0 || !self.m.is_multiple_of(g) {
            return Err(invalid!("{g} is not a positive divisor of {}", self.m));
        }
        Ok(Ideal { m: self.m, g })
    }

    /// The zero ideal `(0)`.
    pub fn zero_ideal(&self) -> Ideal {
        Ideal { m: self.m, g: self.m }
    }

    /// The improper ideal `(1) = Z_m`.
    pub fn unit_ideal(&self) -> Ideal {
        Ideal { m: self.m, g: 1 }
    }
}

/// Free-function form of [`RingCtx::ideals`].
pub fn ideals_of(ctx: &RingCtx) -> Vec<Ideal> {
    ctx.ideals()
}

/// A two-sided ideal of `Z_m`, held by its canonical generator.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ideal {
    m: u32,
    g: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdealOp {
    Sum,
    Product,
    Intersection,
}

impl Ideal {
    pub fn modulus(&self) -> u32 {
        self.m
    }

    pub fn generator(&self) -> u32 {
        self.g
    }

    pub fn is_zero(&self) -> bool {
        self.g == self.m
    }

    pub fn is_unit(&self) -> bool {
        self.g == 1
    }

    /// Number of elements, `m / g`.
    pub fn size(&self) -> u32 {
        self.m / self.g
    }

    pub fn contains(&self, x: u32) -> bool {
        x.is_multiple_of(self.g)
    }

    /// Members `0, g, 2g, ...` in ascending order.
    pub fn members(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.size()).map(move |k| k * self.g)
    }

    fn same_ring(&self, other: &Ideal) -> Result<()> {
        if self.m != other.m {
            return Err(invalid!("ideals of Z_{} and Z_{}", self.m, other.m));
        }
        Ok(())
    }

    pub fn combine(&self, op: IdealOp, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        let (a, b, m) = (self.g as u64, other.g as u64, self.m as u64);
        let g = match op {
            IdealOp::Sum => gcd(a, b),
            IdealOp::Product => gcd(a * b, m),
            // both divide m, so the lcm does too
            IdealOp::Intersection => lcm(a, b),
        };
        Ok(Ideal { m: self.m, g: g as u32 })
    }

    /// Inclusion `self ⊆ other`.
    pub fn leq(&self, other: &Ideal) -> Result<bool> {
        self.same_ring(other)?;
        Ok(self.g.is_multiple_of(other.g))
    }

    // Unchecked variants for callers that already guarantee a shared modulus.

    #[inline]
    pub(crate) fn sum_unchecked(self, other: Ideal) -> Ideal {
        Ideal { m: self.m, g: gcd(self.g as u64, other.g as u64) as u32 }
    }

    #[inline]
    pub(crate) fn product_unchecked(self, other: Ideal) -> Ideal {
        Ideal { m: self.m, g: gcd(self.g as u64 * other.g as u64, self.m as u64) as u32 }
    }

    #[inline]
    pub(crate) fn meet_unchecked(self, other: Ideal) -> Ideal {
        Ideal { m: self.m, g: lcm(self.g as u64, other.g as u64) as u32 }
    }

    #[inline]
    pub(crate) fn leq_unchecked(self, other: Ideal) -> bool {
        self.g.is_multiple_of(other.g)
    }
}

/// Free-function form of [`Ideal::combine`].
pub fn ideal_combine(op: IdealOp, a: &Ideal, b: &Ideal) -> Result<Ideal> {
    a.combine(op, b)
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "(0)")
        } else {
            write!(f, "({})", self.g)
        }
    }
}
