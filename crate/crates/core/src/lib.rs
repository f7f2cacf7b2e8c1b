//! Structural matrix rings over `Z_m`.
//!
//! The crate models finite pre-ordered index sets, the ideal semiring of
//! `Z_m`, dense matrices over `Z_m`, subrings of `M_n(Z_m)` held as explicit
//! member sets, and matrices with ideal entries. The [`verify`] module runs
//! exhaustive small-instance checks of the embedding of pre-orders into the
//! subring lattice, of permutation conjugates of triangular rings, and of the
//! correspondence between reflexive-transitive ideal matrices and subrings
//! containing the diagonal matrices.
//!
//! Everything here is `no_std` with `alloc`; IO, timing and the command line
//! live in the companion `smr` crate.
#![no_std]

extern crate alloc;

mod error;
mod span;

pub mod ideal_matrices;
pub mod matrices;
pub mod relations;
pub mod rings;
pub mod structural;
pub mod verify;

pub use error::{Error, Result};
pub use ideal_matrices::IdealMatrix;
pub use matrices::Matrix;
pub use relations::{Classification, Permutation, Relation};
pub use rings::{Ideal, IdealOp, RingCtx};
pub use structural::{MatrixSpace, Provenance, SubringSet};
pub use verify::{Counterexample, Report, Status, Subject};
