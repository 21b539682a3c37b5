//! Exact integer and rational linear algebra.
//!
//! Everything in the crate reduces to computations here: arbitrary-precision
//! integers, rational Gaussian elimination, Smith normal form and lattice
//! utilities. No floating point anywhere.

mod lattice;
mod linalg;
mod matrix;
mod snf;

pub use lattice::{
    adapted_basis, integer_kernel, lattice_contains, lattice_rank, primitive_part,
    saturation_basis, AdaptedBasis,
};
pub use linalg::{det_int, invert_unimodular, rank_rat, solve_affine};
pub use matrix::IntMatrix;
pub use snf::{snf, SnfResult};

use num::BigInt;
use num::BigRational;

/// Arbitrary-precision integer used throughout the crate.
pub type Int = BigInt;
/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rat = BigRational;

/// Shorthand for an integer literal.
pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// Shorthand for a rational literal `p/q`.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(Int::from(p), Int::from(q))
}

/// Rational from an integer.
pub fn rat_int(p: i64) -> Rat {
    Rat::from(Int::from(p))
}
