//! Exact combinatorial models for complements of complexified toric and
//! affine hyperplane arrangements.
//!
//! The library builds, over exact rational arithmetic:
//!
//! * face posets, intersection posets, no-broken-circuit families and posets
//!   of regions of real hyperplane arrangements ([`hyperplane`]);
//! * face categories and Salvetti categories of complexified toric
//!   arrangements, together with their stratification and colimit
//!   reconstruction ([`toric`]);
//! * acyclic matchings in the sense of discrete Morse theory for acyclic
//!   categories, with independent validation of every matching ([`morse`]);
//! * integral homology of nerves via Smith normal form, Poincaré polynomials
//!   and torsion certificates ([`homology`]).
//!
//! Every theorem-backed step is re-checked at runtime; a failed check
//! surfaces as [`Error::Verification`] and is treated as a bug, never as an
//! input problem.
//!
//! The `torarr` binary exposes the pipeline over a small text format; see the
//! [`cli`] module and the `examples/` directory for entry points.

pub mod category;
pub mod cli;
pub mod exact;
pub mod homology;
pub mod hyperplane;
pub mod morse;
pub mod toric;

/// Crate-wide error type.
///
/// `Verification` is reserved for "the mathematics was contradicted":
/// any theorem-backed runtime check that fails. The CLI maps it to exit
/// code 2, everything else user-facing to exit code 1.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid input: {0}")]
    Input(String),
    #[error("internal verification failure: {0}")]
    Verification(String),
    #[error("matching search exhausted: {0}")]
    SearchExhausted(String),
}

pub type Result<T> = std::result::Result<T, Error>;
