//! Exact arithmetic for quadratic surds, integral Möbius maps and binary
//! quadratic forms.
//!
//! Everything here is an immutable value type built on `num-bigint` /
//! `num-rational`; floating embeddings are produced on demand and never fed
//! back into the exact side.

mod form;
mod moebius;
mod pell;
mod scalar;
mod surd;

pub use form::{BQForm, FormCycle};
pub use moebius::{Classification, Ext, MoebiusMap};
pub use pell::{automorph_of, automorph_of_form, pell_fundamental, DEFAULT_PELL_BITS};
pub use scalar::{is_squarefree, ratio_to_f64, BaseScalar};
pub use surd::{squarefree_decompose, Complexity, QuadSurd};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different base fields Q(i√{0}) and Q(i√{1})")]
    FieldMismatch(u64, u64),
    #[error("incompatible radicands √{0} and √{1}")]
    IncompatibleDelta(String, String),
    #[error("value is not a quadratic irrational")]
    NotIrrational,
    #[error("operation requires a real value")]
    NotReal,
    #[error("naive height is only defined over Q")]
    ComplexBase,
    #[error("cannot parse surd {0:?}: expected (p+q*sqrt(D))/r")]
    Parse(String),
    #[error("Pell solver exceeded the {bits}-bit budget for discriminant {disc}")]
    PellBudget { disc: String, bits: u64 },
    #[error("the identity has no dynamics to classify")]
    Identity,
    #[error("matrix entries must be integers with determinant ±1")]
    NotUnimodular,
    #[error("discriminant {0} is not a positive non-square")]
    BadDiscriminant(String),
    #[error("element is not hyperbolic")]
    NotHyperbolic,
}
