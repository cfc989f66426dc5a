//! Exact arithmetic over finite-field towers for the Dickson and Moore
//! invariants of GL_n(F_q) and the hypersurface X(1) attached to the
//! Coxeter element. Also covers the unipotent normal form of the twisted
//! action, strata of the F_q-hyperplane arrangement, and Poincaré-series
//! ledgers for the mod-ℓ cohomology of GL_n(F_q) and SL_n(F_q).
//!
//! Every identity is checked pointwise and exhaustively over small fields;
//! [`checks`] bundles those verifications into named reports.

pub mod arith;
pub mod checks;
pub mod dickson;
pub mod error;
pub mod field;
pub mod json;
pub mod linalg;
pub mod presentations;
pub mod strata;
pub mod unipotent;
pub mod variety;

pub use error::{Error, Result};
pub use field::{make_field, FieldCtx, FieldSpec, Fe};
pub use linalg::{Mat, PermWord};

/// Truncated Poincaré series with machine-integer coefficients.
pub type Series = presentations::PoincareSeries<i64>;
/// Truncated Poincaré series with arbitrary-precision coefficients.
pub type BigSeries = presentations::PoincareSeries<num_bigint::BigInt>;
