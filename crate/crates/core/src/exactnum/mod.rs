//! Exact scalar, truncated-jet, Laurent-jet and jet-matrix arithmetic.
//!
//! A [`Jet`] is a power series known modulo `λ^(order+1)`. Known orders only
//! ever shrink under arithmetic (the minimum of the operands), so a stored
//! coefficient is always a determined one. An all-zero jet has an
//! *undetermined* order rather than an infinite one.

mod jet;
mod jet_matrix;
mod laurent;
mod matrix;
mod poly;

pub use jet::{Jet, Order};
pub use jet_matrix::{sandwich, JetMatrix, COFACTOR_MAX_DIM};
pub use laurent::{laurent_matrix_inverse, LaurentJet, LaurentMatrix, LaurentOrder};
pub use matrix::{Echelon, Matrix};
pub use poly::{poly_adjugate, poly_det, Poly};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("jet has a vanishing constant term and no inverse")]
    NotAUnit,
    #[error("determinant vanishes to the known order")]
    SingularToKnownOrder,
    #[error("quotient retains no significant coefficient at this jet order")]
    InsufficientJetOrder,
}
