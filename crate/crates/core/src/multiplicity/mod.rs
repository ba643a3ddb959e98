//! Generalized algebraic multiplicity χ of a matrix curve at a point.
//!
//! The same integer is reachable along several independent routes:
//! the order of the determinant, the order of the Schur-complement local
//! determinant, the Laurent route through the compressed inverse, and the
//! weighted transversal sum. Algebraic order and the classical multiplicity
//! of `λI - K` live here too.

mod classical;
mod curve;
mod projection;
mod routes;
mod transversal;

use std::fmt;

use thiserror::Error;

use crate::exactnum::{ExactError, Jet, Matrix};

pub use classical::{classical_multiplicity, ClassicalMultiplicityReport};
pub use curve::{CurveKind, MatrixCurveJet};
pub use projection::{projection_pair, ProjectionPair};
pub use routes::{
    algebraic_order, chi_laurent, chi_laurent_with, chi_ord_det, chi_schur, local_determinant,
    local_determinant_at, schur_operator, schur_operator_at,
};
pub use transversal::{
    chi_transversal, is_kappa_transversal, nested_kernels, verify_transversalization,
    TransversalityCertificate,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MultiplicityError {
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("invalid projection pair: {0}")]
    InvalidProjectionPair(String),
    #[error("no κ-transversal order up to {max_kappa}")]
    NotTransversal { max_kappa: usize },
    #[error("Φ(λ₀) is not the identity")]
    PhiNotNormalized,
    #[error("routes disagree: determinant order {expected}, transversalized sum {found}")]
    RouteDisagreement {
        expected: Multiplicity,
        found: Multiplicity,
    },
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Value of χ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Multiplicity {
    Finite(usize),
    /// The determinant is the zero polynomial.
    Infinite,
    /// The jet vanishes through the given order; higher terms are unknown.
    UndeterminedAtOrder(usize),
}

impl Multiplicity {
    pub fn finite(self) -> Option<usize> {
        match self {
            Multiplicity::Finite(k) => Some(k),
            _ => None,
        }
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(k) => write!(f, "{k}"),
            Multiplicity::Infinite => write!(f, "infinite"),
            Multiplicity::UndeterminedAtOrder(r) => write!(f, "undetermined at order {r}"),
        }
    }
}

/// Which computation produced a [`MultiplicityReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    OrdDet,
    Schur,
    Laurent,
    Transversal,
    Transversalized,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::OrdDet => "ord_det",
            Route::Schur => "schur",
            Route::Laurent => "laurent",
            Route::Transversal => "transversal",
            Route::Transversalized => "transversalized",
        }
    }
}

/// Witness of a multiplicity computation.
#[derive(Debug, Clone, PartialEq)]
pub enum Witness<F> {
    /// The jet whose order was taken (determinant or local determinant).
    Jet(Jet<F>),
    /// Laurent route: the determinant of the compressed inverse, as
    /// `λ^{-pole} · unit`.
    Laurent { pole_order: usize, unit: Jet<F> },
    /// Transversal route: `dim L_j(K_j)` for `j = 1..=κ`.
    Transversal { image_dims: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct MultiplicityReport<F> {
    pub value: Multiplicity,
    pub route: Route,
    pub witness: Witness<F>,
    /// Jet order the value was settled at.
    pub working_order: usize,
}

/// `κ` of an algebraic eigenvalue, or its absence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgebraicOrder {
    /// Pole order of the inverse; `0` when `L(λ₀)` is invertible.
    Kappa(usize),
    NotAlgebraic,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraicOrderReport {
    pub kappa: AlgebraicOrder,
    pub det_order: Multiplicity,
    /// Smallest order among the adjugate entries.
    pub adjugate_min_order: Option<usize>,
}

pub(crate) fn require_square<F: crate::scalar::Field>(
    m: &Matrix<F>,
) -> Result<(), MultiplicityError> {
    if m.rows() == m.cols() && m.rows() > 0 {
        Ok(())
    } else {
        Err(MultiplicityError::InvalidCurve(
            "matrix must be square and non-empty".into(),
        ))
    }
}
