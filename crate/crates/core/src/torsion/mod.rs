//! Global torsion invariant Λ of real line-bundle classes over flat tori.
//!
//! A class is represented by its homomorphism `ζ: ℤⁿ → {±1}` on the deck
//! group. Λ averages `ζ` over the deck classes with the normalized heat-kernel
//! weights of the universal cover; on a flat torus the average factors over
//! the generators into ratios of theta sums.

mod homomorphism;
mod invariant;
mod theta;

use thiserror::Error;

pub use homomorphism::{intersection_morphism, is_orientable, loop_to_class, Z2Homomorphism};
pub use invariant::{
    torsion_direct_sum, torsion_invariant, torsion_table, torsion_value_set, ClosedForm,
    FactorContribution, TorsionReport, DEDUP_TOLERANCE,
};
pub use theta::{
    heat_kernel_rn, theta_sum, theta_sum_with_decay, theta_tail, wiener_weight, wiener_weights,
    FlatTorus, ThetaSum, WienerWeights, CUTOFF_MARGIN, MAX_CLASSES,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorsionError {
    #[error("heat time must be positive")]
    NonpositiveTime,
    #[error("torus period must be positive")]
    NonpositivePeriod,
    #[error("dimension must be at least one")]
    ZeroDimension,
    #[error("cutoff {cutoff} is too small; need at least {required}")]
    CutoffTooSmall { cutoff: usize, required: usize },
    #[error("expected {expected} components, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid signs: {0}")]
    InvalidSigns(String),
    #[error("too many classes to enumerate")]
    TooManyClasses,
}
