//! Parity of admissible paths and loops of matrix curves.
//!
//! In finite dimensions the degree of an invertible matrix is the sign of its
//! determinant, so the parity over an interval reduces to the product of the
//! endpoint determinant signs. The crossing count and the χ-sum are computed
//! independently from exact real-root isolation of `det L(λ)`.

mod path;
mod sturm;

use std::fmt;

use thiserror::Error;

use crate::multiplicity::{chi_ord_det, MatrixCurveJet, Multiplicity, MultiplicityError};
use crate::scalar::OrderedField;
use crate::sign::Sign;

pub use path::PolynomialPath;
pub use sturm::{isolate_real_roots, RealRoot};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Endpoint {
    Start,
    End,
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Endpoint::Start => "start",
            Endpoint::End => "end",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParityError {
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("path is not admissible: singular at its {endpoint} point")]
    NotAdmissible { endpoint: Endpoint },
    #[error("determinant root of multiplicity {multiplicity} inside the interval; use the χ-sum")]
    NonTransversalCrossing { multiplicity: usize },
    #[error("invalid loop: {0}")]
    InvalidLoop(String),
    #[error("multiplicity undetermined at jet order {0}")]
    UndeterminedAtOrder(usize),
    #[error("determinant vanishes identically")]
    InfiniteMultiplicity,
    #[error(transparent)]
    Multiplicity(#[from] MultiplicityError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParityMethod {
    Interval,
    Crossings,
    ChiSum,
    Localized,
    Loop,
}

impl ParityMethod {
    pub fn name(self) -> &'static str {
        match self {
            ParityMethod::Interval => "interval",
            ParityMethod::Crossings => "crossings",
            ParityMethod::ChiSum => "chi_sum",
            ParityMethod::Localized => "localized",
            ParityMethod::Loop => "loop",
        }
    }
}

/// An eigenvalue inside the interval with its local multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct Crossing<F> {
    pub location: RealRoot<F>,
    pub chi: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParityValue<F> {
    pub sign: Sign,
    pub method: ParityMethod,
    /// `None` when the method does not locate eigenvalues.
    pub crossings: Option<Vec<Crossing<F>>>,
    /// Symbolic invertible segments the value passed through. Their
    /// determinant sign is not tracked, so a nonzero count marks a value that
    /// relies on connectedness of the invertible group rather than on
    /// finite-dimensional arithmetic.
    pub connectors: usize,
}

impl<F> ParityValue<F> {
    fn from_crossings(
        method: ParityMethod,
        crossings: Vec<Crossing<F>>,
        connectors: usize,
    ) -> Self {
        let sign = Sign::from_parity(crossings.iter().map(|c| c.chi).sum());
        ParityValue {
            sign,
            method,
            crossings: Some(crossings),
            connectors,
        }
    }

    /// `Σ χ` over the located crossings.
    pub fn chi_total(&self) -> Option<usize> {
        self.crossings
            .as_ref()
            .map(|cs| cs.iter().map(|c| c.chi).sum())
    }
}

/// `sign det L(a) · sign det L(b)`.
pub fn parity_interval<F: OrderedField>(
    path: &PolynomialPath<F>,
) -> Result<ParityValue<F>, ParityError> {
    path.require_admissible()?;
    let sign_at = |x: &F| path.eval(x).det_sign().expect("admissible endpoint");
    Ok(ParityValue {
        sign: sign_at(path.start()) * sign_at(path.end()),
        method: ParityMethod::Interval,
        crossings: None,
        connectors: 0,
    })
}

fn crossings<F: OrderedField>(path: &PolynomialPath<F>) -> Result<Vec<Crossing<F>>, ParityError> {
    path.require_admissible()?;
    let det = path.det_poly();
    Ok(isolate_real_roots(&det, path.start(), path.end())
        .into_iter()
        .map(|root| Crossing {
            chi: root.multiplicity,
            location: root,
        })
        .collect())
}

/// `(-1)^{#crossings}`, each crossing a simple root of the determinant.
pub fn parity_crossings<F: OrderedField>(
    path: &PolynomialPath<F>,
) -> Result<ParityValue<F>, ParityError> {
    let found = crossings(path)?;
    if let Some(bad) = found.iter().find(|c| c.chi > 1) {
        return Err(ParityError::NonTransversalCrossing {
            multiplicity: bad.chi,
        });
    }
    Ok(ParityValue::from_crossings(
        ParityMethod::Crossings,
        found,
        0,
    ))
}

/// `(-1)^{Σ χ}` over the eigenvalues inside the interval.
pub fn parity_chi_sum<F: OrderedField>(
    path: &PolynomialPath<F>,
) -> Result<ParityValue<F>, ParityError> {
    Ok(ParityValue::from_crossings(
        ParityMethod::ChiSum,
        crossings(path)?,
        0,
    ))
}

/// `(-1)^χ` at the base point of the curve.
pub fn localized_parity<F: OrderedField>(
    curve: &MatrixCurveJet<F>,
) -> Result<ParityValue<F>, ParityError> {
    let chi = match chi_ord_det(curve).value {
        Multiplicity::Finite(k) => k,
        Multiplicity::UndeterminedAtOrder(r) => return Err(ParityError::UndeterminedAtOrder(r)),
        Multiplicity::Infinite => return Err(ParityError::InfiniteMultiplicity),
    };
    let at = curve.base_point().clone();
    let location = RealRoot {
        lower: at.clone(),
        upper: at.clone(),
        exact: Some(at),
        multiplicity: chi,
    };
    Ok(ParityValue::from_crossings(
        ParityMethod::Localized,
        vec![Crossing { location, chi }],
        0,
    ))
}

/// A piece of a closed loop.
#[derive(Debug, Clone, PartialEq)]
pub enum LoopSegment<F> {
    Analytic(PolynomialPath<F>),
    /// A segment declared to stay inside the invertible matrices.
    GlConnector,
}

/// Cyclic sequence of segments. Consecutive analytic segments must meet
/// exactly; a connector may join any two invertible endpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct LoopPath<F> {
    segments: Vec<LoopSegment<F>>,
}

impl<F: OrderedField> LoopPath<F> {
    pub fn new(segments: Vec<LoopSegment<F>>) -> Result<Self, ParityError> {
        if segments.is_empty() {
            return Err(ParityError::InvalidLoop(
                "a loop needs at least one segment".into(),
            ));
        }
        let mut dim = None;
        for (i, segment) in segments.iter().enumerate() {
            let LoopSegment::Analytic(path) = segment else {
                continue;
            };
            path.require_admissible()
                .map_err(|e| ParityError::InvalidLoop(format!("segment {i}: {e}")))?;
            if *dim.get_or_insert(path.dim()) != path.dim() {
                return Err(ParityError::InvalidLoop(
                    "segments have different dimensions".into(),
                ));
            }
            let next = &segments[(i + 1) % segments.len()];
            if let LoopSegment::Analytic(next) = next {
                if path.eval(path.end()) != next.eval(next.start()) {
                    return Err(ParityError::InvalidLoop(format!(
                        "segment {i} does not end where the following segment starts"
                    )));
                }
            }
        }
        Ok(LoopPath { segments })
    }

    pub fn segments(&self) -> &[LoopSegment<F>] {
        &self.segments
    }
}

/// Product of the χ-sum parities of the analytic segments; connectors
/// contribute `+1`.
pub fn loop_parity<F: OrderedField>(path: &LoopPath<F>) -> Result<ParityValue<F>, ParityError> {
    let mut all = Vec::new();
    let mut connectors = 0;
    for segment in path.segments() {
        match segment {
            LoopSegment::Analytic(p) => {
                all.extend(parity_chi_sum(p)?.crossings.unwrap_or_default())
            }
            LoopSegment::GlConnector => connectors += 1,
        }
    }
    Ok(ParityValue::from_crossings(
        ParityMethod::Loop,
        all,
        connectors,
    ))
}
