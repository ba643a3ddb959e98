use super::{Endpoint, ParityError};
use crate::exactnum::{JetMatrix, Matrix, Poly};
use crate::multiplicity::MatrixCurveJet;
use crate::scalar::OrderedField;

/// Matrix polynomial `Σ_j C_j λ^j` restricted to `[start, end]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialPath<F> {
    dim: usize,
    start: F,
    end: F,
    coefficients: Vec<Matrix<F>>,
}

impl<F: OrderedField> PolynomialPath<F> {
    pub fn new(start: F, end: F, coefficients: Vec<Matrix<F>>) -> Result<Self, ParityError> {
        if start >= end {
            return Err(ParityError::InvalidPath(
                "the interval must satisfy start < end".into(),
            ));
        }
        let dim = coefficients.first().map_or(0, Matrix::rows);
        if dim == 0
            || coefficients
                .iter()
                .any(|c| c.rows() != dim || c.cols() != dim)
        {
            return Err(ParityError::InvalidPath(
                "coefficients must be non-empty square matrices of one size".into(),
            ));
        }
        let mut coefficients = coefficients;
        while coefficients.len() > 1 && coefficients.last().unwrap().is_zero() {
            coefficients.pop();
        }
        Ok(PolynomialPath {
            dim,
            start,
            end,
            coefficients,
        })
    }

    /// The constant path at `value`.
    pub fn constant(start: F, end: F, value: Matrix<F>) -> Result<Self, ParityError> {
        PolynomialPath::new(start, end, vec![value])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn start(&self) -> &F {
        &self.start
    }

    pub fn end(&self) -> &F {
        &self.end
    }

    pub fn coefficients(&self) -> &[Matrix<F>] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn eval(&self, x: &F) -> Matrix<F> {
        self.coefficients
            .iter()
            .rev()
            .fold(Matrix::zeros(self.dim, self.dim), |acc, c| {
                acc.scale(x).add(c)
            })
    }

    /// `det L(λ)` as an exact polynomial.
    pub fn det_poly(&self) -> Poly<F> {
        let bound = self.dim * self.degree();
        if bound == 0 {
            return Poly::constant(self.coefficients[0].det());
        }
        Poly::new(
            JetMatrix::from_coefficients(&self.coefficients, bound)
                .det()
                .into_coeffs(),
        )
    }

    /// Both endpoint values invertible.
    pub fn is_admissible(&self) -> bool {
        self.eval(&self.start).is_invertible() && self.eval(&self.end).is_invertible()
    }

    pub(crate) fn require_admissible(&self) -> Result<(), ParityError> {
        for (x, endpoint) in [(&self.start, Endpoint::Start), (&self.end, Endpoint::End)] {
            if !self.eval(x).is_invertible() {
                return Err(ParityError::NotAdmissible { endpoint });
            }
        }
        Ok(())
    }

    /// The curve expanded around `base_point`.
    pub fn curve_at(&self, base_point: F) -> MatrixCurveJet<F> {
        MatrixCurveJet::polynomial(F::zero(), self.coefficients.clone())
            .and_then(|c| c.recenter(base_point))
            .expect("path coefficients form a valid curve")
    }

    /// `[start, at]` and `[at, end]`.
    pub fn split_at(&self, at: F) -> Result<(Self, Self), ParityError> {
        let left = PolynomialPath::new(self.start.clone(), at.clone(), self.coefficients.clone())?;
        let right = PolynomialPath::new(at, self.end.clone(), self.coefficients.clone())?;
        Ok((left, right))
    }

    /// The same image traversed from `end` to `start`: `λ ↦ L(start + end - λ)`.
    pub fn reversed(&self) -> Self {
        let c = self.start.clone() + self.end.clone();
        let reflect = |m: &Matrix<F>, k: usize| {
            if k % 2 == 1 {
                m.scale(&-F::one())
            } else {
                m.clone()
            }
        };
        let flipped: Vec<Matrix<F>> = self
            .coefficients
            .iter()
            .enumerate()
            .map(|(k, m)| reflect(m, k))
            .collect();
        let shifted = MatrixCurveJet::polynomial(c, flipped)
            .and_then(|curve| curve.recenter(F::zero()))
            .expect("valid coefficients");
        let mut coefficients = shifted.coefficients().to_vec();
        coefficients.truncate(self.coefficients.len());
        PolynomialPath {
            dim: self.dim,
            start: self.start.clone(),
            end: self.end.clone(),
            coefficients,
        }
    }

    /// Diagonal path `diag(p_1(λ), ..., p_N(λ))`.
    pub fn diagonal(start: F, end: F, entries: &[Poly<F>]) -> Result<Self, ParityError> {
        if entries.is_empty() {
            return Err(ParityError::InvalidPath("empty diagonal".into()));
        }
        let len = entries
            .iter()
            .map(|p| p.coeffs().len())
            .max()
            .unwrap_or(1)
            .max(1);
        let coefficient = |k: usize| {
            Matrix::diagonal(
                entries
                    .iter()
                    .map(|p| p.coeffs().get(k).cloned().unwrap_or_else(F::zero))
                    .collect(),
            )
        };
        PolynomialPath::new(start, end, (0..len).map(coefficient).collect())
    }
}
