use super::MultiplicityError;
use crate::exactnum::{JetMatrix, Matrix, Poly};
use crate::scalar::Field;

/// How the coefficients beyond the stored ones are to be read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CurveKind {
    /// The curve is the matrix polynomial itself; every higher coefficient is zero.
    Polynomial,
    /// Only the stored jet is known; higher coefficients are unknown.
    Truncated,
}

/// A matrix curve around `base_point`, stored as Taylor coefficients
/// `L_j = L^(j)(λ₀)/j!`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixCurveJet<F> {
    dim: usize,
    base_point: F,
    coefficients: Vec<Matrix<F>>,
    kind: CurveKind,
}

impl<F: Field> MatrixCurveJet<F> {
    /// Matrix polynomial `Σ_j coefficients[j] (λ-λ₀)^j`. A lone constant term
    /// is padded with a zero first-order coefficient.
    pub fn polynomial(
        base_point: F,
        mut coefficients: Vec<Matrix<F>>,
    ) -> Result<Self, MultiplicityError> {
        let dim = check_coefficients(&coefficients)?;
        if coefficients.len() == 1 {
            coefficients.push(Matrix::zeros(dim, dim));
        }
        Ok(MatrixCurveJet {
            dim,
            base_point,
            coefficients,
            kind: CurveKind::Polynomial,
        })
    }

    /// Jet known only through the stored coefficients (at least `L_0, L_1`).
    pub fn truncated(
        base_point: F,
        coefficients: Vec<Matrix<F>>,
    ) -> Result<Self, MultiplicityError> {
        let dim = check_coefficients(&coefficients)?;
        if coefficients.len() < 2 {
            return Err(MultiplicityError::InvalidCurve(
                "a truncated jet needs at least L_0 and L_1".into(),
            ));
        }
        Ok(MatrixCurveJet {
            dim,
            base_point,
            coefficients,
            kind: CurveKind::Truncated,
        })
    }

    /// `(λ-λ₀)Π + I - Π`.
    pub fn normalization_curve(
        base_point: F,
        projection: &Matrix<F>,
    ) -> Result<Self, MultiplicityError> {
        let n = projection.rows();
        MatrixCurveJet::polynomial(
            base_point,
            vec![Matrix::identity(n).sub(projection), projection.clone()],
        )
    }

    /// `λI - K` expanded around `μ`.
    pub fn resolvent_curve(k: &Matrix<F>, mu: F) -> Result<Self, MultiplicityError> {
        let n = k.rows();
        let l0 = Matrix::identity(n).scale(&mu).sub(k);
        MatrixCurveJet::polynomial(mu, vec![l0, Matrix::identity(n)])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn base_point(&self) -> &F {
        &self.base_point
    }

    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    pub fn is_polynomial(&self) -> bool {
        self.kind == CurveKind::Polynomial
    }

    pub fn coefficients(&self) -> &[Matrix<F>] {
        &self.coefficients
    }

    /// Stored order `r` (number of coefficients minus one).
    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// `L_0 = L(λ₀)`.
    pub fn value(&self) -> &Matrix<F> {
        &self.coefficients[0]
    }

    /// `L_j`; zero past the end for polynomials, `None` for truncated jets.
    pub fn coefficient(&self, j: usize) -> Option<Matrix<F>> {
        match self.coefficients.get(j) {
            Some(m) => Some(m.clone()),
            None if self.is_polynomial() => Some(Matrix::zeros(self.dim, self.dim)),
            None => None,
        }
    }

    /// Index of the last nonzero coefficient (0 for constant curves).
    pub fn degree(&self) -> usize {
        self.coefficients
            .iter()
            .rposition(|m| !m.is_zero())
            .unwrap_or(0)
    }

    /// Entries as polynomials in `λ - λ₀`, row-major.
    pub fn polynomial_entries(&self) -> Vec<Poly<F>> {
        let n = self.dim;
        (0..n * n)
            .map(|k| {
                Poly::new(
                    self.coefficients
                        .iter()
                        .map(|c| c.get(k / n, k % n).clone())
                        .collect(),
                )
            })
            .collect()
    }

    /// Jet matrix at the requested order; truncated curves cap at `r`.
    pub fn jet_matrix(&self, order: usize) -> JetMatrix<F> {
        let order = match self.kind {
            CurveKind::Polynomial => order,
            CurveKind::Truncated => order.min(self.order()),
        };
        JetMatrix::from_coefficients(&self.coefficients, order)
    }

    /// Pointwise product `λ ↦ L(λ)·M(λ)`.
    pub fn compose(&self, other: &Self) -> Result<Self, MultiplicityError> {
        if self.dim != other.dim || self.base_point != other.base_point {
            return Err(MultiplicityError::InvalidCurve(
                "composed curves need equal dimension and base point".into(),
            ));
        }
        let (kind, len) = match (self.kind, other.kind) {
            (CurveKind::Polynomial, CurveKind::Polynomial) => (
                CurveKind::Polynomial,
                self.coefficients.len() + other.coefficients.len() - 1,
            ),
            _ => (
                CurveKind::Truncated,
                self.coefficients.len().min(other.coefficients.len()),
            ),
        };
        let mut coefficients = vec![Matrix::zeros(self.dim, self.dim); len];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in other.coefficients.iter().enumerate() {
                if i + j < len {
                    coefficients[i + j] = coefficients[i + j].add(&a.mul(b));
                }
            }
        }
        Ok(MatrixCurveJet {
            dim: self.dim,
            base_point: self.base_point.clone(),
            coefficients,
            kind,
        })
    }

    /// The same polynomial expanded around another point.
    pub fn recenter(&self, new_base: F) -> Result<Self, MultiplicityError> {
        if !self.is_polynomial() {
            return Err(MultiplicityError::InvalidCurve(
                "only polynomial curves can be recentred".into(),
            ));
        }
        let shift = new_base.clone() - self.base_point.clone();
        let entry_polys: Vec<Poly<F>> = (0..self.dim * self.dim)
            .map(|idx| {
                let (i, j) = (idx / self.dim, idx % self.dim);
                Poly::new(
                    self.coefficients
                        .iter()
                        .map(|m| m.get(i, j).clone())
                        .collect(),
                )
                .shift(&shift)
            })
            .collect();
        let len = self.coefficients.len();
        let coefficients = (0..len)
            .map(|k| {
                Matrix::from_fn(self.dim, self.dim, |i, j| {
                    entry_polys[i * self.dim + j]
                        .coeffs()
                        .get(k)
                        .cloned()
                        .unwrap_or_else(F::zero)
                })
            })
            .collect();
        MatrixCurveJet::polynomial(new_base, coefficients)
    }
}

fn check_coefficients<F: Field>(coefficients: &[Matrix<F>]) -> Result<usize, MultiplicityError> {
    let first = coefficients
        .first()
        .ok_or_else(|| MultiplicityError::InvalidCurve("no coefficients".into()))?;
    let dim = first.rows();
    if dim == 0 {
        return Err(MultiplicityError::InvalidCurve(
            "dimension must be at least one".into(),
        ));
    }
    if coefficients
        .iter()
        .any(|m| m.rows() != dim || m.cols() != dim)
    {
        return Err(MultiplicityError::InvalidCurve(
            "coefficients must all be square of the same size".into(),
        ));
    }
    Ok(dim)
}
