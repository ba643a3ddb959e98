use super::{require_square, MultiplicityError};
use crate::exactnum::Matrix;
use crate::scalar::Field;

/// Projections `P` onto `Ker T` and `Q` onto `R(T)`, with bases of the four
/// blocks `U = Kc ⊕ Ker T` (domain) and `U = R(T) ⊕ C` (codomain).
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionPair<F> {
    p: Matrix<F>,
    q: Matrix<F>,
    kernel: Matrix<F>,
    kernel_complement: Matrix<F>,
    range: Matrix<F>,
    range_complement: Matrix<F>,
}

/// Deterministic pair: kernel and range bases from the reduced row echelon
/// form, complements spanned by the leftmost coordinate vectors that extend
/// them.
pub fn projection_pair<F: Field>(t: &Matrix<F>) -> ProjectionPair<F> {
    let kernel = t.kernel_basis();
    let range = t.column_space_basis();
    let kernel_complement = Matrix::complement_by_coordinates(&kernel);
    let range_complement = Matrix::complement_by_coordinates(&range);
    ProjectionPair::assemble(kernel, kernel_complement, range, range_complement)
        .expect("coordinate complements always split the space")
}

impl<F: Field> ProjectionPair<F> {
    /// Pair built from explicit complements of `Ker T` and `R(T)`.
    pub fn from_complements(
        t: &Matrix<F>,
        kernel_complement: Matrix<F>,
        range_complement: Matrix<F>,
    ) -> Result<Self, MultiplicityError> {
        require_square(t)?;
        let kernel = t.kernel_basis();
        let range = t.column_space_basis();
        let n = t.rows();
        if kernel_complement.rows() != n || range_complement.rows() != n {
            return Err(MultiplicityError::InvalidProjectionPair(
                "complement bases have the wrong length".into(),
            ));
        }
        ProjectionPair::assemble(kernel, kernel_complement, range, range_complement)
    }

    /// Pair given by its two projections; checked against `T`.
    pub fn from_projections(
        t: &Matrix<F>,
        p: Matrix<F>,
        q: Matrix<F>,
    ) -> Result<Self, MultiplicityError> {
        require_square(t)?;
        let n = t.rows();
        if p.rows() != n || p.cols() != n || q.rows() != n || q.cols() != n {
            return Err(MultiplicityError::InvalidProjectionPair(
                "projection sizes do not match".into(),
            ));
        }
        let pair = ProjectionPair {
            kernel: p.column_space_basis(),
            kernel_complement: p.kernel_basis(),
            range: q.column_space_basis(),
            range_complement: q.kernel_basis(),
            p,
            q,
        };
        pair.validate(t)?;
        Ok(pair)
    }

    fn assemble(
        kernel: Matrix<F>,
        kernel_complement: Matrix<F>,
        range: Matrix<F>,
        range_complement: Matrix<F>,
    ) -> Result<Self, MultiplicityError> {
        let p = block_projection(&kernel_complement, &kernel, false).ok_or_else(|| {
            MultiplicityError::InvalidProjectionPair("Kc and Ker T do not split the space".into())
        })?;
        let q = block_projection(&range, &range_complement, true).ok_or_else(|| {
            MultiplicityError::InvalidProjectionPair("R(T) and C do not split the space".into())
        })?;
        Ok(ProjectionPair {
            p,
            q,
            kernel,
            kernel_complement,
            range,
            range_complement,
        })
    }

    /// Check `P² = P`, `Q² = Q`, `R(P) = Ker T`, `R(Q) = R(T)`.
    pub fn validate(&self, t: &Matrix<F>) -> Result<(), MultiplicityError> {
        let fail = |msg: &str| Err(MultiplicityError::InvalidProjectionPair(msg.into()));
        let n = t.rows();
        if self.p.rows() != n || self.q.rows() != n {
            return fail("pair and operator have different sizes");
        }
        if !self.p.is_idempotent() {
            return fail("P is not idempotent");
        }
        if !self.q.is_idempotent() {
            return fail("Q is not idempotent");
        }
        let rank_t = t.rank();
        if !t.mul(&self.p).is_zero() || self.p.rank() != n - rank_t {
            return fail("range of P is not the kernel");
        }
        if self.q.mul(t) != *t || self.q.rank() != rank_t {
            return fail("range of Q is not the range");
        }
        Ok(())
    }

    pub fn p(&self) -> &Matrix<F> {
        &self.p
    }

    pub fn q(&self) -> &Matrix<F> {
        &self.q
    }

    /// Basis of `Ker T` (columns).
    pub fn kernel(&self) -> &Matrix<F> {
        &self.kernel
    }

    /// Basis of `R(I - P)`.
    pub fn kernel_complement(&self) -> &Matrix<F> {
        &self.kernel_complement
    }

    /// Basis of `R(T)`.
    pub fn range(&self) -> &Matrix<F> {
        &self.range
    }

    /// Basis of `R(I - Q)`.
    pub fn range_complement(&self) -> &Matrix<F> {
        &self.range_complement
    }

    /// `n = dim Ker T`.
    pub fn kernel_dim(&self) -> usize {
        self.kernel.cols()
    }

    /// `[Kc | K]`.
    pub fn domain_frame(&self) -> Matrix<F> {
        self.kernel_complement.hcat(&self.kernel)
    }

    /// `[R | C]`.
    pub fn codomain_frame(&self) -> Matrix<F> {
        self.range.hcat(&self.range_complement)
    }
}

/// Projection onto the span of the `keep_first` (or second) block along the
/// other one, given bases of two complementary subspaces.
fn block_projection<F: Field>(
    first: &Matrix<F>,
    second: &Matrix<F>,
    keep_first: bool,
) -> Option<Matrix<F>> {
    let frame = first.hcat(second);
    if !frame.is_square() {
        return None;
    }
    let inverse = frame.inverse()?;
    let split = first.cols();
    let selector = Matrix::diagonal(
        (0..frame.cols())
            .map(|i| {
                if (i < split) == keep_first {
                    F::one()
                } else {
                    F::zero()
                }
            })
            .collect(),
    );
    Some(frame.mul(&selector).mul(&inverse))
}
