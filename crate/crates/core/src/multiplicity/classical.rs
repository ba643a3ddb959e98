use super::{require_square, MultiplicityError};
use crate::exactnum::Matrix;
use crate::scalar::Field;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassicalMultiplicityReport {
    /// Smallest `ν ≥ 1` with `Ker (μI-K)^ν = Ker (μI-K)^{ν+1}`.
    pub ascent: usize,
    /// `dim Ker (μI-K)^ν`.
    pub multiplicity: usize,
}

/// Algebraic multiplicity of `μ` as an eigenvalue of `K`, via the kernel
/// chain of powers of `μI - K`.
pub fn classical_multiplicity<F: Field>(
    k: &Matrix<F>,
    mu: &F,
) -> Result<ClassicalMultiplicityReport, MultiplicityError> {
    require_square(k)?;
    let n = k.rows();
    let a = Matrix::identity(n).scale(mu).sub(k);
    let mut power = a.clone();
    let mut dim = n - power.rank();
    let mut ascent = 1;
    loop {
        power = power.mul(&a);
        let next = n - power.rank();
        if next == dim {
            return Ok(ClassicalMultiplicityReport {
                ascent,
                multiplicity: dim,
            });
        }
        dim = next;
        ascent += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiplicity::routes::mat;
    use crate::Rational;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn jordan_block() {
        let r = classical_multiplicity(&mat(&[&[0, 1], &[0, 0]]), &q(0)).unwrap();
        assert_eq!((r.ascent, r.multiplicity), (2, 2));
    }

    #[test]
    fn diagonal() {
        let k = mat(&[&[3, 0, 0, 0], &[0, 5, 0, 0], &[0, 0, 3, 0], &[0, 0, 0, 3]]);
        let r = classical_multiplicity(&k, &q(3)).unwrap();
        assert_eq!((r.ascent, r.multiplicity), (1, 3));
    }

    #[test]
    fn companion_matrix() {
        // (λ-1)²(λ-2) = λ³ - 4λ² + 5λ - 2
        let k = mat(&[&[0, 0, 2], &[1, 0, -5], &[0, 1, 4]]);
        let r = classical_multiplicity(&k, &q(1)).unwrap();
        assert_eq!((r.ascent, r.multiplicity), (2, 2));
    }

    #[test]
    fn not_an_eigenvalue() {
        let r = classical_multiplicity(&mat(&[&[1, 0], &[0, 2]]), &q(7)).unwrap();
        assert_eq!((r.ascent, r.multiplicity), (1, 0));
    }
}
