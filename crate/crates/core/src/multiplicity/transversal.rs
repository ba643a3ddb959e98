use super::{
    chi_ord_det, MatrixCurveJet, Multiplicity, MultiplicityError, MultiplicityReport, Route,
    Witness,
};
use crate::exactnum::Matrix;
use crate::scalar::Field;

/// Evidence for or against κ-transversality.
#[derive(Debug, Clone, PartialEq)]
pub struct TransversalityCertificate<F> {
    pub kappa: usize,
    pub holds: bool,
    /// `dim L_j(K_j)` for `j = 1..=κ`.
    pub image_dims: Vec<usize>,
    pub range_dim: usize,
    /// `[L_1(K_1) | ... | L_κ(K_κ) | R(L_0)]`, one basis per block.
    pub assembled: Matrix<F>,
    pub assembled_rank: usize,
}

/// Bases of `K_j = Ker L_0 ∩ ... ∩ Ker L_{j-1}` for `j = 1..=upto`.
pub fn nested_kernels<F: Field>(
    curve: &MatrixCurveJet<F>,
    upto: usize,
) -> Result<Vec<Matrix<F>>, MultiplicityError> {
    let mut out: Vec<Matrix<F>> = Vec::with_capacity(upto);
    for j in 1..=upto {
        let next = match out.last() {
            None => curve.value().kernel_basis(),
            Some(basis) => {
                let lj = coefficient(curve, j - 1)?;
                basis.mul(&lj.mul(basis).kernel_basis())
            }
        };
        out.push(next);
    }
    Ok(out)
}

fn coefficient<F: Field>(
    curve: &MatrixCurveJet<F>,
    j: usize,
) -> Result<Matrix<F>, MultiplicityError> {
    curve.coefficient(j).ok_or_else(|| {
        MultiplicityError::InvalidCurve(format!("coefficient L_{j} is beyond the stored jet"))
    })
}

/// Check `L_1(K_1) ⊕ ... ⊕ L_κ(K_κ) ⊕ R(L_0) = U` and `L_κ(K_κ) ≠ {0}`.
pub fn is_kappa_transversal<F: Field>(
    curve: &MatrixCurveJet<F>,
    kappa: usize,
) -> Result<TransversalityCertificate<F>, MultiplicityError> {
    if kappa == 0 {
        return Err(MultiplicityError::InvalidCurve("κ must be positive".into()));
    }
    let kernels = nested_kernels(curve, kappa)?;
    let range = curve.value().column_space_basis();
    let mut assembled = Matrix::zeros(curve.dim(), 0);
    let mut image_dims = Vec::with_capacity(kappa);
    for (j, kernel) in kernels.iter().enumerate() {
        let image = coefficient(curve, j + 1)?.mul(kernel).column_space_basis();
        image_dims.push(image.cols());
        assembled = assembled.hcat(&image);
    }
    let range_dim = range.cols();
    assembled = assembled.hcat(&range);
    let assembled_rank = assembled.rank();
    let total: usize = image_dims.iter().sum::<usize>() + range_dim;
    let holds = total == curve.dim() && assembled_rank == curve.dim() && image_dims[kappa - 1] > 0;
    Ok(TransversalityCertificate {
        kappa,
        holds,
        image_dims,
        range_dim,
        assembled,
        assembled_rank,
    })
}

/// `χ = Σ_j j · dim L_j(K_j)` at the smallest κ for which the curve is
/// κ-transversal. Zero when `L(λ₀)` is invertible.
pub fn chi_transversal<F: Field>(
    curve: &MatrixCurveJet<F>,
) -> Result<MultiplicityReport<F>, MultiplicityError> {
    let dim = curve.dim();
    if curve.value().rank() == dim {
        return Ok(MultiplicityReport {
            value: Multiplicity::Finite(0),
            route: Route::Transversal,
            witness: Witness::Transversal {
                image_dims: Vec::new(),
            },
            working_order: 0,
        });
    }
    let max_kappa = if curve.is_polynomial() {
        curve.degree()
    } else {
        curve.order()
    };
    for kappa in 1..=max_kappa {
        let cert = is_kappa_transversal(curve, kappa)?;
        if cert.holds {
            let chi = cert
                .image_dims
                .iter()
                .enumerate()
                .map(|(j, d)| (j + 1) * d)
                .sum();
            return Ok(MultiplicityReport {
                value: Multiplicity::Finite(chi),
                route: Route::Transversal,
                witness: Witness::Transversal {
                    image_dims: cert.image_dims,
                },
                working_order: kappa,
            });
        }
        if cert.image_dims.iter().sum::<usize>() + cert.range_dim > dim {
            break;
        }
    }
    Err(MultiplicityError::NotTransversal { max_kappa })
}

/// Run the transversal route on `L·Φ` and check it against `ord det L`.
/// `Φ` must be a polynomial curve with `Φ(λ₀) = I`.
pub fn verify_transversalization<F: Field>(
    curve: &MatrixCurveJet<F>,
    phi: &MatrixCurveJet<F>,
) -> Result<MultiplicityReport<F>, MultiplicityError> {
    if !phi.is_polynomial() {
        return Err(MultiplicityError::InvalidCurve(
            "Φ must be a polynomial curve".into(),
        ));
    }
    if phi.dim() != curve.dim() || phi.base_point() != curve.base_point() {
        return Err(MultiplicityError::InvalidCurve(
            "Φ must share dimension and base point with the curve".into(),
        ));
    }
    if *phi.value() != Matrix::identity(curve.dim()) {
        return Err(MultiplicityError::PhiNotNormalized);
    }
    let composed = curve.compose(phi)?;
    let mut found = chi_transversal(&composed)?;
    let expected = chi_ord_det(curve).value;
    if found.value != expected {
        return Err(MultiplicityError::RouteDisagreement {
            expected,
            found: found.value,
        });
    }
    found.route = Route::Transversalized;
    Ok(found)
}
