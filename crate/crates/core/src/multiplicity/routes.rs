use super::{
    projection_pair, AlgebraicOrder, AlgebraicOrderReport, MatrixCurveJet, Multiplicity,
    MultiplicityError, MultiplicityReport, ProjectionPair, Route, Witness,
};
use crate::exactnum::{
    laurent_matrix_inverse, poly_adjugate, poly_det, sandwich, ExactError, Jet, JetMatrix,
    LaurentOrder, Matrix, Order, Poly,
};
use crate::scalar::Field;

/// Orders tried for a polynomial curve: start at the stored order and
/// double up to the degree bound of the determinant, past which a
/// vanishing jet means the determinant is identically zero.
fn polynomial_orders<F: Field>(curve: &MatrixCurveJet<F>) -> Vec<usize> {
    let start = curve.order().max(1);
    let cap = start.max(curve.dim() * curve.degree());
    let mut orders = vec![start];
    while *orders.last().unwrap() < cap {
        orders.push((orders.last().unwrap() * 2).min(cap));
    }
    orders
}

fn report<F>(
    value: Multiplicity,
    route: Route,
    jet: Jet<F>,
    working_order: usize,
) -> MultiplicityReport<F> {
    MultiplicityReport {
        value,
        route,
        witness: Witness::Jet(jet),
        working_order,
    }
}

/// Drive `jet_at` through the working orders of `curve` until its order is
/// known. Truncated curves get a single attempt at their stored order.
fn settle_order<F: Field>(
    curve: &MatrixCurveJet<F>,
    route: Route,
    mut jet_at: impl FnMut(usize) -> Result<Jet<F>, MultiplicityError>,
) -> Result<MultiplicityReport<F>, MultiplicityError> {
    if !curve.is_polynomial() {
        let w = curve.order();
        let jet = jet_at(w)?;
        let value = match jet.ord() {
            Order::Finite(k) => Multiplicity::Finite(k),
            Order::Undetermined { .. } => Multiplicity::UndeterminedAtOrder(w),
        };
        return Ok(report(value, route, jet, w));
    }
    let mut last = None;
    for w in polynomial_orders(curve) {
        let jet = jet_at(w)?;
        if let Order::Finite(k) = jet.ord() {
            return Ok(report(Multiplicity::Finite(k), route, jet, w));
        }
        last = Some((jet, w));
    }
    let (jet, w) = last.expect("at least one working order");
    Ok(report(Multiplicity::Infinite, route, jet, w))
}

/// `χ = ord det L(λ)` at the base point.
pub fn chi_ord_det<F: Field>(curve: &MatrixCurveJet<F>) -> MultiplicityReport<F> {
    settle_order(curve, Route::OrdDet, |w| Ok(curve.jet_matrix(w).det()))
        .expect("determinant route cannot fail")
}

fn checked_pair<F: Field>(
    curve: &MatrixCurveJet<F>,
    pair: Option<&ProjectionPair<F>>,
) -> Result<ProjectionPair<F>, MultiplicityError> {
    match pair {
        Some(pair) => {
            pair.validate(curve.value())?;
            Ok(pair.clone())
        }
        None => Ok(projection_pair(curve.value())),
    }
}

/// Schur operator `L₂₂ - L₂₁ L₁₁⁻¹ L₁₂` at the curve's stored order, in the
/// pair's kernel and cokernel bases. `None` when the kernel is trivial.
pub fn schur_operator<F: Field>(
    curve: &MatrixCurveJet<F>,
    pair: &ProjectionPair<F>,
) -> Result<Option<JetMatrix<F>>, MultiplicityError> {
    pair.validate(curve.value())?;
    schur_at(curve, pair, curve.order())
}

/// [`schur_operator`] at an explicit jet order.
pub fn schur_operator_at<F: Field>(
    curve: &MatrixCurveJet<F>,
    pair: &ProjectionPair<F>,
    order: usize,
) -> Result<Option<JetMatrix<F>>, MultiplicityError> {
    pair.validate(curve.value())?;
    schur_at(curve, pair, order)
}

fn schur_at<F: Field>(
    curve: &MatrixCurveJet<F>,
    pair: &ProjectionPair<F>,
    order: usize,
) -> Result<Option<JetMatrix<F>>, MultiplicityError> {
    let n = pair.kernel_dim();
    if n == 0 {
        return Ok(None);
    }
    let dim = curve.dim();
    let m = dim - n;
    let jets = curve.jet_matrix(order);
    let order = jets.order();
    let left = pair
        .codomain_frame()
        .inverse()
        .expect("validated frame is invertible");
    let b = sandwich(&left, jets.entries(), dim, &pair.domain_frame(), order);
    let block = |rows: std::ops::Range<usize>, cols: std::ops::Range<usize>| -> Vec<Jet<F>> {
        rows.flat_map(|i| cols.clone().map(move |j| (i, j)))
            .map(|(i, j)| b[i * dim + j].clone())
            .collect()
    };
    let l22 = block(m..dim, m..dim);
    if m == 0 {
        return Ok(Some(JetMatrix::new(n, l22)));
    }
    let l11_inv = JetMatrix::new(m, block(0..m, 0..m)).inverse()?;
    let l12 = block(0..m, m..dim);
    let l21 = block(m..dim, 0..m);
    let t = rect_mul(l11_inv.entries(), m, m, &l12, n, order);
    let correction = rect_mul(&l21, n, m, &t, n, order);
    let s = l22.iter().zip(&correction).map(|(a, c)| a.sub(c)).collect();
    Ok(Some(JetMatrix::new(n, s)))
}

fn rect_mul<F: Field>(
    a: &[Jet<F>],
    rows: usize,
    inner: usize,
    b: &[Jet<F>],
    cols: usize,
    order: usize,
) -> Vec<Jet<F>> {
    let mut out = vec![Jet::zero(order); rows * cols];
    for i in 0..rows {
        for k in 0..inner {
            let x = &a[i * inner + k];
            if x.is_zero() {
                continue;
            }
            for j in 0..cols {
                let y = &b[k * cols + j];
                if !y.is_zero() {
                    out[i * cols + j] = out[i * cols + j].add(&x.mul(y));
                }
            }
        }
    }
    out
}

/// `det` of the Schur operator at the stored order; the constant one-jet
/// when the kernel is trivial.
pub fn local_determinant<F: Field>(
    curve: &MatrixCurveJet<F>,
    pair: &ProjectionPair<F>,
) -> Result<Jet<F>, MultiplicityError> {
    local_determinant_at(curve, pair, curve.order())
}

pub fn local_determinant_at<F: Field>(
    curve: &MatrixCurveJet<F>,
    pair: &ProjectionPair<F>,
    order: usize,
) -> Result<Jet<F>, MultiplicityError> {
    pair.validate(curve.value())?;
    local_det_unchecked(curve, pair, order)
}

fn local_det_unchecked<F: Field>(
    curve: &MatrixCurveJet<F>,
    pair: &ProjectionPair<F>,
    order: usize,
) -> Result<Jet<F>, MultiplicityError> {
    Ok(match schur_at(curve, pair, order)? {
        Some(s) => s.det(),
        None => Jet::one(curve.jet_matrix(order).order()),
    })
}

/// `χ = ord det S(λ)` with `S` the Schur operator of `pair` (or of the
/// canonical pair when none is given).
pub fn chi_schur<F: Field>(
    curve: &MatrixCurveJet<F>,
    pair: Option<&ProjectionPair<F>>,
) -> Result<MultiplicityReport<F>, MultiplicityError> {
    let pair = checked_pair(curve, pair)?;
    settle_order(curve, Route::Schur, |w| {
        local_det_unchecked(curve, &pair, w)
    })
}

/// `χ = ord det [P L⁻¹(λ) (I - Q)]⁻¹` with the canonical pair.
pub fn chi_laurent<F: Field>(
    curve: &MatrixCurveJet<F>,
) -> Result<MultiplicityReport<F>, MultiplicityError> {
    chi_laurent_with(curve, &projection_pair(curve.value()))
}

/// Laurent route with an explicit pair. The compressed operator maps the
/// complement of the range onto the kernel; its determinant has a pole of
/// order exactly χ.
pub fn chi_laurent_with<F: Field>(
    curve: &MatrixCurveJet<F>,
    pair: &ProjectionPair<F>,
) -> Result<MultiplicityReport<F>, MultiplicityError> {
    pair.validate(curve.value())?;
    let n = pair.kernel_dim();
    if n == 0 {
        let order = curve.order();
        let witness = Witness::Laurent {
            pole_order: 0,
            unit: Jet::one(order),
        };
        return Ok(MultiplicityReport {
            value: Multiplicity::Finite(0),
            route: Route::Laurent,
            witness,
            working_order: order,
        });
    }
    let frame_inv = pair
        .domain_frame()
        .inverse()
        .expect("validated frame is invertible");
    let dim = curve.dim();
    let kernel_rows = frame_inv.select_rows(&((dim - n)..dim).collect::<Vec<_>>());
    let attempt = |w: usize| -> Result<(isize, Jet<F>, usize), ExactError> {
        let jets = curve.jet_matrix(w);
        let inv = laurent_matrix_inverse(&jets)?;
        let compressed = inv.sandwich(&kernel_rows, pair.range_complement())?;
        let det = compressed.det()?;
        match det.ord() {
            LaurentOrder::Finite(e) => Ok((e, det.unit_part().clone(), jets.order())),
            LaurentOrder::Undetermined { .. } => Err(ExactError::InsufficientJetOrder),
        }
    };
    let finish = |(e, unit, w): (isize, Jet<F>, usize)| {
        debug_assert!(e <= 0, "compressed inverse has a zero, not a pole");
        let chi = e.unsigned_abs();
        MultiplicityReport {
            value: Multiplicity::Finite(chi),
            route: Route::Laurent,
            witness: Witness::Laurent {
                pole_order: chi,
                unit,
            },
            working_order: w,
        }
    };
    if !curve.is_polynomial() {
        return Ok(finish(attempt(curve.order())?));
    }
    laurent_polynomial(curve, &kernel_rows, pair.range_complement())
}

/// Exact Laurent route for polynomial curves: `L⁻¹ = adj L / det L` in
/// `F[λ]`, so the compressed operator is `A(λ) / det L` with `A` polynomial.
fn laurent_polynomial<F: Field>(
    curve: &MatrixCurveJet<F>,
    kernel_rows: &Matrix<F>,
    range_complement: &Matrix<F>,
) -> Result<MultiplicityReport<F>, MultiplicityError> {
    let dim = curve.dim();
    let n = kernel_rows.rows();
    let entries = curve.polynomial_entries();
    let det = poly_det(dim, &entries);
    let d = det.valuation().ok_or(ExactError::SingularToKnownOrder)?;
    let adj = poly_adjugate(dim, &entries);
    let compressed = poly_sandwich(kernel_rows, &adj, dim, range_complement);
    let numerator = poly_det(n, &compressed);
    let a = numerator
        .valuation()
        .ok_or(ExactError::SingularToKnownOrder)?;
    debug_assert!(a <= n * d, "compressed inverse has a zero, not a pole");
    let chi = n * d - a;
    let w = curve.order().max(1);
    let unit_of = |p: &Poly<F>, v: usize| Jet::with_order(p.coeffs()[v..].to_vec(), w);
    let mut unit = unit_of(&numerator, a);
    let det_unit_inv = unit_of(&det, d).inverse()?;
    for _ in 0..n {
        unit = unit.mul(&det_unit_inv);
    }
    Ok(MultiplicityReport {
        value: Multiplicity::Finite(chi),
        route: Route::Laurent,
        witness: Witness::Laurent {
            pole_order: chi,
            unit,
        },
        working_order: w,
    })
}

/// `left · M · right` for a square polynomial matrix `M` and constant frames.
fn poly_sandwich<F: Field>(
    left: &Matrix<F>,
    m: &[Poly<F>],
    m_dim: usize,
    right: &Matrix<F>,
) -> Vec<Poly<F>> {
    let rows = left.rows();
    let cols = right.cols();
    let mut mid = vec![Poly::zero(); rows * m_dim];
    for i in 0..rows {
        for k in 0..m_dim {
            let c = left.get(i, k);
            if c.is_zero() {
                continue;
            }
            for j in 0..m_dim {
                let e = &m[k * m_dim + j];
                if !e.is_zero() {
                    mid[i * m_dim + j] = mid[i * m_dim + j].add(&e.scale(c));
                }
            }
        }
    }
    let mut out = vec![Poly::zero(); rows * cols];
    for i in 0..rows {
        for k in 0..m_dim {
            let e = &mid[i * m_dim + k];
            if e.is_zero() {
                continue;
            }
            for j in 0..cols {
                let c = right.get(k, j);
                if !c.is_zero() {
                    out[i * cols + j] = out[i * cols + j].add(&e.scale(c));
                }
            }
        }
    }
    out
}

/// `κ = ord det - min ord adj`: the pole order of `L(λ)⁻¹` at the base point.
pub fn algebraic_order<F: Field>(
    curve: &MatrixCurveJet<F>,
) -> Result<AlgebraicOrderReport, MultiplicityError> {
    let det_report = chi_ord_det(curve);
    let chi = match det_report.value {
        Multiplicity::Finite(k) => k,
        Multiplicity::Infinite => {
            return Ok(AlgebraicOrderReport {
                kappa: AlgebraicOrder::NotAlgebraic,
                det_order: det_report.value,
                adjugate_min_order: None,
            })
        }
        Multiplicity::UndeterminedAtOrder(_) => return Err(ExactError::SingularToKnownOrder.into()),
    };
    let adj = curve.jet_matrix(det_report.working_order).adjugate();
    let min_adj = adj
        .entries()
        .iter()
        .filter_map(|e| e.ord().finite())
        .min()
        .ok_or(ExactError::InsufficientJetOrder)?;
    Ok(AlgebraicOrderReport {
        kappa: AlgebraicOrder::Kappa(chi - min_adj),
        det_order: det_report.value,
        adjugate_min_order: Some(min_adj),
    })
}

/// Integer matrix literal for tests.
#[cfg(test)]
pub(crate) fn mat(rows: &[&[i64]]) -> Matrix<crate::Rational> {
    Matrix::from_rows(
        rows.iter()
            .map(|r| {
                r.iter()
                    .map(|&v| crate::Rational::from_integer(v.into()))
                    .collect()
            })
            .collect(),
    )
}
