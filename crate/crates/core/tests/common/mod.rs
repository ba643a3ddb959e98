//! Random generators shared by the integration suites.
#![allow(dead_code)]

use fredholm_core::exactnum::Matrix as GMatrix;
use fredholm_core::multiplicity::Multiplicity;
use fredholm_core::{multiplicity, Matrix, MatrixCurveJet, PolynomialPath, Rational};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Small rational, mostly an integer.
pub fn rational<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    let den = *[1, 1, 1, 2, 3].choose(rng).unwrap();
    q(rng.gen_range(-bound..=bound), den)
}

pub fn random_matrix<R: Rng>(
    rng: &mut R,
    rows: usize,
    cols: usize,
    bound: i64,
    density: f64,
) -> Matrix {
    GMatrix::from_fn(rows, cols, |_, _| {
        if rng.gen_bool(density) {
            rational(rng, bound)
        } else {
            q(0, 1)
        }
    })
}

pub fn invertible_matrix<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    loop {
        let m = random_matrix(rng, n, n, 3, 0.7);
        if m.is_invertible() {
            return m;
        }
    }
}

/// Matrix of rank exactly `rank`.
pub fn rank_matrix<R: Rng>(rng: &mut R, n: usize, rank: usize) -> Matrix {
    loop {
        let m = random_matrix(rng, n, rank, 3, 0.8).mul(&random_matrix(rng, rank, n, 3, 0.8));
        if m.rank() == rank {
            return m;
        }
    }
}

/// Product of coefficient lists of matrix polynomials.
pub fn poly_mul(a: &[Matrix], b: &[Matrix]) -> Vec<Matrix> {
    let n = a[0].rows();
    let mut out = vec![GMatrix::zeros(n, n); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

/// Polynomial matrix of the given degree whose constant term is invertible.
pub fn unit_poly<R: Rng>(rng: &mut R, n: usize, degree: usize) -> Vec<Matrix> {
    let mut out = vec![invertible_matrix(rng, n)];
    for _ in 0..degree {
        out.push(random_matrix(rng, n, n, 2, 0.5));
    }
    out
}

/// `diag(λ^{k_1}, ..., λ^{k_n})`.
pub fn monomial_diag(powers: &[usize]) -> Vec<Matrix> {
    let top = powers.iter().copied().max().unwrap_or(0);
    (0..=top)
        .map(|j| {
            GMatrix::diagonal(
                powers
                    .iter()
                    .map(|&k| if k == j { q(1, 1) } else { q(0, 1) })
                    .collect(),
            )
        })
        .collect()
}

/// `A(λ) · diag(λ^{k_i}) · B(λ)` with unit `A`, `B`: χ is exactly `Σ k_i`.
pub fn smith_curve<R: Rng>(rng: &mut R, n: usize, max_degree: usize) -> (MatrixCurveJet, usize) {
    let max_power = max_degree.min(2);
    let powers: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=max_power)).collect();
    let top = powers.iter().copied().max().unwrap_or(0);
    let spare = max_degree - top;
    let da = rng.gen_range(0..=spare.min(2));
    let db = rng.gen_range(0..=(spare - da).min(2));
    let coeffs = poly_mul(
        &poly_mul(&unit_poly(rng, n, da), &monomial_diag(&powers)),
        &unit_poly(rng, n, db),
    );
    let base = rational(rng, 2);
    (
        MatrixCurveJet::polynomial(base, coeffs).unwrap(),
        powers.iter().sum(),
    )
}

/// Generic polynomial curve with a low-rank value at the base point.
pub fn low_rank_curve<R: Rng>(rng: &mut R, n: usize, degree: usize) -> MatrixCurveJet {
    let rank = rng.gen_range(0..n);
    let mut coeffs = vec![rank_matrix(rng, n, rank)];
    for _ in 0..degree.max(1) {
        coeffs.push(random_matrix(rng, n, n, 3, 0.6));
    }
    MatrixCurveJet::polynomial(rational(rng, 2), coeffs).unwrap()
}

/// Sparse random polynomial curve; often singular in structured ways.
pub fn sparse_curve<R: Rng>(rng: &mut R, n: usize, degree: usize) -> MatrixCurveJet {
    let coeffs = (0..=degree.max(1))
        .map(|_| random_matrix(rng, n, n, 2, 0.3))
        .collect();
    MatrixCurveJet::polynomial(rational(rng, 2), coeffs).unwrap()
}

/// A random polynomial curve with `N ≤ 6`, degree `≤ 8` and `det ≢ 0`.
pub fn random_curve<R: Rng>(rng: &mut R) -> MatrixCurveJet {
    loop {
        let n = rng.gen_range(1..=6);
        let degree = rng.gen_range(1..=8);
        let curve = match rng.gen_range(0..10) {
            0..=4 => smith_curve(rng, n, degree).0,
            5..=7 => {
                let d = rng.gen_range(1..=3);
                low_rank_curve(rng, n, d)
            }
            _ => {
                let d = rng.gen_range(1..=3);
                sparse_curve(rng, n, d)
            }
        };
        if multiplicity::chi_ord_det(&curve).value != Multiplicity::Infinite {
            return curve;
        }
    }
}

/// Random admissible polynomial path with `N ≤ 5` and degree `≤ 6`.
pub fn random_path<R: Rng>(rng: &mut R) -> PolynomialPath {
    loop {
        let n = rng.gen_range(1..=5);
        let degree = rng.gen_range(1..=6);
        let coeffs: Vec<Matrix> = if rng.gen_bool(0.5) {
            (0..=degree.min(3))
                .map(|_| random_matrix(rng, n, n, 3, 0.6))
                .collect()
        } else {
            // Diagonal factors with prescribed rational roots, conjugated.
            let roots: Vec<Vec<Rational>> = (0..n)
                .map(|_| {
                    (0..rng.gen_range(0..=2))
                        .map(|_| rational(rng, 2))
                        .collect()
                })
                .collect();
            let entries: Vec<_> = roots
                .iter()
                .map(|rs| {
                    rs.iter()
                        .fold(fredholm_core::Poly::constant(q(1, 1)), |p, r| {
                            p.mul(&fredholm_core::Poly::linear_root(r.clone()))
                        })
                })
                .collect();
            let diag = PolynomialPath::diagonal(q(-1, 1), q(1, 1), &entries).unwrap();
            let a = invertible_matrix(rng, n);
            diag.coefficients().iter().map(|c| a.mul(c)).collect()
        };
        let a = rational(rng, 3);
        let b = a.clone() + q(rng.gen_range(1..=4), *[1, 2].choose(rng).unwrap());
        let Ok(path) = PolynomialPath::new(a, b, coeffs) else {
            continue;
        };
        if path.is_admissible() {
            return path;
        }
    }
}
