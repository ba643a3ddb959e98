use super::poly::poly_det;
use super::{ExactError, Jet, Matrix, Poly};
use crate::scalar::Field;

/// Largest dimension handled by cofactor expansion; larger determinants go
/// through fraction-free elimination on the polynomial lift.
pub const COFACTOR_MAX_DIM: usize = 5;

/// Square matrix of jets sharing one known order.
#[derive(Debug, Clone, PartialEq)]
pub struct JetMatrix<F> {
    dim: usize,
    order: usize,
    entries: Vec<Jet<F>>,
}

impl<F: Field> JetMatrix<F> {
    /// Entries are truncated to the smallest order among them.
    ///
    /// # Panics
    /// If `dim == 0` or `entries.len() != dim * dim`.
    pub fn new(dim: usize, entries: Vec<Jet<F>>) -> Self {
        assert!(dim >= 1, "jet matrices have dimension at least one");
        assert_eq!(entries.len(), dim * dim, "jet matrix entry count");
        let order = entries.iter().map(Jet::order).min().unwrap();
        let entries = entries.into_iter().map(|e| e.truncate(order)).collect();
        JetMatrix {
            dim,
            order,
            entries,
        }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Jet<F>) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        JetMatrix::new(dim, entries)
    }

    /// `Σ_j coefficients[j] λ^j` truncated (or zero-padded) to `order`.
    pub fn from_coefficients(coefficients: &[Matrix<F>], order: usize) -> Self {
        let dim = coefficients[0].rows();
        JetMatrix::from_fn(dim, |i, j| {
            Jet::with_order(
                coefficients.iter().map(|c| c.get(i, j).clone()).collect(),
                order,
            )
        })
    }

    pub fn identity(dim: usize, order: usize) -> Self {
        JetMatrix::from_fn(dim, |i, j| {
            if i == j {
                Jet::one(order)
            } else {
                Jet::zero(order)
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &Jet<F> {
        &self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[Jet<F>] {
        &self.entries
    }

    /// Coefficient matrix of `λ^power`.
    pub fn coefficient(&self, power: usize) -> Matrix<F> {
        Matrix::from_fn(self.dim, self.dim, |i, j| {
            self.get(i, j).coeff(power).cloned().unwrap_or_else(F::zero)
        })
    }

    pub fn truncate(&self, order: usize) -> Self {
        JetMatrix::new(
            self.dim,
            self.entries.iter().map(|e| e.truncate(order)).collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        JetMatrix::new(
            self.dim,
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        JetMatrix::new(
            self.dim,
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.sub(b))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let order = self.order.min(other.order);
        JetMatrix::from_fn(self.dim, |i, j| {
            (0..self.dim).fold(Jet::zero(order), |acc, k| {
                let a = self.get(i, k);
                let b = other.get(k, j);
                if a.is_zero() || b.is_zero() {
                    acc
                } else {
                    acc.add(&a.mul(b))
                }
            })
        })
    }

    /// Determinant in the truncated ring.
    pub fn det(&self) -> Jet<F> {
        det_of(self.dim, &self.entries, self.order)
    }

    /// Transposed cofactor matrix: `adj(M) · M = det(M) · I`.
    pub fn adjugate(&self) -> JetMatrix<F> {
        let n = self.dim;
        if n == 1 {
            return JetMatrix::identity(1, self.order);
        }
        let mut out = vec![Jet::zero(self.order); n * n];
        for i in 0..n {
            for j in 0..n {
                let minor: Vec<Jet<F>> = (0..n)
                    .filter(|&r| r != i)
                    .flat_map(|r| (0..n).filter(move |&c| c != j).map(move |c| (r, c)))
                    .map(|(r, c)| self.get(r, c).clone())
                    .collect();
                let cofactor = det_of(n - 1, &minor, self.order);
                out[j * n + i] = if (i + j) % 2 == 0 {
                    cofactor
                } else {
                    cofactor.neg()
                };
            }
        }
        JetMatrix::new(n, out)
    }

    /// Inverse when the constant term is an invertible matrix; elimination
    /// always pivots on a unit so no precision is lost.
    pub fn inverse(&self) -> Result<Self, ExactError> {
        let n = self.dim;
        let order = self.order;
        let mut a: Vec<Vec<Jet<F>>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut inv: Vec<Vec<Jet<F>>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            Jet::one(order)
                        } else {
                            Jet::zero(order)
                        }
                    })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let p = (col..n)
                .find(|&r| a[r][col].is_unit())
                .ok_or(ExactError::NotAUnit)?;
            a.swap(col, p);
            inv.swap(col, p);
            let pivot_inv = a[col][col].inverse()?;
            a[col] = a[col].iter().map(|x| x.mul(&pivot_inv)).collect();
            inv[col] = inv[col].iter().map(|x| x.mul(&pivot_inv)).collect();
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for c in 0..n {
                    let t = a[r][c].sub(&factor.mul(&a[col][c]));
                    a[r][c] = t;
                    let t = inv[r][c].sub(&factor.mul(&inv[col][c]));
                    inv[r][c] = t;
                }
            }
        }
        Ok(JetMatrix::new(n, inv.into_iter().flatten().collect()))
    }
}

/// Rectangular jet matrix product helper: `left · M · right` for constant
/// rational matrices, used to express operators in chosen bases.
pub fn sandwich<F: Field>(
    left: &Matrix<F>,
    m: &[Jet<F>],
    m_dim: usize,
    right: &Matrix<F>,
    order: usize,
) -> Vec<Jet<F>> {
    let rows = left.rows();
    let cols = right.cols();
    let mut mid = vec![Jet::zero(order); rows * m_dim];
    for i in 0..rows {
        for k in 0..m_dim {
            let a = left.get(i, k);
            if a.is_zero() {
                continue;
            }
            for j in 0..m_dim {
                let e = &m[k * m_dim + j];
                if e.is_zero() {
                    continue;
                }
                mid[i * m_dim + j] = mid[i * m_dim + j].add(&e.scale(a));
            }
        }
    }
    let mut out = vec![Jet::zero(order); rows * cols];
    for i in 0..rows {
        for k in 0..m_dim {
            let e = &mid[i * m_dim + k];
            if e.is_zero() {
                continue;
            }
            for j in 0..cols {
                let b = right.get(k, j);
                if b.is_zero() {
                    continue;
                }
                out[i * cols + j] = out[i * cols + j].add(&e.scale(b));
            }
        }
    }
    out
}

fn det_of<F: Field>(n: usize, entries: &[Jet<F>], order: usize) -> Jet<F> {
    if n == 0 {
        return Jet::one(order);
    }
    if n <= COFACTOR_MAX_DIM {
        det_cofactor(n, entries, order)
    } else {
        det_bareiss_lift(n, entries, order)
    }
}

/// Laplace expansion along successive rows, memoised over column subsets so
/// each minor is expanded once.
fn det_cofactor<F: Field>(n: usize, entries: &[Jet<F>], order: usize) -> Jet<F> {
    // minors[mask] = det(rows 0..popcount(mask), columns in mask)
    let mut minors: Vec<Option<Jet<F>>> = vec![None; 1 << n];
    minors[0] = Some(Jet::one(order));
    for row in 0..n {
        for mask in 0usize..(1 << n) {
            if mask.count_ones() as usize != row + 1 {
                continue;
            }
            let mut acc = Jet::zero(order);
            let mut position = 0;
            for col in 0..n {
                if mask & (1 << col) == 0 {
                    continue;
                }
                let entry = &entries[row * n + col];
                let sub = minors[mask & !(1 << col)].as_ref().unwrap();
                if !entry.is_zero() && !sub.is_zero() {
                    let term = entry.mul(sub);
                    // expansion along the last row of a (row+1)×(row+1) block
                    acc = if (row + position) % 2 == 0 {
                        acc.add(&term)
                    } else {
                        acc.sub(&term)
                    };
                }
                position += 1;
            }
            minors[mask] = Some(acc);
        }
    }
    minors[(1 << n) - 1].take().unwrap()
}

/// Bareiss elimination on the exact polynomial lift of the entries, then
/// truncation.
fn det_bareiss_lift<F: Field>(n: usize, entries: &[Jet<F>], order: usize) -> Jet<F> {
    let lifted: Vec<Poly<F>> = entries
        .iter()
        .map(|e| Poly::new(e.coeffs().to_vec()))
        .collect();
    Jet::with_order(poly_det(n, &lifted).coeffs().to_vec(), order)
}
