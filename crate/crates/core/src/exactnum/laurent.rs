use std::fmt;

use super::{ExactError, Jet, JetMatrix, Matrix, Order};
use crate::scalar::Field;

/// Order of a truncated Laurent series; may be negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LaurentOrder {
    Finite(isize),
    Undetermined { at_least: isize },
}

impl LaurentOrder {
    pub fn finite(self) -> Option<isize> {
        match self {
            LaurentOrder::Finite(k) => Some(k),
            LaurentOrder::Undetermined { .. } => None,
        }
    }
}

/// `λ^(-pole_order) · unit_part`.
///
/// Normal form: when `pole_order > 0` the constant term of `unit_part` is
/// nonzero.
#[derive(Clone, PartialEq)]
pub struct LaurentJet<F> {
    pole_order: usize,
    unit_part: Jet<F>,
}

impl<F: Field> LaurentJet<F> {
    pub fn from_jet(jet: Jet<F>) -> Self {
        LaurentJet {
            pole_order: 0,
            unit_part: jet,
        }
    }

    /// `λ^(-shift) · jet`, brought to normal form.
    pub fn from_shifted(jet: Jet<F>, shift: usize) -> Result<Self, ExactError> {
        normalize(shift, jet)
    }

    /// `numerator / denominator`; the denominator needs a finite order that
    /// is within its known order.
    pub fn quotient(numerator: &Jet<F>, denominator: &Jet<F>) -> Result<Self, ExactError> {
        let d = match denominator.ord() {
            Order::Finite(d) => d,
            Order::Undetermined { .. } => return Err(ExactError::SingularToKnownOrder),
        };
        let unit = denominator.shift_down(d).expect("leading zeros of a jet");
        let series = numerator.mul(&unit.inverse()?);
        normalize(d, series)
    }

    pub fn pole_order(&self) -> usize {
        self.pole_order
    }

    pub fn unit_part(&self) -> &Jet<F> {
        &self.unit_part
    }

    /// Highest exponent whose coefficient is known.
    pub fn top_exponent(&self) -> isize {
        self.unit_part.order() as isize - self.pole_order as isize
    }

    /// Coefficient of `λ^exponent`, `None` above the known range.
    pub fn coeff(&self, exponent: isize) -> Option<F> {
        let idx = exponent + self.pole_order as isize;
        if idx < 0 {
            return Some(F::zero());
        }
        self.unit_part.coeff(idx as usize).cloned()
    }

    pub fn ord(&self) -> LaurentOrder {
        match self.unit_part.ord() {
            Order::Finite(k) => LaurentOrder::Finite(k as isize - self.pole_order as isize),
            Order::Undetermined { at_least } => LaurentOrder::Undetermined {
                at_least: at_least as isize - self.pole_order as isize,
            },
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ExactError> {
        normalize(
            self.pole_order + other.pole_order,
            self.unit_part.mul(&other.unit_part),
        )
    }

    pub fn add(&self, other: &Self) -> Result<Self, ExactError> {
        let pole = self.pole_order.max(other.pole_order);
        let a = self.unit_part.shift_up(pole - self.pole_order);
        let b = other.unit_part.shift_up(pole - other.pole_order);
        normalize(pole, a.add(&b))
    }

    pub fn scale(&self, factor: &F) -> Self {
        if factor.is_zero() {
            // λ^{-k}·0 keeps no information below λ^0 worth a pole.
            let top = self.top_exponent().max(0) as usize;
            return LaurentJet::from_jet(Jet::zero(top));
        }
        LaurentJet {
            pole_order: self.pole_order,
            unit_part: self.unit_part.scale(factor),
        }
    }

    /// Agreement on every exponent known to both.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let low = -(self.pole_order.max(other.pole_order) as isize);
        let high = self.top_exponent().min(other.top_exponent());
        (low..=high).all(|e| self.coeff(e) == other.coeff(e))
    }
}

fn normalize<F: Field>(mut pole: usize, mut series: Jet<F>) -> Result<LaurentJet<F>, ExactError> {
    if pole == 0 {
        return Ok(LaurentJet {
            pole_order: 0,
            unit_part: series,
        });
    }
    let strip = match series.ord() {
        Order::Finite(k) => k.min(pole),
        Order::Undetermined { at_least } => {
            if at_least <= pole {
                return Err(ExactError::InsufficientJetOrder);
            }
            pole
        }
    };
    if strip > 0 {
        series = series
            .shift_down(strip)
            .ok_or(ExactError::InsufficientJetOrder)?;
        pole -= strip;
    }
    Ok(LaurentJet {
        pole_order: pole,
        unit_part: series,
    })
}

impl<F: Field + fmt::Display> fmt::Display for LaurentJet<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pole_order == 0 {
            write!(f, "{}", self.unit_part)
        } else {
            write!(f, "λ^-{}·[{}]", self.pole_order, self.unit_part)
        }
    }
}

impl<F: fmt::Debug> fmt::Debug for LaurentJet<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LaurentJet")
            .field("pole_order", &self.pole_order)
            .field("unit_part", &self.unit_part)
            .finish()
    }
}

/// Rectangular matrix of Laurent jets.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentMatrix<F> {
    rows: usize,
    cols: usize,
    entries: Vec<LaurentJet<F>>,
}

impl<F: Field> LaurentMatrix<F> {
    pub fn new(rows: usize, cols: usize, entries: Vec<LaurentJet<F>>) -> Self {
        assert_eq!(entries.len(), rows * cols, "laurent matrix entry count");
        LaurentMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_jet_matrix(m: &JetMatrix<F>) -> Self {
        let n = m.dim();
        LaurentMatrix::new(
            n,
            n,
            m.entries()
                .iter()
                .cloned()
                .map(LaurentJet::from_jet)
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentJet<F> {
        &self.entries[i * self.cols + j]
    }

    pub fn max_pole(&self) -> usize {
        self.entries
            .iter()
            .map(LaurentJet::pole_order)
            .max()
            .unwrap_or(0)
    }

    /// `(λ^K · M, K)` with `K` the largest pole, as jets of a common order.
    pub fn to_scaled_jets(&self) -> (Vec<Jet<F>>, usize) {
        let k = self.max_pole();
        let jets: Vec<Jet<F>> = self
            .entries
            .iter()
            .map(|e| e.unit_part.shift_up(k - e.pole_order))
            .collect();
        let order = jets.iter().map(Jet::order).min().unwrap_or(0);
        (jets.into_iter().map(|j| j.truncate(order)).collect(), k)
    }

    pub fn from_scaled_jets(
        rows: usize,
        cols: usize,
        jets: Vec<Jet<F>>,
        shift: usize,
    ) -> Result<Self, ExactError> {
        let entries = jets
            .into_iter()
            .map(|j| LaurentJet::from_shifted(j, shift))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LaurentMatrix::new(rows, cols, entries))
    }

    /// `left · self · right` for constant matrices.
    pub fn sandwich(&self, left: &Matrix<F>, right: &Matrix<F>) -> Result<Self, ExactError> {
        assert!(
            self.rows == self.cols,
            "sandwich of a non-square laurent matrix"
        );
        let (jets, k) = self.to_scaled_jets();
        let order = jets.first().map_or(0, Jet::order);
        let out = super::jet_matrix::sandwich(left, &jets, self.rows, right, order);
        LaurentMatrix::from_scaled_jets(left.rows(), right.cols(), out, k)
    }

    /// Product with a jet matrix on the right.
    pub fn mul_jet_matrix(&self, m: &JetMatrix<F>) -> Result<Self, ExactError> {
        assert_eq!(self.cols, m.dim());
        let (jets, k) = self.to_scaled_jets();
        let n = m.dim();
        let order = jets.first().map_or(0, Jet::order).min(m.order());
        let mut out = vec![Jet::zero(order); self.rows * n];
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = &jets[i * self.cols + l];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = m.get(l, j);
                    if !b.is_zero() {
                        out[i * n + j] = out[i * n + j].add(&a.mul(b));
                    }
                }
            }
        }
        LaurentMatrix::from_scaled_jets(self.rows, n, out, k)
    }

    /// Determinant of a square Laurent matrix, computed on `λ^K · M`.
    pub fn det(&self) -> Result<LaurentJet<F>, ExactError> {
        assert!(
            self.rows == self.cols,
            "determinant of a non-square laurent matrix"
        );
        let (jets, k) = self.to_scaled_jets();
        let n = self.rows;
        if n == 0 {
            return Ok(LaurentJet::from_jet(Jet::one(0)));
        }
        let det = JetMatrix::new(n, jets).det();
        LaurentJet::from_shifted(det, n * k)
    }
}

/// `m^{-1} = adj(m) / det(m)`, entrywise Laurent quotients.
pub fn laurent_matrix_inverse<F: Field>(m: &JetMatrix<F>) -> Result<LaurentMatrix<F>, ExactError> {
    let det = m.det();
    if det.ord().finite().is_none() {
        return Err(ExactError::SingularToKnownOrder);
    }
    let adj = m.adjugate();
    let n = m.dim();
    let entries = adj
        .entries()
        .iter()
        .map(|a| LaurentJet::quotient(a, &det))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LaurentMatrix::new(n, n, entries))
}
