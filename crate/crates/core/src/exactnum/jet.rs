use std::fmt;

use super::ExactError;
use crate::scalar::Field;

/// Order of vanishing of a truncated series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Order {
    /// Index of the first nonzero coefficient.
    Finite(usize),
    /// Every stored coefficient vanishes; the true order is at least this.
    Undetermined { at_least: usize },
}

impl Order {
    pub fn finite(self) -> Option<usize> {
        match self {
            Order::Finite(k) => Some(k),
            Order::Undetermined { .. } => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(k) => write!(f, "{k}"),
            Order::Undetermined { at_least } => write!(f, ">= {at_least}"),
        }
    }
}

/// Power series in `λ` known modulo `λ^(order + 1)`.
///
/// The coefficient vector always has exactly `order + 1` entries.
#[derive(Clone, PartialEq)]
pub struct Jet<F> {
    coeffs: Vec<F>,
}

impl<F: Field> Jet<F> {
    /// Jet whose known order is `coeffs.len() - 1`.
    ///
    /// # Panics
    /// If `coeffs` is empty.
    pub fn new(coeffs: Vec<F>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a jet stores at least its constant term"
        );
        Jet { coeffs }
    }

    /// Jet of the given order; `coeffs` is zero-padded or truncated to fit.
    pub fn with_order(mut coeffs: Vec<F>, order: usize) -> Self {
        coeffs.resize(order + 1, F::zero());
        Jet { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Jet::with_order(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Jet::constant(F::one(), order)
    }

    pub fn constant(value: F, order: usize) -> Self {
        Jet::with_order(vec![value], order)
    }

    /// `coeff · λ^power`, truncated to `order`.
    pub fn monomial(coeff: F, power: usize, order: usize) -> Self {
        let mut jet = Jet::zero(order);
        if power <= order {
            jet.coeffs[power] = coeff;
        }
        jet
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, power: usize) -> Option<&F> {
        self.coeffs.get(power)
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    /// True when every stored coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_unit(&self) -> bool {
        !self.coeffs[0].is_zero()
    }

    pub fn truncate(&self, order: usize) -> Self {
        let keep = order.min(self.order());
        Jet {
            coeffs: self.coeffs[..=keep].to_vec(),
        }
    }

    pub fn ord(&self) -> Order {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(k) => Order::Finite(k),
            None => Order::Undetermined {
                at_least: self.order() + 1,
            },
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|k| self.coeffs[k].clone() + other.coeffs[k].clone())
            .collect();
        Jet { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|k| self.coeffs[k].clone() - other.coeffs[k].clone())
            .collect();
        Jet { coeffs }
    }

    pub fn neg(&self) -> Self {
        Jet {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, factor: &F) -> Self {
        Jet {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.clone() * factor.clone())
                .collect(),
        }
    }

    /// Truncated Cauchy product; the result is known to the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut coeffs = vec![F::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Jet { coeffs }
    }

    /// Multiplicative inverse in the truncated ring.
    pub fn inverse(&self) -> Result<Self, ExactError> {
        if !self.is_unit() {
            return Err(ExactError::NotAUnit);
        }
        let order = self.order();
        let inv0 = F::one() / self.coeffs[0].clone();
        let mut out: Vec<F> = Vec::with_capacity(order + 1);
        out.push(inv0.clone());
        for k in 1..=order {
            let mut acc = F::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc = acc + self.coeffs[j].clone() * out[k - j].clone();
                }
            }
            out.push(-(acc * inv0.clone()));
        }
        Ok(Jet { coeffs: out })
    }

    /// Multiply by `λ^shift`; the known order grows by `shift`.
    pub fn shift_up(&self, shift: usize) -> Self {
        let mut coeffs = vec![F::zero(); shift];
        coeffs.extend(self.coeffs.iter().cloned());
        Jet { coeffs }
    }

    /// Divide by `λ^shift`, which must divide the jet; the known order drops
    /// by `shift`. Returns `None` when the first `shift` coefficients are not
    /// all zero or nothing would remain.
    pub fn shift_down(&self, shift: usize) -> Option<Self> {
        if shift > self.order() || self.coeffs[..shift].iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Jet {
            coeffs: self.coeffs[shift..].to_vec(),
        })
    }

    /// Agreement up to the smaller of the two known orders.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let order = self.order().min(other.order());
        self.coeffs[..=order] == other.coeffs[..=order]
    }

    /// Evaluate the stored polynomial part at `x`.
    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc * x.clone() + c.clone())
    }
}

impl<F: Field + fmt::Display> fmt::Display for Jet<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})λ")?,
                _ => write!(f, "({c})λ^{k}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O(λ^{})", self.order() + 1)
    }
}

impl<F: fmt::Debug> fmt::Debug for Jet<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Jet").field("coeffs", &self.coeffs).finish()
    }
}
