use std::fmt;

use super::TorsionError;
use crate::parity::{loop_parity, LoopPath, ParityError};
use crate::scalar::OrderedField;
use crate::sign::Sign;

/// Homomorphism `ℤⁿ → {±1}`, given by its value on each generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Z2Homomorphism {
    signs: Vec<Sign>,
}

impl Z2Homomorphism {
    pub fn new(signs: Vec<Sign>) -> Result<Self, TorsionError> {
        if signs.is_empty() {
            return Err(TorsionError::ZeroDimension);
        }
        Ok(Z2Homomorphism { signs })
    }

    pub fn trivial(n: usize) -> Result<Self, TorsionError> {
        Z2Homomorphism::new(vec![Sign::Plus; n])
    }

    /// From `±1` integers.
    pub fn from_i64s(values: &[i64]) -> Result<Self, TorsionError> {
        let signs = values
            .iter()
            .map(|&v| {
                Sign::from_i64(v)
                    .ok_or_else(|| TorsionError::InvalidSigns(format!("{v} is not ±1")))
            })
            .collect::<Result<_, _>>()?;
        Z2Homomorphism::new(signs)
    }

    /// All `2ⁿ` homomorphisms. Row `k` has generator `i` sent to `-1` when
    /// bit `n-1-i` of `k` is set, so the first generator varies slowest.
    pub fn all(n: usize) -> Result<Vec<Self>, TorsionError> {
        if n == 0 {
            return Err(TorsionError::ZeroDimension);
        }
        if n >= usize::BITS as usize {
            return Err(TorsionError::TooManyClasses);
        }
        Ok((0..1usize << n)
            .map(|k| Z2Homomorphism {
                signs: (0..n)
                    .map(|i| {
                        if (k >> (n - 1 - i)) & 1 == 1 {
                            Sign::Minus
                        } else {
                            Sign::Plus
                        }
                    })
                    .collect(),
            })
            .collect())
    }

    pub fn n(&self) -> usize {
        self.signs.len()
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    /// Number of generators sent to `-1`.
    pub fn negatives(&self) -> usize {
        self.signs.iter().filter(|s| !s.is_plus()).count()
    }

    pub fn is_trivial(&self) -> bool {
        self.negatives() == 0
    }

    /// `Π ε_i^{m_i}`.
    pub fn eval(&self, word: &[i64]) -> Result<Sign, TorsionError> {
        if word.len() != self.n() {
            return Err(TorsionError::DimensionMismatch {
                expected: self.n(),
                found: word.len(),
            });
        }
        Ok(self
            .signs
            .iter()
            .zip(word)
            .map(|(s, &m)| s.pow(m))
            .product())
    }

    /// Pointwise product, the class of the direct sum.
    pub fn product(&self, other: &Self) -> Result<Self, TorsionError> {
        if other.n() != self.n() {
            return Err(TorsionError::DimensionMismatch {
                expected: self.n(),
                found: other.n(),
            });
        }
        Ok(Z2Homomorphism {
            signs: self
                .signs
                .iter()
                .zip(&other.signs)
                .map(|(a, b)| *a * *b)
                .collect(),
        })
    }
}

impl fmt::Display for Z2Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.signs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

/// Value of the intersection morphism of the class `zeta` on the loop class
/// `word`.
pub fn intersection_morphism(zeta: &Z2Homomorphism, word: &[i64]) -> Result<Sign, TorsionError> {
    zeta.eval(word)
}

/// Orientable exactly when every generator loop preserves orientation.
pub fn is_orientable(zeta: &Z2Homomorphism) -> bool {
    zeta.is_trivial()
}

/// The homomorphism whose value on generator `i` is the loop parity of the
/// `i`-th representative loop.
pub fn loop_to_class<F: OrderedField>(
    generators: &[LoopPath<F>],
) -> Result<Z2Homomorphism, ParityError> {
    let signs = generators
        .iter()
        .map(|l| loop_parity(l).map(|v| v.sign))
        .collect::<Result<Vec<_>, _>>()?;
    Z2Homomorphism::new(signs).map_err(|e| ParityError::InvalidLoop(e.to_string()))
}
