use std::fmt;

use super::theta::{theta_sum_with_decay, FlatTorus};
use super::{TorsionError, Z2Homomorphism};
use crate::scalar::Real;
use crate::sign::Sign;

/// Values closer than this are reported once by [`torsion_value_set`].
pub const DEDUP_TOLERANCE: f64 = 1e-12;

/// `2^{-m/4}`: the exact value of Λ on the standard torus for a class with
/// `m` generators sent to `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ClosedForm {
    pub negatives: usize,
}

impl ClosedForm {
    pub fn value<T: Real>(self) -> T {
        T::lit(2.0).powf(-T::lit(self.negatives as f64) / T::lit(4.0))
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.negatives;
        if m == 0 {
            return write!(f, "1");
        }
        let g = gcd(m, 4);
        let (num, den) = (m / g, 4 / g);
        if den == 1 {
            write!(f, "2^(-{num})")
        } else if num == 1 {
            write!(f, "2^(-1/{den})")
        } else {
            write!(f, "{}^(-1/{den})", 1u128 << num)
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Contribution of one generator to Λ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorContribution<T> {
    pub sign: Sign,
    /// `S(ε_i) / S(+1)`.
    pub ratio: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TorsionReport<T> {
    pub zeta: Z2Homomorphism,
    pub lambda: T,
    pub cutoff: usize,
    /// Bound on `|lambda - Λ|` from the discarded theta tails and rounding.
    pub error_bound: T,
    /// Set when Λ was decided without summation.
    pub exact: bool,
    /// Available on the standard torus.
    pub closed_form: Option<ClosedForm>,
    pub factors: Vec<FactorContribution<T>>,
}

fn check_dims<T: Real>(torus: &FlatTorus<T>, zeta: &Z2Homomorphism) -> Result<(), TorsionError> {
    if zeta.n() != torus.n() {
        return Err(TorsionError::DimensionMismatch {
            expected: torus.n(),
            found: zeta.n(),
        });
    }
    Ok(())
}

fn closed_form<T: Real>(torus: &FlatTorus<T>, zeta: &Z2Homomorphism) -> Option<ClosedForm> {
    torus.is_standard().then(|| ClosedForm {
        negatives: zeta.negatives(),
    })
}

fn rounding<T: Real>(cutoff: usize, factors: usize) -> T {
    T::lit((4 * (cutoff + 1) + 2 * factors) as f64) * T::epsilon()
}

/// `Λ(ζ) = Σ_φ ζ(φ) p̃_1(x̃, φ(x̃)) / Σ_φ p̃_1(x̃, φ(x̃))`, evaluated through
/// the per-generator factorization `Π_i S(ε_i) / S(+1)`. The trivial
/// class returns exactly `1`.
pub fn torsion_invariant<T: Real>(
    torus: &FlatTorus<T>,
    zeta: &Z2Homomorphism,
    cutoff: usize,
) -> Result<TorsionReport<T>, TorsionError> {
    check_dims(torus, zeta)?;
    if cutoff == 0 {
        return Err(TorsionError::CutoffTooSmall {
            cutoff,
            required: 1,
        });
    }
    let closed_form = closed_form(torus, zeta);
    if zeta.is_trivial() {
        let factors = zeta
            .signs()
            .iter()
            .map(|&sign| FactorContribution {
                sign,
                ratio: T::one(),
            })
            .collect();
        return Ok(TorsionReport {
            zeta: zeta.clone(),
            lambda: T::one(),
            cutoff,
            error_bound: T::zero(),
            exact: true,
            closed_form,
            factors,
        });
    }
    let q = torus.decay();
    let plain = theta_sum_with_decay(q, false, cutoff)?;
    let alt = theta_sum_with_decay(q, true, cutoff)?;
    let ratio = alt.value / plain.value;
    let factors: Vec<_> = zeta
        .signs()
        .iter()
        .map(|&sign| FactorContribution {
            sign,
            ratio: if sign.is_plus() { T::one() } else { ratio },
        })
        .collect();
    let lambda = factors.iter().fold(T::one(), |acc, f| acc * f.ratio);
    let per_factor =
        (alt.tail_bound + ratio.abs() * plain.tail_bound) / (plain.value - plain.tail_bound);
    let m = T::lit(zeta.negatives() as f64);
    let error_bound = m * per_factor + rounding(cutoff, zeta.n());
    Ok(TorsionReport {
        zeta: zeta.clone(),
        lambda,
        cutoff,
        error_bound,
        exact: false,
        closed_form,
        factors,
    })
}

/// Λ of the direct sum `E ⊕ F`, evaluated by the additive formula
/// `Σ_φ ζ_E(φ) ζ_F(φ) μ_x([φ])` coordinate by coordinate over the
/// normalized Wiener weights.
pub fn torsion_direct_sum<T: Real>(
    zeta1: &Z2Homomorphism,
    zeta2: &Z2Homomorphism,
    torus: &FlatTorus<T>,
    cutoff: usize,
) -> Result<TorsionReport<T>, TorsionError> {
    check_dims(torus, zeta1)?;
    check_dims(torus, zeta2)?;
    if cutoff == 0 {
        return Err(TorsionError::CutoffTooSmall {
            cutoff,
            required: 1,
        });
    }
    let q = torus.decay();
    let plain = theta_sum_with_decay(q, false, cutoff)?;
    let weight = |m: usize| (-q * T::lit((m * m) as f64)).exp() / plain.value;
    let factors: Vec<_> = zeta1
        .signs()
        .iter()
        .zip(zeta2.signs())
        .map(|(&a, &b)| {
            let ratio = (1..=cutoff).fold(weight(0), |acc, m| {
                let pair = T::lit(2.0) * weight(m);
                if (a.pow(m as i64) * b.pow(m as i64)).is_plus() {
                    acc + pair
                } else {
                    acc - pair
                }
            });
            FactorContribution { sign: a * b, ratio }
        })
        .collect();
    let lambda = factors.iter().fold(T::one(), |acc, f| acc * f.ratio);
    let zeta = zeta1.product(zeta2)?;
    let per_factor = T::lit(2.0) * plain.tail_bound / (plain.value - plain.tail_bound);
    let error_bound = T::lit(torus.n() as f64) * per_factor + rounding(cutoff, torus.n());
    Ok(TorsionReport {
        closed_form: closed_form(torus, &zeta),
        zeta,
        lambda,
        cutoff,
        error_bound,
        exact: false,
        factors,
    })
}

/// Λ for every homomorphism, in [`Z2Homomorphism::all`] order.
pub fn torsion_table<T: Real>(
    torus: &FlatTorus<T>,
    cutoff: usize,
) -> Result<Vec<TorsionReport<T>>, TorsionError> {
    Z2Homomorphism::all(torus.n())?
        .iter()
        .map(|zeta| torsion_invariant(torus, zeta, cutoff))
        .collect()
}

/// Distinct values of Λ over all homomorphisms, largest first.
pub fn torsion_value_set<T: Real>(
    torus: &FlatTorus<T>,
    cutoff: usize,
) -> Result<Vec<T>, TorsionError> {
    let mut values: Vec<T> = torsion_table(torus, cutoff)?
        .into_iter()
        .map(|r| r.lambda)
        .collect();
    values.sort_by(|a, b| b.partial_cmp(a).expect("finite values"));
    values.dedup_by(|a, b| (*a - *b).abs() <= T::lit(DEDUP_TOLERANCE));
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta(values: &[i64]) -> Z2Homomorphism {
        Z2Homomorphism::from_i64s(values).unwrap()
    }

    fn standard(n: usize) -> FlatTorus<f64> {
        FlatTorus::standard(n).unwrap()
    }

    #[test]
    fn circle_values() {
        let plus = torsion_invariant(&standard(1), &zeta(&[1]), 12).unwrap();
        assert_eq!(plus.lambda, 1.0);
        assert!(plus.exact);
        let minus = torsion_invariant(&standard(1), &zeta(&[-1]), 12).unwrap();
        assert!((minus.lambda - 0.8408964).abs() < 1e-7);
        assert!((minus.lambda - 2f64.powf(-0.25)).abs() < 1e-12);
        assert!(minus.error_bound < 1e-12);
    }

    #[test]
    fn torus_values() {
        let t2 = standard(2);
        let both = torsion_invariant(&t2, &zeta(&[-1, -1]), 12).unwrap();
        assert!((both.lambda - 0.5f64.sqrt()).abs() < 1e-12);
        let one = torsion_invariant(&t2, &zeta(&[-1, 1]), 12).unwrap();
        assert!((one.lambda - 2f64.powf(-0.25)).abs() < 1e-12);
        let three = torsion_invariant(&standard(3), &zeta(&[-1, -1, -1]), 12).unwrap();
        assert!((three.lambda - 8f64.powf(-0.25)).abs() < 1e-12);
    }

    #[test]
    fn value_sets() {
        let expect =
            |n: usize| -> Vec<f64> { (0..=n).map(|m| 2f64.powf(-(m as f64) / 4.0)).collect() };
        for n in 1..=3 {
            let got = torsion_value_set(&standard(n), 12).unwrap();
            assert_eq!(got.len(), n + 1);
            for (g, e) in got.iter().zip(expect(n)) {
                assert!((g - e).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn direct_sums() {
        let s1 = standard(1);
        let mm = torsion_direct_sum(&zeta(&[-1]), &zeta(&[-1]), &s1, 12).unwrap();
        assert!((mm.lambda - 1.0).abs() < 1e-12);
        let t2 = standard(2);
        let mixed = torsion_direct_sum(&zeta(&[-1, 1]), &zeta(&[1, -1]), &t2, 12).unwrap();
        assert!((mixed.lambda - 0.5f64.sqrt()).abs() < 1e-12);
        let with_trivial = torsion_direct_sum(&zeta(&[1, -1]), &zeta(&[1, 1]), &t2, 12).unwrap();
        let alone = torsion_invariant(&t2, &zeta(&[1, -1]), 12).unwrap();
        assert!((with_trivial.lambda - alone.lambda).abs() < 1e-12);
    }

    #[test]
    fn closed_form_labels() {
        let labels: Vec<String> = (0..=6)
            .map(|negatives| ClosedForm { negatives }.to_string())
            .collect();
        assert_eq!(
            labels,
            vec![
                "1",
                "2^(-1/4)",
                "2^(-1/2)",
                "8^(-1/4)",
                "2^(-1)",
                "32^(-1/4)",
                "8^(-1/2)"
            ]
        );
        assert!((ClosedForm { negatives: 3 }.value::<f64>() - 8f64.powf(-0.25)).abs() < 1e-15);
    }

    #[test]
    fn dimension_mismatch() {
        assert_eq!(
            torsion_invariant(&standard(2), &zeta(&[-1]), 12),
            Err(TorsionError::DimensionMismatch {
                expected: 2,
                found: 1
            })
        );
    }
}
