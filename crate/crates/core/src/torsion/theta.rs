use super::TorsionError;
use crate::scalar::Real;

/// Extra lattice shells a cutoff must cover beyond the largest class asked for.
pub const CUTOFF_MARGIN: usize = 2;

/// Flat torus `ℝⁿ / (a ℤ)ⁿ` with heat time `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlatTorus<T> {
    n: usize,
    period: T,
    time: T,
}

impl<T: Real> FlatTorus<T> {
    pub fn new(n: usize, period: T, time: T) -> Result<Self, TorsionError> {
        if n == 0 {
            return Err(TorsionError::ZeroDimension);
        }
        if period <= T::zero() || !period.is_finite() {
            return Err(TorsionError::NonpositivePeriod);
        }
        if time <= T::zero() || !time.is_finite() {
            return Err(TorsionError::NonpositiveTime);
        }
        Ok(FlatTorus { n, period, time })
    }

    /// Period `2√π`, time `1`: the lattice Gaussian becomes `e^{-π m²}`.
    pub fn standard(n: usize) -> Result<Self, TorsionError> {
        FlatTorus::new(n, T::lit(2.0) * T::PI().sqrt(), T::one())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn period(&self) -> T {
        self.period
    }

    pub fn time(&self) -> T {
        self.time
    }

    /// True for the standard normalization, where closed forms apply.
    pub fn is_standard(&self) -> bool {
        let standard = T::lit(2.0) * T::PI().sqrt();
        self.time == T::one() && (self.period - standard).abs() <= T::epsilon() * standard
    }

    /// `q = a² / 4t`, the exponent of a single lattice step.
    pub fn decay(&self) -> T {
        self.period * self.period / (T::lit(4.0) * self.time)
    }

    /// `p̃_t(x̃, φ(x̃))` for the deck translation by `class`.
    pub fn lifted_kernel(&self, class: &[i64]) -> T {
        let q = self.decay();
        let norm_sq: T = class
            .iter()
            .map(|&m| T::lit((m * m) as f64))
            .fold(T::zero(), |a, b| a + b);
        gaussian_prefactor(self.n, self.time) * (-q * norm_sq).exp()
    }
}

fn gaussian_prefactor<T: Real>(n: usize, t: T) -> T {
    (T::lit(4.0) * T::PI() * t).powf(-T::lit(n as f64) / T::lit(2.0))
}

/// Euclidean heat kernel `(4πt)^{-n/2} exp(-|x-y|²/4t)` on `ℝⁿ`.
pub fn heat_kernel_rn<T: Real>(n: usize, t: T, x: &[T], y: &[T]) -> Result<T, TorsionError> {
    if t <= T::zero() || t.is_nan() {
        return Err(TorsionError::NonpositiveTime);
    }
    if x.len() != n || y.len() != n {
        return Err(TorsionError::DimensionMismatch {
            expected: n,
            found: x.len().max(y.len()),
        });
    }
    let dist_sq = x
        .iter()
        .zip(y)
        .map(|(a, b)| (*a - *b) * (*a - *b))
        .fold(T::zero(), |a, b| a + b);
    Ok(gaussian_prefactor(n, t) * (-dist_sq / (T::lit(4.0) * t)).exp())
}

/// A truncated lattice sum with a bound on the discarded tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaSum<T> {
    pub value: T,
    pub tail_bound: T,
    pub cutoff: usize,
}

/// `Σ_{|m| ≤ M} ε^m e^{-q m²}` with `ε = -1` when `alternating`, summed
/// from `m = 0` outwards.
pub fn theta_sum_with_decay<T: Real>(
    q: T,
    alternating: bool,
    cutoff: usize,
) -> Result<ThetaSum<T>, TorsionError> {
    if cutoff == 0 {
        return Err(TorsionError::CutoffTooSmall {
            cutoff,
            required: 1,
        });
    }
    let mut value = T::one();
    for m in 1..=cutoff {
        let term = T::lit(2.0) * (-q * T::lit((m * m) as f64)).exp();
        value = if alternating && m % 2 == 1 {
            value - term
        } else {
            value + term
        };
    }
    Ok(ThetaSum {
        value,
        tail_bound: theta_tail(q, cutoff),
        cutoff,
    })
}

/// [`theta_sum_with_decay`] at `q = π`.
pub fn theta_sum<T: Real>(alternating: bool, cutoff: usize) -> Result<ThetaSum<T>, TorsionError> {
    theta_sum_with_decay(T::PI(), alternating, cutoff)
}

/// `Σ_{|m| > M} e^{-q m²} ≤ 2 e^{-q(M+1)²} / (1 - e^{-q(2M+3)})`.
pub fn theta_tail<T: Real>(q: T, cutoff: usize) -> T {
    let next = T::lit((cutoff + 1) as f64);
    let ratio = (-q * T::lit((2 * cutoff + 3) as f64)).exp();
    T::lit(2.0) * (-q * next * next).exp() / (T::one() - ratio)
}

/// Normalized heat-kernel weights of the deck classes with `|m_i| ≤ max_class`.
#[derive(Debug, Clone, PartialEq)]
pub struct WienerWeights<T> {
    pub cutoff: usize,
    /// `p_1(x, x) = Σ_φ p̃_1(x̃, φ(x̃))`, truncated at the cutoff.
    pub normalization: T,
    /// `(class, weight)` in lexicographic class order.
    pub weights: Vec<(Vec<i64>, T)>,
    /// Bound on the weight mass outside the cutoff.
    pub tail_bound: T,
}

impl<T: Real> WienerWeights<T> {
    pub fn total(&self) -> T {
        self.weights.iter().fold(T::zero(), |acc, (_, w)| acc + *w)
    }
}

fn check_cutoff(max_class: usize, cutoff: usize) -> Result<(), TorsionError> {
    let required = max_class + CUTOFF_MARGIN;
    if cutoff < required {
        return Err(TorsionError::CutoffTooSmall { cutoff, required });
    }
    Ok(())
}

/// `μ_x([φ]) = p̃_1(x̃, φ(x̃)) / Σ_ψ p̃_1(x̃, ψ(x̃))`.
pub fn wiener_weight<T: Real>(
    torus: &FlatTorus<T>,
    class: &[i64],
    cutoff: usize,
) -> Result<T, TorsionError> {
    if class.len() != torus.n() {
        return Err(TorsionError::DimensionMismatch {
            expected: torus.n(),
            found: class.len(),
        });
    }
    let largest = class
        .iter()
        .map(|m| m.unsigned_abs() as usize)
        .max()
        .unwrap_or(0);
    check_cutoff(largest, cutoff)?;
    let theta = theta_sum_with_decay(torus.decay(), false, cutoff)?;
    let q = torus.decay();
    Ok(class
        .iter()
        .map(|&m| (-q * T::lit((m * m) as f64)).exp() / theta.value)
        .fold(T::one(), |a, b| a * b))
}

/// Weights of every class in the box `|m_i| ≤ max_class`.
pub fn wiener_weights<T: Real>(
    torus: &FlatTorus<T>,
    max_class: usize,
    cutoff: usize,
) -> Result<WienerWeights<T>, TorsionError> {
    check_cutoff(max_class, cutoff)?;
    let theta = theta_sum_with_decay(torus.decay(), false, cutoff)?;
    let n = torus.n();
    let side = 2 * max_class + 1;
    let count = side
        .checked_pow(n as u32)
        .ok_or(TorsionError::TooManyClasses)?;
    if count > MAX_CLASSES {
        return Err(TorsionError::TooManyClasses);
    }
    let weights = (0..count)
        .map(|mut index| {
            let mut class = vec![0i64; n];
            for slot in class.iter_mut().rev() {
                *slot = (index % side) as i64 - max_class as i64;
                index /= side;
            }
            let w = wiener_weight(torus, &class, cutoff).expect("cutoff checked");
            (class, w)
        })
        .collect();
    let normalization = gaussian_prefactor(n, torus.time()) * theta.value.powi(n as i32);
    // 1 - (1 - τ/θ)^n ≤ n τ / θ.
    let tail_bound = T::lit(n as f64) * theta.tail_bound / theta.value;
    Ok(WienerWeights {
        cutoff,
        normalization,
        weights,
        tail_bound,
    })
}

/// Upper limit on the number of tabulated classes.
pub const MAX_CLASSES: usize = 1 << 20;
