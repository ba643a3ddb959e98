use std::fmt;

use crate::scalar::{Field, OrderedField};
use crate::sign::Sign;

/// Univariate polynomial with coefficients stored low to high, no trailing zeros.
#[derive(Clone, PartialEq)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Poly::new(vec![c])
    }

    /// `λ - root`.
    pub fn linear_root(root: F) -> Self {
        Poly::new(vec![-root, F::one()])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    /// Lowest power with a nonzero coefficient; `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..n)
                .map(|k| {
                    let a = self.coeffs.get(k).cloned().unwrap_or_else(F::zero);
                    let b = other.coeffs.get(k).cloned().unwrap_or_else(F::zero);
                    a + b
                })
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, factor: &F) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .map(|c| c.clone() * factor.clone())
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }

    /// Euclidean division. Panics on division by zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let d_deg = divisor.degree().expect("polynomial division by zero");
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d_deg {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![F::zero(); rem.len() - d_deg];
        for k in (0..quot.len()).rev() {
            let c = rem[k + d_deg].clone() / lead.clone();
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * d.clone();
            }
            quot[k] = c;
        }
        rem.truncate(d_deg);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Quotient of a division known to be exact.
    pub fn exact_div(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * F::from_i64(k as i64))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lead) => {
                let inv = F::one() / lead.clone();
                self.scale(&inv)
            }
            None => Poly::zero(),
        }
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Taylor shift: the polynomial `q(μ) = p(μ + center)`.
    pub fn shift(&self, center: &F) -> Self {
        // Horner in the shifted variable.
        let mut out = Poly::zero();
        let step = Poly::new(vec![center.clone(), F::one()]);
        for c in self.coeffs.iter().rev() {
            out = out.mul(&step).add(&Poly::constant(c.clone()));
        }
        out
    }

    /// Yun's square-free decomposition: `(factor, multiplicity)` pairs with
    /// monic, pairwise coprime, square-free factors of positive degree.
    pub fn square_free_decomposition(&self) -> Vec<(Poly<F>, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.exact_div(&a0);
        let c = df.exact_div(&a0);
        let mut d = c.sub(&b.derivative());
        let mut multiplicity = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            let next_b = b.exact_div(&a);
            let next_c = d.exact_div(&a);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a, multiplicity));
            }
            d = next_c.sub(&next_b.derivative());
            b = next_b;
            multiplicity += 1;
        }
        out
    }
}

/// Determinant of a square polynomial matrix (row-major) by fraction-free
/// Bareiss elimination; every division is exact.
pub fn poly_det<F: Field>(n: usize, entries: &[Poly<F>]) -> Poly<F> {
    assert_eq!(entries.len(), n * n, "polynomial matrix entry count");
    if n == 0 {
        return Poly::constant(F::one());
    }
    let mut m: Vec<Vec<Poly<F>>> = entries.chunks(n).map(<[_]>::to_vec).collect();
    let mut negate = false;
    let mut previous = Poly::constant(F::one());
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return Poly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.exact_div(&previous);
            }
            m[i][k] = Poly::zero();
        }
        previous = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}

/// Transposed cofactor matrix of a square polynomial matrix.
pub fn poly_adjugate<F: Field>(n: usize, entries: &[Poly<F>]) -> Vec<Poly<F>> {
    assert_eq!(entries.len(), n * n, "polynomial matrix entry count");
    if n == 1 {
        return vec![Poly::constant(F::one())];
    }
    let mut out = vec![Poly::zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Poly<F>> = (0..n)
                .filter(|&r| r != i)
                .flat_map(|r| {
                    (0..n)
                        .filter(move |&c| c != j)
                        .map(move |c| entries[r * n + c].clone())
                })
                .collect();
            let cofactor = poly_det(n - 1, &minor);
            out[j * n + i] = if (i + j) % 2 == 0 {
                cofactor
            } else {
                cofactor.neg()
            };
        }
    }
    out
}

impl<F: OrderedField> Poly<F> {
    pub fn sign_at(&self, x: &F) -> Option<Sign> {
        let v = self.eval(x);
        if v.is_zero() {
            None
        } else if v.is_positive() {
            Some(Sign::Plus)
        } else {
            Some(Sign::Minus)
        }
    }
}

impl<F: fmt::Debug> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Poly").field(&self.coeffs).finish()
    }
}

impl<F: Field + fmt::Display> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})λ")?,
                _ => write!(f, "({c})λ^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn p(values: &[i64]) -> Poly<Rational> {
        Poly::new(
            values
                .iter()
                .map(|&v| Rational::from_integer(v.into()))
                .collect(),
        )
    }

    #[test]
    fn polynomial_det_and_adjugate() {
        // [[λ, 1], [0, λ+2]]
        let m = vec![p(&[0, 1]), p(&[1]), p(&[]), p(&[2, 1])];
        assert_eq!(poly_det(2, &m), p(&[0, 2, 1]));
        let adj = poly_adjugate(2, &m);
        assert_eq!(adj, vec![p(&[2, 1]), p(&[-1]), p(&[]), p(&[0, 1])]);
        // zero pivot forces a row swap
        let swapped = vec![p(&[]), p(&[1]), p(&[1]), p(&[])];
        assert_eq!(poly_det(2, &swapped), p(&[-1]));
        assert_eq!(poly_det(2, &[p(&[]), p(&[1]), p(&[]), p(&[3])]), p(&[]));
        assert_eq!(p(&[0, 0, 5, 1]).valuation(), Some(2));
        assert_eq!(p(&[]).valuation(), None);
    }

    #[test]
    fn division_and_gcd() {
        // (λ-1)²(λ+2) and (λ-1)(λ+3)
        let a = p(&[-1, 1]).mul(&p(&[-1, 1])).mul(&p(&[2, 1]));
        let b = p(&[-1, 1]).mul(&p(&[3, 1]));
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
    }

    #[test]
    fn yun_decomposition() {
        // λ³ (λ-1)² (λ+1)
        let f = p(&[0, 1])
            .mul(&p(&[0, 1]))
            .mul(&p(&[0, 1]))
            .mul(&p(&[-1, 1]))
            .mul(&p(&[-1, 1]))
            .mul(&p(&[1, 1]));
        let parts = f.square_free_decomposition();
        assert_eq!(
            parts,
            vec![(p(&[1, 1]), 1), (p(&[-1, 1]), 2), (p(&[0, 1]), 3)]
        );
    }

    #[test]
    fn taylor_shift() {
        // p(λ) = λ², shifted by 1: (μ+1)² = μ² + 2μ + 1
        assert_eq!(
            p(&[0, 0, 1]).shift(&Rational::from_integer(1.into())),
            p(&[1, 2, 1])
        );
    }
}
