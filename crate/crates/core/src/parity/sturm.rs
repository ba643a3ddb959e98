use crate::exactnum::Poly;
use crate::scalar::OrderedField;

/// A real root in an open interval: either known exactly or isolated in
/// `(lower, upper)` with no other root of the determinant inside.
#[derive(Debug, Clone, PartialEq)]
pub struct RealRoot<F> {
    pub lower: F,
    pub upper: F,
    /// Set when the root is a rational number hit during isolation; then
    /// `lower == upper == exact`.
    pub exact: Option<F>,
    /// Multiplicity as a root of the polynomial.
    pub multiplicity: usize,
}

impl<F: OrderedField> RealRoot<F> {
    pub fn midpoint(&self) -> F {
        match &self.exact {
            Some(x) => x.clone(),
            None => (self.lower.clone() + self.upper.clone()) / F::from_i64(2),
        }
    }
}

/// Bisection steps applied to every isolating interval after isolation.
const REFINE_STEPS: usize = 24;

/// All distinct real roots of `p` in the open interval `(a, b)`, with
/// multiplicities, sorted left to right. `p` must be nonzero at `a` and `b`.
pub fn isolate_real_roots<F: OrderedField>(p: &Poly<F>, a: &F, b: &F) -> Vec<RealRoot<F>> {
    let mut out = Vec::new();
    for (factor, multiplicity) in p.square_free_decomposition() {
        for (lower, upper, exact) in isolate_square_free(&factor, a, b) {
            out.push(RealRoot {
                lower,
                upper,
                exact,
                multiplicity,
            });
        }
    }
    out.sort_by(|x, y| x.lower.partial_cmp(&y.lower).expect("ordered field"));
    out
}

type Interval<F> = (F, F, Option<F>);

fn isolate_square_free<F: OrderedField>(p: &Poly<F>, a: &F, b: &F) -> Vec<Interval<F>> {
    let mut found = Vec::new();
    let mut work = vec![(p.clone(), a.clone(), b.clone())];
    while let Some((poly, lo, hi)) = work.pop() {
        if poly.degree().unwrap_or(0) == 0 {
            continue;
        }
        let chain = sturm_chain(&poly);
        let mut stack = vec![(lo.clone(), hi.clone(), count(&chain, &lo, &hi))];
        while let Some((l, h, c)) = stack.pop() {
            if c == 0 {
                continue;
            }
            if c == 1 {
                found.push(refine(&poly, l, h));
                continue;
            }
            let mid = (l.clone() + h.clone()) / F::from_i64(2);
            if poly.eval(&mid).is_zero() {
                // Deflate and restart this interval without the exact root.
                found.push((mid.clone(), mid.clone(), Some(mid.clone())));
                work.push((poly.exact_div(&Poly::linear_root(mid)), l, h));
                continue;
            }
            let left = count(&chain, &l, &mid);
            stack.push((mid.clone(), h, c - left));
            stack.push((l, mid, left));
        }
    }
    found
}

/// Shrink an isolating interval of a simple root by bisection; returns an
/// exact root if a midpoint hits it.
fn refine<F: OrderedField>(p: &Poly<F>, mut lo: F, mut hi: F) -> Interval<F> {
    let lo_sign = p.sign_at(&lo);
    for _ in 0..REFINE_STEPS {
        let mid = (lo.clone() + hi.clone()) / F::from_i64(2);
        match p.sign_at(&mid) {
            None => return (mid.clone(), mid.clone(), Some(mid)),
            s if s == lo_sign => lo = mid,
            _ => hi = mid,
        }
    }
    (lo, hi, None)
}

fn sturm_chain<F: OrderedField>(p: &Poly<F>) -> Vec<Poly<F>> {
    let mut chain = vec![p.clone(), p.derivative()];
    while !chain.last().unwrap().is_zero() {
        let n = chain.len();
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
        chain.push(r.neg());
    }
    chain.pop();
    chain
}

fn variations<F: OrderedField>(chain: &[Poly<F>], x: &F) -> usize {
    let signs: Vec<_> = chain.iter().filter_map(|q| q.sign_at(x)).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct roots in `(lo, hi]`; exact for `(lo, hi)` when `hi`
/// is not a root.
fn count<F: OrderedField>(chain: &[Poly<F>], lo: &F, hi: &F) -> usize {
    variations(chain, lo) - variations(chain, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn p(values: &[Rational]) -> Poly<Rational> {
        Poly::new(values.to_vec())
    }

    #[test]
    fn single_root() {
        let roots = isolate_real_roots(&p(&[q(0, 1), q(1, 1)]), &q(-1, 1), &q(1, 1));
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].exact, Some(q(0, 1)));
    }

    #[test]
    fn two_rational_roots() {
        // λ² - 1/4
        let roots = isolate_real_roots(&p(&[q(-1, 4), q(0, 1), q(1, 1)]), &q(-1, 1), &q(1, 1));
        let exact: Vec<_> = roots.iter().map(|r| r.exact.clone()).collect();
        assert_eq!(exact, vec![Some(q(-1, 2)), Some(q(1, 2))]);
    }

    #[test]
    fn irrational_roots_are_isolated() {
        // λ² - 2 on (-2, 2), plus λ² - 2 on (0, 2)
        let f = p(&[q(-2, 1), q(0, 1), q(1, 1)]);
        let roots = isolate_real_roots(&f, &q(-2, 1), &q(2, 1));
        assert_eq!(roots.len(), 2);
        for r in &roots {
            assert!(r.exact.is_none());
            assert!(f.sign_at(&r.lower) != f.sign_at(&r.upper));
            assert!(r.upper.clone() - r.lower.clone() < q(1, 1_000_000));
        }
        assert_eq!(isolate_real_roots(&f, &q(0, 1), &q(2, 1)).len(), 1);
    }

    #[test]
    fn multiplicities_and_outside_roots() {
        // λ²(λ - 3): double root at 0, simple root outside (-1, 1)
        let f = p(&[q(0, 1), q(0, 1), q(1, 1)]).mul(&p(&[q(-3, 1), q(1, 1)]));
        let roots = isolate_real_roots(&f, &q(-1, 1), &q(1, 1));
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].multiplicity, 2);
    }

    #[test]
    fn clustered_roots() {
        // (λ-1/3)(λ-1/3-1/1000)(λ+1/7)
        let f = Poly::linear_root(q(1, 3))
            .mul(&Poly::linear_root(q(1, 3) + q(1, 1000)))
            .mul(&Poly::linear_root(q(-1, 7)));
        let roots = isolate_real_roots(&f, &q(-1, 1), &q(1, 1));
        assert_eq!(roots.len(), 3);
        assert!(roots.windows(2).all(|w| w[0].upper <= w[1].lower));
    }
}
