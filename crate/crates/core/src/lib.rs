//! Exact invariants of matrix-valued curves and of real line-bundle classes
//! over flat tori.
//!
//! * [`exactnum`]: rational jets, Laurent jets and jet matrices.
//! * [`multiplicity`]: the generalized algebraic multiplicity χ by several
//!   independent routes, plus algebraic order and classical multiplicity.
//! * [`parity`]: parity of admissible paths and closed loops.
//! * [`torsion`]: heat-kernel weights, theta sums and the global torsion
//!   invariant of `ℤ₂`-homomorphisms of the torus lattice.
//!
//! The exact layers are generic over a [`scalar::Field`]; the aliases below
//! pin them to arbitrary-precision rationals, and the torsion layer to `f64`.

pub mod exactnum;
pub mod multiplicity;
pub mod parity;
pub mod scalar;
pub mod sign;
pub mod torsion;

pub use sign::Sign;

/// Arbitrary-precision rational, the default exact scalar.
pub type Rational = num_rational::BigRational;

pub type Jet = exactnum::Jet<Rational>;
pub type LaurentJet = exactnum::LaurentJet<Rational>;
pub type JetMatrix = exactnum::JetMatrix<Rational>;
pub type LaurentMatrix = exactnum::LaurentMatrix<Rational>;
pub type Matrix = exactnum::Matrix<Rational>;
pub type Poly = exactnum::Poly<Rational>;

pub type MatrixCurveJet = multiplicity::MatrixCurveJet<Rational>;
pub type ProjectionPair = multiplicity::ProjectionPair<Rational>;
pub type MultiplicityReport = multiplicity::MultiplicityReport<Rational>;

pub type PolynomialPath = parity::PolynomialPath<Rational>;
pub type LoopPath = parity::LoopPath<Rational>;
pub type ParityValue = parity::ParityValue<Rational>;

pub type FlatTorus = torsion::FlatTorus<f64>;
pub type TorsionReport = torsion::TorsionReport<f64>;
pub type WienerWeights = torsion::WienerWeights<f64>;
pub use torsion::Z2Homomorphism;

/// Parse `"p/q"` or `"p"` into a [`Rational`].
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: num_bigint::BigInt = num.parse().ok()?;
    let den: num_bigint::BigInt = den.parse().ok()?;
    if den == num_bigint::BigInt::from(0) {
        return None;
    }
    Some(Rational::new(num, den))
}
