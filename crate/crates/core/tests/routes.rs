mod common;

use common::*;
use fredholm_core::exactnum::Matrix as GMatrix;
use fredholm_core::multiplicity::{
    algebraic_order, chi_laurent, chi_laurent_with, chi_ord_det, chi_schur, chi_transversal,
    classical_multiplicity, verify_transversalization, AlgebraicOrder, Multiplicity,
    MultiplicityError, ProjectionPair as GProjectionPair,
};
use fredholm_core::{Matrix, MatrixCurveJet, ProjectionPair, Rational};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A second valid pair: complements rotated by a random invertible map fixing
/// the kernel (resp. range) directions modulo themselves.
fn oblique_pair<R: Rng>(rng: &mut R, t: &Matrix) -> ProjectionPair {
    let n = t.rows();
    let kernel = t.kernel_basis();
    let range = t.column_space_basis();
    let kc = GMatrix::complement_by_coordinates(&kernel);
    let rc = GMatrix::complement_by_coordinates(&range);
    let shear = |base: &Matrix, extra: &Matrix, rng: &mut R| -> Matrix {
        if extra.cols() == 0 {
            return base.clone();
        }
        base.add(&extra.mul(&random_matrix(rng, extra.cols(), base.cols(), 2, 0.7)))
    };
    let kc2 = shear(&kc, &kernel, rng);
    let rc2 = shear(&rc, &range, rng);
    assert_eq!(kc2.rows(), n);
    GProjectionPair::from_complements(t, kc2, rc2).expect("sheared complements stay complementary")
}

#[test]
fn routes_agree_on_random_curves() {
    let mut rng = rng(7);
    let mut transversal_hits = 0;
    for _ in 0..120 {
        let curve = random_curve(&mut rng);
        let det = chi_ord_det(&curve).value;
        assert!(matches!(det, Multiplicity::Finite(_)));
        assert_eq!(chi_schur(&curve, None).unwrap().value, det);
        assert_eq!(chi_laurent(&curve).unwrap().value, det);
        match chi_transversal(&curve) {
            Ok(r) => {
                transversal_hits += 1;
                assert_eq!(r.value, det);
            }
            Err(MultiplicityError::NotTransversal { .. }) => {}
            Err(e) => panic!("unexpected error {e}"),
        }
    }
    assert!(transversal_hits > 10);
}

#[test]
fn smith_curves_have_prescribed_multiplicity() {
    let mut rng = rng(11);
    for _ in 0..60 {
        let n = rng.gen_range(1..=5);
        let (curve, chi) = smith_curve(&mut rng, n, 6);
        assert_eq!(chi_ord_det(&curve).value, Multiplicity::Finite(chi));
    }
}

#[test]
fn schur_is_independent_of_the_pair() {
    let mut rng = rng(13);
    for _ in 0..60 {
        let curve = random_curve(&mut rng);
        let pair = oblique_pair(&mut rng, curve.value());
        let reference = chi_ord_det(&curve).value;
        assert_eq!(chi_schur(&curve, Some(&pair)).unwrap().value, reference);
        assert_eq!(chi_laurent_with(&curve, &pair).unwrap().value, reference);
    }
}

#[test]
fn zero_iff_invertible_and_algebraic_order() {
    let mut rng = rng(17);
    for _ in 0..80 {
        let curve = random_curve(&mut rng);
        let chi = chi_ord_det(&curve).value.finite().unwrap();
        assert_eq!(chi == 0, curve.value().is_invertible());
        let report = algebraic_order(&curve).unwrap();
        let AlgebraicOrder::Kappa(kappa) = report.kappa else {
            panic!("finite χ must be algebraic")
        };
        assert_eq!(kappa == 0, chi == 0);
        // Observed relation, not a theorem of the library.
        if kappa > chi {
            eprintln!("κ = {kappa} exceeds χ = {chi}");
        }
    }
}

#[test]
fn infinite_multiplicity_is_not_algebraic() {
    let n = 3;
    let singular = GMatrix::from_fn(n, n, |i, j| q((i * j) as i64, 1));
    let curve = MatrixCurveJet::polynomial(q(0, 1), vec![singular.clone(), singular]).unwrap();
    assert_eq!(chi_ord_det(&curve).value, Multiplicity::Infinite);
    assert_eq!(
        algebraic_order(&curve).unwrap().kappa,
        AlgebraicOrder::NotAlgebraic
    );
}

#[test]
fn classical_matches_resolvent_determinant() {
    let mut rng = rng(19);
    for _ in 0..60 {
        let n = rng.gen_range(1..=5);
        let spectrum: Vec<Rational> = (0..n).map(|_| q(rng.gen_range(-2..=2), 1)).collect();
        // Upper triangular with the chosen spectrum, conjugated.
        let mut t = random_matrix(&mut rng, n, n, 2, 0.5);
        for (i, s) in spectrum.iter().enumerate() {
            for j in 0..i {
                t.set(i, j, q(0, 1));
            }
            t.set(i, i, s.clone());
        }
        let s = invertible_matrix(&mut rng, n);
        let k = s.mul(&t).mul(&s.inverse().unwrap());
        let mu = spectrum[rng.gen_range(0..n)].clone();
        let classical = classical_multiplicity(&k, &mu).unwrap();
        let curve = MatrixCurveJet::resolvent_curve(&k, mu.clone()).unwrap();
        assert_eq!(
            chi_ord_det(&curve).value,
            Multiplicity::Finite(classical.multiplicity)
        );
        assert_eq!(
            classical.multiplicity,
            spectrum.iter().filter(|&s| *s == mu).count()
        );
    }
}

#[test]
fn transversalization_preserves_multiplicity() {
    let mut rng = rng(23);
    let mut verified = 0;
    for _ in 0..60 {
        let curve = random_curve(&mut rng);
        let n = curve.dim();
        let mut phi = vec![GMatrix::identity(n)];
        for _ in 0..rng.gen_range(1..=2) {
            phi.push(random_matrix(&mut rng, n, n, 2, 0.5));
        }
        let phi = MatrixCurveJet::polynomial(curve.base_point().clone(), phi).unwrap();
        match verify_transversalization(&curve, &phi) {
            Ok(r) => {
                verified += 1;
                assert_eq!(r.value, chi_ord_det(&curve).value);
            }
            Err(MultiplicityError::NotTransversal { .. }) => {}
            Err(e) => panic!("unexpected error {e}"),
        }
    }
    assert!(verified > 10);
}

fn product_pair(seed: u64) -> (MatrixCurveJet, MatrixCurveJet) {
    let mut rng = rng(seed);
    let n = rng.gen_range(1..=4);
    let base = rational(&mut rng, 2);
    let make = |rng: &mut ChaCha8Rng| {
        let (c, _) = smith_curve(rng, n, 4);
        MatrixCurveJet::polynomial(base.clone(), c.coefficients().to_vec()).unwrap()
    };
    (make(&mut rng), make(&mut rng))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn product_formula(seed in any::<u64>()) {
        let (l, m) = product_pair(seed);
        let lm = l.compose(&m).unwrap();
        let a = chi_ord_det(&l).value.finite().unwrap();
        let b = chi_ord_det(&m).value.finite().unwrap();
        prop_assert_eq!(chi_ord_det(&lm).value, Multiplicity::Finite(a + b));
        prop_assert_eq!(chi_schur(&lm, None).unwrap().value, Multiplicity::Finite(a + b));
    }

    #[test]
    fn product_formula_truncated(seed in any::<u64>()) {
        let (l, m) = product_pair(seed);
        let a = chi_ord_det(&l).value.finite().unwrap();
        let b = chi_ord_det(&m).value.finite().unwrap();
        // Keep just enough of each jet for the product to be decided.
        let r = a + b + 1;
        let cut = |c: &MatrixCurveJet| {
            let mut coeffs = c.coefficients().to_vec();
            coeffs.resize(r + 1, GMatrix::zeros(c.dim(), c.dim()));
            MatrixCurveJet::truncated(c.base_point().clone(), coeffs).unwrap()
        };
        let lm = cut(&l).compose(&cut(&m)).unwrap();
        prop_assert_eq!(chi_ord_det(&lm).value, Multiplicity::Finite(a + b));
    }

    #[test]
    fn normalization(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let n = rng.gen_range(1..=6);
        let u = random_matrix(&mut rng, n, 1, 3, 0.8);
        let v = random_matrix(&mut rng, 1, n, 3, 0.8);
        let uv = v.mul(&u).get(0, 0).clone();
        prop_assume!(uv != q(0, 1));
        let pi = u.mul(&v).scale(&(q(1, 1) / uv));
        prop_assert!(pi.is_idempotent());
        let curve = MatrixCurveJet::normalization_curve(rational(&mut rng, 3), &pi).unwrap();
        prop_assert_eq!(chi_ord_det(&curve).value, Multiplicity::Finite(1));
        prop_assert_eq!(chi_schur(&curve, None).unwrap().value, Multiplicity::Finite(1));
        prop_assert_eq!(chi_laurent(&curve).unwrap().value, Multiplicity::Finite(1));
        prop_assert_eq!(chi_transversal(&curve).unwrap().value, Multiplicity::Finite(1));
    }

    #[test]
    fn recentering_keeps_the_curve(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let curve = random_curve(&mut rng);
        let there = rational(&mut rng, 3);
        let back = curve.recenter(there).unwrap().recenter(curve.base_point().clone()).unwrap();
        prop_assert_eq!(&back.coefficients()[..=curve.degree()], &curve.coefficients()[..=curve.degree()]);
    }
}
