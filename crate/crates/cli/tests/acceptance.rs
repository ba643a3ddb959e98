//! Acceptance criteria, one PASS/FAIL line each.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use common::*;
use fredholm_cli::LoopDocument;
use fredholm_core::multiplicity::{
    chi_laurent, chi_ord_det, chi_schur, chi_transversal, classical_multiplicity, Multiplicity,
    MultiplicityError,
};
use fredholm_core::parity::{
    localized_parity, loop_parity, parity_chi_sum, parity_crossings, parity_interval, ParityError,
};
use fredholm_core::torsion::{
    is_orientable, theta_sum, torsion_direct_sum, torsion_invariant, torsion_value_set,
};
use fredholm_core::{FlatTorus, MatrixCurveJet, Rational, Sign, Z2Homomorphism};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const TORSION_TOL: f64 = 1e-12;
const ORIENTABLE_TOL: f64 = 1e-9;
const CUTOFF: usize = 12;
const CURVES: usize = 500;
const CURVE_BUDGET: Duration = Duration::from_secs(60);
const PF_PAIRS: usize = 200;
const NP_PROJECTIONS: usize = 50;
const CLASSICAL_MATRICES: usize = 100;
const PATHS: usize = 300;

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn fixture(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", name]
        .iter()
        .collect();
    path.to_string_lossy().into_owned()
}

fn fredholm_json(args: &[&str]) -> Result<Value, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let report = dir.path().join("report.json");
    let output = Command::new(env!("CARGO_BIN_EXE_fredholm"))
        .args(args)
        .arg("--json")
        .arg(&report)
        .output()
        .map_err(|e| e.to_string())?;
    if !output.status.success() {
        return Err(format!(
            "fredholm {} exited with {}",
            args.join(" "),
            output.status
        ));
    }
    let text = std::fs::read_to_string(&report).map_err(|e| e.to_string())?;
    serde_json::from_str(&text).map_err(|e| e.to_string())
}

fn two_pow_quarter(m: usize) -> f64 {
    2f64.powf(-(m as f64) / 4.0)
}

/// Multiplicity routes on random curves, plus the localized parity of the
/// same curves.
fn routes_on_random_curves() -> (Outcome, Outcome) {
    let mut rng = rng(1);
    let curves: Vec<MatrixCurveJet> = (0..CURVES).map(|_| random_curve(&mut rng)).collect();
    let start = Instant::now();
    let mut mismatches = Vec::new();
    let mut transversal = 0;
    for (i, curve) in curves.iter().enumerate() {
        let det = chi_ord_det(curve).value;
        let schur = chi_schur(curve, None).map(|r| r.value);
        let laurent = chi_laurent(curve).map(|r| r.value);
        if !matches!(det, Multiplicity::Finite(_)) || schur != Ok(det) || laurent != Ok(det) {
            mismatches.push(format!(
                "curve {i}: ord_det {det}, schur {schur:?}, laurent {laurent:?}"
            ));
        }
        match chi_transversal(curve) {
            Ok(r) if r.value == det => transversal += 1,
            Ok(r) => mismatches.push(format!("curve {i}: transversal {} vs {det}", r.value)),
            Err(MultiplicityError::NotTransversal { .. }) => {}
            Err(e) => mismatches.push(format!("curve {i}: transversal failed: {e}")),
        }
    }
    let elapsed = start.elapsed();
    let routes = check(
        mismatches.is_empty() && elapsed < CURVE_BUDGET,
        format!(
            "{CURVES} curves, {transversal} transversal, {:.1} s{}",
            elapsed.as_secs_f64(),
            mismatches
                .first()
                .map(|m| format!("; {m}"))
                .unwrap_or_default()
        ),
    );

    let bad = curves
        .iter()
        .filter(|c| {
            let chi = chi_ord_det(c).value.finite().unwrap_or(0);
            localized_parity(c).map(|v| v.sign).ok() != Some(Sign::from_parity(chi))
        })
        .count();
    let localized = check(
        bad == 0,
        format!("localized parity on {CURVES} curves, {bad} mismatches"),
    );
    (routes, localized)
}

fn product_formula_and_normalization() -> Outcome {
    let mut rng = rng(2);
    let mut failures = 0;
    for _ in 0..PF_PAIRS {
        let n = rng.gen_range(1..=4);
        let base = rational(&mut rng, 2);
        let mut make = || {
            let (c, _) = smith_curve(&mut rng, n, 4);
            MatrixCurveJet::polynomial(base.clone(), c.coefficients().to_vec()).unwrap()
        };
        let (l, m) = (make(), make());
        let lm = l.compose(&m).unwrap();
        let (a, b) = (chi_ord_det(&l).value, chi_ord_det(&m).value);
        let expected = match (a, b) {
            (Multiplicity::Finite(a), Multiplicity::Finite(b)) => Multiplicity::Finite(a + b),
            _ => Multiplicity::Infinite,
        };
        if chi_ord_det(&lm).value != expected
            || chi_schur(&lm, None).map(|r| r.value) != Ok(expected)
        {
            failures += 1;
        }
    }
    let mut np_checked = 0;
    let mut np_failures = 0;
    while np_checked < NP_PROJECTIONS {
        let n = rng.gen_range(1..=6);
        let u = random_matrix(&mut rng, n, 1, 3, 0.8);
        let v = random_matrix(&mut rng, 1, n, 3, 0.8);
        let uv = v.mul(&u).get(0, 0).clone();
        if uv == q(0, 1) {
            continue;
        }
        let pi = u.mul(&v).scale(&(q(1, 1) / uv));
        let curve = MatrixCurveJet::normalization_curve(rational(&mut rng, 3), &pi).unwrap();
        let one = Multiplicity::Finite(1);
        let ok = chi_ord_det(&curve).value == one
            && chi_schur(&curve, None).map(|r| r.value) == Ok(one)
            && chi_laurent(&curve).map(|r| r.value) == Ok(one);
        np_failures += usize::from(!ok);
        np_checked += 1;
    }
    check(
        failures == 0 && np_failures == 0,
        format!("product formula on {PF_PAIRS} pairs ({failures} failures), normalization on {NP_PROJECTIONS} projections ({np_failures} failures)"),
    )
}

fn classical_vs_resolvent() -> Outcome {
    let mut rng = rng(3);
    let mut failures = 0;
    for _ in 0..CLASSICAL_MATRICES {
        let n = rng.gen_range(1..=6);
        let spectrum: Vec<Rational> = (0..n).map(|_| q(rng.gen_range(-2..=2), 1)).collect();
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
        let classical = classical_multiplicity(&k, &mu).unwrap().multiplicity;
        let curve = MatrixCurveJet::resolvent_curve(&k, mu).unwrap();
        if chi_ord_det(&curve).value != Multiplicity::Finite(classical) {
            failures += 1;
        }
    }
    check(
        failures == 0,
        format!("{CLASSICAL_MATRICES} matrices, {failures} mismatches"),
    )
}

/// Paths whose determinant has only simple roots inside the interval are the
/// ones where the crossing count is defined; the other two methods are
/// compared on every admissible path drawn.
fn parity_methods_on_paths() -> Outcome {
    let mut rng = rng(4);
    let (mut drawn, mut transversal, mut failures) = (0, 0, 0);
    while transversal < PATHS {
        let path = random_path(&mut rng);
        drawn += 1;
        let interval = parity_interval(&path).map(|v| v.sign);
        let chi_sum = parity_chi_sum(&path).map(|v| v.sign);
        if interval.is_err() || interval != chi_sum {
            failures += 1;
        }
        match parity_crossings(&path) {
            Ok(v) => {
                transversal += 1;
                failures += usize::from(Ok(v.sign) != interval);
            }
            Err(ParityError::NonTransversalCrossing { .. }) => {}
            Err(_) => failures += 1,
        }
    }
    check(failures == 0, format!("{transversal} paths with simple crossings out of {drawn} admissible, {failures} failures"))
}

fn loop_fixtures() -> Outcome {
    let sign_of = |name: &str| -> Result<(i64, i64), String> {
        let cli = fredholm_json(&["parity", "loop", "--loop", &fixture(name)])?["sign"]
            .as_i64()
            .ok_or("missing sign")?;
        let text = std::fs::read_to_string(fixture(name)).map_err(|e| e.to_string())?;
        let lp = LoopDocument::parse(&text)
            .and_then(|d| d.to_loop())
            .map_err(|e| e.to_string())?;
        let lib = loop_parity(&lp).map_err(|e| e.to_string())?.sign.as_i64();
        Ok((cli, lib))
    };
    match (sign_of("mobius_loop.json"), sign_of("constant_loop.json")) {
        (Ok(m), Ok(c)) => check(
            m == (-1, -1) && c == (1, 1),
            format!("möbius {}, constant {}", m.0, c.0),
        ),
        (Err(e), _) | (_, Err(e)) => Err(e),
    }
}

fn circle_torsion() -> Outcome {
    let circle = FlatTorus::standard(1).unwrap();
    let plus =
        torsion_invariant(&circle, &Z2Homomorphism::from_i64s(&[1]).unwrap(), CUTOFF).unwrap();
    let minus =
        torsion_invariant(&circle, &Z2Homomorphism::from_i64s(&[-1]).unwrap(), CUTOFF).unwrap();
    let mobius = Z2Homomorphism::from_i64s(&[-1]).unwrap();
    let sum = torsion_direct_sum(&mobius, &mobius, &circle, CUTOFF).unwrap();
    let err = (minus.lambda - two_pow_quarter(1)).abs();
    let sum_err = (sum.lambda - 1.0).abs();
    check(
        plus.lambda == 1.0 && err < TORSION_TOL && sum_err < TORSION_TOL,
        format!(
            "Λ(+1) = {}, |Λ(-1) - 2^(-1/4)| = {err:.1e}, |Λ(M⊕M) - 1| = {sum_err:.1e}",
            plus.lambda
        ),
    )
}

fn torsion_tables() -> Outcome {
    let rows = |n: usize| -> Result<Vec<(Vec<i64>, f64)>, String> {
        let json = fredholm_json(&["torsion", "--n", &n.to_string(), "table"])?;
        json["rows"]
            .as_array()
            .ok_or("missing rows")?
            .iter()
            .map(|r| {
                let signs = r["signs"]
                    .as_array()
                    .ok_or("missing signs")?
                    .iter()
                    .filter_map(Value::as_i64)
                    .collect();
                Ok((signs, r["lambda"].as_f64().ok_or("missing lambda")?))
            })
            .collect()
    };
    let n2 = rows(2)?;
    let expected2 = [
        1.0,
        two_pow_quarter(1),
        two_pow_quarter(1),
        two_pow_quarter(2),
    ];
    let n2_ok = n2.len() == 4
        && n2
            .iter()
            .zip(expected2)
            .all(|((_, v), e)| (v - e).abs() < TORSION_TOL);

    let n3 = rows(3)?;
    let n3_ok = n3.len() == 8
        && n3.iter().all(|(signs, v)| {
            let m = signs.iter().filter(|&&s| s == -1).count();
            (v - two_pow_quarter(m)).abs() < TORSION_TOL
        })
        && n3
            .iter()
            .any(|(_, v)| (v - 8f64.powf(-0.25)).abs() < TORSION_TOL);

    let mut sets_ok = true;
    for n in 1..=6 {
        let values = torsion_value_set(&FlatTorus::standard(n).unwrap(), CUTOFF).unwrap();
        sets_ok &= values.len() == n + 1
            && values
                .iter()
                .enumerate()
                .all(|(m, v)| (v - two_pow_quarter(m)).abs() < TORSION_TOL);
    }
    check(
        n2_ok && n3_ok && sets_ok,
        format!(
            "n=2 rows {}, n=3 rows {}, value sets n≤6 {}",
            ok_word(n2_ok),
            ok_word(n3_ok),
            ok_word(sets_ok)
        ),
    )
}

fn ok_word(ok: bool) -> &'static str {
    if ok {
        "match"
    } else {
        "differ"
    }
}

fn theta_closed_forms() -> Outcome {
    let pi = std::f64::consts::PI;
    let gamma = statrs::function::gamma::gamma(0.75);
    let plain = theta_sum::<f64>(false, CUTOFF).unwrap().value;
    let alternating = theta_sum::<f64>(true, CUTOFF).unwrap().value;
    let e1 = (plain - pi.powf(0.25) / gamma).abs();
    let e2 = (alternating - (pi / 2.0).powf(0.25) / gamma).abs();
    check(
        e1 < TORSION_TOL && e2 < TORSION_TOL,
        format!("plain error {e1:.1e}, alternating error {e2:.1e}"),
    )
}

fn orientability() -> Outcome {
    let mut classes = 0;
    let mut bad = 0;
    for n in 1..=6 {
        let torus = FlatTorus::standard(n).unwrap();
        for zeta in Z2Homomorphism::all(n).unwrap() {
            let lambda = torsion_invariant(&torus, &zeta, CUTOFF).unwrap().lambda;
            let all_plus = zeta.signs().iter().all(|s| s.is_plus());
            let near_one = (lambda - 1.0).abs() < ORIENTABLE_TOL;
            classes += 1;
            bad += usize::from(!(is_orientable(&zeta) == near_one && near_one == all_plus));
        }
    }
    check(bad == 0, format!("{classes} classes, {bad} disagreements"))
}

fn main() -> ExitCode {
    let (routes, localized) = routes_on_random_curves();
    let parity = parity_methods_on_paths();
    let criteria = [
        ("1", "multiplicity routes agree", routes),
        (
            "2",
            "product formula and normalization",
            product_formula_and_normalization(),
        ),
        ("3", "classical multiplicity", classical_vs_resolvent()),
        ("4", "localized parity", localized),
        ("4", "parity methods agree", parity),
        ("5", "loop fixtures", loop_fixtures()),
        ("6", "circle torsion", circle_torsion()),
        ("7", "torsion tables", torsion_tables()),
        ("8", "theta closed forms", theta_closed_forms()),
        ("9", "orientability", orientability()),
    ];
    let mut failed = 0;
    for (id, name, outcome) in &criteria {
        match outcome {
            Ok(detail) => println!("PASS  {id}  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {id}  {name}: {detail}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
