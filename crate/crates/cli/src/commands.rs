use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use fredholm_core::multiplicity::{
    algebraic_order, chi_laurent, chi_ord_det, chi_schur, chi_transversal, classical_multiplicity,
    AlgebraicOrder, Multiplicity, MultiplicityError, Witness,
};
use fredholm_core::parity::{
    loop_parity, parity_chi_sum, parity_crossings, parity_interval, Crossing,
};
use fredholm_core::torsion::{
    is_orientable, theta_sum_with_decay, torsion_invariant, torsion_table, wiener_weights,
};
use fredholm_core::{
    FlatTorus, Jet, Matrix, MatrixCurveJet, MultiplicityReport, ParityValue, Rational, Sign,
    TorsionReport, Z2Homomorphism,
};
use serde_json::{json, Value};

use crate::args::{Command, Method, ParityCommand, PathArgs, ThetaKind, TorsionMode, TorusArgs};
use crate::documents::{path_from_curve, rational, CurveDocument, LoopDocument};
use crate::error::CliError;

/// Human text plus the structured form of the same result.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub text: String,
    pub json: Value,
}

/// A report, possibly paired with the failure it documents.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: Report,
    pub failure: Option<CliError>,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome {
            report: Report { text, json },
            failure: None,
        }
    }

    fn failed(text: String, json: Value, failure: CliError) -> Self {
        Outcome {
            report: Report { text, json },
            failure: Some(failure),
        }
    }
}

pub fn run(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Chi { curve, method } => cmd_chi(&load_curve(curve)?, *method),
        Command::Kappa { curve } => cmd_kappa(&load_curve(curve)?),
        Command::Classical { curve } => cmd_classical(&load_curve(curve)?),
        Command::Parity { mode } => cmd_parity(mode),
        Command::Torsion {
            mode,
            torus,
            signs,
            tol,
        } => cmd_torsion(*mode, torus, signs.as_deref(), *tol),
        Command::Theta {
            kind,
            cutoff,
            period,
        } => cmd_theta(*kind, *cutoff, *period),
        Command::Weights { torus, max_class } => cmd_weights(torus, *max_class),
        Command::Orientable { torus, signs, tol } => cmd_orientable(torus, signs, *tol),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

pub fn load_curve(path: &Path) -> Result<MatrixCurveJet, CliError> {
    CurveDocument::parse(&read(path)?)?.to_curve()
}

fn jet_json(jet: &Jet) -> Value {
    json!({ "order": jet.order(), "coefficients": jet.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>() })
}

fn multiplicity_json(m: Multiplicity) -> Value {
    match m {
        Multiplicity::Finite(k) => json!({ "kind": "finite", "value": k }),
        Multiplicity::Infinite => json!({ "kind": "infinite" }),
        Multiplicity::UndeterminedAtOrder(r) => json!({ "kind": "undetermined", "order": r }),
    }
}

fn witness_text(w: &Witness<Rational>) -> String {
    match w {
        Witness::Jet(j) => format!("jet {j}"),
        Witness::Laurent { pole_order, unit } => format!("λ^-{pole_order} · [{unit}]"),
        Witness::Transversal { image_dims } => format!("image dims {image_dims:?}"),
    }
}

fn witness_json(w: &Witness<Rational>) -> Value {
    match w {
        Witness::Jet(j) => json!({ "kind": "jet", "jet": jet_json(j) }),
        Witness::Laurent { pole_order, unit } => {
            json!({ "kind": "laurent", "pole_order": pole_order, "unit": jet_json(unit) })
        }
        Witness::Transversal { image_dims } => {
            json!({ "kind": "transversal", "image_dims": image_dims })
        }
    }
}

type RouteResult = Result<MultiplicityReport, MultiplicityError>;

fn run_route(curve: &MatrixCurveJet, method: Method) -> RouteResult {
    match method {
        Method::OrdDet => Ok(chi_ord_det(curve)),
        Method::Schur => chi_schur(curve, None),
        Method::Laurent => chi_laurent(curve),
        Method::Transversal => chi_transversal(curve),
        Method::All => unreachable!("expanded by the caller"),
    }
}

fn method_name(method: Method) -> &'static str {
    match method {
        Method::OrdDet => "ord_det",
        Method::Schur => "schur",
        Method::Laurent => "laurent",
        Method::Transversal => "transversal",
        Method::All => "all",
    }
}

fn cmd_chi(curve: &MatrixCurveJet, method: Method) -> Result<Outcome, CliError> {
    let methods = match method {
        Method::All => vec![
            Method::OrdDet,
            Method::Schur,
            Method::Laurent,
            Method::Transversal,
        ],
        m => vec![m],
    };
    let mut text = format!(
        "curve: dim {}, base point {}\n",
        curve.dim(),
        curve.base_point()
    );
    let mut rows = Vec::new();
    let mut failure = None;
    let mut reference: Option<Multiplicity> = None;
    for m in methods {
        let result = run_route(curve, m);
        let name = method_name(m);
        match &result {
            Ok(r) => {
                let _ = writeln!(
                    text,
                    "{name:<12} χ = {:<24} (order {}) {}",
                    r.value,
                    r.working_order,
                    witness_text(&r.witness)
                );
                rows.push(json!({
                    "route": name,
                    "status": "ok",
                    "chi": multiplicity_json(r.value),
                    "working_order": r.working_order,
                    "witness": witness_json(&r.witness),
                }));
                if failure.is_none() {
                    match (r.value, reference) {
                        (Multiplicity::Finite(_), None) => reference = Some(r.value),
                        (Multiplicity::Finite(_), Some(expected)) if expected != r.value => {
                            failure = Some(CliError::Inconsistent(format!(
                                "route {name} gives χ = {}, expected {expected}",
                                r.value
                            )));
                        }
                        (Multiplicity::Finite(_), Some(_)) => {}
                        (other, _) => {
                            failure = Some(CliError::Precondition(format!(
                                "route {name}: χ is {other}"
                            )));
                        }
                    }
                }
            }
            Err(e) => {
                let _ = writeln!(text, "{name:<12} {e}");
                rows.push(json!({ "route": name, "status": "error", "error": e.to_string() }));
                let skipped =
                    method == Method::All && matches!(e, MultiplicityError::NotTransversal { .. });
                if failure.is_none() && !skipped {
                    failure = Some(e.clone().into());
                }
            }
        }
    }
    if method == Method::All && failure.is_none() {
        let _ = writeln!(text, "all routes agree");
    }
    let report = json!({
        "command": "chi",
        "method": method_name(method),
        "dim": curve.dim(),
        "base_point": curve.base_point().to_string(),
        "routes": rows,
        "chi": reference.map(multiplicity_json),
    });
    Ok(match failure {
        Some(f) => Outcome::failed(text, report, f),
        None => Outcome::ok(text, report),
    })
}

fn cmd_kappa(curve: &MatrixCurveJet) -> Result<Outcome, CliError> {
    let report = algebraic_order(curve)?;
    let (kappa_text, kappa_json) = match report.kappa {
        AlgebraicOrder::Kappa(k) => (k.to_string(), json!(k)),
        AlgebraicOrder::NotAlgebraic => ("not algebraic".to_string(), Value::Null),
    };
    let min_adj = report
        .adjugate_min_order
        .map_or("-".to_string(), |m| m.to_string());
    let text = format!(
        "κ = {kappa_text}\nord det = {}\nmin ord adj = {min_adj}\n",
        report.det_order
    );
    let json = json!({
        "command": "kappa",
        "kappa": kappa_json,
        "algebraic": matches!(report.kappa, AlgebraicOrder::Kappa(_)),
        "det_order": multiplicity_json(report.det_order),
        "adjugate_min_order": report.adjugate_min_order,
    });
    Ok(Outcome::ok(text, json))
}

fn cmd_classical(curve: &MatrixCurveJet) -> Result<Outcome, CliError> {
    let n = curve.dim();
    let identity = Matrix::identity(n);
    let shape_ok = curve.is_polynomial()
        && curve.degree() <= 1
        && curve.coefficient(1).is_some_and(|l1| l1 == identity);
    if !shape_ok {
        return Err(CliError::Precondition(
            "curve must be λI - K: polynomial, degree one, L_1 = I".into(),
        ));
    }
    let mu = curve.base_point().clone();
    let k = identity.scale(&mu).sub(curve.value());
    let classical = classical_multiplicity(&k, &mu)?;
    let det = chi_ord_det(curve).value;
    let mut text = format!(
        "μ = {mu}\nascent = {}\nclassical multiplicity = {}\nord det(λI - K) = {det}\n",
        classical.ascent, classical.multiplicity
    );
    let json = json!({
        "command": "classical",
        "mu": mu.to_string(),
        "ascent": classical.ascent,
        "multiplicity": classical.multiplicity,
        "ord_det": multiplicity_json(det),
    });
    if det != Multiplicity::Finite(classical.multiplicity) {
        let msg = format!(
            "classical multiplicity {} differs from ord det {det}",
            classical.multiplicity
        );
        text.push_str(&msg);
        text.push('\n');
        return Ok(Outcome::failed(text, json, CliError::Inconsistent(msg)));
    }
    Ok(Outcome::ok(text, json))
}

fn crossing_json(c: &Crossing<Rational>) -> Value {
    json!({
        "lower": c.location.lower.to_string(),
        "upper": c.location.upper.to_string(),
        "exact": c.location.exact.as_ref().map(ToString::to_string),
        "chi": c.chi,
    })
}

fn crossing_text(c: &Crossing<Rational>) -> String {
    match &c.location.exact {
        Some(x) => format!("  λ = {x}  χ = {}\n", c.chi),
        None => format!(
            "  λ ∈ ({}, {})  χ = {}\n",
            c.location.lower, c.location.upper, c.chi
        ),
    }
}

fn parity_outcome(value: &ParityValue, extra: Value) -> Outcome {
    let mut text = format!("σ = {}  ({})\n", value.sign, value.method.name());
    let mut json = json!({
        "command": "parity",
        "method": value.method.name(),
        "sign": value.sign.as_i64(),
        "connectors": value.connectors,
    });
    if let Some(cs) = &value.crossings {
        let _ = writeln!(
            text,
            "crossings: {}, Σχ = {}",
            cs.len(),
            value.chi_total().unwrap_or(0)
        );
        for c in cs {
            text.push_str(&crossing_text(c));
        }
        json["crossings"] = Value::Array(cs.iter().map(crossing_json).collect());
        json["chi_total"] = json!(value.chi_total());
    }
    if value.connectors > 0 {
        let _ = writeln!(text, "GL connectors: {}", value.connectors);
    }
    if let (Value::Object(target), Value::Object(more)) = (&mut json, extra) {
        target.extend(more);
    }
    Outcome::ok(text, json)
}

fn load_path(args: &PathArgs) -> Result<(fredholm_core::PolynomialPath, Value), CliError> {
    let curve = load_curve(&args.curve)?;
    let a = rational(&args.a, "--a")?;
    let b = rational(&args.b, "--b")?;
    let interval = json!([a.to_string(), b.to_string()]);
    Ok((
        path_from_curve(&curve, a, b)?,
        json!({ "interval": interval }),
    ))
}

fn cmd_parity(mode: &ParityCommand) -> Result<Outcome, CliError> {
    Ok(match mode {
        ParityCommand::Interval(args) => {
            let (path, extra) = load_path(args)?;
            parity_outcome(&parity_interval(&path)?, extra)
        }
        ParityCommand::Crossings(args) => {
            let (path, extra) = load_path(args)?;
            parity_outcome(&parity_crossings(&path)?, extra)
        }
        ParityCommand::ChiSum(args) => {
            let (path, extra) = load_path(args)?;
            parity_outcome(&parity_chi_sum(&path)?, extra)
        }
        ParityCommand::Loop { loop_file } => {
            let lp = LoopDocument::parse(&read(loop_file)?)?.to_loop()?;
            parity_outcome(
                &loop_parity(&lp)?,
                json!({ "segments": lp.segments().len() }),
            )
        }
    })
}

fn torus(args: &TorusArgs) -> Result<FlatTorus, CliError> {
    Ok(match args.period {
        None => FlatTorus::standard(args.n)?,
        Some(p) => FlatTorus::new(args.n, p, 1.0)?,
    })
}

pub fn parse_signs(text: &str, n: usize) -> Result<Z2Homomorphism, CliError> {
    let values = text
        .split(',')
        .map(|s| s.trim().trim_start_matches('+').parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| CliError::Usage(format!("--signs: `{text}` is not a list of ±1")))?;
    if values.len() != n {
        return Err(CliError::Usage(format!(
            "--signs: expected {n} values, found {}",
            values.len()
        )));
    }
    Ok(Z2Homomorphism::from_i64s(&values)?)
}

fn closed_form_tag(report: &TorsionReport, tol: f64) -> Option<String> {
    let form = report.closed_form?;
    ((report.lambda - form.value::<f64>()).abs() <= tol).then(|| form.to_string())
}

fn torsion_row_json(report: &TorsionReport, tol: f64) -> Value {
    json!({
        "signs": report.zeta.signs().iter().map(|s| s.as_i64()).collect::<Vec<_>>(),
        "lambda": report.lambda,
        "error_bound": report.error_bound,
        "exact": report.exact,
        "closed_form": closed_form_tag(report, tol),
    })
}

fn torus_json(t: &FlatTorus, cutoff: usize) -> Value {
    json!({ "n": t.n(), "period": t.period(), "time": t.time(), "cutoff": cutoff })
}

fn cmd_torsion(
    mode: Option<TorsionMode>,
    args: &TorusArgs,
    signs: Option<&str>,
    tol: f64,
) -> Result<Outcome, CliError> {
    let t = torus(args)?;
    match (mode, signs) {
        (Some(TorsionMode::Table), Some(_)) => {
            Err(CliError::Usage("`torsion table` takes no --signs".into()))
        }
        (None, None) => Err(CliError::Usage("`torsion` needs --signs or `table`".into())),
        (Some(TorsionMode::Table), None) => {
            let rows = torsion_table(&t, args.cutoff)?;
            let mut text = String::new();
            for i in 1..=t.n() {
                let _ = write!(text, "{:>7}", format!("ζ(φ{i})"));
            }
            let _ = writeln!(text, "  {:<20} closed form", "Λ");
            for r in &rows {
                for s in r.zeta.signs() {
                    let _ = write!(text, "{:>7}", s.to_string());
                }
                let tag = closed_form_tag(r, tol).map_or(String::new(), |f| format!("= {f}"));
                let _ = writeln!(text, "  {:<20.15} {tag}", r.lambda);
            }
            let json = json!({
                "command": "torsion",
                "mode": "table",
                "torus": torus_json(&t, args.cutoff),
                "rows": rows.iter().map(|r| torsion_row_json(r, tol)).collect::<Vec<_>>(),
            });
            Ok(Outcome::ok(text, json))
        }
        (None, Some(signs)) => {
            let zeta = parse_signs(signs, t.n())?;
            let r = torsion_invariant(&t, &zeta, args.cutoff)?;
            let tag = closed_form_tag(&r, tol).map_or(String::new(), |f| format!(" = {f}"));
            let exact = if r.exact { " (exact)" } else { "" };
            let text = format!(
                "ζ = {zeta}\nΛ = {:.15} ± {:.1e}{tag}{exact}\n",
                r.lambda, r.error_bound
            );
            let mut json = torsion_row_json(&r, tol);
            json["command"] = json!("torsion");
            json["torus"] = torus_json(&t, args.cutoff);
            Ok(Outcome::ok(text, json))
        }
    }
}

fn cmd_theta(kind: ThetaKind, cutoff: usize, period: Option<f64>) -> Result<Outcome, CliError> {
    let t = torus(&TorusArgs {
        n: 1,
        cutoff,
        period,
    })?;
    let alternating = kind == ThetaKind::Alternating;
    let sum = theta_sum_with_decay(t.decay(), alternating, cutoff)?;
    let name = if alternating { "alternating" } else { "plain" };
    let text = format!(
        "θ_{name} = {:.16} ± {:.1e}  (cutoff {cutoff}, q = {:.15})\n",
        sum.value,
        sum.tail_bound,
        t.decay()
    );
    let json = json!({
        "command": "theta",
        "kind": name,
        "value": sum.value,
        "tail_bound": sum.tail_bound,
        "cutoff": cutoff,
        "decay": t.decay(),
    });
    Ok(Outcome::ok(text, json))
}

fn cmd_weights(args: &TorusArgs, max_class: usize) -> Result<Outcome, CliError> {
    let t = torus(args)?;
    let w = wiener_weights(&t, max_class, args.cutoff)?;
    let mut text = format!("p_1(x, x) = {:.15}\n", w.normalization);
    for (class, weight) in &w.weights {
        let _ = writeln!(text, "{:<16} {weight:.7e}", format!("{class:?}"));
    }
    let _ = writeln!(
        text,
        "total = {:.15}, tail ≤ {:.1e}",
        w.total(),
        w.tail_bound
    );
    let json = json!({
        "command": "weights",
        "torus": torus_json(&t, args.cutoff),
        "max_class": max_class,
        "normalization": w.normalization,
        "tail_bound": w.tail_bound,
        "weights": w.weights.iter().map(|(c, v)| json!({ "class": c, "weight": v })).collect::<Vec<_>>(),
    });
    Ok(Outcome::ok(text, json))
}

fn cmd_orientable(args: &TorusArgs, signs: &str, tol: f64) -> Result<Outcome, CliError> {
    let t = torus(args)?;
    let zeta = parse_signs(signs, t.n())?;
    let orientable = is_orientable(&zeta);
    let r = torsion_invariant(&t, &zeta, args.cutoff)?;
    let near_one = (r.lambda - 1.0).abs() < tol;
    let all_plus = zeta.signs().iter().all(|s| *s == Sign::Plus);
    let mut text = format!(
        "ζ = {zeta}\norientable: {}\nΛ = {:.15}\n",
        if orientable { "yes" } else { "no" },
        r.lambda
    );
    let json = json!({
        "command": "orientable",
        "signs": zeta.signs().iter().map(|s| s.as_i64()).collect::<Vec<_>>(),
        "orientable": orientable,
        "lambda": r.lambda,
        "lambda_is_one": near_one,
    });
    if orientable != near_one || orientable != all_plus {
        let msg =
            format!("orientability {orientable} disagrees with |Λ - 1| < {tol:e}: {near_one}");
        text.push_str(&msg);
        text.push('\n');
        return Ok(Outcome::failed(text, json, CliError::Inconsistent(msg)));
    }
    Ok(Outcome::ok(text, json))
}
