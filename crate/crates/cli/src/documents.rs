//! JSON documents for curves and loops. Rationals travel as strings
//! (`"3/4"`, `"-2"`) so no value passes through a float.

use fredholm_core::multiplicity::CurveKind;
use fredholm_core::parity::LoopSegment;
use fredholm_core::{parse_rational, LoopPath, Matrix, MatrixCurveJet, PolynomialPath, Rational};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveKindDocument {
    /// The coefficients are all of `L`.
    #[default]
    Polynomial,
    /// Only a jet of `L` is known.
    Truncated,
}

/// `L(λ) = Σ_j L_j (λ - λ₀)^j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveDocument {
    pub dim: usize,
    pub base_point: String,
    #[serde(default)]
    pub kind: CurveKindDocument,
    /// `L_0, L_1, ...`, each a `dim × dim` grid of rationals.
    pub coefficients: Vec<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SegmentDocument {
    /// A polynomial curve traversed over `[interval[0], interval[1]]`.
    Analytic {
        curve: CurveDocument,
        interval: [String; 2],
    },
    GlConnector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LoopDocument {
    pub segments: Vec<SegmentDocument>,
}

pub fn rational(text: &str, what: &str) -> Result<Rational, CliError> {
    parse_rational(text)
        .ok_or_else(|| CliError::Usage(format!("{what}: `{text}` is not a rational number")))
}

fn matrix_grid(m: &Matrix) -> Vec<Vec<String>> {
    m.to_rows()
        .iter()
        .map(|row| row.iter().map(ToString::to_string).collect())
        .collect()
}

impl CurveDocument {
    pub fn from_curve(curve: &MatrixCurveJet) -> Self {
        CurveDocument {
            dim: curve.dim(),
            base_point: curve.base_point().to_string(),
            kind: match curve.kind() {
                CurveKind::Polynomial => CurveKindDocument::Polynomial,
                CurveKind::Truncated => CurveKindDocument::Truncated,
            },
            coefficients: curve.coefficients().iter().map(matrix_grid).collect(),
        }
    }

    pub fn to_curve(&self) -> Result<MatrixCurveJet, CliError> {
        if self.dim == 0 {
            return Err(CliError::Usage("curve: dim must be positive".into()));
        }
        if self.coefficients.is_empty() {
            return Err(CliError::Usage(
                "curve: at least one coefficient is required".into(),
            ));
        }
        let base = rational(&self.base_point, "curve base_point")?;
        let coefficients = self
            .coefficients
            .iter()
            .enumerate()
            .map(|(j, grid)| {
                if grid.len() != self.dim || grid.iter().any(|row| row.len() != self.dim) {
                    return Err(CliError::Usage(format!(
                        "curve: coefficient {j} is not {0}×{0}",
                        self.dim
                    )));
                }
                let rows = grid
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|v| rational(v, &format!("curve coefficient {j}")))
                            .collect()
                    })
                    .collect::<Result<Vec<Vec<Rational>>, _>>()?;
                Ok(Matrix::from_rows(rows))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let curve = match self.kind {
            CurveKindDocument::Polynomial => MatrixCurveJet::polynomial(base, coefficients),
            CurveKindDocument::Truncated => MatrixCurveJet::truncated(base, coefficients),
        };
        Ok(curve?)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("curve document: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }
}

/// The polynomial path `λ ↦ L(λ)` on `[a, b]`.
pub fn path_from_curve(
    curve: &MatrixCurveJet,
    a: Rational,
    b: Rational,
) -> Result<PolynomialPath, CliError> {
    if !curve.is_polynomial() {
        return Err(CliError::Usage(
            "a path needs a polynomial curve, not a truncated jet".into(),
        ));
    }
    let at_zero = curve.recenter(Rational::from_integer(0.into()))?;
    Ok(PolynomialPath::new(a, b, at_zero.coefficients().to_vec())?)
}

fn path_document(path: &PolynomialPath) -> SegmentDocument {
    let curve = MatrixCurveJet::polynomial(
        Rational::from_integer(0.into()),
        path.coefficients().to_vec(),
    )
    .expect("path coefficients form a curve");
    SegmentDocument::Analytic {
        curve: CurveDocument::from_curve(&curve),
        interval: [path.start().to_string(), path.end().to_string()],
    }
}

impl LoopDocument {
    pub fn from_loop(path: &LoopPath) -> Self {
        let segments = path
            .segments()
            .iter()
            .map(|s| match s {
                LoopSegment::Analytic(p) => path_document(p),
                LoopSegment::GlConnector => SegmentDocument::GlConnector,
            })
            .collect();
        LoopDocument { segments }
    }

    pub fn to_loop(&self) -> Result<LoopPath, CliError> {
        let segments = self
            .segments
            .iter()
            .map(|s| match s {
                SegmentDocument::Analytic { curve, interval } => {
                    let a = rational(&interval[0], "segment interval")?;
                    let b = rational(&interval[1], "segment interval")?;
                    Ok(LoopSegment::Analytic(path_from_curve(
                        &curve.to_curve()?,
                        a,
                        b,
                    )?))
                }
                SegmentDocument::GlConnector => Ok(LoopSegment::GlConnector),
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(LoopPath::new(segments)?)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("loop document: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }
}
