//! JSON documents printed by the `liegen` subcommands.
//!
//! Every number is an exact string, `"p"` or `"p/q"`; floats only appear
//! under `approx*` keys.

use anyhow::{bail, Context};
use liegen_core::exact::{
    approx_f64, format_rational, parse_rational, Matrix, Polynomial, Rational, RootBracket,
};
use liegen_core::pingpong::{BoundKind, Certificate, Parameters, PingPongBound, SecondBound};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub approx: Option<Vec<Vec<f64>>>,
}

impl MatrixDocument {
    pub fn from_matrix(m: &Matrix) -> Self {
        let rows = m.rows();
        MatrixDocument {
            rows: m.n(),
            cols: m.n(),
            entries: rows
                .iter()
                .map(|r| r.iter().map(format_rational).collect())
                .collect(),
            approx: (!m.is_integral()).then(|| {
                rows.iter()
                    .map(|r| r.iter().map(approx_f64).collect())
                    .collect()
            }),
        }
    }

    pub fn to_matrix(&self) -> anyhow::Result<Matrix> {
        if self.rows != self.cols {
            bail!("matrix must be square, got {}x{}", self.rows, self.cols);
        }
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            bail!(
                "entries do not match the declared {}x{} shape",
                self.rows,
                self.cols
            );
        }
        let rows = self
            .entries
            .iter()
            .map(|r| {
                r.iter()
                    .map(|e| parse_rational(e))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix::from_rows(rows)?)
    }
}

/// Accepted shapes for matrix input files.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum MatrixInput {
    Single(MatrixDocument),
    List(Vec<MatrixDocument>),
    Pair {
        first: MatrixDocument,
        second: MatrixDocument,
    },
}

impl MatrixInput {
    pub fn read(path: &std::path::Path) -> anyhow::Result<Vec<Matrix>> {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let input: MatrixInput = serde_json::from_str(&text)
            .with_context(|| format!("{} is not a matrix document", path.display()))?;
        let docs = match input {
            MatrixInput::Single(d) => vec![d],
            MatrixInput::List(v) => v,
            MatrixInput::Pair { first, second } => vec![first, second],
        };
        docs.iter()
            .map(|d| {
                d.to_matrix()
                    .with_context(|| format!("in {}", path.display()))
            })
            .collect()
    }
}

pub fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

#[derive(Debug, Serialize)]
pub struct PolynomialDocument {
    /// Ascending coefficients.
    pub coefficients: Vec<String>,
    /// Ascending integer coefficients after multiplying by the LCM of the denominators.
    pub cleared: Vec<String>,
}

impl PolynomialDocument {
    pub fn new(p: &Polynomial) -> Self {
        PolynomialDocument {
            coefficients: strings(p.coefficients()),
            cleared: p
                .cleared_integer_coefficients()
                .iter()
                .map(|c| c.to_string())
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct BracketDocument {
    pub lo: String,
    pub hi: String,
    pub width_bound: String,
    pub approx_lo: f64,
    pub approx_hi: f64,
}

impl BracketDocument {
    pub fn new(b: &RootBracket) -> Self {
        BracketDocument {
            lo: format_rational(&b.lo),
            hi: format_rational(&b.hi),
            width_bound: format_rational(&b.width_bound),
            approx_lo: approx_f64(&b.lo),
            approx_hi: approx_f64(&b.hi),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct BoundDocument {
    pub kind: &'static str,
    pub polynomials: Vec<PolynomialDocument>,
    pub bracket: Option<BracketDocument>,
    pub safe_value: String,
    pub approx_safe_value: f64,
    pub verified: bool,
}

impl BoundDocument {
    pub fn new(b: &PingPongBound) -> Self {
        BoundDocument {
            kind: match b.kind {
                BoundKind::T => "t_bound",
                BoundKind::R => "r_bound",
            },
            polynomials: b.polys.iter().map(PolynomialDocument::new).collect(),
            bracket: b.bracket.as_ref().map(BracketDocument::new),
            safe_value: format_rational(&b.safe_value),
            approx_safe_value: approx_f64(&b.safe_value),
            verified: b.verify(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CertificateInput {
    pub family: &'static str,
    pub n: usize,
    pub t: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<String>,
    pub b: Option<Vec<String>>,
    pub width: String,
}

#[derive(Debug, Serialize)]
pub struct DensityDocument {
    pub closure_dim: usize,
    pub closure_rounds: usize,
    #[serde(rename = "type")]
    pub label: String,
    pub expected: Option<String>,
    pub dense: bool,
}

#[derive(Debug, Serialize)]
pub struct FreenessDocument {
    pub t_bound: BoundDocument,
    /// `"2"` for the corner family.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s0: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_bound: Option<BoundDocument>,
    pub t_margin: String,
    pub second_margin: String,
    pub free: bool,
}

#[derive(Debug, Serialize)]
pub struct CertificateDocument {
    pub input: CertificateInput,
    pub density: DensityDocument,
    pub freeness: FreenessDocument,
    pub conclusion: &'static str,
    pub tool_version: &'static str,
}

impl CertificateDocument {
    pub fn new(c: &Certificate, width: &Rational) -> Self {
        let (t, s, r) = match &c.parameters {
            Parameters::UpperCorner { t, s } => (t, Some(format_rational(s)), None),
            Parameters::UpperLower { t, r } => (t, None, Some(format_rational(r))),
        };
        let (s0, r_bound) = match &c.second_bound {
            SecondBound::Corner(s0) => (Some(format_rational(s0)), None),
            SecondBound::Lower(b) => (None, Some(BoundDocument::new(b))),
        };
        CertificateDocument {
            input: CertificateInput {
                family: c.family.name(),
                n: c.n,
                t: format_rational(t),
                s,
                r,
                b: c.b.as_deref().map(strings),
                width: format_rational(width),
            },
            density: DensityDocument {
                closure_dim: c.closure_dim,
                closure_rounds: c.closure_rounds,
                label: c.label.to_string(),
                expected: c.expected.as_ref().map(ToString::to_string),
                dense: c.dense,
            },
            freeness: FreenessDocument {
                t_bound: BoundDocument::new(&c.t_bound),
                s0,
                r_bound,
                t_margin: format_rational(&c.t_margin),
                second_margin: format_rational(&c.second_margin),
                free: c.free,
            },
            conclusion: c.conclusion.name(),
            tool_version: env!("CARGO_PKG_VERSION"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use liegen_core::exact::ratio;

    #[test]
    fn matrix_round_trip() {
        let mut m = Matrix::identity(3);
        m.set(1, 3, ratio(-7, 3));
        m.set(2, 1, ratio(5, 1));
        let doc = MatrixDocument::from_matrix(&m);
        assert_eq!(doc.entries[0][2], "-7/3");
        assert!(doc.approx.is_some());
        let text = serde_json::to_string(&doc).unwrap();
        let back: MatrixDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_matrix().unwrap(), m);
    }

    #[test]
    fn rejects_bad_shapes() {
        let doc = MatrixDocument {
            rows: 2,
            cols: 2,
            entries: vec![vec!["1".into(), "0".into()]],
            approx: None,
        };
        assert!(doc.to_matrix().is_err());
        let doc = MatrixDocument {
            rows: 1,
            cols: 1,
            entries: vec![vec!["1/0".into()]],
            approx: None,
        };
        assert!(doc.to_matrix().is_err());
    }
}
