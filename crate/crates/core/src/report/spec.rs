//! JSON manifold documents.
//!
//! ```json
//! { "label": "example", "dim": 3,
//!   "structure_constants": [[2, 3, 1, "2"], [3, 1, 2, "-5/2"], [1, 2, 3, "3/2"]],
//!   "metric": "identity", "xi_index": 1 }
//! ```
//!
//! An entry `[i, j, k, c]` sets the `e_k`-component of `[e_i, e_j]` to `c`;
//! indices are 1-based and the `[e_j, e_i]` entry is filled in by antisymmetry.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frame::{FrameError, LieFrame, MetricFrame};
use crate::linalg::Matrix;
use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: field {field}: malformed rational {value:?}")]
    MalformedRational {
        line: usize,
        field: String,
        value: String,
    },
    #[error("line {line}: field {field}: {message}")]
    IndexOutOfRange {
        line: usize,
        field: String,
        message: String,
    },
    #[error("line {line}: field {field}: [e{i}, e{i}] must vanish")]
    AntisymmetryViolation {
        line: usize,
        field: String,
        i: usize,
    },
    #[error("line {line}: field {field}: conflicts with an earlier entry for the e{k}-component of [e{i}, e{j}]")]
    ConflictingEntry {
        line: usize,
        field: String,
        i: usize,
        j: usize,
        k: usize,
    },
    #[error("field structure_constants: Jacobi identity fails for (e{i}, e{j}, e{k}) in component e{component}")]
    JacobiViolation {
        i: usize,
        j: usize,
        k: usize,
        component: usize,
    },
    #[error("field dim: {0}")]
    BadDimension(String),
    #[error("field metric: {0}")]
    BadMetric(String),
}

impl SpecError {
    /// Stable identifier of the error kind.
    pub fn code(&self) -> &'static str {
        match self {
            SpecError::Json { .. } => "json",
            SpecError::MalformedRational { .. } => "malformed-rational",
            SpecError::IndexOutOfRange { .. } => "index-out-of-range",
            SpecError::AntisymmetryViolation { .. } => "antisymmetry-violation",
            SpecError::ConflictingEntry { .. } => "conflicting-entry",
            SpecError::JacobiViolation { .. } => "jacobi-violation",
            SpecError::BadDimension(_) => "bad-dimension",
            SpecError::BadMetric(_) => "bad-metric",
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum RawNumber {
    Text(String),
    Int(i64),
}

impl RawNumber {
    fn text(&self) -> String {
        match self {
            RawNumber::Text(s) => s.clone(),
            RawNumber::Int(v) => v.to_string(),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum RawMetric {
    Named(String),
    Matrix(Vec<Vec<RawNumber>>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    label: String,
    dim: usize,
    structure_constants: Vec<(usize, usize, usize, RawNumber)>,
    metric: RawMetric,
    xi_index: usize,
}

/// Metric as written in the input document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum MetricSpec {
    Identity(String),
    Matrix(Vec<Vec<Rational>>),
}

/// A validated manifold document with 1-based indices as given.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ManifoldSpec {
    pub label: String,
    pub dim: usize,
    pub structure_constants: Vec<(usize, usize, usize, Rational)>,
    pub metric: MetricSpec,
    pub xi_index: usize,
}

/// Source line (1-based) of each element of the array stored under `key`.
fn element_lines(text: &str, key: &str) -> Vec<usize> {
    let needle = format!("\"{key}\"");
    let Some(start) = text.find(&needle) else {
        return Vec::new();
    };
    let mut line = 1 + text[..start].matches('\n').count();
    let mut depth = 0usize;
    let mut out = Vec::new();
    let mut in_string = false;
    let mut escaped = false;
    let mut element_pending = false;
    for ch in text[start + needle.len()..].chars() {
        if ch == '\n' {
            line += 1;
        }
        if in_string {
            match (escaped, ch) {
                (true, _) => escaped = false,
                (false, '\\') => escaped = true,
                (false, '"') => in_string = false,
                _ => {}
            }
            continue;
        }
        match ch {
            '"' => {
                in_string = true;
                if depth == 1 && element_pending {
                    out.push(line);
                    element_pending = false;
                }
            }
            '[' => {
                if depth == 1 {
                    out.push(line);
                    element_pending = false;
                }
                depth += 1;
                if depth == 1 {
                    element_pending = true;
                }
            }
            ']' => {
                if depth <= 1 {
                    break;
                }
                depth -= 1;
            }
            ',' if depth == 1 => element_pending = true,
            c if depth == 1 && element_pending && !c.is_whitespace() => {
                out.push(line);
                element_pending = false;
            }
            '{' | '}' if depth == 0 => break,
            _ => {}
        }
    }
    out
}

fn key_line(text: &str, key: &str) -> usize {
    text.find(&format!("\"{key}\""))
        .map_or(1, |p| 1 + text[..p].matches('\n').count())
}

fn parse_rational(raw: &RawNumber, line: usize, field: String) -> Result<Rational, SpecError> {
    let value = raw.text();
    value
        .trim()
        .parse::<Rational>()
        .map_err(|_| SpecError::MalformedRational { line, field, value })
}

pub fn parse_spec(input: &str) -> Result<ManifoldSpec, SpecError> {
    let raw: RawSpec = serde_json::from_str(input).map_err(|e| SpecError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let sc_lines = element_lines(input, "structure_constants");
    let sc_line = |idx: usize| sc_lines.get(idx).copied().unwrap_or_else(|| key_line(input, "structure_constants"));
    let dim = raw.dim;
    if dim < 3 || dim.is_multiple_of(2) {
        return Err(SpecError::BadDimension(format!("dimension must be odd and at least 3, got {dim}")));
    }
    let mut constants = Vec::with_capacity(raw.structure_constants.len());
    for (idx, (i, j, k, v)) in raw.structure_constants.iter().enumerate() {
        let field = format!("structure_constants[{idx}]");
        let line = sc_line(idx);
        for (name, value) in [("i", i), ("j", j), ("k", k)] {
            if *value < 1 || *value > dim {
                return Err(SpecError::IndexOutOfRange {
                    line,
                    field: field.clone(),
                    message: format!("index {name} = {value} outside 1..={dim}"),
                });
            }
        }
        let c = parse_rational(v, line, field)?;
        constants.push((*i, *j, *k, c));
    }
    let metric = match &raw.metric {
        RawMetric::Named(name) if name == "identity" => MetricSpec::Identity(name.clone()),
        RawMetric::Named(name) => {
            return Err(SpecError::BadMetric(format!("unknown metric name {name:?}")));
        }
        RawMetric::Matrix(rows) => {
            let lines = element_lines(input, "metric");
            let mut out = Vec::with_capacity(rows.len());
            for (ri, row) in rows.iter().enumerate() {
                let line = lines.get(ri).copied().unwrap_or_else(|| key_line(input, "metric"));
                let parsed = row
                    .iter()
                    .enumerate()
                    .map(|(ci, v)| parse_rational(v, line, format!("metric[{ri}][{ci}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                out.push(parsed);
            }
            MetricSpec::Matrix(out)
        }
    };
    if raw.xi_index < 1 || raw.xi_index > dim {
        return Err(SpecError::IndexOutOfRange {
            line: key_line(input, "xi_index"),
            field: "xi_index".to_string(),
            message: format!("{} outside 1..={dim}", raw.xi_index),
        });
    }
    let spec = ManifoldSpec {
        label: raw.label,
        dim,
        structure_constants: constants,
        metric,
        xi_index: raw.xi_index,
    };
    spec.metric_frame()
        .map_err(|e| frame_error(e, &spec.structure_constants, &sc_lines, input))?;
    Ok(spec)
}

fn frame_error(
    e: FrameError,
    constants: &[(usize, usize, usize, Rational)],
    sc_lines: &[usize],
    input: &str,
) -> SpecError {
    // Line of the last entry touching the e_k-component of [e_i, e_j].
    let entry_line = |i: usize, j: usize, k: usize| {
        constants
            .iter()
            .rposition(|(a, b, c, _)| {
                *c == k + 1 && ((*a, *b) == (i + 1, j + 1) || (*a, *b) == (j + 1, i + 1))
            })
            .and_then(|pos| sc_lines.get(pos).copied())
            .unwrap_or_else(|| key_line(input, "structure_constants"))
    };
    match e {
        FrameError::AntisymmetryViolation { i, j, k } => SpecError::AntisymmetryViolation {
            line: entry_line(i, j, k),
            field: "structure_constants".to_string(),
            i: i + 1,
        },
        FrameError::ConflictingEntry { i, j, k } => SpecError::ConflictingEntry {
            line: entry_line(i, j, k),
            field: "structure_constants".to_string(),
            i: i + 1,
            j: j + 1,
            k: k + 1,
        },
        FrameError::JacobiViolation { i, j, k, component } => SpecError::JacobiViolation {
            i: i + 1,
            j: j + 1,
            k: k + 1,
            component: component + 1,
        },
        FrameError::BadDimension(d) => SpecError::BadDimension(format!("unsupported dimension {d}")),
        other => SpecError::BadMetric(other.to_string()),
    }
}

impl ManifoldSpec {
    /// Builds the frame and metric. Indices are converted to 0-based.
    pub fn metric_frame(&self) -> Result<MetricFrame, FrameError> {
        let entries: Vec<(usize, usize, usize, Rational)> = self
            .structure_constants
            .iter()
            .map(|(i, j, k, c)| (i - 1, j - 1, k - 1, c.clone()))
            .collect();
        let frame = LieFrame::from_sparse(self.dim, &entries)?;
        match &self.metric {
            MetricSpec::Identity(_) => Ok(MetricFrame::orthonormal(frame)),
            MetricSpec::Matrix(rows) => {
                if rows.len() != self.dim || rows.iter().any(|r| r.len() != self.dim) {
                    return Err(FrameError::MetricShape { dim: self.dim });
                }
                MetricFrame::new(frame, Matrix::from_rows(rows.clone()))
            }
        }
    }

    /// Reeb index, 0-based.
    pub fn xi_index0(&self) -> usize {
        self.xi_index - 1
    }

    /// The manifold as a JSON document accepted by [`parse_spec`].
    pub fn to_json(&self) -> String {
        let sc: Vec<serde_json::Value> = self
            .structure_constants
            .iter()
            .map(|(i, j, k, c)| serde_json::json!([i, j, k, c.to_string()]))
            .collect();
        let metric = match &self.metric {
            MetricSpec::Identity(_) => serde_json::json!("identity"),
            MetricSpec::Matrix(rows) => serde_json::json!(rows
                .iter()
                .map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>()),
        };
        let doc = serde_json::json!({
            "label": self.label,
            "dim": self.dim,
            "structure_constants": sc,
            "metric": metric,
            "xi_index": self.xi_index,
        });
        serde_json::to_string_pretty(&doc).expect("json value serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FAMILY: &str = r#"{
  "label": "family",
  "dim": 3,
  "structure_constants": [
    [2, 3, 1, "2"],
    [3, 1, 2, "1"],
    [1, 2, 3, "1"]
  ],
  "metric": "identity",
  "xi_index": 1
}"#;

    #[test]
    fn parses_family_document() {
        let s = parse_spec(FAMILY).unwrap();
        assert_eq!(s.dim, 3);
        assert_eq!(s.structure_constants[1], (3, 1, 2, Rational::one()));
        assert_eq!(parse_spec(&s.to_json()).unwrap(), s);
    }

    #[test]
    fn diagonal_bracket_is_rejected() {
        let doc = FAMILY.replace(r#"[1, 2, 3, "1"]"#, r#"[1, 1, 2, "1"]"#);
        let err = parse_spec(&doc).unwrap_err();
        assert_eq!(err.code(), "antisymmetry-violation");
    }

    #[test]
    fn jacobi_failure_is_rejected() {
        // [e1,e2] = e2, [e2,e3] = e1 is the smallest integer violation.
        let doc = r#"{"label": "bad", "dim": 3,
            "structure_constants": [[1, 2, 2, "1"], [2, 3, 1, "1"]],
            "metric": "identity", "xi_index": 1}"#;
        assert_eq!(parse_spec(doc).unwrap_err().code(), "jacobi-violation");
    }

    #[test]
    fn malformed_rational_names_line_and_field() {
        let doc = FAMILY.replace(r#""1"]"#, r#""1/x"]"#);
        match parse_spec(&doc).unwrap_err() {
            SpecError::MalformedRational { line, field, .. } => {
                assert_eq!(line, 6);
                assert_eq!(field, "structure_constants[1]");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn out_of_range_and_json_errors() {
        let doc = FAMILY.replace("[1, 2, 3,", "[1, 2, 4,");
        match parse_spec(&doc).unwrap_err() {
            SpecError::IndexOutOfRange { line, .. } => assert_eq!(line, 7),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(parse_spec("{").unwrap_err().code(), "json");
        let doc = FAMILY.replace("\"identity\"", "[[\"1\", \"0\"], [\"0\", \"1\"]]");
        assert_eq!(parse_spec(&doc).unwrap_err().code(), "bad-metric");
    }

    #[test]
    fn conflicting_duplicates_are_rejected() {
        let doc = FAMILY.replace(r#"[1, 2, 3, "1"]"#, r#"[1, 2, 3, "1"], [2, 1, 3, "1"]"#);
        assert_eq!(parse_spec(&doc).unwrap_err().code(), "conflicting-entry");
    }
}
