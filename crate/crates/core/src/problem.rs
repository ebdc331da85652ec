//! JSON interchange: problem files in, result files out.
//!
//! Polynomials travel as strings in the input grammar so the payload stays
//! exact; a member of a collection is either an array of coefficient strings
//! or the shorthand `"d(<polynomial>)"` for the differential of a function.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::index::{CollectionSpec, IndexResult, IndexValue, Mode, ProblemSpec};
use crate::oracle::{OracleVerdict, TruncationReport};
use crate::polyring::{parse_polynomial, Polynomial, Ring};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProblemFile {
    pub mode: String,
    pub variables: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub map: Vec<String>,
    pub collections: Vec<CollectionFile>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CollectionFile {
    pub k: usize,
    pub members: Vec<MemberFile>,
}

/// Either an explicit coefficient vector or a `d(...)` shorthand.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MemberFile {
    Differential(String),
    Coefficients(Vec<String>),
}

#[derive(Debug, Clone, Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("{field}: {source}")]
    BadPolynomial {
        field: String,
        source: crate::polyring::ParseError,
    },
    #[error("mode must be \"smooth\" or \"icis\", got {0:?}")]
    BadMode(String),
    #[error("variables must be nonempty and distinct")]
    BadVariables,
    #[error("{field}: differential shorthand must look like \"d(<polynomial>)\"")]
    BadDifferential { field: String },
}

pub fn decode_problem(text: &str) -> Result<ProblemSpec, Vec<FormatError>> {
    let file: ProblemFile = serde_json::from_str(text)
        .map_err(|e| vec![FormatError::Json(e.to_string())])?;
    problem_from_file(&file)
}

pub fn problem_from_file(file: &ProblemFile) -> Result<ProblemSpec, Vec<FormatError>> {
    let mut errors = Vec::new();
    let mode = match file.mode.as_str() {
        "smooth" => Mode::Smooth,
        "icis" => Mode::Icis,
        other => {
            return Err(vec![FormatError::BadMode(other.to_string())]);
        }
    };
    if file.variables.is_empty()
        || (1..file.variables.len())
            .any(|i| file.variables[..i].contains(&file.variables[i]))
    {
        return Err(vec![FormatError::BadVariables]);
    }
    let ring = Ring::new(file.variables.clone());

    fn parse(
        text: &str,
        field: String,
        ring: &std::sync::Arc<Ring>,
        errors: &mut Vec<FormatError>,
    ) -> Option<Polynomial> {
        match parse_polynomial(text, ring) {
            Ok(p) => Some(p),
            Err(e) => {
                errors.push(FormatError::BadPolynomial { field, source: e });
                None
            }
        }
    }

    let mut map = Vec::new();
    for (i, f) in file.map.iter().enumerate() {
        if let Some(p) = parse(f, format!("map[{i}]"), &ring, &mut errors) {
            map.push(p);
        }
    }

    let mut collections = Vec::new();
    for (ci, c) in file.collections.iter().enumerate() {
        let mut members = Vec::new();
        for (mi, member) in c.members.iter().enumerate() {
            match member {
                MemberFile::Coefficients(strings) => {
                    let mut coeffs = Vec::new();
                    for (j, s) in strings.iter().enumerate() {
                        if let Some(p) =
                            parse(s, format!("collections[{ci}].members[{mi}][{j}]"), &ring, &mut errors)
                        {
                            coeffs.push(p);
                        }
                    }
                    members.push(coeffs);
                }
                MemberFile::Differential(text) => {
                    let field = format!("collections[{ci}].members[{mi}]");
                    let inner = text
                        .strip_prefix("d(")
                        .and_then(|rest| rest.strip_suffix(')'));
                    match inner {
                        Some(g) => {
                            if let Some(p) = parse(g, field, &ring, &mut errors) {
                                members.push(p.differential().coeffs().to_vec());
                            }
                        }
                        None => errors.push(FormatError::BadDifferential { field }),
                    }
                }
            }
        }
        collections.push(CollectionSpec { k: c.k, members });
    }

    if !errors.is_empty() {
        return Err(errors);
    }
    Ok(ProblemSpec {
        mode,
        ring,
        bundle_rank: file.rank,
        map,
        collections,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ResultFile {
    pub index: serde_json::Value,
    pub generators: usize,
    pub basis_size: usize,
    pub staircase: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct OracleFile {
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<usize>,
    pub table: Vec<(u32, usize)>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Timings {
    pub total_ms: u128,
}

pub fn encode_result(result: &IndexResult, ring: &Ring, total_ms: Option<u128>) -> ResultFile {
    let index = match result.index {
        IndexValue::Finite(v) => serde_json::Value::from(v as u64),
        IndexValue::Infinite => serde_json::Value::from("infinite"),
    };
    let staircase = result
        .staircase
        .iter()
        .map(|m| m.format(ring))
        .collect();
    ResultFile {
        index,
        generators: result.generator_count,
        basis_size: result.basis_size,
        staircase,
        oracle: result.oracle.as_ref().map(encode_oracle),
        timings: total_ms.map(|total_ms| Timings { total_ms }),
    }
}

fn encode_oracle(report: &TruncationReport) -> OracleFile {
    let (verdict, value) = match report.verdict {
        // a surviving stabilized verdict always agrees with the pipeline;
        // disagreement aborts the computation instead
        OracleVerdict::Stabilized(v) => ("agree".to_string(), Some(v)),
        OracleVerdict::NotZeroDimensional => ("not_zero_dimensional".to_string(), None),
        OracleVerdict::Inconclusive => ("inconclusive".to_string(), None),
    };
    OracleFile {
        verdict,
        value,
        table: report.table.clone(),
    }
}

/// Expected-result side file for the golden corpus.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ExpectedFile {
    pub index: serde_json::Value,
    #[serde(default)]
    pub staircase: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::validate;

    #[test]
    fn decodes_a1_problem() {
        let text = r#"{
            "mode": "icis",
            "variables": ["x", "y", "z"],
            "map": ["x^2+y^2+z^2"],
            "collections": [{"k": 2, "members": [["0", "0", "1"]]}]
        }"#;
        let spec = decode_problem(text).unwrap();
        assert!(validate(&spec).is_ok());
        assert_eq!(spec.map.len(), 1);
        assert_eq!(spec.collections[0].members[0].len(), 3);
    }

    #[test]
    fn differential_shorthand_expands() {
        let text = r#"{
            "mode": "icis",
            "variables": ["x", "y", "z"],
            "map": ["x^2+y^2+z^2"],
            "collections": [{"k": 2, "members": ["d(z)"]}]
        }"#;
        let spec = decode_problem(text).unwrap();
        let member = &spec.collections[0].members[0];
        assert!(member[0].is_zero());
        assert!(member[1].is_zero());
        assert_eq!(member[2].to_string(), "1");
    }

    #[test]
    fn bad_polynomial_names_field() {
        let text = r#"{
            "mode": "smooth",
            "variables": ["x"],
            "rank": 1,
            "collections": [{"k": 1, "members": [["x + w"]]}]
        }"#;
        let errs = decode_problem(text).unwrap_err();
        let msg = errs[0].to_string();
        assert!(msg.contains("collections[0].members[0][0]"), "{msg}");
        assert!(msg.contains("unknown variable"), "{msg}");
    }

    #[test]
    fn bad_mode_rejected() {
        let text = r#"{"mode": "weird", "variables": ["x"], "collections": []}"#;
        let errs = decode_problem(text).unwrap_err();
        assert!(matches!(errs[0], FormatError::BadMode(_)));
    }

    #[test]
    fn malformed_json_reported_with_position() {
        let errs = decode_problem("{ nope").unwrap_err();
        let msg = errs[0].to_string();
        assert!(msg.contains("line"), "{msg}");
    }
}
