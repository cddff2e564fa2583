//! Input parsing and output formatting shared by the `ldiag` binary.

use std::fs;
use std::path::Path;

use ldiag::{
    CoeffPoly, DiagElement, DiagramCode, LabeledDiagram, Monomial, MonomialWord, TensorElement,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] ldiag::Error),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// A code literal such as `[x1, x2^2]`, or the path of a matrix file.
pub fn read_code(input: &str) -> Result<DiagramCode, CliError> {
    let trimmed = input.trim();
    if trimmed.starts_with('[') {
        return Ok(trimmed.parse()?);
    }
    Ok(read_matrix(Path::new(input))?.code())
}

pub fn read_matrix(path: &Path) -> Result<LabeledDiagram, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(LabeledDiagram::parse(&text)?)
}

/// One `<poly> * [code]` line per term; the zero element prints nothing.
pub fn format_element(e: &DiagElement) -> String {
    e.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub code: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorTermJson {
    pub coeff: String,
    pub left: Vec<String>,
    pub right: Vec<String>,
}

pub fn code_to_json(c: &DiagramCode) -> Vec<String> {
    c.entries().iter().map(Monomial::to_string).collect()
}

pub fn code_from_json(entries: &[String]) -> Result<DiagramCode, CliError> {
    let monos = entries
        .iter()
        .map(|m| m.parse::<Monomial>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DiagramCode::new(MonomialWord::new(monos))?)
}

pub fn element_to_json(e: &DiagElement) -> Vec<TermJson> {
    e.iter()
        .map(|(c, x)| TermJson {
            coeff: x.to_string(),
            code: code_to_json(c),
        })
        .collect()
}

pub fn element_from_json(terms: &[TermJson]) -> Result<DiagElement, CliError> {
    let mut out = DiagElement::zero();
    for t in terms {
        let coeff: CoeffPoly = t.coeff.parse()?;
        out.add_term(code_from_json(&t.code)?, &coeff);
    }
    Ok(out)
}

pub fn tensor_to_json(t: &TensorElement) -> Vec<TensorTermJson> {
    t.iter()
        .map(|((l, r), x)| TensorTermJson {
            coeff: x.to_string(),
            left: code_to_json(l),
            right: code_to_json(r),
        })
        .collect()
}

pub fn tensor_from_json(terms: &[TensorTermJson]) -> Result<TensorElement, CliError> {
    let mut out = TensorElement::zero();
    for t in terms {
        let coeff: CoeffPoly = t.coeff.parse()?;
        out.add_term(
            (code_from_json(&t.left)?, code_from_json(&t.right)?),
            &coeff,
        );
    }
    Ok(out)
}

/// Serialized element, as printed by `--json`.
pub fn element_json_string(e: &DiagElement) -> String {
    serde_json::to_string_pretty(&element_to_json(e)).expect("plain data serializes")
}

pub fn parse_element_json(text: &str) -> Result<DiagElement, CliError> {
    let terms: Vec<TermJson> = serde_json::from_str(text)?;
    element_from_json(&terms)
}

/// Comma-separated signs such as `+,-,+`.
pub fn parse_signs(text: &str) -> Result<Vec<i8>, CliError> {
    text.split(',')
        .map(|s| match s.trim() {
            "+" | "+1" | "1" => Ok(1),
            "-" | "-1" => Ok(-1),
            other => Err(ldiag::Error::Parse(format!("bad sign `{other}`")).into()),
        })
        .collect()
}
