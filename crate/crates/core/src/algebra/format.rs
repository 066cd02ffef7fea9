//! On-disk interchange formats (JSON): model, form and almost complex
//! structure files.
//!
//! ```json
//! {"name": "paper_example", "dim": 4, "basis": ["e1", "e2", "e3", "e4"],
//!  "d": {"e1": [["1", [1, 3]]], "e2": [["-1", [2, 3]]]}}
//! {"degree": 2, "terms": [["1", [1, 2]], ["1", [3, 4]]]}
//! {"dim": 4, "matrix": [["0", "-1", "0", "0"], ...]}
//! ```
//!
//! Coefficients are rational literals `"p"` or `"p/q"`; indices are 1-based.

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use super::form::KForm;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{parse_rational, Rational, Scalar};

/// `[coefficient, [i1, …, ik]]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term(pub String, pub Vec<usize>);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub name: String,
    pub dim: usize,
    pub basis: Vec<String>,
    #[serde(default)]
    pub d: BTreeMap<String, Vec<Term>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormFile {
    pub degree: usize,
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    pub dim: usize,
    pub matrix: Vec<Vec<String>>,
}

pub(crate) fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{e} (line {}, column {})", e.line(), e.column())))
}

impl FormFile {
    pub fn from_form(form: &KForm<Rational>) -> Self {
        FormFile { degree: form.degree(), terms: form.terms().map(|(idx, c)| Term(c.to_string(), idx.clone())).collect() }
    }

    pub fn into_form(self, dim: usize) -> Result<KForm<Rational>> {
        let terms = self
            .terms
            .into_iter()
            .map(|Term(c, idx)| Ok((parse_rational(&c)?, idx)))
            .collect::<Result<Vec<_>>>()?;
        KForm::from_terms(dim, self.degree, terms)
    }
}

/// Parses a form file for a model of dimension `dim`.
pub fn parse_form(text: &str, dim: usize) -> Result<KForm<Rational>> {
    parse_json::<FormFile>(text)?.into_form(dim)
}

pub fn form_to_json(form: &KForm<Rational>) -> String {
    serde_json::to_string(&FormFile::from_form(form)).expect("form serializes")
}

impl StructureFile {
    pub fn from_matrix(m: &Matrix<Rational>) -> Self {
        StructureFile { dim: m.rows(), matrix: m.to_rows().iter().map(|r| r.iter().map(Scalar::to_canonical).collect()).collect() }
    }

    pub fn into_matrix(self) -> Result<Matrix<Rational>> {
        if self.matrix.len() != self.dim || self.matrix.iter().any(|r| r.len() != self.dim) {
            return Err(Error::Parse(format!("matrix must be {0}×{0}", self.dim)));
        }
        let rows = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_rows(rows, self.dim))
    }
}

pub fn parse_structure_matrix(text: &str) -> Result<Matrix<Rational>> {
    parse_json::<StructureFile>(text)?.into_matrix()
}
