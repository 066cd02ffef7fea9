use std::collections::{BTreeMap, HashSet};

use num_traits::Zero;

use super::form::KForm;
use super::format::{parse_json, ModelFile, Term};
use super::multiindex::{label, multi_indices};
use super::operator::{GradedOperator, OperatorFamily};
use crate::error::{Error, Result};
use crate::scalar::{parse_rational, Rational};

/// Invariant model of a compact quotient `Γ\G`: the Chevalley–Eilenberg
/// complex of a `2n`-dimensional Lie algebra, given by the differentials of
/// a covector basis `e^1..e^2n`.
///
/// Construction validates `d ∘ d = 0` on every degree; the model is immutable
/// afterwards and caches the differential matrices.
#[derive(Clone, Debug)]
pub struct LieAlgebraModel {
    name: String,
    labels: Vec<String>,
    differentials: Vec<KForm<Rational>>,
    d: OperatorFamily<Rational>,
}

impl LieAlgebraModel {
    /// `differentials[k]` is `de^{k+1}`, a 2-form.
    pub fn new(name: impl Into<String>, labels: Vec<String>, differentials: Vec<KForm<Rational>>) -> Result<Self> {
        let dim = labels.len();
        if dim == 0 || !dim.is_multiple_of(2) {
            return Err(Error::OddDimension(dim));
        }
        if differentials.len() != dim {
            return Err(Error::DimensionMismatch(format!("{} differentials for {dim} basis covectors", differentials.len())));
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(Error::Parse(format!("duplicate basis label {l:?}")));
            }
        }
        for (k, de) in differentials.iter().enumerate() {
            if de.degree() != 2 || de.dim() != dim {
                return Err(Error::DimensionMismatch(format!("d{} must be a 2-form on dimension {dim}", labels[k])));
            }
        }
        let ops = (0..=dim)
            .map(|k| d_from_structure(&differentials, dim, k))
            .collect::<Result<Vec<_>>>()?;
        let d = OperatorFamily::new(ops)?;
        for k in 0..dim.saturating_sub(1) {
            let dd = d.at(k + 1).compose(d.at(k))?;
            if !dd.is_zero() {
                let col = (0..dd.matrix().cols()).find(|&c| dd.matrix().column(c).iter().any(|x| !x.is_zero())).unwrap_or(0);
                let idx = &multi_indices(dim, k)[col];
                return Err(Error::Jacobi { degree: k, form: label(idx, dim) });
            }
        }
        Ok(LieAlgebraModel { name: name.into(), labels, differentials, d })
    }

    /// Labels default to `e1..e{dim}`.
    pub fn from_differentials(name: impl Into<String>, differentials: Vec<KForm<Rational>>) -> Result<Self> {
        let labels = (1..=differentials.len()).map(|i| format!("e{i}")).collect();
        Self::new(name, labels, differentials)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Half the dimension.
    pub fn n(&self) -> usize {
        self.dim() / 2
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `de^k` for `k` in `1..=dim`.
    pub fn structure_differential(&self, k: usize) -> &KForm<Rational> {
        &self.differentials[k - 1]
    }

    /// `d : Λ^k → Λ^{k+1}`; the zero map to the trivial space for `k = dim`.
    pub fn d_operator(&self, k: usize) -> &GradedOperator<Rational> {
        self.d.at(k)
    }

    pub fn d_family(&self) -> &OperatorFamily<Rational> {
        &self.d
    }

    pub fn d(&self, form: &KForm<Rational>) -> Result<KForm<Rational>> {
        self.d.at(form.degree()).apply(form)
    }

    /// True iff `d` vanishes on `Λ^{dim-1}`, i.e. `tr ad_x = 0` for all `x`.
    pub fn is_unimodular(&self) -> bool {
        self.d.at(self.dim() - 1).is_zero()
    }

    pub fn is_abelian(&self) -> bool {
        self.differentials.iter().all(KForm::is_zero)
    }

    pub fn e(&self, idx: &[usize]) -> Result<KForm<Rational>> {
        KForm::monomial(self.dim(), idx)
    }

    pub fn to_file(&self) -> ModelFile {
        let d = self
            .labels
            .iter()
            .zip(&self.differentials)
            .map(|(l, de)| {
                let terms = de.terms().map(|(idx, c)| Term(c.to_string(), idx.clone())).collect();
                (l.clone(), terms)
            })
            .collect::<BTreeMap<_, _>>();
        ModelFile { name: self.name.clone(), dim: self.dim(), basis: self.labels.clone(), d }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("model serializes")
    }
}

/// `d(e^{i1}∧…∧e^{ik}) = Σ_a (−1)^{a−1} e^{i1}∧…∧de^{ia}∧…∧e^{ik}`.
fn d_from_structure(differentials: &[KForm<Rational>], dim: usize, k: usize) -> Result<GradedOperator<Rational>> {
    if k == dim {
        return Ok(GradedOperator::zero(dim, k, k + 1));
    }
    GradedOperator::from_images(dim, k, k + 1, |idx| {
        let mut acc = KForm::zero(dim, k + 1);
        for (a, &ia) in idx.iter().enumerate() {
            let left = KForm::monomial(dim, &idx[..a])?;
            let right = KForm::monomial(dim, &idx[a + 1..])?;
            let term = left.wedge(&differentials[ia - 1])?.wedge(&right)?;
            acc = if a % 2 == 0 { acc.add(&term)? } else { acc.sub(&term)? };
        }
        Ok(acc)
    })
}

/// Parses and validates a model file.
pub fn parse_model(text: &str) -> Result<LieAlgebraModel> {
    let file: ModelFile = parse_json(text)?;
    model_from_file(file)
}

pub fn model_from_file(file: ModelFile) -> Result<LieAlgebraModel> {
    let dim = file.dim;
    if dim == 0 || !dim.is_multiple_of(2) {
        return Err(Error::OddDimension(dim));
    }
    if file.basis.len() != dim {
        return Err(Error::Parse(format!("basis has {} labels but dim is {dim}", file.basis.len())));
    }
    if let Some(unknown) = file.d.keys().find(|k| !file.basis.contains(k)) {
        return Err(Error::Parse(format!("differential given for unknown basis label {unknown:?}")));
    }
    let differentials = file
        .basis
        .iter()
        .map(|l| {
            let terms = file.d.get(l).map(Vec::as_slice).unwrap_or(&[]);
            let parsed = terms
                .iter()
                .map(|Term(c, idx)| {
                    if idx.len() != 2 || idx[0] >= idx[1] {
                        return Err(Error::InvalidIndex(format!("d{l}: pair {idx:?} must be [i, j] with i < j")));
                    }
                    Ok((parse_rational(c)?, idx.clone()))
                })
                .collect::<Result<Vec<_>>>()?;
            KForm::from_terms(dim, 2, parsed).map_err(|e| match e {
                Error::InvalidIndex(m) => Error::InvalidIndex(format!("d{l}: {m}")),
                other => other,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    LieAlgebraModel::new(file.name, file.basis, differentials)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;

    #[test]
    fn paper_example_file_is_accepted() {
        let text = r#"{"name":"paper_example","dim":4,"basis":["e1","e2","e3","e4"],
            "d":{"e1":[["1",[1,3]]],"e2":[["-1",[2,3]]],"e3":[],"e4":[]}}"#;
        let m = parse_model(text).unwrap();
        assert_eq!(m.dim(), 4);
        assert_eq!(m.structure_differential(2), &m.e(&[2, 3]).unwrap().neg());
    }

    #[test]
    fn abelian_and_kodaira_thurston_files() {
        let t4 = parse_model(r#"{"name":"torus4","dim":4,"basis":["e1","e2","e3","e4"],"d":{}}"#).unwrap();
        assert!(t4.is_abelian());
        let kt = parse_model(r#"{"name":"kt","dim":4,"basis":["e1","e2","e3","e4"],"d":{"e4":[["1",[1,2]]]}}"#).unwrap();
        assert!(!kt.is_abelian());
    }

    #[test]
    fn d_examples() {
        let p = models::paper_example();
        assert_eq!(p.d(&p.e(&[1, 4]).unwrap()).unwrap(), p.e(&[1, 3, 4]).unwrap());
        assert!(p.d(&p.e(&[1, 2]).unwrap()).unwrap().is_zero());
        let kt = models::kodaira_thurston();
        assert_eq!(kt.d(&kt.e(&[3, 4]).unwrap()).unwrap(), kt.e(&[1, 2, 3]).unwrap().neg());
        assert!(p.d_operator(4).is_zero());
        assert_eq!(p.d_operator(4).matrix().rows(), 0);
    }

    #[test]
    fn unimodularity() {
        assert!(models::torus().is_unimodular());
        assert!(models::kodaira_thurston().is_unimodular());
        let p = models::paper_example();
        assert!(p.is_unimodular());
        for idx in [[1, 3, 4], [2, 3, 4], [1, 2, 3], [1, 2, 4]] {
            assert!(p.d(&p.e(&idx).unwrap()).unwrap().is_zero());
        }
        assert!(!models::affine2().is_unimodular());
    }

    #[test]
    fn jacobi_failure_names_degree_and_form() {
        let text = r#"{"name":"bad","dim":4,"basis":["e1","e2","e3","e4"],
            "d":{"e1":[["1",[3,4]]],"e4":[["1",[1,2]]]}}"#;
        match parse_model(text).unwrap_err() {
            Error::Jacobi { degree, form } => {
                assert_eq!(degree, 1);
                assert_eq!(form, "e1");
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn malformed_files() {
        let odd = r#"{"name":"x","dim":3,"basis":["a","b","c"],"d":{}}"#;
        assert_eq!(parse_model(odd).unwrap_err(), Error::OddDimension(3));
        let out = r#"{"name":"x","dim":2,"basis":["a","b"],"d":{"a":[["1",[1,3]]]}}"#;
        assert!(matches!(parse_model(out).unwrap_err(), Error::InvalidIndex(_)));
        let dup = r#"{"name":"x","dim":2,"basis":["a","b"],"d":{"a":[["1",[1,2]],["2",[1,2]]]}}"#;
        assert!(matches!(parse_model(dup).unwrap_err(), Error::InvalidIndex(_)));
        let order = r#"{"name":"x","dim":2,"basis":["a","b"],"d":{"a":[["1",[2,1]]]}}"#;
        assert!(matches!(parse_model(order).unwrap_err(), Error::InvalidIndex(_)));
        let unknown = r#"{"name":"x","dim":2,"basis":["a","b"],"d":{"z":[]}}"#;
        assert!(matches!(parse_model(unknown).unwrap_err(), Error::Parse(_)));
        match parse_model("{\"name\": \"x\",\n \"dim\": }").unwrap_err() {
            Error::Parse(m) => assert!(m.contains("line 2"), "{m}"),
            e => panic!("unexpected {e:?}"),
        }
        let dup_label = r#"{"name":"x","dim":2,"basis":["a","a"],"d":{}}"#;
        assert!(parse_model(dup_label).is_err());
    }

    #[test]
    fn serialization_round_trip() {
        for m in [models::paper_example(), models::kodaira_thurston(), models::torus()] {
            let back = parse_model(&m.to_json()).unwrap();
            assert_eq!(back.name(), m.name());
            assert_eq!(back.d_family(), m.d_family());
            assert_eq!(back.labels(), m.labels());
        }
    }
}
