use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::multiindex::{self, is_strictly_increasing, sort_with_sign};
use crate::error::{Error, Result};
use crate::scalar::{GaussianRational, Rational, Scalar};

/// A homogeneous exterior form on a `dim`-dimensional covector space.
///
/// Terms are keyed by strictly increasing 1-based multi-indices; zero
/// coefficients are never stored, so structural equality is form equality.
#[derive(Clone, Debug, PartialEq)]
pub struct KForm<S> {
    dim: usize,
    degree: usize,
    terms: BTreeMap<Vec<usize>, S>,
}

impl<S: Scalar> KForm<S> {
    pub fn zero(dim: usize, degree: usize) -> Self {
        KForm { dim, degree, terms: BTreeMap::new() }
    }

    /// The constant function `c` as a 0-form.
    pub fn constant(dim: usize, c: S) -> Self {
        let mut f = Self::zero(dim, 0);
        f.add_term(Vec::new(), c);
        f
    }

    /// `e^{i1} ∧ … ∧ e^{ik}` for indices in any order; repeated indices give
    /// the zero form.
    pub fn monomial(dim: usize, idx: &[usize]) -> Result<Self> {
        Self::check_range(dim, idx)?;
        let mut f = Self::zero(dim, idx.len());
        if let Some((sorted, negative)) = sort_with_sign(idx) {
            f.add_term(sorted, if negative { -S::one() } else { S::one() });
        }
        Ok(f)
    }

    /// Builds a form from `(coefficient, multi-index)` pairs. Indices must be
    /// strictly increasing, of length `degree`, in `1..=dim`, and not repeated.
    pub fn from_terms(dim: usize, degree: usize, terms: impl IntoIterator<Item = (S, Vec<usize>)>) -> Result<Self> {
        if degree > dim {
            return Err(Error::DegreeOutOfRange(degree));
        }
        let mut f = Self::zero(dim, degree);
        let mut seen = std::collections::BTreeSet::new();
        for (c, idx) in terms {
            if idx.len() != degree {
                return Err(Error::InvalidIndex(format!("{idx:?} has length {} ≠ degree {degree}", idx.len())));
            }
            if !is_strictly_increasing(&idx) {
                return Err(Error::InvalidIndex(format!("{idx:?} is not strictly increasing")));
            }
            Self::check_range(dim, &idx)?;
            if !seen.insert(idx.clone()) {
                return Err(Error::InvalidIndex(format!("{idx:?} appears twice")));
            }
            f.add_term(idx, c);
        }
        Ok(f)
    }

    fn check_range(dim: usize, idx: &[usize]) -> Result<()> {
        match idx.iter().find(|&&i| i == 0 || i > dim) {
            Some(i) => Err(Error::InvalidIndex(format!("index {i} outside 1..={dim}"))),
            None => Ok(()),
        }
    }

    fn add_term(&mut self, idx: Vec<usize>, c: S) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(idx);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &S)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, idx: &[usize]) -> S {
        self.terms.get(idx).cloned().unwrap_or_else(S::zero)
    }

    /// Coefficient on `e^1 ∧ … ∧ e^dim` (zero unless top degree).
    pub fn top_coefficient(&self) -> S {
        let top: Vec<usize> = (1..=self.dim).collect();
        self.coefficient(&top)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim || self.degree != other.degree {
            return Err(Error::DimensionMismatch(format!(
                "forms of (dim, degree) ({}, {}) and ({}, {})",
                self.dim, self.degree, other.dim, other.degree
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (idx, c) in &other.terms {
            out.add_term(idx.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.dim, self.degree);
        for (idx, v) in &self.terms {
            out.add_term(idx.clone(), c.clone() * v.clone());
        }
        out
    }

    /// Exterior product. The sign of each term is that of the permutation
    /// sorting the concatenated indices.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!("wedge of forms on dims {} and {}", self.dim, other.dim)));
        }
        let degree = self.degree + other.degree;
        if degree > self.dim {
            return Err(Error::DegreeOverflow(self.degree, other.degree, self.dim));
        }
        let mut out = Self::zero(self.dim, degree);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let cat: Vec<usize> = a.iter().chain(b).copied().collect();
                if let Some((sorted, negative)) = sort_with_sign(&cat) {
                    let c = ca.clone() * cb.clone();
                    out.add_term(sorted, if negative { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// `self ∧ … ∧ self` (`k` factors); `k = 0` gives the constant 1.
    pub fn power(&self, k: usize) -> Result<Self> {
        let mut out = Self::constant(self.dim, S::one());
        for _ in 0..k {
            out = out.wedge(self)?;
        }
        Ok(out)
    }

    /// Coordinates in the lexicographic basis of `Λ^degree`.
    pub fn to_coords(&self) -> Vec<S> {
        let mut v = vec![S::zero(); multiindex::binomial(self.dim, self.degree)];
        for (idx, c) in &self.terms {
            v[multiindex::rank(self.dim, idx)] = c.clone();
        }
        v
    }

    pub fn from_coords(dim: usize, degree: usize, coords: &[S]) -> Self {
        let basis = multiindex::multi_indices(dim, degree);
        assert_eq!(basis.len(), coords.len(), "coordinate vector length");
        let mut out = Self::zero(dim, degree);
        for (idx, c) in basis.into_iter().zip(coords) {
            out.add_term(idx, c.clone());
        }
        out
    }

    pub fn to_gaussian(&self) -> KForm<GaussianRational> {
        KForm {
            dim: self.dim,
            degree: self.degree,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v.to_gaussian())).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        KForm {
            dim: self.dim,
            degree: self.degree,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v.conj())).collect(),
        }
    }
}

impl KForm<GaussianRational> {
    /// Real part, if the imaginary part vanishes identically.
    pub fn to_real(&self) -> Option<KForm<Rational>> {
        if self.terms.values().any(|z| !z.im.is_zero()) {
            return None;
        }
        Some(KForm {
            dim: self.dim,
            degree: self.degree,
            terms: self.terms.iter().map(|(k, z)| (k.clone(), z.re.clone())).collect(),
        })
    }
}

impl KForm<Rational> {
    /// Skew matrix `E` of a 2-form, `τ(X, Y) = Xᵀ E Y`.
    pub fn skew_matrix(&self) -> Result<crate::linalg::Matrix<Rational>> {
        if self.degree != 2 {
            return Err(Error::WrongDegree { expected: 2, got: self.degree });
        }
        let mut e = crate::linalg::Matrix::zeros(self.dim, self.dim);
        for (idx, c) in &self.terms {
            let (i, j) = (idx[0] - 1, idx[1] - 1);
            e.set(i, j, c.clone());
            e.set(j, i, -c.clone());
        }
        Ok(e)
    }
}

impl<S: Scalar> fmt::Display for KForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (idx, c)) in self.terms.iter().enumerate() {
            let mut s = c.to_canonical();
            let negative = s.starts_with('-') && !s[1..].contains(['+', '-']);
            if negative {
                s.remove(0);
            }
            match (n, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let lab = multiindex::label(idx, self.dim);
            if idx.is_empty() {
                write!(f, "{s}")?;
            } else if s == "1" {
                write!(f, "{lab}")?;
            } else if s.contains(['+', '-']) {
                write!(f, "({s})*{lab}")?;
            } else {
                write!(f, "{s}*{lab}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn e(idx: &[usize]) -> KForm<Rational> {
        KForm::monomial(4, idx).unwrap()
    }

    #[test]
    fn wedge_examples() {
        assert!(e(&[1]).wedge(&e(&[1])).unwrap().is_zero());
        assert_eq!(e(&[3]).wedge(&e(&[1])).unwrap(), e(&[1, 3]).neg());
        let w = e(&[1, 4]).add(&e(&[2, 3])).unwrap();
        assert_eq!(e(&[1, 4]).wedge(&e(&[2, 3])).unwrap(), e(&[1, 2, 3, 4]));
        assert_eq!(w.wedge(&w).unwrap(), e(&[1, 2, 3, 4]).scale(&rat(2)));
    }

    #[test]
    fn wedge_degree_overflow_is_an_error() {
        let err = e(&[1, 2, 3]).wedge(&e(&[1, 2])).unwrap_err();
        assert_eq!(err, Error::DegreeOverflow(3, 2, 4));
    }

    #[test]
    fn from_terms_validation() {
        assert!(KForm::from_terms(4, 2, vec![(rat(1), vec![2, 1])]).is_err());
        assert!(KForm::from_terms(4, 2, vec![(rat(1), vec![1, 5])]).is_err());
        assert!(KForm::from_terms(4, 2, vec![(rat(1), vec![1, 2]), (rat(2), vec![1, 2])]).is_err());
        assert!(KForm::from_terms(4, 2, vec![(rat(1), vec![1])]).is_err());
        let f = KForm::from_terms(4, 2, vec![(rat(0), vec![1, 2])]).unwrap();
        assert!(f.is_zero());
    }

    #[test]
    fn display() {
        let f = e(&[1, 4]).add(&e(&[2, 3]).scale(&rat(-2))).unwrap();
        assert_eq!(f.to_string(), "e14 - 2*e23");
        assert_eq!(e(&[3]).neg().to_string(), "-e3");
        assert_eq!(KForm::<Rational>::zero(4, 1).to_string(), "0");
    }

    #[test]
    fn coords_roundtrip() {
        let f = e(&[1, 3]).add(&e(&[3, 4]).scale(&rat(5))).unwrap();
        let c = f.to_coords();
        assert_eq!(c, vec![rat(0), rat(1), rat(0), rat(0), rat(0), rat(5)]);
        assert_eq!(KForm::from_coords(4, 2, &c), f);
    }
}
