use super::form::KForm;
use super::multiindex::{binomial, multi_indices};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{GaussianRational, Rational, Scalar};

/// A linear map `Λ^source → Λ^target` in the lexicographic multi-index bases.
///
/// The matrix is `C(dim, target) × C(dim, source)`; column `j` holds the image
/// of the `j`-th basis form.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedOperator<S> {
    dim: usize,
    source: usize,
    target: usize,
    matrix: Matrix<S>,
}

impl<S: Scalar> GradedOperator<S> {
    pub fn new(dim: usize, source: usize, target: usize, matrix: Matrix<S>) -> Result<Self> {
        if matrix.rows() != binomial(dim, target) || matrix.cols() != binomial(dim, source) {
            return Err(Error::DimensionMismatch(format!(
                "{}×{} matrix for Λ^{source} → Λ^{target} in dimension {dim}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(GradedOperator { dim, source, target, matrix })
    }

    pub fn zero(dim: usize, source: usize, target: usize) -> Self {
        GradedOperator { dim, source, target, matrix: Matrix::zeros(binomial(dim, target), binomial(dim, source)) }
    }

    pub fn identity(dim: usize, degree: usize) -> Self {
        GradedOperator { dim, source: degree, target: degree, matrix: Matrix::identity(binomial(dim, degree)) }
    }

    /// Matrix whose columns are the images of the basis forms of `Λ^source`.
    pub fn from_images(dim: usize, source: usize, target: usize, image: impl Fn(&[usize]) -> Result<KForm<S>>) -> Result<Self> {
        let cols = multi_indices(dim, source)
            .iter()
            .map(|idx| {
                let f = image(idx)?;
                if f.degree() != target {
                    return Err(Error::WrongDegree { expected: target, got: f.degree() });
                }
                Ok(f.to_coords())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GradedOperator { dim, source, target, matrix: Matrix::from_columns(&cols, binomial(dim, target)) })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix<S> {
        self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn apply(&self, f: &KForm<S>) -> Result<KForm<S>> {
        if f.degree() != self.source || f.dim() != self.dim {
            return Err(Error::WrongDegree { expected: self.source, got: f.degree() });
        }
        Ok(KForm::from_coords(self.dim, self.target, &self.matrix.apply(&f.to_coords())))
    }

    /// `self ∘ other`; the degrees must chain.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if other.target != self.source || other.dim != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose Λ^{}→Λ^{} after Λ^{}→Λ^{}",
                self.source, self.target, other.source, other.target
            )));
        }
        Ok(GradedOperator { dim: self.dim, source: other.source, target: self.target, matrix: &self.matrix * &other.matrix })
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if (self.dim, self.source, self.target) != (other.dim, other.source, other.target) {
            return Err(Error::DimensionMismatch("operators of different degrees".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(GradedOperator { matrix: &self.matrix + &other.matrix, ..self.clone() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(GradedOperator { matrix: &self.matrix - &other.matrix, ..self.clone() })
    }

    pub fn scale(&self, c: &S) -> Self {
        GradedOperator { matrix: self.matrix.scale(c), ..self.clone() }
    }

    pub fn conj(&self) -> Self {
        GradedOperator { matrix: self.matrix.conj(), ..self.clone() }
    }

    pub fn to_gaussian(&self) -> GradedOperator<GaussianRational> {
        GradedOperator {
            dim: self.dim,
            source: self.source,
            target: self.target,
            matrix: self.matrix.map(Scalar::to_gaussian),
        }
    }

    /// Left multiplication `α ↦ τ ∧ α` on `Λ^k`.
    pub fn wedge_with(form: &KForm<S>, k: usize) -> Result<Self> {
        let dim = form.dim();
        if form.degree() + k > dim {
            return Err(Error::DegreeOverflow(form.degree(), k, dim));
        }
        Self::from_images(dim, k, k + form.degree(), |idx| form.wedge(&KForm::monomial(dim, idx)?))
    }

    /// Extension of an invertible map on `Λ¹` to `Λ^k` as an algebra
    /// automorphism, `F(a ∧ b) = F(a) ∧ F(b)`. The entry at `(J, I)` is the
    /// `J × I` minor of the degree-1 matrix.
    pub fn automorphism_extension(map1: &Self, k: usize) -> Result<Self> {
        if map1.source != 1 || map1.target != 1 {
            return Err(Error::WrongDegree { expected: 1, got: map1.source });
        }
        if map1.matrix.determinant().is_zero() {
            return Err(Error::NotInvertible);
        }
        Ok(Self::multiplicative_extension(&map1.matrix, k))
    }

    /// Minors of an arbitrary (not necessarily invertible) `dim × dim` matrix.
    pub(crate) fn multiplicative_extension(m1: &Matrix<S>, k: usize) -> Self {
        let dim = m1.rows();
        let idx = multi_indices(dim, k);
        let zero_based: Vec<Vec<usize>> = idx.iter().map(|v| v.iter().map(|i| i - 1).collect()).collect();
        let matrix = Matrix::from_fn(idx.len(), idx.len(), |r, c| {
            if k == 0 {
                S::one()
            } else {
                m1.submatrix(&zero_based[r], &zero_based[c]).determinant()
            }
        });
        GradedOperator { dim, source: k, target: k, matrix }
    }
}

impl GradedOperator<GaussianRational> {
    pub fn real_part(&self) -> Option<GradedOperator<Rational>> {
        self.matrix.is_real().then(|| GradedOperator {
            dim: self.dim,
            source: self.source,
            target: self.target,
            matrix: self.matrix.real_part(),
        })
    }
}

/// Per-degree family `δ_k : Λ^k → Λ^{k+1}` for `k = 0..=dim`.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorFamily<S> {
    ops: Vec<GradedOperator<S>>,
}

impl<S: Scalar> OperatorFamily<S> {
    pub fn new(ops: Vec<GradedOperator<S>>) -> Result<Self> {
        for (k, op) in ops.iter().enumerate() {
            if op.source != k || op.target != k + 1 {
                return Err(Error::DimensionMismatch(format!("family entry {k} maps Λ^{} → Λ^{}", op.source, op.target)));
            }
        }
        Ok(OperatorFamily { ops })
    }

    pub fn dim(&self) -> usize {
        self.ops.len() - 1
    }

    /// `δ_k`; panics for `k > dim`.
    pub fn at(&self, k: usize) -> &GradedOperator<S> {
        &self.ops[k]
    }

    pub fn iter(&self) -> impl Iterator<Item = &GradedOperator<S>> {
        self.ops.iter()
    }

    pub fn zip_with(&self, other: &Self, f: impl Fn(&GradedOperator<S>, &GradedOperator<S>) -> Result<GradedOperator<S>>) -> Result<Self> {
        let ops = self.ops.iter().zip(&other.ops).map(|(a, b)| f(a, b)).collect::<Result<Vec<_>>>()?;
        Self::new(ops)
    }

    pub fn map(&self, f: impl Fn(&GradedOperator<S>) -> GradedOperator<S>) -> Self {
        OperatorFamily { ops: self.ops.iter().map(f).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.ops.iter().all(GradedOperator::is_zero)
    }
}

impl OperatorFamily<Rational> {
    pub fn to_gaussian(&self) -> OperatorFamily<GaussianRational> {
        OperatorFamily { ops: self.ops.iter().map(GradedOperator::to_gaussian).collect() }
    }
}
