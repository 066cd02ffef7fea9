//! Almost complex structures on a model: compatibility, induced metrics,
//! the action on forms, `d^c`, bidegree projectors and the splitting
//! `d = μ̄ + ∂̄ + ∂ + μ`.
//!
//! A structure is stored as the endomorphism `J` of the Lie algebra in the
//! frame `e_1..e_2n` dual to the covectors, so `J e_a = Σ_b J[b][a] e_b`.
//! Forms are acted on by pullback, `(Jα)(X) = α(JX)`, extended
//! multiplicatively; on `Λ¹` this is the matrix `Jᵀ`. With this action the
//! `(1,0)`-forms are the `+i` eigenvectors, which is what makes
//! `d^c = J⁻¹dJ = −iμ̄ + i∂̄ − i∂ + iμ` and the Weil identity hold with the
//! signs used throughout.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::multiindex::{binomial, multi_indices};
use crate::algebra::{GradedOperator, KForm, LieAlgebraModel, OperatorFamily};
use crate::error::{Error, Result};
use crate::hodge::{hodge_star, laplacian, Grams, Metric, VolumeForm};
use crate::jsearch::compatibility_residual;
use crate::linalg::{Matrix, Subspace};
use crate::scalar::{i_unit, rat, rationalize, to_f64, GaussianRational, Rational, Scalar};

/// How `J` acts on 1-forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FormAction {
    /// `(Jα)(X) = α(JX)`; the convention used everywhere by default.
    Pullback,
    /// `(Jα)(X) = α(J⁻¹X)`. Kept so the two conventions can be compared.
    InversePullback,
}

/// Rational `J` with `J² = −I` exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct AlmostComplexStructure {
    matrix: Matrix<Rational>,
}

impl AlmostComplexStructure {
    pub fn new(matrix: Matrix<Rational>) -> Result<Self> {
        if !matrix.is_square() || !matrix.rows().is_multiple_of(2) || matrix.rows() == 0 {
            return Err(Error::InvalidStructure(format!("{}×{} matrix", matrix.rows(), matrix.cols())));
        }
        let sq = &matrix * &matrix;
        if sq != -&Matrix::identity(matrix.rows()) {
            return Err(Error::InvalidStructure("J² ≠ −I".into()));
        }
        Ok(AlmostComplexStructure { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix<Rational> {
        &self.matrix
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.dim(), self.dim(), |i, j| to_f64(self.matrix.get(i, j)))
    }

    /// Matrix of `J` on `Λ¹` (column `j` is the image of `e^j`).
    pub fn on_covectors(&self, action: FormAction) -> Matrix<Rational> {
        match action {
            FormAction::Pullback => self.matrix.transpose(),
            FormAction::InversePullback => -&self.matrix.transpose(),
        }
    }

    pub fn on_forms(&self, k: usize) -> GradedOperator<Rational> {
        self.on_forms_with(FormAction::Pullback, k)
    }

    pub fn on_forms_with(&self, action: FormAction, k: usize) -> GradedOperator<Rational> {
        GradedOperator::multiplicative_extension(&self.on_covectors(action), k)
    }

    /// `J⁻¹` on `Λ^k`, which is `(−1)^k J` there.
    pub fn inverse_on_forms_with(&self, action: FormAction, k: usize) -> GradedOperator<Rational> {
        GradedOperator::multiplicative_extension(&-&self.on_covectors(action), k)
    }

    pub fn apply(&self, form: &KForm<Rational>) -> Result<KForm<Rational>> {
        self.on_forms(form.degree()).apply(form)
    }

    /// `P⁻¹ J P`.
    pub fn conjugate(&self, p: &Matrix<Rational>) -> Result<Self> {
        let inv = p.inverse()?;
        Self::new(&(&inv * &self.matrix) * p)
    }
}

/// Outcome of the exact compatibility test of `J` with a 2-form `τ`.
#[derive(Clone, Debug)]
pub struct Compatibility {
    /// `τ(J·, J·) = τ`.
    pub invariant: bool,
    /// `τ(·, J·)` symmetric.
    pub symmetric: bool,
    /// `τ(·, J·)` positive definite.
    pub positive: bool,
    /// Induced metric on covectors when compatible.
    pub metric: Option<Metric>,
}

impl Compatibility {
    pub fn is_compatible(&self) -> bool {
        self.metric.is_some()
    }
}

/// Whether `τ^n ≠ 0`.
pub fn is_nondegenerate(tau: &KForm<Rational>) -> Result<bool> {
    if tau.degree() != 2 {
        return Err(Error::WrongDegree { expected: 2, got: tau.degree() });
    }
    Ok(!tau.skew_matrix()?.determinant().is_zero())
}

/// Checks `τ(JX, JY) = τ(X, Y)` and that `g(X, Y) = τ(X, JY)` is a
/// Riemannian metric, exactly.
pub fn is_compatible(j: &AlmostComplexStructure, tau: &KForm<Rational>) -> Result<Compatibility> {
    if tau.dim() != j.dim() {
        return Err(Error::DimensionMismatch("form and structure dimensions differ".into()));
    }
    if !is_nondegenerate(tau)? {
        return Err(Error::Degenerate(tau.to_string()));
    }
    let e = tau.skew_matrix()?;
    let a = j.matrix();
    let invariant = &(&a.transpose() * &e) * a == e;
    let g_vectors = &e * a;
    let symmetric = g_vectors.is_symmetric();
    let positive = symmetric && g_vectors.is_positive_definite();
    let metric = if invariant && positive { Some(Metric::new(g_vectors.inverse()?)?) } else { None };
    Ok(Compatibility { invariant, symmetric, positive, metric })
}

/// `ω^n / n!`, the Riemannian volume of any metric induced by `ω` and a
/// compatible `J`.
pub fn symplectic_volume(omega: &KForm<Rational>) -> Result<VolumeForm> {
    let n = omega.dim() / 2;
    let fact: Rational = (1..=n as i64).map(rat).product();
    VolumeForm::from_form(&omega.power(n)?.scale(&(Rational::one() / fact)))
}

/// `d^c = J⁻¹ d J` on `Λ^k`.
pub fn dc_operator(model: &LieAlgebraModel, j: &AlmostComplexStructure, k: usize) -> GradedOperator<Rational> {
    dc_operator_with(model, j, FormAction::Pullback, k)
}

pub fn dc_operator_with(model: &LieAlgebraModel, j: &AlmostComplexStructure, action: FormAction, k: usize) -> GradedOperator<Rational> {
    let jk = j.on_forms_with(action, k);
    let jinv = j.inverse_on_forms_with(action, k + 1);
    jinv.compose(&model.d_operator(k).compose(&jk).expect("degrees chain")).expect("degrees chain")
}

pub fn dc_family(model: &LieAlgebraModel, j: &AlmostComplexStructure) -> OperatorFamily<Rational> {
    dc_family_with(model, j, FormAction::Pullback)
}

pub fn dc_family_with(model: &LieAlgebraModel, j: &AlmostComplexStructure, action: FormAction) -> OperatorFamily<Rational> {
    OperatorFamily::new((0..=model.dim()).map(|k| dc_operator_with(model, j, action, k)).collect()).expect("degrees chain")
}

/// Projectors `Π^{p,q}` on each complexified `Λ^k`.
#[derive(Clone, Debug)]
pub struct BidegreeProjectors {
    dim: usize,
    by_degree: Vec<BTreeMap<(usize, usize), Matrix<GaussianRational>>>,
}

impl BidegreeProjectors {
    /// `(1,0)`-covectors are the complex-linear ones, `α∘J = iα`: the column
    /// space of `(I − i·Jᵀ)/2`. `(0,1)` are their conjugates. The projector
    /// onto type `(p,q)` is `E D_{p,q} E⁻¹` where `E` extends the change of
    /// basis multiplicatively.
    pub fn new(j: &AlmostComplexStructure) -> Result<Self> {
        let dim = j.dim();
        let n = dim / 2;
        let jt = j.matrix().transpose().complexify();
        let half = GaussianRational::from_rational(Rational::new(1.into(), 2.into()));
        let p10 = (&Matrix::identity(dim) - &jt.scale(&i_unit())).scale(&half);
        let hol = p10.image();
        if hol.dim() != n {
            return Err(Error::InvalidStructure(format!("(1,0) space has dimension {} ≠ {n}", hol.dim())));
        }
        let mut cols: Vec<Vec<GaussianRational>> = hol.basis().to_vec();
        cols.extend(hol.basis().iter().map(|v| v.iter().map(Scalar::conj).collect::<Vec<_>>()));
        let b = Matrix::from_columns(&cols, dim);
        let b_inv = b.inverse()?;
        let by_degree = (0..=dim)
            .map(|k| {
                let ext = GradedOperator::multiplicative_extension(&b, k).into_matrix();
                let ext_inv = GradedOperator::multiplicative_extension(&b_inv, k).into_matrix();
                let types: Vec<usize> = multi_indices(dim, k).iter().map(|idx| idx.iter().filter(|&&i| i <= n).count()).collect();
                let mut out = BTreeMap::new();
                for p in 0..=k.min(n) {
                    let q = k - p;
                    if q > n {
                        continue;
                    }
                    let diag = Matrix::from_fn(types.len(), types.len(), |r, c| {
                        if r == c && types[r] == p { GaussianRational::one() } else { GaussianRational::zero() }
                    });
                    out.insert((p, q), &(&ext * &diag) * &ext_inv);
                }
                out
            })
            .collect();
        Ok(BidegreeProjectors { dim, by_degree })
    }

    /// `Π^{p,q}`, or `None` if that bidegree does not occur.
    pub fn get(&self, p: usize, q: usize) -> Option<&Matrix<GaussianRational>> {
        self.by_degree.get(p + q)?.get(&(p, q))
    }

    pub fn in_degree(&self, k: usize) -> impl Iterator<Item = (&(usize, usize), &Matrix<GaussianRational>)> {
        self.by_degree[k].iter()
    }

    /// Idempotent, mutually annihilating, summing to the identity, on every
    /// degree.
    pub fn is_complete_orthogonal_family(&self) -> bool {
        (0..=self.dim).all(|k| {
            let size = binomial(self.dim, k);
            let projs: Vec<&Matrix<GaussianRational>> = self.by_degree[k].values().collect();
            let sum = projs.iter().fold(Matrix::zeros(size, size), |acc, p| &acc + *p);
            let idempotent = projs.iter().all(|p| &(*p * *p) == *p);
            let orthogonal = projs
                .iter()
                .enumerate()
                .all(|(a, p)| projs.iter().enumerate().all(|(b, q)| a == b || (*p * *q).is_zero()));
            idempotent && orthogonal && sum == Matrix::identity(size)
        })
    }

    /// Pure `(p,q)` part of a subspace of complexified `Λ^{p+q}`.
    pub fn pure_part(&self, space: &Subspace<GaussianRational>, p: usize, q: usize) -> Subspace<GaussianRational> {
        match self.get(p, q) {
            Some(proj) => space.intersection(&proj.image()),
            None => Subspace::zero(space.ambient()),
        }
    }
}

/// `d = μ̄ + ∂̄ + ∂ + μ` with bidegrees `(−1,2), (0,1), (1,0), (2,−1)`.
#[derive(Clone, Debug)]
pub struct BidegreeDecomposition {
    pub mubar: OperatorFamily<GaussianRational>,
    pub dbar: OperatorFamily<GaussianRational>,
    pub del: OperatorFamily<GaussianRational>,
    pub mu: OperatorFamily<GaussianRational>,
    pub projectors: BidegreeProjectors,
}

impl BidegreeDecomposition {
    pub fn sum(&self) -> OperatorFamily<GaussianRational> {
        let add = |a: &GradedOperator<GaussianRational>, b: &GradedOperator<GaussianRational>| a.add(b);
        self.mubar
            .zip_with(&self.dbar, add)
            .and_then(|s| s.zip_with(&self.del, add))
            .and_then(|s| s.zip_with(&self.mu, add))
            .expect("same shapes")
    }

    /// `μ̄ = conj(μ)` and `∂̄ = conj(∂)` entrywise.
    pub fn has_conjugation_symmetry(&self) -> bool {
        self.mubar == self.mu.map(GradedOperator::conj) && self.dbar == self.del.map(GradedOperator::conj)
    }
}

pub fn decompose_d(model: &LieAlgebraModel, j: &AlmostComplexStructure) -> Result<BidegreeDecomposition> {
    let dim = model.dim();
    let projectors = BidegreeProjectors::new(j)?;
    let wanted = [(-1i64, 2i64), (0, 1), (1, 0), (2, -1)];
    let mut families: Vec<Vec<GradedOperator<GaussianRational>>> = vec![Vec::new(); 4];
    for k in 0..=dim {
        let d = model.d_operator(k).to_gaussian();
        let mut comps: BTreeMap<(i64, i64), Matrix<GaussianRational>> = BTreeMap::new();
        for (&(p, q), src) in projectors.in_degree(k) {
            for (&(p2, q2), dst) in projectors.by_degree.get(k + 1).into_iter().flatten() {
                let block = &(dst * d.matrix()) * src;
                if block.is_zero() {
                    continue;
                }
                let key = (p2 as i64 - p as i64, q2 as i64 - q as i64);
                let entry = comps.entry(key).or_insert_with(|| Matrix::zeros(block.rows(), block.cols()));
                *entry = &*entry + &block;
            }
        }
        if let Some((a, b)) = comps.keys().find(|key| !wanted.contains(key)) {
            return Err(Error::UnexpectedBidegree(*a, *b));
        }
        for (slot, key) in wanted.iter().enumerate() {
            let op = match comps.remove(key) {
                Some(m) => GradedOperator::new(dim, k, k + 1, m)?,
                None => GradedOperator::zero(dim, k, k + 1),
            };
            families[slot].push(op);
        }
    }
    let mut it = families.into_iter().map(OperatorFamily::new);
    Ok(BidegreeDecomposition {
        mubar: it.next().expect("four")?,
        dbar: it.next().expect("four")?,
        del: it.next().expect("four")?,
        mu: it.next().expect("four")?,
        projectors,
    })
}

/// `d^c = −iμ̄ + i∂̄ − i∂ + iμ`, which must be real.
pub fn dc_from_components(decomp: &BidegreeDecomposition) -> Result<OperatorFamily<Rational>> {
    let i = i_unit();
    let mi = -i.clone();
    let combined = decomp
        .mubar
        .map(|op| op.scale(&mi))
        .zip_with(&decomp.dbar.map(|op| op.scale(&i)), |a, b| a.add(b))?
        .zip_with(&decomp.del.map(|op| op.scale(&mi)), |a, b| a.add(b))?
        .zip_with(&decomp.mu.map(|op| op.scale(&i)), |a, b| a.add(b))?;
    let ops = combined.iter().map(|op| op.real_part().ok_or(Error::ImaginaryResidue)).collect::<Result<Vec<_>>>()?;
    OperatorFamily::new(ops)
}

/// `L^{n-1}` and `(1/(n−1)!)·⋆J` on `Λ¹`, for `ω` with compatible `J` and
/// the induced metric, `vol = ω^n/n!`.
pub fn weil_operators(omega: &KForm<Rational>, j: &AlmostComplexStructure, action: FormAction) -> Result<(GradedOperator<Rational>, GradedOperator<Rational>)> {
    let compat = is_compatible(j, omega)?;
    let metric = compat.metric.ok_or_else(|| Error::NotAlmostKahler("J is not compatible with ω".into()))?;
    let n = omega.dim() / 2;
    let lefschetz = GradedOperator::wedge_with(&omega.power(n - 1)?, 1)?;
    let vol = symplectic_volume(omega)?;
    let star = hodge_star(&metric, &vol, 1)?;
    let fact: Rational = (1..n as i64).map(rat).product();
    let rhs = star.compose(&j.on_forms_with(action, 1))?.scale(&(Rational::one() / fact));
    Ok((lefschetz, rhs))
}

/// `L^{n−1}α = (1/(n−1)!)·⋆Jα` for every 1-form `α`.
pub fn weil_identity_holds(omega: &KForm<Rational>, j: &AlmostComplexStructure) -> Result<bool> {
    let (l, r) = weil_operators(omega, j, FormAction::Pullback)?;
    Ok(l == r)
}

/// `Δ_∂̄ + Δ_μ = Δ_∂ + Δ_μ̄` on `Λ^k`.
pub fn almost_kahler_identity_holds(decomp: &BidegreeDecomposition, grams: &Grams, k: usize) -> Result<bool> {
    let lhs = laplacian(&decomp.dbar, grams, k)?.add(&laplacian(&decomp.mu, grams, k)?)?;
    let rhs = laplacian(&decomp.del, grams, k)?.add(&laplacian(&decomp.mubar, grams, k)?)?;
    Ok(lhs == rhs)
}

/// Symplectic transvection `X ↦ X + t·ω(v, X)·v`, i.e. `I + t·v vᵀ E`.
pub fn symplectic_transvection(omega: &KForm<Rational>, v: &[Rational], t: &Rational) -> Result<Matrix<Rational>> {
    let e = omega.skew_matrix()?;
    let col = Matrix::from_columns(&[v.to_vec()], v.len());
    let outer = &(&col * &col.transpose()) * &e;
    Ok(&Matrix::identity(v.len()) + &outer.scale(t))
}

/// Up to `count` distinct conjugates `P⁻¹JP` of `j` by the transvections
/// along `e_a` and `e_a + e_b` with `t = 1`. Each stays compatible with `ω`
/// when `j` is.
pub fn transvection_conjugates(j: &AlmostComplexStructure, omega: &KForm<Rational>, count: usize) -> Result<Vec<AlmostComplexStructure>> {
    let dim = j.dim();
    let unit = |a: usize| (0..dim).map(|i| if i == a { rat(1) } else { rat(0) }).collect::<Vec<_>>();
    let mut directions: Vec<Vec<Rational>> = (0..dim).map(unit).collect();
    for a in 0..dim {
        for b in a + 1..dim {
            directions.push(unit(a).iter().zip(unit(b)).map(|(x, y)| x + y).collect());
        }
    }
    let mut out: Vec<AlmostComplexStructure> = Vec::new();
    for v in directions {
        if out.len() == count {
            break;
        }
        let conj = j.conjugate(&symplectic_transvection(omega, &v, &rat(1))?)?;
        if conj != *j && !out.contains(&conj) {
            out.push(conj);
        }
    }
    Ok(out)
}

/// `⟨Ja, Jb⟩ = ⟨a, b⟩` on every degree for the Gram matrices of `metric`.
pub fn is_orthogonal(j: &AlmostComplexStructure, metric: &Metric) -> bool {
    (0..=j.dim()).all(|k| {
        let jk = j.on_forms(k).into_matrix();
        let g = metric.gram(k);
        &(&jk.transpose() * &g) * &jk == g
    })
}

/// Result of the polar construction of a compatible `J`.
#[derive(Clone, Debug)]
pub struct CanonicalJ {
    pub float: DMatrix<f64>,
    /// `‖J² + I‖_F`.
    pub square_residual: f64,
    /// `‖JᵀEJ − E‖_F`.
    pub equivariance_residual: f64,
    pub min_metric_eigenvalue: f64,
    /// Rationalized (denominators ≤ 64) and exactly re-verified, if possible.
    pub exact: Option<AlmostComplexStructure>,
}

/// `J = −K (−K²)^{−1/2}` with `K = G₀ E` the `g₀`-skew endomorphism of `τ`.
pub fn canonical_compatible_j(tau: &KForm<Rational>, g0: &Metric) -> Result<CanonicalJ> {
    const TOL: f64 = 1e-9;
    if !is_nondegenerate(tau)? {
        return Err(Error::Degenerate(tau.to_string()));
    }
    let dim = tau.dim();
    let to_f = |m: &Matrix<Rational>| DMatrix::from_fn(m.rows(), m.cols(), |i, j| to_f64(m.get(i, j)));
    let e = to_f(&tau.skew_matrix()?);
    // Vector metric M₀ = G₀⁻¹; conjugating by S = M₀^{1/2} makes K skew.
    let m0 = to_f(&g0.matrix().inverse()?);
    let eig = nalgebra::SymmetricEigen::new(m0.clone());
    let sqrt = |pow: f64| {
        let d = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| l.powf(pow)));
        &eig.eigenvectors * d * eig.eigenvectors.transpose()
    };
    let (s, s_inv) = (sqrt(0.5), sqrt(-0.5));
    let k = m0.clone().try_inverse().ok_or(Error::NotInvertible)? * &e;
    let ks = &s * &k * &s_inv;
    let neg_sq = -(&ks * &ks);
    let neg_sq = (&neg_sq + neg_sq.transpose()) * 0.5;
    let eig2 = nalgebra::SymmetricEigen::new(neg_sq);
    if eig2.eigenvalues.iter().any(|&l| l <= 0.0) {
        return Err(Error::Convergence(eig2.eigenvalues.min()));
    }
    let inv_abs = &eig2.eigenvectors * DMatrix::from_diagonal(&eig2.eigenvalues.map(|l| l.powf(-0.5))) * eig2.eigenvectors.transpose();
    let js = -(&ks * inv_abs);
    let jf = &s_inv * js * &s;
    let square_residual = (&jf * &jf + DMatrix::identity(dim, dim)).norm();
    let (equivariance_residual, min_metric_eigenvalue) = compatibility_residual(&jf, tau)?;
    if square_residual > TOL || equivariance_residual > TOL || min_metric_eigenvalue <= 0.0 {
        return Err(Error::Convergence(square_residual.max(equivariance_residual)));
    }
    let exact = rationalize_matrix(&jf, TOL)
        .and_then(|m| AlmostComplexStructure::new(m).ok())
        .filter(|j| is_compatible(j, tau).map(|c| c.is_compatible()).unwrap_or(false));
    Ok(CanonicalJ { float: jf, square_residual, equivariance_residual, min_metric_eigenvalue, exact })
}

/// Entrywise rationalization with denominators ≤ 64.
pub fn rationalize_matrix(m: &DMatrix<f64>, tol: f64) -> Option<Matrix<Rational>> {
    let mut out = Matrix::zeros(m.nrows(), m.ncols());
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            out.set(i, j, rationalize(m[(i, j)], 64, tol)?);
        }
    }
    Some(out)
}

/// Coefficient of `θ ∧ Jθ ∧ η^{n−1}` on `e^1 ∧ … ∧ e^{2n}`, and the
/// orientation-corrected positivity `c` = coefficient of `Jθ ∧ θ ∧ η^{n−1}`
/// measured against `η^n`. For `J` compatible with `η`, `c ≥ 0` with equality
/// iff `θ = 0`.
pub fn positivity_coefficients(theta: &KForm<Rational>, eta: &KForm<Rational>, j: &AlmostComplexStructure) -> Result<(Rational, Rational)> {
    let n = eta.dim() / 2;
    let jt = j.apply(theta)?;
    let raw = theta.wedge(&jt)?.wedge(&eta.power(n - 1)?)?.top_coefficient();
    let orientation = eta.power(n)?.top_coefficient();
    let c = if orientation.is_negative() { raw.clone() } else { -raw.clone() };
    Ok((raw, c))
}
