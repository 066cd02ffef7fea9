//! Inner products, Hodge star, adjoints, Laplacians and harmonic spaces on
//! the invariant complex.
//!
//! Adjoints come straight from Gram matrices (`δ* = G_p⁻¹ δᴴ G_q`), so
//! everything stays exact; the Hodge star is only needed for the Weil
//! identity and requires a volume coefficient with `v²·det G = 1`.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::multiindex::{complement, multi_indices, rank, sort_with_sign};
use crate::algebra::{GradedOperator, KForm, OperatorFamily};
use crate::error::{Error, Result};
use crate::linalg::{dot, Matrix, Subspace};
use crate::scalar::{Rational, Scalar};

/// Inner product on covectors: `G[i][j] = ⟨e^i, e^j⟩`, symmetric positive
/// definite (checked exactly by leading principal minors).
#[derive(Clone, Debug, PartialEq)]
pub struct Metric {
    gram1: Matrix<Rational>,
}

impl Metric {
    pub fn new(gram1: Matrix<Rational>) -> Result<Self> {
        if !gram1.is_symmetric() {
            return Err(Error::InvalidMetric("Gram matrix is not symmetric".into()));
        }
        if !gram1.is_positive_definite() {
            return Err(Error::InvalidMetric("Gram matrix is not positive definite".into()));
        }
        Ok(Metric { gram1 })
    }

    pub fn identity(dim: usize) -> Self {
        Metric { gram1: Matrix::identity(dim) }
    }

    pub fn dim(&self) -> usize {
        self.gram1.rows()
    }

    pub fn matrix(&self) -> &Matrix<Rational> {
        &self.gram1
    }

    /// Induced inner product on `Λ^k`: `⟨e^I, e^J⟩ = det G[I, J]`.
    pub fn gram(&self, k: usize) -> Matrix<Rational> {
        if k > self.dim() {
            return Matrix::zeros(0, 0);
        }
        GradedOperator::multiplicative_extension(&self.gram1, k).into_matrix()
    }

    pub fn grams(&self) -> Grams {
        Grams { grams: (0..=self.dim() + 1).map(|k| self.gram(k)).collect() }
    }
}

pub fn gram(metric: &Metric, k: usize) -> Matrix<Rational> {
    metric.gram(k)
}

/// Gram matrices for every degree `0..=dim+1` (the last one is empty).
#[derive(Clone, Debug)]
pub struct Grams {
    grams: Vec<Matrix<Rational>>,
}

impl Grams {
    pub fn at(&self, k: usize) -> &Matrix<Rational> {
        &self.grams[k]
    }

    pub fn dim(&self) -> usize {
        self.grams.len() - 2
    }
}

/// `v · e^1 ∧ … ∧ e^{2n}` with `v ≠ 0`; the sign of `v` fixes the orientation.
#[derive(Clone, Debug, PartialEq)]
pub struct VolumeForm {
    dim: usize,
    coeff: Rational,
}

impl VolumeForm {
    pub fn new(dim: usize, coeff: Rational) -> Result<Self> {
        if coeff.is_zero() {
            return Err(Error::Degenerate("zero volume form".into()));
        }
        Ok(VolumeForm { dim, coeff })
    }

    pub fn from_form(form: &KForm<Rational>) -> Result<Self> {
        if form.degree() != form.dim() {
            return Err(Error::WrongDegree { expected: form.dim(), got: form.degree() });
        }
        Self::new(form.dim(), form.top_coefficient())
    }

    pub fn standard(dim: usize) -> Self {
        VolumeForm { dim, coeff: Rational::one() }
    }

    pub fn coefficient(&self) -> &Rational {
        &self.coeff
    }

    pub fn to_form(&self) -> KForm<Rational> {
        let top: Vec<usize> = (1..=self.dim).collect();
        KForm::from_terms(self.dim, self.dim, [(self.coeff.clone(), top)]).expect("top form")
    }
}

/// The operator with `α ∧ ⋆β = ⟨α, β⟩ vol` on `Λ^k`.
pub fn hodge_star(metric: &Metric, vol: &VolumeForm, k: usize) -> Result<GradedOperator<Rational>> {
    let dim = metric.dim();
    if vol.dim != dim {
        return Err(Error::DimensionMismatch("volume form and metric dimensions differ".into()));
    }
    if k > dim {
        return Err(Error::DegreeOutOfRange(k));
    }
    let normalization = vol.coeff.clone() * vol.coeff.clone() * metric.gram1.determinant();
    if !normalization.is_one() {
        return Err(Error::VolumeNormalization(normalization.to_string()));
    }
    // W[I, K] = sign of e^I ∧ e^K against e^{1..dim}; W is a signed
    // permutation, so ⋆ = v · Wᵀ · G_k.
    let source = multi_indices(dim, k);
    let mut wt = Matrix::<Rational>::zeros(source.len(), source.len());
    for (col, idx) in source.iter().enumerate() {
        let comp = complement(dim, idx);
        let cat: Vec<usize> = idx.iter().chain(&comp).copied().collect();
        let (_, negative) = sort_with_sign(&cat).expect("disjoint");
        let s = if negative { -Rational::one() } else { Rational::one() };
        wt.set(rank(dim, &comp), col, s);
    }
    let m = (&wt * &metric.gram(k)).scale(&vol.coeff);
    GradedOperator::new(dim, k, dim - k, m)
}

/// Adjoint with respect to the Gram inner products: `G_p⁻¹ · opᴴ · G_q`.
pub fn adjoint<S: Scalar>(op: &GradedOperator<S>, gram_p: &Matrix<Rational>, gram_q: &Matrix<Rational>) -> Result<GradedOperator<S>> {
    let gp_inv = gram_p.inverse().map_err(|_| Error::InvalidMetric("singular Gram matrix".into()))?;
    let lift = |m: &Matrix<Rational>| m.map(|x| S::from_rational(x.clone()));
    let m = &(&lift(&gp_inv) * &op.matrix().adjoint()) * &lift(gram_q);
    GradedOperator::new(op.dim(), op.target(), op.source(), m)
}

/// `Δ_δ = δ*δ + δδ*` on `Λ^k`.
pub fn laplacian<S: Scalar>(delta: &OperatorFamily<S>, grams: &Grams, k: usize) -> Result<GradedOperator<S>> {
    let out = delta.at(k);
    let mut lap = adjoint(out, grams.at(k), grams.at(k + 1))?.compose(out)?;
    if k > 0 {
        let inc = delta.at(k - 1);
        lap = lap.add(&inc.compose(&adjoint(inc, grams.at(k - 1), grams.at(k))?)?)?;
    }
    Ok(lap)
}

/// Which operator a harmonic space belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HarmonicTag {
    D,
    Dc,
    Dbar,
    Del,
    Mu,
    Mubar,
}

impl fmt::Display for HarmonicTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            HarmonicTag::D => "d",
            HarmonicTag::Dc => "dc",
            HarmonicTag::Dbar => "dbar",
            HarmonicTag::Del => "del",
            HarmonicTag::Mu => "mu",
            HarmonicTag::Mubar => "mubar",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for HarmonicTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "d" => HarmonicTag::D,
            "dc" => HarmonicTag::Dc,
            "dbar" => HarmonicTag::Dbar,
            "del" => HarmonicTag::Del,
            "mu" => HarmonicTag::Mu,
            "mubar" => HarmonicTag::Mubar,
            other => return Err(Error::Parse(format!("unknown operator {other:?}"))),
        })
    }
}

/// `ℋ^k_δ = ker Δ_δ ∩ Λ^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicSpace<S> {
    pub tag: HarmonicTag,
    pub degree: usize,
    pub space: Subspace<S>,
}

impl<S: Scalar> HarmonicSpace<S> {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis_forms(&self, dim: usize) -> Vec<KForm<S>> {
        self.space.basis().iter().map(|v| KForm::from_coords(dim, self.degree, v)).collect()
    }
}

pub fn harmonics<S: Scalar>(tag: HarmonicTag, delta: &OperatorFamily<S>, grams: &Grams, k: usize) -> Result<HarmonicSpace<S>> {
    let lap = laplacian(delta, grams, k)?;
    Ok(HarmonicSpace { tag, degree: k, space: lap.matrix().kernel() })
}

/// Hermitian inner product `aᴴ G b`.
pub fn inner<S: Scalar>(gram: &Matrix<Rational>, a: &[S], b: &[S]) -> S {
    let gb = gram.map(|x| S::from_rational(x.clone())).apply(b);
    let ac: Vec<S> = a.iter().map(Scalar::conj).collect();
    dot(&ac, &gb)
}

/// Orthogonal projection of `v` onto `space` for the Gram inner product.
pub fn project<S: Scalar>(space: &Subspace<S>, gram: &Matrix<Rational>, v: &[S]) -> Vec<S> {
    if space.is_zero() {
        return vec![S::zero(); v.len()];
    }
    let b = space.basis_matrix();
    let g = gram.map(|x| S::from_rational(x.clone()));
    let bh_g = &b.adjoint() * &g;
    let normal = &bh_g * &b;
    let rhs = bh_g.apply(v);
    let coeffs = normal.inverse().expect("Gram restricted to a subspace is definite").apply(&rhs);
    b.apply(&coeffs)
}

/// Dimensions of `Λ^k = ℋ^k ⊕ im d ⊕ im d*`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HodgeDecomposition {
    pub degree: usize,
    pub harmonic: usize,
    pub exact: usize,
    pub coexact: usize,
    pub total: usize,
    pub pairwise_orthogonal: bool,
}

pub fn hodge_decomposition(d: &OperatorFamily<Rational>, grams: &Grams, k: usize) -> Result<HodgeDecomposition> {
    let dim = grams.dim();
    let h = harmonics(HarmonicTag::D, d, grams, k)?.space;
    let exact = if k == 0 { Subspace::zero(1) } else { d.at(k - 1).matrix().image() };
    let coexact = adjoint(d.at(k), grams.at(k), grams.at(k + 1))?.matrix().image();
    let g = grams.at(k);
    let orth = |a: &Subspace<Rational>, b: &Subspace<Rational>| {
        a.basis().iter().all(|x| b.basis().iter().all(|y| inner(g, x, y).is_zero()))
    };
    let pairwise_orthogonal = orth(&h, &exact) && orth(&h, &coexact) && orth(&exact, &coexact);
    Ok(HodgeDecomposition {
        degree: k,
        harmonic: h.dim(),
        exact: exact.dim(),
        coexact: coexact.dim(),
        total: crate::algebra::multiindex::binomial(dim, k),
        pairwise_orthogonal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::betti_numbers;
    use crate::models;
    use crate::scalar::{rat, ratio};

    fn e(idx: &[usize]) -> KForm<Rational> {
        KForm::monomial(4, idx).unwrap()
    }

    #[test]
    fn gram_examples() {
        let id = Metric::identity(4);
        for k in 0..=4 {
            assert_eq!(id.gram(k), Matrix::identity(crate::algebra::multiindex::binomial(4, k)));
        }
        let mut g = Matrix::identity(4);
        g.set(3, 3, rat(4));
        let m = Metric::new(g).unwrap();
        let g2 = m.gram(2);
        assert_eq!(*g2.get(5, 5), rat(4));
        assert_eq!(*g2.get(0, 0), rat(1));
        assert!(g2.is_symmetric());
        assert_eq!((0..6).filter(|&i| (0..6).any(|j| j != i && !g2.get(i, j).is_zero())).count(), 0);
    }

    #[test]
    fn metric_validation() {
        let mut g = Matrix::<Rational>::identity(2);
        g.set(0, 1, rat(2));
        assert!(Metric::new(g.clone()).is_err());
        g.set(1, 0, rat(2));
        assert!(Metric::new(g).is_err());
    }

    #[test]
    fn star_on_orthonormal_torus() {
        let id = Metric::identity(4);
        let vol = VolumeForm::standard(4);
        let s1 = hodge_star(&id, &vol, 1).unwrap();
        assert_eq!(s1.apply(&e(&[1])).unwrap(), e(&[2, 3, 4]));
        let s2 = hodge_star(&id, &vol, 2).unwrap();
        assert_eq!(s2.apply(&e(&[1, 2])).unwrap(), e(&[3, 4]));
        assert_eq!(s2.apply(&e(&[1, 3])).unwrap(), e(&[2, 4]).neg());
        let s0 = hodge_star(&id, &vol, 0).unwrap();
        assert_eq!(s0.apply(&KForm::constant(4, rat(1))).unwrap(), vol.to_form());
        let s4 = hodge_star(&id, &vol, 4).unwrap();
        assert_eq!(s4.apply(&vol.to_form()).unwrap(), KForm::constant(4, rat(1)));
    }

    #[test]
    fn star_defining_identity_with_nontrivial_metric() {
        let g = Matrix::from_rows(
            vec![
                vec![rat(2), rat(1), rat(0), rat(0)],
                vec![rat(1), rat(1), rat(0), rat(0)],
                vec![rat(0), rat(0), rat(4), rat(0)],
                vec![rat(0), rat(0), rat(0), ratio(1, 4)],
            ],
            4,
        );
        let m = Metric::new(g).unwrap();
        // det G = 1 · 1 = 1
        let vol = VolumeForm::standard(4);
        for k in 0..=4 {
            let s = hodge_star(&m, &vol, k).unwrap();
            let gk = m.gram(k);
            for (i, a) in multi_indices(4, k).iter().enumerate() {
                for (j, b) in multi_indices(4, k).iter().enumerate() {
                    let lhs = e(a).wedge(&s.apply(&e(b)).unwrap()).unwrap().top_coefficient();
                    assert_eq!(lhs, gk.get(i, j).clone());
                }
            }
        }
        assert!(matches!(hodge_star(&m, &VolumeForm::new(4, rat(2)).unwrap(), 1), Err(Error::VolumeNormalization(_))));
    }

    #[test]
    fn adjoint_examples() {
        let z = GradedOperator::<Rational>::zero(4, 1, 2);
        let g1 = Metric::identity(4).gram(1);
        let g2 = Metric::identity(4).gram(2);
        assert!(adjoint(&z, &g1, &g2).unwrap().is_zero());
        let d = models::paper_example().d_operator(1).clone();
        assert_eq!(adjoint(&d, &g1, &g2).unwrap().matrix(), &d.matrix().transpose());
    }

    #[test]
    fn torus_laplacian_vanishes() {
        let t = models::torus();
        let grams = Metric::identity(4).grams();
        for k in 0..=4 {
            assert!(laplacian(t.d_family(), &grams, k).unwrap().is_zero());
        }
        assert_eq!(harmonics(HarmonicTag::D, t.d_family(), &grams, 1).unwrap().dim(), 4);
    }

    #[test]
    fn kodaira_thurston_harmonic_one_forms() {
        let kt = models::kodaira_thurston();
        let grams = Metric::identity(4).grams();
        let h = harmonics(HarmonicTag::D, kt.d_family(), &grams, 1).unwrap();
        assert_eq!(h.space, Subspace::span(4, vec![e(&[1]).to_coords(), e(&[2]).to_coords(), e(&[3]).to_coords()]));
    }

    #[test]
    fn hodge_decomposition_dimensions() {
        for m in [models::torus(), models::kodaira_thurston(), models::paper_example()] {
            let grams = Metric::identity(4).grams();
            let b = betti_numbers(&m);
            for k in 0..=4 {
                let hd = hodge_decomposition(m.d_family(), &grams, k).unwrap();
                assert_eq!(hd.harmonic, b[k]);
                assert_eq!(hd.harmonic + hd.exact + hd.coexact, hd.total);
                assert!(hd.pairwise_orthogonal);
            }
        }
    }

    #[test]
    fn projection_is_orthogonal() {
        let g = Metric::new(Matrix::from_rows(vec![vec![rat(2), rat(1)], vec![rat(1), rat(1)]], 2)).unwrap();
        let s = Subspace::span(2, vec![vec![rat(1), rat(0)]]);
        let v = vec![rat(0), rat(1)];
        let p = project(&s, g.matrix(), &v);
        let r: Vec<Rational> = v.iter().zip(&p).map(|(a, b)| a - b).collect();
        assert!(inner(g.matrix(), &s.basis()[0], &r).is_zero());
    }
}
