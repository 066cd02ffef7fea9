//! Symplectic, locally and globally conformally symplectic structures, Lee
//! classes, the four equivalent harmonic conditions on 1-forms, the pipeline
//! showing a shared compatible `J` forces `θ = 0`, and a hard Lefschetz survey.

use std::fmt;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::acs::{
    dc_family, dc_from_components, dc_operator, decompose_d, is_compatible, is_orthogonal, positivity_coefficients,
    weil_identity_holds, almost_kahler_identity_holds, AlmostComplexStructure,
};
use crate::algebra::{GradedOperator, KForm, LieAlgebraModel};
use crate::cohomology::{cohomology, hard_lefschetz, kernel};
use crate::error::{Error, Result};
use crate::hodge::{adjoint, harmonics, project, HarmonicTag, Metric};
use crate::linalg::Subspace;
use crate::scalar::{rat, Rational};

/// True iff `dω = 0` and `ω^n ≠ 0`.
pub fn is_symplectic(model: &LieAlgebraModel, omega: &KForm<Rational>) -> bool {
    if omega.degree() != 2 || omega.dim() != model.dim() {
        return false;
    }
    let closed = model.d(omega).map(|f| f.is_zero()).unwrap_or(false);
    closed && omega.power(model.n()).map(|f| !f.is_zero()).unwrap_or(false)
}

/// `(η, θ)` with `dθ = 0`, `η^n ≠ 0`, `dη = θ ∧ η`.
#[derive(Clone, Debug, PartialEq)]
pub struct LcsPair {
    pub eta: KForm<Rational>,
    pub theta: KForm<Rational>,
}

impl LcsPair {
    pub fn new(eta: KForm<Rational>, theta: KForm<Rational>) -> Self {
        LcsPair { eta, theta }
    }
}

pub fn is_lcs(model: &LieAlgebraModel, pair: &LcsPair) -> bool {
    let (eta, theta) = (&pair.eta, &pair.theta);
    if eta.degree() != 2 || theta.degree() != 1 || eta.dim() != model.dim() || theta.dim() != model.dim() {
        return false;
    }
    let check = || -> Result<bool> {
        Ok(model.d(theta)?.is_zero() && !eta.power(model.n())?.is_zero() && model.d(eta)? == theta.wedge(eta)?)
    };
    check().unwrap_or(false)
}

/// Coordinates of `[θ]` in the representative basis of `H¹`.
pub fn lee_class(model: &LieAlgebraModel, theta: &KForm<Rational>) -> Result<Vec<Rational>> {
    cohomology(model, 1).class_of(theta)
}

/// True iff the Lee class vanishes. Invariantly `im d⁰ = 0`, so this means
/// `θ = 0`.
pub fn is_gcs(model: &LieAlgebraModel, pair: &LcsPair) -> Result<bool> {
    Ok(lee_class(model, &pair.theta)?.iter().all(Zero::is_zero))
}

#[derive(Clone, Debug, PartialEq)]
pub enum LeeForm {
    Solution(KForm<Rational>),
    /// No closed `θ` with `θ ∧ η = dη`. `residual` is `dη` when the linear
    /// system is inconsistent, or `dθ` for its unique solution otherwise.
    NoSolution { residual: KForm<Rational> },
}

/// Solves `θ ∧ η = dη` for `θ`; wedging with nondegenerate `η` is injective
/// on `Λ¹` once `n ≥ 2`, so a solution is unique.
pub fn lee_form_from_eta(model: &LieAlgebraModel, eta: &KForm<Rational>) -> Result<LeeForm> {
    if eta.degree() != 2 {
        return Err(Error::WrongDegree { expected: 2, got: eta.degree() });
    }
    if eta.power(model.n())?.is_zero() {
        return Err(Error::Degenerate(eta.to_string()));
    }
    if model.n() < 2 {
        return Err(Error::Invalid("the Lee form is not determined by η in dimension 2".into()));
    }
    let wedge = GradedOperator::wedge_with(eta, 1)?;
    let d_eta = model.d(eta)?;
    let Some(x) = wedge.matrix().solve(&d_eta.to_coords()) else {
        return Ok(LeeForm::NoSolution { residual: d_eta });
    };
    let theta = KForm::from_coords(model.dim(), 1, &x);
    let d_theta = model.d(&theta)?;
    if !d_theta.is_zero() {
        return Ok(LeeForm::NoSolution { residual: d_theta });
    }
    Ok(LeeForm::Solution(theta))
}

/// `θ = h + exact_part + coexact_part` for the metric's inner product.
#[derive(Clone, Debug, PartialEq)]
pub struct HodgeSplit {
    pub harmonic: KForm<Rational>,
    pub exact_part: KForm<Rational>,
    pub coexact_part: KForm<Rational>,
}

pub fn hodge_split(model: &LieAlgebraModel, theta: &KForm<Rational>, metric: &Metric) -> Result<HodgeSplit> {
    if theta.degree() != 1 {
        return Err(Error::WrongDegree { expected: 1, got: theta.degree() });
    }
    let grams = metric.grams();
    let d = model.d_family();
    let v = theta.to_coords();
    let h = harmonics(HarmonicTag::D, d, &grams, 1)?.space;
    let exact = d.at(0).matrix().image();
    let coexact = adjoint(d.at(1), grams.at(1), grams.at(2))?.matrix().image();
    let form = |s: &Subspace<Rational>| KForm::from_coords(model.dim(), 1, &project(s, grams.at(1), &v));
    Ok(HodgeSplit { harmonic: form(&h), exact_part: form(&exact), coexact_part: form(&coexact) })
}

/// The four conditions on 1-forms, with the checks that relate them.
#[derive(Clone, Debug, Serialize)]
pub struct LemmaReport {
    /// `[ω^{n−1}] : H¹ → H^{2n−1}` is an isomorphism.
    pub hard_lefschetz: bool,
    /// `ℋ¹_d ⊆ ℋ¹_{d^c}`.
    pub d_harmonic_is_dc_harmonic: bool,
    /// `ℋ¹_d = ℋ^{1,0}_d ⊕ ℋ^{0,1}_d`.
    pub d_harmonic_splits_by_type: bool,
    /// `ℋ¹_d = ℋ¹_∂̄ ∩ ℋ¹_μ`.
    pub d_harmonic_is_dbar_mu_harmonic: bool,
    pub conditions_agree: bool,
    /// `ℋ¹_d ∩ ℋ¹_{d^c} = ℋ^{1,0}_d ⊕ ℋ^{0,1}_d`.
    pub intersection_identity: bool,
    /// `ℋ^{1,0}_d ⊕ ℋ^{0,1}_d ⊆ ℋ¹_∂̄ ∩ ℋ¹_μ ⊆ ℋ¹_d`.
    pub containment_chain: bool,
    /// `L^{n−1}` is injective on `ℋ¹_∂̄ ∩ ℋ¹_μ`.
    pub lefschetz_injective_on_dbar_mu: bool,
    pub weil_identity: bool,
    pub almost_kahler_identity: bool,
    pub j_orthogonal: bool,
    pub projectors_complete: bool,
    pub decomposition_sums_to_d: bool,
    pub conjugation_symmetry: bool,
    pub dc_two_ways_agree: bool,
    pub betti: Vec<usize>,
    pub harmonic_dims: HarmonicDims,
}

#[derive(Clone, Debug, Serialize)]
pub struct HarmonicDims {
    pub d: usize,
    pub dc: usize,
    pub d_10: usize,
    pub d_01: usize,
    pub dbar: usize,
    pub mu: usize,
    pub dbar_mu: usize,
}

/// Checks that `(ω, J)` is almost-Kähler and returns the induced metric.
pub fn almost_kahler_metric(model: &LieAlgebraModel, omega: &KForm<Rational>, j: &AlmostComplexStructure) -> Result<Metric> {
    if omega.degree() != 2 {
        return Err(Error::WrongDegree { expected: 2, got: omega.degree() });
    }
    if !model.d(omega)?.is_zero() {
        return Err(Error::NotAlmostKahler("ω is not closed".into()));
    }
    let compat = match is_compatible(j, omega) {
        Err(Error::Degenerate(_)) => return Err(Error::NotAlmostKahler("ω is degenerate".into())),
        other => other?,
    };
    compat.metric.ok_or_else(|| Error::NotAlmostKahler("J is not compatible with ω".into()))
}

pub fn lemma_report(model: &LieAlgebraModel, omega: &KForm<Rational>, j: &AlmostComplexStructure) -> Result<LemmaReport> {
    let metric = almost_kahler_metric(model, omega, j)?;
    let grams = metric.grams();
    let n = model.n();
    let hl = hard_lefschetz(model, omega, 1)?;

    let d = model.d_family();
    let dc = dc_family(model, j);
    let dec = decompose_d(model, j)?;
    let h_d = harmonics(HarmonicTag::D, d, &grams, 1)?.space.complexify();
    let h_dc = harmonics(HarmonicTag::Dc, &dc, &grams, 1)?.space.complexify();
    let h_dbar = harmonics(HarmonicTag::Dbar, &dec.dbar, &grams, 1)?.space;
    let h_mu = harmonics(HarmonicTag::Mu, &dec.mu, &grams, 1)?.space;
    let h10 = dec.projectors.pure_part(&h_d, 1, 0);
    let h01 = dec.projectors.pure_part(&h_d, 0, 1);
    let pure = h10.sum(&h01);
    let dbar_mu = h_dbar.intersection(&h_mu);

    let c1 = hl.isomorphism;
    let c2 = h_dc.contains_subspace(&h_d);
    let c3 = h_d == pure;
    let c4 = h_d == dbar_mu;

    let lefschetz = GradedOperator::wedge_with(&omega.power(n - 1)?, 1)?.to_gaussian();
    let images: Vec<_> = dbar_mu.basis().iter().map(|v| lefschetz.matrix().apply(v)).collect();
    let injective = Subspace::span(lefschetz.matrix().rows(), images).dim() == dbar_mu.dim();

    let almost_kahler_identity = (0..=model.dim())
        .map(|k| almost_kahler_identity_holds(&dec, &grams, k))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .all(|b| b);

    Ok(LemmaReport {
        hard_lefschetz: c1,
        d_harmonic_is_dc_harmonic: c2,
        d_harmonic_splits_by_type: c3,
        d_harmonic_is_dbar_mu_harmonic: c4,
        conditions_agree: c1 == c2 && c2 == c3 && c3 == c4,
        intersection_identity: h_d.intersection(&h_dc) == pure,
        containment_chain: dbar_mu.contains_subspace(&pure) && h_d.contains_subspace(&dbar_mu),
        lefschetz_injective_on_dbar_mu: injective,
        weil_identity: weil_identity_holds(omega, j)?,
        almost_kahler_identity,
        j_orthogonal: is_orthogonal(j, &metric),
        projectors_complete: dec.projectors.is_complete_orthogonal_family(),
        decomposition_sums_to_d: dec.sum() == d.to_gaussian(),
        conjugation_symmetry: dec.has_conjugation_symmetry(),
        dc_two_ways_agree: dc_from_components(&dec).map(|f| f == dc).unwrap_or(false),
        betti: crate::cohomology::betti_numbers(model),
        harmonic_dims: HarmonicDims {
            d: h_d.dim(),
            dc: h_dc.dim(),
            d_10: h10.dim(),
            d_01: h01.dim(),
            dbar: h_dbar.dim(),
            mu: h_mu.dim(),
            dbar_mu: dbar_mu.dim(),
        },
    })
}

/// Hypotheses of the shared-`J` theorem, in evaluation order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Hypothesis {
    Unimodular,
    OmegaSymplectic,
    HardLefschetz1,
    JCompatOmega,
    JCompatEta,
    Lcs,
}

impl Hypothesis {
    pub const ALL: [Hypothesis; 6] = [
        Hypothesis::Unimodular,
        Hypothesis::OmegaSymplectic,
        Hypothesis::HardLefschetz1,
        Hypothesis::JCompatOmega,
        Hypothesis::JCompatEta,
        Hypothesis::Lcs,
    ];
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Hypothesis::Unimodular => "unimodular",
            Hypothesis::OmegaSymplectic => "omega-symplectic",
            Hypothesis::HardLefschetz1 => "HL1",
            Hypothesis::JCompatOmega => "J-compat-omega",
            Hypothesis::JCompatEta => "J-compat-eta",
            Hypothesis::Lcs => "LCS",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// Every hypothesis and identity holds and `θ = 0`: the pair is GCS.
    ThetaZero,
    HypothesisFailed(Hypothesis),
    /// Every hypothesis holds but `θ ≠ 0` or an identity fails. Never
    /// expected; it would mean the exact arithmetic is wrong.
    ContradictionCertificate,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::ThetaZero => f.write_str("ThetaZero"),
            Verdict::HypothesisFailed(h) => write!(f, "HypothesisFailed({h})"),
            Verdict::ContradictionCertificate => f.write_str("ContradictionCertificate"),
        }
    }
}

/// Identity checks of the pipeline. `None` when a check could not be
/// evaluated (a prerequisite such as a compatible metric is missing).
#[derive(Clone, Debug, Serialize)]
pub struct TheoremIdentities {
    /// Closed `θ` equals its harmonic part and has no exact part.
    pub theta_harmonic: Option<bool>,
    /// `d^cθ = 0`.
    pub dc_theta_zero: bool,
    /// `d^cη = −Jθ ∧ η`.
    pub dc_eta: bool,
    /// `dd^cη^{n−1} = −(n−1)² θ ∧ Jθ ∧ η^{n−1}`.
    pub ddc_eta_power: bool,
    /// `dd^cη^{n−1} = 0`, as a top form on a unimodular model.
    pub ddc_eta_power_vanishes: bool,
}

impl TheoremIdentities {
    fn all(&self) -> bool {
        self.theta_harmonic.unwrap_or(false) && self.dc_theta_zero && self.dc_eta && self.ddc_eta_power && self.ddc_eta_power_vanishes
    }
}

#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub hypotheses: Vec<(Hypothesis, bool)>,
    pub identities: Option<TheoremIdentities>,
    /// Coefficient of `θ ∧ Jθ ∧ η^{n−1}` on `e1…e2n`.
    pub wedge_coefficient: Option<Rational>,
    /// Orientation-corrected `c ≥ 0`, zero iff `θ = 0` when `J` is
    /// compatible with `η`.
    pub positivity: Option<Rational>,
    pub theta_is_zero: bool,
    pub verdict: Verdict,
}

impl TheoremReport {
    pub fn hypothesis(&self, h: Hypothesis) -> bool {
        self.hypotheses.iter().any(|&(x, ok)| x == h && ok)
    }
}

fn theorem_identities(model: &LieAlgebraModel, pair: &LcsPair, j: &AlmostComplexStructure, metric: Option<&Metric>) -> Result<TheoremIdentities> {
    let (eta, theta) = (&pair.eta, &pair.theta);
    let n = model.n();
    let theta_harmonic = match metric {
        Some(m) if model.d(theta)?.is_zero() => {
            let split = hodge_split(model, theta, m)?;
            Some(split.exact_part.is_zero() && split.harmonic == *theta)
        }
        Some(_) => Some(false),
        None => None,
    };
    let j_theta = j.apply(theta)?;
    let dc_theta_zero = dc_operator(model, j, 1).apply(theta)?.is_zero();
    let dc_eta = dc_operator(model, j, 2).apply(eta)? == j_theta.wedge(eta)?.neg();
    let eta_pow = eta.power(n - 1)?;
    let ddc = model.d(&dc_operator(model, j, 2 * n - 2).apply(&eta_pow)?)?;
    let scale = rat(-((n as i64 - 1) * (n as i64 - 1)));
    let rhs = theta.wedge(&j_theta)?.wedge(&eta_pow)?.scale(&scale);
    Ok(TheoremIdentities {
        theta_harmonic,
        dc_theta_zero,
        dc_eta,
        ddc_eta_power: ddc == rhs,
        ddc_eta_power_vanishes: ddc.is_zero(),
    })
}

/// Runs the argument that a shared compatible `J` forces an LCS pair to be
/// GCS when `ω` satisfies hard Lefschetz in degree 1. Failures are verdicts.
pub fn theorem1_check(model: &LieAlgebraModel, omega: &KForm<Rational>, pair: &LcsPair, j: &AlmostComplexStructure) -> TheoremReport {
    let dims_ok = [omega.dim(), pair.eta.dim(), pair.theta.dim(), j.dim()].iter().all(|&d| d == model.dim());
    let shapes_ok = dims_ok && omega.degree() == 2 && pair.eta.degree() == 2 && pair.theta.degree() == 1;
    let compat = |tau: &KForm<Rational>| {
        if !shapes_ok {
            return None;
        }
        is_compatible(j, tau).ok().and_then(|c| c.metric)
    };
    let omega_symplectic = shapes_ok && is_symplectic(model, omega);
    let g_omega = compat(omega);
    let g_eta = compat(&pair.eta);
    let flags = [
        model.is_unimodular(),
        omega_symplectic,
        omega_symplectic && hard_lefschetz(model, omega, 1).map(|h| h.isomorphism).unwrap_or(false),
        g_omega.is_some(),
        g_eta.is_some(),
        shapes_ok && is_lcs(model, pair),
    ];
    let hypotheses: Vec<(Hypothesis, bool)> = Hypothesis::ALL.iter().copied().zip(flags).collect();

    let (identities, wedge_coefficient, positivity) = if shapes_ok {
        let identities = theorem_identities(model, pair, j, g_omega.as_ref().or(g_eta.as_ref())).ok();
        match positivity_coefficients(&pair.theta, &pair.eta, j) {
            Ok((raw, c)) => (identities, Some(raw), Some(c)),
            Err(_) => (identities, None, None),
        }
    } else {
        (None, None, None)
    };
    let theta_is_zero = pair.theta.is_zero();
    let verdict = match hypotheses.iter().find(|(_, ok)| !ok) {
        Some(&(h, _)) => Verdict::HypothesisFailed(h),
        None => {
            let identities_ok = identities.as_ref().is_some_and(TheoremIdentities::all);
            if theta_is_zero && identities_ok && positivity.as_ref().is_some_and(Zero::is_zero) {
                Verdict::ThetaZero
            } else {
                Verdict::ContradictionCertificate
            }
        }
    };
    TheoremReport { hypotheses, identities, wedge_coefficient, positivity, theta_is_zero, verdict }
}

/// Outcome of sampling closed nondegenerate 2-forms.
#[derive(Clone, Debug, Serialize)]
pub struct HlSurvey {
    pub samples: usize,
    pub hl_true: usize,
    pub fraction: f64,
    /// Degenerate draws that were discarded.
    pub rejected: usize,
    /// First sampled form failing hard Lefschetz in degree 1.
    pub first_counterexample: Option<String>,
}

/// Consecutive degenerate draws after which the survey gives up.
pub const MAX_CONSECUTIVE_REJECTIONS: usize = 1000;

/// Samples closed 2-forms with integer coordinates in `[−5, 5]` on the
/// echelon basis of `ker d²`, keeps nondegenerate ones, and reports the
/// fraction satisfying hard Lefschetz in degree 1.
pub fn hl_survey(model: &LieAlgebraModel, samples: usize, seed: u64) -> Result<HlSurvey> {
    if samples == 0 {
        return Err(Error::Invalid("at least one sample is required".into()));
    }
    let closed = kernel(model.d_operator(2));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut forms = Vec::with_capacity(samples);
    let (mut rejected, mut streak) = (0, 0);
    while forms.len() < samples {
        let mut coords = vec![Rational::zero(); closed.ambient()];
        for b in closed.basis() {
            let c = rat(rng.random_range(-5..=5));
            for (x, y) in coords.iter_mut().zip(b) {
                *x += &c * y;
            }
        }
        let form = KForm::from_coords(model.dim(), 2, &coords);
        if form.power(model.n())?.is_zero() {
            rejected += 1;
            streak += 1;
            if streak >= MAX_CONSECUTIVE_REJECTIONS {
                return Err(Error::NoSymplecticForm(streak));
            }
            continue;
        }
        streak = 0;
        forms.push(form);
    }
    let verdicts = forms
        .par_iter()
        .map(|f| hard_lefschetz(model, f, 1).map(|h| h.isomorphism))
        .collect::<Result<Vec<_>>>()?;
    let hl_true = verdicts.iter().filter(|&&b| b).count();
    let first_counterexample = verdicts.iter().position(|&b| !b).map(|i| forms[i].to_string());
    Ok(HlSurvey { samples, hl_true, fraction: hl_true as f64 / samples as f64, rejected, first_counterexample })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::acs::transvection_conjugates;
    use crate::models;

    fn acs(m: crate::linalg::Matrix<Rational>) -> AlmostComplexStructure {
        AlmostComplexStructure::new(m).unwrap()
    }

    fn lcs_pair() -> LcsPair {
        LcsPair::new(models::omega_14_23(), models::theta_minus_e3())
    }

    #[test]
    fn symplectic_examples() {
        let p = models::paper_example();
        assert!(is_symplectic(&p, &models::omega_standard()));
        assert!(!is_symplectic(&p, &p.e(&[1, 2]).unwrap()));
        assert!(!is_symplectic(&p, &models::omega_14_23()));
        assert!(is_symplectic(&models::kodaira_thurston(), &models::omega_14_23()));
    }

    #[test]
    fn lcs_examples() {
        let p = models::paper_example();
        assert!(is_lcs(&p, &lcs_pair()));
        assert!(is_lcs(&p, &LcsPair::new(models::omega_standard(), KForm::zero(4, 1))));
        assert!(!is_lcs(&p, &LcsPair::new(models::omega_14_23(), models::theta_minus_e3().neg())));
        assert_eq!(p.d(&models::omega_14_23()).unwrap(), p.e(&[1, 3, 4]).unwrap());
    }

    #[test]
    fn lee_class_examples() {
        let p = models::paper_example();
        assert_eq!(lee_class(&p, &models::theta_minus_e3()).unwrap(), vec![rat(-1), rat(0)]);
        assert!(!is_gcs(&p, &lcs_pair()).unwrap());
        assert_eq!(lee_class(&p, &KForm::zero(4, 1)).unwrap(), vec![rat(0), rat(0)]);
        assert_eq!(lee_class(&p, &p.e(&[4]).unwrap()).unwrap(), vec![rat(0), rat(1)]);
        assert!(matches!(lee_class(&p, &p.e(&[1]).unwrap()), Err(Error::NotClosed(_))));
    }

    #[test]
    fn lee_form_recovery() {
        let p = models::paper_example();
        assert_eq!(lee_form_from_eta(&p, &models::omega_14_23()).unwrap(), LeeForm::Solution(models::theta_minus_e3()));
        assert_eq!(lee_form_from_eta(&p, &models::omega_standard()).unwrap(), LeeForm::Solution(KForm::zero(4, 1)));
        let t = models::torus();
        assert_eq!(lee_form_from_eta(&t, &models::omega_14_23()).unwrap(), LeeForm::Solution(KForm::zero(4, 1)));
        assert!(matches!(lee_form_from_eta(&p, &p.e(&[1, 2]).unwrap()), Err(Error::Degenerate(_))));
        let eta = p.e(&[1, 3]).unwrap().add(&p.e(&[2, 4]).unwrap()).unwrap();
        assert_eq!(lee_form_from_eta(&p, &eta).unwrap(), LeeForm::Solution(p.e(&[3]).unwrap()));
        // dη = e134 = e1 ∧ η, but e1 is not closed.
        let eta = models::omega_standard().add(&p.e(&[1, 4]).unwrap()).unwrap();
        assert_eq!(lee_form_from_eta(&p, &eta).unwrap(), LeeForm::NoSolution { residual: p.e(&[1, 3]).unwrap() });
    }

    #[test]
    fn hodge_split_examples() {
        let p = models::paper_example();
        let g = is_compatible(&acs(models::j_14_23()), &models::omega_14_23()).unwrap().metric.unwrap();
        let s = hodge_split(&p, &models::theta_minus_e3(), &g).unwrap();
        assert_eq!(s.harmonic, models::theta_minus_e3());
        assert!(s.exact_part.is_zero() && s.coexact_part.is_zero());

        let t = models::torus();
        let s = hodge_split(&t, &t.e(&[1]).unwrap(), &Metric::identity(4)).unwrap();
        assert_eq!(s.harmonic, t.e(&[1]).unwrap());

        let e1 = p.e(&[1]).unwrap();
        let s = hodge_split(&p, &e1, &g).unwrap();
        assert!(!s.coexact_part.is_zero());
        assert_eq!(s.harmonic.add(&s.exact_part).unwrap().add(&s.coexact_part).unwrap(), e1);
        let g1 = g.gram(1);
        let ip = |a: &KForm<Rational>, b: &KForm<Rational>| crate::hodge::inner(&g1, &a.to_coords(), &b.to_coords());
        assert!(ip(&s.harmonic, &s.coexact_part).is_zero());
    }

    #[test]
    fn lemma_on_torus_and_paper_example() {
        let cases = [
            (models::torus(), models::omega_standard(), models::j_standard(), true),
            (models::paper_example(), models::omega_standard(), models::j_standard(), true),
            (models::kodaira_thurston(), models::omega_14_23(), models::j_14_23(), false),
        ];
        for (m, omega, jm, expected) in cases {
            let base = acs(jm);
            let mut structures = vec![base.clone()];
            structures.extend(transvection_conjugates(&base, &omega, 3).unwrap());
            for j in &structures {
                let r = lemma_report(&m, &omega, j).unwrap();
                assert!(r.conditions_agree, "{} {r:?}", m.name());
                assert_eq!(r.hard_lefschetz, expected, "{}", m.name());
                assert!(r.intersection_identity && r.containment_chain && r.lefschetz_injective_on_dbar_mu);
                assert!(r.weil_identity && r.almost_kahler_identity && r.j_orthogonal);
                assert!(r.projectors_complete && r.decomposition_sums_to_d && r.conjugation_symmetry && r.dc_two_ways_agree);
            }
        }
    }

    #[test]
    fn lemma_requires_almost_kahler_input() {
        let p = models::paper_example();
        let j = acs(models::j_14_23());
        assert!(matches!(lemma_report(&p, &models::omega_14_23(), &j), Err(Error::NotAlmostKahler(_))));
        assert!(matches!(lemma_report(&p, &models::omega_standard(), &j), Err(Error::NotAlmostKahler(_))));
    }

    #[test]
    fn theorem_pipeline_verdicts() {
        let t = models::torus();
        let r = theorem1_check(&t, &models::omega_standard(), &LcsPair::new(models::omega_standard(), KForm::zero(4, 1)), &acs(models::j_standard()));
        assert_eq!(r.verdict, Verdict::ThetaZero);

        let p = models::paper_example();
        let r = theorem1_check(&p, &models::omega_standard(), &lcs_pair(), &acs(models::j_14_23()));
        assert_eq!(r.verdict, Verdict::HypothesisFailed(Hypothesis::JCompatOmega));
        assert!(r.hypothesis(Hypothesis::HardLefschetz1) && r.hypothesis(Hypothesis::JCompatEta) && r.hypothesis(Hypothesis::Lcs));
        let ids = r.identities.unwrap();
        // J_η is not ω-compatible, so nothing forces d^cθ = 0, and the
        // second identity fails while dd^cη still vanishes.
        assert!(ids.dc_eta && ids.ddc_eta_power_vanishes);
        assert!(!ids.dc_theta_zero && !ids.ddc_eta_power);
        assert_eq!(r.wedge_coefficient, Some(rat(-1)));
        assert_eq!(r.positivity, Some(rat(1)));

        let kt = models::kodaira_thurston();
        let r = theorem1_check(&kt, &models::omega_14_23(), &LcsPair::new(models::omega_14_23(), KForm::zero(4, 1)), &acs(models::j_14_23()));
        assert_eq!(r.verdict, Verdict::HypothesisFailed(Hypothesis::HardLefschetz1));

        let a = models::affine2();
        let eta = a.e(&[1, 2]).unwrap();
        let j2 = acs(models::pairing_structure(2, &[(1, 2)]));
        let r = theorem1_check(&a, &eta, &LcsPair::new(eta.clone(), KForm::zero(2, 1)), &j2);
        assert_eq!(r.verdict, Verdict::HypothesisFailed(Hypothesis::Unimodular));
    }

    #[test]
    fn hl_survey_fractions() {
        let s = hl_survey(&models::paper_example(), 60, 1).unwrap();
        assert_eq!(s.fraction, 1.0);
        let s = hl_survey(&models::torus(), 60, 1).unwrap();
        assert_eq!(s.fraction, 1.0);
        let s = hl_survey(&models::kodaira_thurston(), 60, 1).unwrap();
        assert_eq!(s.fraction, 0.0);
        assert!(s.first_counterexample.is_some());
        assert!(hl_survey(&models::torus(), 0, 1).is_err());
    }

    #[test]
    fn survey_reports_missing_symplectic_forms() {
        // su(2) ⊕ R: every closed 2-form lies in span{e12, e13, e23} and squares to zero.
        let e = |idx: &[usize]| KForm::monomial(4, idx).unwrap();
        let d = vec![e(&[2, 3]), e(&[1, 3]).neg(), e(&[1, 2]), KForm::zero(4, 2)];
        let m = LieAlgebraModel::from_differentials("u2", d).unwrap();
        assert_eq!(kernel(m.d_operator(2)).dim(), 3);
        assert!(matches!(hl_survey(&m, 5, 1), Err(Error::NoSymplecticForm(1000))));
    }
}
