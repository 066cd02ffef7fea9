use lcs_core::acs::{canonical_compatible_j, is_compatible, transvection_conjugates, AlmostComplexStructure};
use lcs_core::algebra::KForm;
use lcs_core::confsym::{is_gcs, lemma_report, theorem1_check, LcsPair, Verdict};
use lcs_core::hodge::Metric;
use lcs_core::jsearch::{compatibility_residual, find_shared_j, SearchConfig, SearchStatus};
use lcs_core::models;
use lcs_core::scalar::rat;

fn j(m: lcs_core::linalg::Matrix<lcs_core::Rational>) -> AlmostComplexStructure {
    AlmostComplexStructure::new(m).unwrap()
}

#[test]
fn found_structures_pass_the_residual_checks_for_both_forms() {
    let omega = models::omega_standard();
    let eta = KForm::monomial(4, &[1, 2]).unwrap().add(&KForm::monomial(4, &[3, 4]).unwrap().scale(&rat(3))).unwrap();
    let cfg = SearchConfig { restarts: 6, seed: 11, ..SearchConfig::default() };
    let out = find_shared_j(&models::torus(), &omega, &eta, &cfg).unwrap();
    let SearchStatus::Found { j, residuals, exact, .. } = out.status else { panic!("expected a shared structure") };
    assert!((&j * &j + nalgebra::DMatrix::identity(4, 4)).norm() <= cfg.tol_residual);
    for tau in [&omega, &eta] {
        let (eq, min) = compatibility_residual(&j, tau).unwrap();
        assert!(eq <= cfg.tol_residual && min >= cfg.tol_posdef, "{eq} {min}");
    }
    assert!(residuals.algebraic() <= cfg.tol_residual);
    if let Some(js) = exact {
        assert!(is_compatible(&js, &omega).unwrap().is_compatible());
        assert!(is_compatible(&js, &eta).unwrap().is_compatible());
    }
}

#[test]
fn no_catalog_run_passes_every_hypothesis_with_nonzero_lee_form() {
    let p = models::paper_example();
    let pair = LcsPair::new(models::omega_14_23(), models::theta_minus_e3());
    let mut structures = vec![j(models::j_14_23()), j(models::j_standard())];
    for base in structures.clone() {
        let tau = if base.matrix() == &models::j_standard() { models::omega_standard() } else { models::omega_14_23() };
        structures.extend(transvection_conjugates(&base, &tau, 3).unwrap());
    }
    for js in &structures {
        let report = theorem1_check(&p, &models::omega_standard(), &pair, js);
        assert!(matches!(report.verdict, Verdict::HypothesisFailed(_)), "{:?}", report.verdict);
        if let Some(c) = &report.positivity {
            if is_compatible(js, &pair.eta).unwrap().is_compatible() {
                assert!(*c > rat(0));
            }
        }
    }
    assert!(!is_gcs(&p, &pair).unwrap());
}

#[test]
fn canonical_structures_feed_the_lemma() {
    let p = models::paper_example();
    let omega = models::omega_standard();
    let c = canonical_compatible_j(&omega, &Metric::identity(4)).unwrap();
    let report = lemma_report(&p, &omega, &c.exact.unwrap()).unwrap();
    assert!(report.conditions_agree && report.hard_lefschetz);
}
