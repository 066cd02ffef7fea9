//! `lcs-verify`: checks symplectic, locally conformally symplectic and
//! almost-Kähler structures on Lie-algebra models from the command line.
//!
//! [`run`] parses an argument vector and returns the exit code together with
//! what would be written to stdout and stderr, so the binary is a thin shell
//! around it.

pub mod catalog;
mod report;

use std::fs;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lcs_core::acs::{canonical_compatible_j, is_compatible, symplectic_volume, AlmostComplexStructure};
use lcs_core::algebra::{parse_form, parse_model, parse_structure_matrix, KForm, LieAlgebraModel};
use lcs_core::cohomology::{betti_numbers, cohomology, euler_characteristic, hard_lefschetz};
use lcs_core::confsym::{
    hl_survey, is_gcs, is_lcs, is_symplectic, lee_class, lee_form_from_eta, lemma_report, theorem1_check, LcsPair,
    LeeForm, Verdict,
};
use lcs_core::hodge::{harmonics, hodge_star, HarmonicTag, Metric, VolumeForm};
use lcs_core::jsearch::{find_shared_j, SearchConfig, SearchStatus};
use lcs_core::{acs, Error, GaussianRational, Rational};
use serde_json::{json, Value};

use report::{float, matrix_value, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Parser, Debug)]
#[command(name = "lcs-verify", version, about = "Exact checks of symplectic and LCS structures on Lie-algebra models")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct ModelArg {
    /// Model file or `catalog:<name>`.
    #[arg(long)]
    model: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a model and check d∘d = 0.
    Validate(ModelArg),
    /// Betti numbers of the invariant complex.
    Betti(ModelArg),
    /// Hard Lefschetz in degree k for a closed 2-form.
    Hl {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        omega: String,
        #[arg(long, default_value_t = 1)]
        degree: usize,
    },
    /// Hodge star on k-forms, for the metric induced by (ω, J) or the identity.
    Star {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long, requires = "j")]
        omega: Option<String>,
        #[arg(long, requires = "omega")]
        j: Option<String>,
        #[arg(long, default_value_t = 1)]
        degree: usize,
        /// Form to apply the star to; its degree overrides --degree.
        #[arg(long)]
        form: Option<String>,
    },
    /// Harmonic k-forms of d, d^c or one of the bidegree components of d.
    Harmonics {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long, default_value = "d", value_parser = parse_tag)]
        op: HarmonicTag,
        #[arg(long)]
        omega: Option<String>,
        #[arg(long)]
        j: Option<String>,
        #[arg(long, default_value_t = 1)]
        degree: usize,
    },
    /// Whether ω is closed and nondegenerate.
    CheckSymplectic {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        omega: String,
    },
    /// Whether (η, θ) is locally conformally symplectic; θ is solved for when omitted.
    CheckLcs {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        eta: String,
        #[arg(long)]
        theta: Option<String>,
    },
    /// Class of a closed 1-form in H¹; exit 0 iff it vanishes.
    LeeClass {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        theta: String,
    },
    /// The four harmonic conditions on 1-forms for an almost-Kähler (ω, J).
    LemmaReport {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        omega: String,
        #[arg(long)]
        j: String,
    },
    /// Whether a shared compatible J forces the LCS pair (η, θ) to be GCS.
    Theorem1 {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        omega: String,
        #[arg(long)]
        eta: String,
        #[arg(long)]
        theta: String,
        #[arg(long)]
        j: String,
    },
    /// Polar construction of a J compatible with ω.
    CanonicalJ {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        omega: String,
        /// Covector metric file (same layout as a J file); identity by default.
        #[arg(long)]
        metric: Option<String>,
    },
    /// Numerical search for a J compatible with both ω and η.
    FindSharedJ {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        omega: String,
        #[arg(long)]
        eta: String,
        #[arg(long, default_value_t = 100)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, default_value_t = 200)]
        max_iters: usize,
    },
    /// Fraction of random symplectic forms satisfying hard Lefschetz in degree 1.
    SurveyHl {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long)]
        seed: u64,
    },
    /// List built-in models, forms and structures.
    Catalog,
}

fn parse_tag(s: &str) -> std::result::Result<HarmonicTag, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Exit code and captured streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::input(e.to_string())
    }
}

type CmdResult = std::result::Result<(i32, Report), Failure>;

pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Output { code, stdout: text, stderr: String::new() }
            } else {
                Output { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(cli.command) {
        Ok((code, report)) => Output { code, stdout: report.render(cli.format, code), stderr: String::new() },
        Err(f) => Output { code: f.code, stdout: String::new(), stderr: format!("error: {}\n", f.message) },
    }
}

fn dispatch(command: Command) -> CmdResult {
    match command {
        Command::Validate(m) => validate(&m.model),
        Command::Betti(m) => betti(&load_model(&m.model)?),
        Command::Hl { model, omega, degree } => {
            let model = load_model(&model.model)?;
            let omega = load_form(&omega, &model, Some(2))?;
            hl(&model, &omega, degree)
        }
        Command::Star { model, omega, j, degree, form } => {
            let model = load_model(&model.model)?;
            let almost_kahler = match (omega, j) {
                (Some(o), Some(j)) => Some((load_form(&o, &model, Some(2))?, load_structure(&j, &model)?)),
                _ => None,
            };
            let form = form.map(|f| load_form(&f, &model, None)).transpose()?;
            star(&model, almost_kahler, degree, form)
        }
        Command::Harmonics { model, op, omega, j, degree } => {
            let model = load_model(&model.model)?;
            let omega = omega.map(|o| load_form(&o, &model, Some(2))).transpose()?;
            let j = j.map(|j| load_structure(&j, &model)).transpose()?;
            harmonic_space(&model, op, omega, j, degree)
        }
        Command::CheckSymplectic { model, omega } => {
            let model = load_model(&model.model)?;
            let omega = load_form(&omega, &model, Some(2))?;
            check_symplectic(&model, &omega)
        }
        Command::CheckLcs { model, eta, theta } => {
            let model = load_model(&model.model)?;
            let eta = load_form(&eta, &model, Some(2))?;
            let theta = theta.map(|t| load_form(&t, &model, Some(1))).transpose()?;
            check_lcs(&model, &eta, theta)
        }
        Command::LeeClass { model, theta } => {
            let model = load_model(&model.model)?;
            let theta = load_form(&theta, &model, Some(1))?;
            lee(&model, &theta)
        }
        Command::LemmaReport { model, omega, j } => {
            let model = load_model(&model.model)?;
            let omega = load_form(&omega, &model, Some(2))?;
            let j = load_structure(&j, &model)?;
            lemma(&model, &omega, &j)
        }
        Command::Theorem1 { model, omega, eta, theta, j } => {
            let model = load_model(&model.model)?;
            let omega = load_form(&omega, &model, Some(2))?;
            let pair = LcsPair::new(load_form(&eta, &model, Some(2))?, load_form(&theta, &model, Some(1))?);
            let j = load_structure(&j, &model)?;
            theorem(&model, &omega, &pair, &j)
        }
        Command::CanonicalJ { model, omega, metric } => {
            let model = load_model(&model.model)?;
            let omega = load_form(&omega, &model, Some(2))?;
            let metric = match metric {
                Some(path) => Metric::new(parse_structure_matrix(&read(&path)?)?)?,
                None => Metric::identity(model.dim()),
            };
            canonical(&omega, &metric)
        }
        Command::FindSharedJ { model, omega, eta, restarts, seed, tol, max_iters } => {
            let model = load_model(&model.model)?;
            let omega = load_form(&omega, &model, Some(2))?;
            let eta = load_form(&eta, &model, Some(2))?;
            let cfg = SearchConfig { restarts, seed, tol_residual: tol, max_iters, ..SearchConfig::default() };
            shared_j(&model, &omega, &eta, &cfg)
        }
        Command::SurveyHl { model, samples, seed } => survey(&load_model(&model.model)?, samples, seed),
        Command::Catalog => list_catalog(),
    }
}

fn read(path: &str) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{path}: {e}")))
}

fn catalog_name(input: &str) -> Option<&str> {
    input.strip_prefix("catalog:")
}

fn load_model(input: &str) -> std::result::Result<LieAlgebraModel, Failure> {
    match catalog_name(input) {
        Some(name) => catalog::model(name).ok_or_else(|| Failure::input(format!("no catalog model {name:?}"))),
        None => Ok(parse_model(&read(input)?)?),
    }
}

fn load_form(input: &str, model: &LieAlgebraModel, degree: Option<usize>) -> std::result::Result<KForm<Rational>, Failure> {
    let form = match catalog_name(input) {
        Some(name) => catalog::form(name).ok_or_else(|| Failure::input(format!("no catalog form {name:?}")))?,
        None => parse_form(&read(input)?, model.dim())?,
    };
    if form.dim() != model.dim() {
        return Err(Failure::input(format!("{input}: form on dimension {} for a {}-dimensional model", form.dim(), model.dim())));
    }
    if let Some(k) = degree.filter(|&k| k != form.degree()) {
        return Err(Failure::input(format!("{input}: expected a {k}-form, got degree {}", form.degree())));
    }
    Ok(form)
}

fn load_structure(input: &str, model: &LieAlgebraModel) -> std::result::Result<AlmostComplexStructure, Failure> {
    let j = match catalog_name(input) {
        Some(name) => catalog::structure(name).ok_or_else(|| Failure::input(format!("no catalog structure {name:?}")))?,
        None => AlmostComplexStructure::new(parse_structure_matrix(&read(input)?)?)?,
    };
    if j.dim() != model.dim() {
        return Err(Failure::input(format!("{input}: structure on dimension {} for a {}-dimensional model", j.dim(), model.dim())));
    }
    Ok(j)
}

fn code(ok: bool) -> i32 {
    if ok { 0 } else { 1 }
}

fn rational(r: &Rational) -> Value {
    Value::String(r.to_string())
}

fn rationals(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational).collect())
}

fn validate(input: &str) -> CmdResult {
    let mut r = Report::new("validate");
    let model = match catalog_name(input) {
        Some(_) => load_model(input)?,
        None => match parse_model(&read(input)?) {
            Ok(m) => m,
            Err(e @ Error::Parse(_)) => return Err(e.into()),
            Err(e) => {
                r.put("valid", json!(false));
                r.put("reason", json!(e.to_string()));
                return Ok((1, r));
            }
        },
    };
    r.put("valid", json!(true));
    r.put("model", json!(model.name()));
    r.put("dim", json!(model.dim()));
    r.put("unimodular", json!(model.is_unimodular()));
    r.put("abelian", json!(model.is_abelian()));
    Ok((0, r))
}

fn betti(model: &LieAlgebraModel) -> CmdResult {
    let b = betti_numbers(model);
    let mut r = Report::new("betti");
    r.put("model", json!(model.name()));
    r.put("betti", json!(b));
    r.put("euler_characteristic", json!(euler_characteristic(&b)));
    Ok((0, r))
}

fn hl(model: &LieAlgebraModel, omega: &KForm<Rational>, degree: usize) -> CmdResult {
    let res = hard_lefschetz(model, omega, degree)?;
    let source = cohomology(model, degree);
    let target = cohomology(model, 2 * model.n() - degree);
    let mut r = Report::new("hl");
    r.put("model", json!(model.name()));
    r.put_form("omega", omega);
    r.put("degree", json!(degree));
    r.put("isomorphism", json!(res.isomorphism));
    r.put("rank", json!(res.rank));
    r.put("betti_source", json!(res.betti_source));
    r.put("betti_target", json!(res.betti_target));
    r.put_forms("source_basis", source.representatives());
    r.put_forms("target_basis", target.representatives());
    r.put("matrix", matrix_value(&res.matrix));
    r.put_forms("kernel_classes", &res.kernel_classes);
    Ok((code(res.isomorphism), r))
}

fn star(model: &LieAlgebraModel, almost_kahler: Option<(KForm<Rational>, AlmostComplexStructure)>, degree: usize, form: Option<KForm<Rational>>) -> CmdResult {
    let (metric, vol, source) = match &almost_kahler {
        Some((omega, j)) => {
            let compat = is_compatible(j, omega)?;
            let metric = compat.metric.ok_or_else(|| Failure::input("J is not compatible with ω"))?;
            (metric, symplectic_volume(omega)?, "induced")
        }
        None => (Metric::identity(model.dim()), VolumeForm::standard(model.dim()), "identity"),
    };
    let degree = form.as_ref().map_or(degree, KForm::degree);
    if degree > model.dim() {
        return Err(Failure::input(format!("degree {degree} exceeds dimension {}", model.dim())));
    }
    let op = hodge_star(&metric, &vol, degree)?;
    let mut r = Report::new("star");
    r.put("model", json!(model.name()));
    r.put("metric", json!(source));
    r.put("gram", matrix_value(metric.matrix()));
    r.put_form("volume", &vol.to_form());
    r.put("degree", json!(degree));
    r.put("matrix", matrix_value(op.matrix()));
    if let Some(f) = &form {
        r.put_form("form", f);
        r.put_form("star", &op.apply(f)?);
    }
    Ok((0, r))
}

fn harmonic_space(model: &LieAlgebraModel, op: HarmonicTag, omega: Option<KForm<Rational>>, j: Option<AlmostComplexStructure>, degree: usize) -> CmdResult {
    if degree > model.dim() {
        return Err(Failure::input(format!("degree {degree} exceeds dimension {}", model.dim())));
    }
    let metric = match (&omega, &j) {
        (Some(o), Some(j)) => is_compatible(j, o)?.metric.ok_or_else(|| Failure::input("J is not compatible with ω"))?,
        (Some(_), None) => return Err(Failure::input("--omega needs --j to induce a metric")),
        _ => Metric::identity(model.dim()),
    };
    let grams = metric.grams();
    let mut r = Report::new("harmonics");
    r.put("model", json!(model.name()));
    r.put("op", json!(op.to_string()));
    r.put("degree", json!(degree));
    r.put("gram", matrix_value(metric.matrix()));
    match op {
        HarmonicTag::D => {
            let h = harmonics(op, model.d_family(), &grams, degree)?;
            r.put("dim", json!(h.dim()));
            r.put_forms("basis", &h.basis_forms(model.dim()));
        }
        _ => {
            let j = j.ok_or_else(|| Failure::input(format!("--op {op} needs --j")))?;
            let family = match op {
                HarmonicTag::Dc => acs::dc_family(model, &j).to_gaussian(),
                _ => {
                    let dec = acs::decompose_d(model, &j)?;
                    match op {
                        HarmonicTag::Dbar => dec.dbar,
                        HarmonicTag::Del => dec.del,
                        HarmonicTag::Mu => dec.mu,
                        _ => dec.mubar,
                    }
                }
            };
            let h = harmonics::<GaussianRational>(op, &family, &grams, degree)?;
            r.put("dim", json!(h.dim()));
            r.put_forms("basis", &h.basis_forms(model.dim()));
        }
    }
    Ok((0, r))
}

fn check_symplectic(model: &LieAlgebraModel, omega: &KForm<Rational>) -> CmdResult {
    let closed = model.d(omega)?.is_zero();
    let top = omega.power(model.n())?.top_coefficient();
    let ok = is_symplectic(model, omega);
    let mut r = Report::new("check-symplectic");
    r.put("model", json!(model.name()));
    r.put_form("omega", omega);
    r.put("closed", json!(closed));
    r.put("top_power_coefficient", rational(&top));
    r.put("symplectic", json!(ok));
    Ok((code(ok), r))
}

fn check_lcs(model: &LieAlgebraModel, eta: &KForm<Rational>, theta: Option<KForm<Rational>>) -> CmdResult {
    let mut r = Report::new("check-lcs");
    r.put("model", json!(model.name()));
    r.put_form("eta", eta);
    let theta = match theta {
        Some(t) => t,
        None => match lee_form_from_eta(model, eta)? {
            LeeForm::Solution(t) => {
                r.put("theta_solved", json!(true));
                t
            }
            LeeForm::NoSolution { residual } => {
                r.put("theta_solved", json!(false));
                r.put_form("residual", &residual);
                r.put("lcs", json!(false));
                return Ok((1, r));
            }
        },
    };
    let pair = LcsPair::new(eta.clone(), theta.clone());
    let ok = is_lcs(model, &pair);
    r.put_form("theta", &theta);
    r.put_form("d_eta", &model.d(eta)?);
    r.put_form("theta_wedge_eta", &theta.wedge(eta)?);
    r.put("theta_closed", json!(model.d(&theta)?.is_zero()));
    r.put("lcs", json!(ok));
    if ok {
        r.put("gcs", json!(is_gcs(model, &pair)?));
    }
    Ok((code(ok), r))
}

fn lee(model: &LieAlgebraModel, theta: &KForm<Rational>) -> CmdResult {
    let class = lee_class(model, theta)?;
    let zero = class.iter().all(|c| c == &Rational::from_integer(0.into()));
    let mut r = Report::new("lee-class");
    r.put("model", json!(model.name()));
    r.put_form("theta", theta);
    r.put_forms("basis", cohomology(model, 1).representatives());
    r.put("class", rationals(&class));
    r.put("gcs", json!(zero));
    Ok((code(zero), r))
}

fn lemma(model: &LieAlgebraModel, omega: &KForm<Rational>, j: &AlmostComplexStructure) -> CmdResult {
    let mut r = Report::new("lemma-report");
    r.put("model", json!(model.name()));
    r.put_form("omega", omega);
    r.put("j", matrix_value(j.matrix()));
    let rep = match lemma_report(model, omega, j) {
        Ok(rep) => rep,
        Err(Error::NotAlmostKahler(why)) => {
            r.put("almost_kahler", json!(false));
            r.put("reason", json!(why));
            return Ok((1, r));
        }
        Err(e) => return Err(e.into()),
    };
    r.put("almost_kahler", json!(true));
    r.put("betti", json!(rep.betti));
    let conditions = json!({
        "hard_lefschetz": rep.hard_lefschetz,
        "d_harmonic_is_dc_harmonic": rep.d_harmonic_is_dc_harmonic,
        "d_harmonic_splits_by_type": rep.d_harmonic_splits_by_type,
        "d_harmonic_is_dbar_mu_harmonic": rep.d_harmonic_is_dbar_mu_harmonic,
    });
    r.put("conditions", conditions);
    r.put("conditions_agree", json!(rep.conditions_agree));
    let checks = json!({
        "intersection_identity": rep.intersection_identity,
        "containment_chain": rep.containment_chain,
        "lefschetz_injective_on_dbar_mu": rep.lefschetz_injective_on_dbar_mu,
        "weil_identity": rep.weil_identity,
        "almost_kahler_identity": rep.almost_kahler_identity,
        "j_orthogonal": rep.j_orthogonal,
        "projectors_complete": rep.projectors_complete,
        "decomposition_sums_to_d": rep.decomposition_sums_to_d,
        "conjugation_symmetry": rep.conjugation_symmetry,
        "dc_two_ways_agree": rep.dc_two_ways_agree,
    });
    let checks_ok = checks.as_object().expect("object").values().all(|v| v == &json!(true));
    r.put("checks", checks);
    r.put("harmonic_dims", serde_json::to_value(&rep.harmonic_dims).expect("serializable"));
    Ok((code(rep.conditions_agree && checks_ok), r))
}

fn theorem(model: &LieAlgebraModel, omega: &KForm<Rational>, pair: &LcsPair, j: &AlmostComplexStructure) -> CmdResult {
    let rep = theorem1_check(model, omega, pair, j);
    let mut r = Report::new("theorem1");
    r.put("model", json!(model.name()));
    r.put_form("omega", omega);
    r.put_form("eta", &pair.eta);
    r.put_form("theta", &pair.theta);
    r.put("j", matrix_value(j.matrix()));
    let mut hyps = serde_json::Map::new();
    for (h, ok) in &rep.hypotheses {
        hyps.insert(h.to_string(), json!(ok));
    }
    r.put("hypotheses", Value::Object(hyps));
    if let Some(ids) = &rep.identities {
        r.put(
            "identities",
            json!({
                "theta_harmonic": ids.theta_harmonic,
                "dc_theta_zero": ids.dc_theta_zero,
                "dc_eta": ids.dc_eta,
                "ddc_eta_power": ids.ddc_eta_power,
                "ddc_eta_power_vanishes": ids.ddc_eta_power_vanishes,
            }),
        );
    }
    r.put("wedge_coefficient", rep.wedge_coefficient.as_ref().map_or(Value::Null, rational));
    r.put("positivity", rep.positivity.as_ref().map_or(Value::Null, rational));
    r.put("theta_is_zero", json!(rep.theta_is_zero));
    r.put("verdict", json!(rep.verdict.to_string()));
    Ok((code(rep.verdict == Verdict::ThetaZero), r))
}

fn canonical(omega: &KForm<Rational>, metric: &Metric) -> CmdResult {
    let c = match canonical_compatible_j(omega, metric) {
        Ok(c) => c,
        Err(Error::Convergence(res)) => {
            let mut r = Report::new("canonical-j");
            r.put("converged", json!(false));
            r.put("residual", float(res));
            return Ok((1, r));
        }
        Err(e) => return Err(e.into()),
    };
    let mut r = Report::new("canonical-j");
    r.put_form("omega", omega);
    r.put("converged", json!(true));
    r.put("j", report::float_matrix(&c.float));
    r.put("square_residual", float(c.square_residual));
    r.put("equivariance_residual", float(c.equivariance_residual));
    r.put("min_metric_eigenvalue", float(c.min_metric_eigenvalue));
    r.put("exact", c.exact.as_ref().map_or(Value::Null, |j| matrix_value(j.matrix())));
    Ok((0, r))
}

fn shared_j(model: &LieAlgebraModel, omega: &KForm<Rational>, eta: &KForm<Rational>, cfg: &SearchConfig) -> CmdResult {
    let out = find_shared_j(model, omega, eta, cfg)?;
    let mut r = Report::new("find-shared-j");
    r.put("model", json!(model.name()));
    r.put_form("omega", omega);
    r.put_form("eta", eta);
    r.put("restarts", json!(cfg.restarts));
    r.put("seed", json!(cfg.seed));
    let residuals = |res: &lcs_core::jsearch::Residuals| {
        json!({
            "square": float(res.square),
            "equivariance_omega": float(res.equivariance[0]),
            "equivariance_eta": float(res.equivariance[1]),
            "min_eigenvalue_omega": float(res.min_eigenvalue[0]),
            "min_eigenvalue_eta": float(res.min_eigenvalue[1]),
        })
    };
    let found = out.is_found();
    match &out.status {
        SearchStatus::Found { j, residuals: res, restart, exact } => {
            r.put("status", json!("Found"));
            r.put("restart", json!(restart));
            r.put("j", report::float_matrix(j));
            r.put("residuals", residuals(res));
            r.put("exact", exact.as_ref().map_or(Value::Null, |j| matrix_value(j.matrix())));
        }
        SearchStatus::NotFound { best_objective, best_j, best_residuals } => {
            r.put("status", json!("NotFound"));
            r.put("best_objective", float(*best_objective));
            r.put("best_j", report::float_matrix(best_j));
            r.put("best_residuals", residuals(best_residuals));
        }
    }
    let converged = out.trace.iter().filter(|t| t.residuals.algebraic() <= cfg.tol_residual).count();
    r.put("restarts_algebraically_converged", json!(converged));
    Ok((code(found), r))
}

fn survey(model: &LieAlgebraModel, samples: usize, seed: u64) -> CmdResult {
    let s = hl_survey(model, samples, seed)?;
    let mut r = Report::new("survey-hl");
    r.put("model", json!(model.name()));
    r.put("seed", json!(seed));
    r.put("samples", json!(s.samples));
    r.put("hl_true", json!(s.hl_true));
    r.put("fraction", float(s.fraction));
    r.put("rejected", json!(s.rejected));
    r.put("first_counterexample", s.first_counterexample.as_ref().map_or(Value::Null, |f| json!(f)));
    Ok((code(s.hl_true == s.samples), r))
}

fn list_catalog() -> CmdResult {
    let mut r = Report::new("catalog");
    let mut models = serde_json::Map::new();
    for name in catalog::MODELS {
        let m = catalog::model(name).expect("catalog model");
        models.insert(name.to_string(), json!({ "dim": m.dim(), "betti": betti_numbers(&m), "unimodular": m.is_unimodular() }));
    }
    r.put("models", Value::Object(models));
    let mut forms = serde_json::Map::new();
    for name in catalog::FORMS {
        let f = catalog::form(name).expect("catalog form");
        forms.insert(name.to_string(), json!({ "form": f.to_string(), "note": catalog::form_description(name) }));
    }
    r.put("forms", Value::Object(forms));
    let mut structures = serde_json::Map::new();
    for name in catalog::STRUCTURES {
        let j = catalog::structure(name).expect("catalog structure");
        structures.insert(name.to_string(), matrix_value(j.matrix()));
    }
    r.put("structures", Value::Object(structures));
    Ok((0, r))
}
