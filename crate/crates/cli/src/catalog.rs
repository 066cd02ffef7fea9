//! Built-in models, forms and almost complex structures addressable as
//! `catalog:<name>`.

use lcs_core::acs::{transvection_conjugates, AlmostComplexStructure};
use lcs_core::algebra::{KForm, LieAlgebraModel};
use lcs_core::{models, Rational};

pub const MODELS: [&str; 3] = ["torus4", "kodaira_thurston", "paper_example"];

pub const FORMS: [&str; 4] = ["omega", "eta", "theta", "kt_omega"];

pub const STRUCTURES: [&str; 8] = ["j0", "j0_t1", "j0_t2", "j0_t3", "j_eta", "j_eta_t1", "j_eta_t2", "j_eta_t3"];

pub fn model(name: &str) -> Option<LieAlgebraModel> {
    match name {
        "torus4" => Some(models::torus()),
        "kodaira_thurston" => Some(models::kodaira_thurston()),
        "paper_example" => Some(models::paper_example()),
        _ => None,
    }
}

pub fn form(name: &str) -> Option<KForm<Rational>> {
    match name {
        "omega" => Some(models::omega_standard()),
        "eta" | "kt_omega" => Some(models::omega_14_23()),
        "theta" => Some(models::theta_minus_e3()),
        _ => None,
    }
}

pub fn form_description(name: &str) -> &'static str {
    match name {
        "omega" => "symplectic form on torus4 and paper_example",
        "eta" => "LCS form on paper_example with Lee form theta",
        "theta" => "Lee form of eta on paper_example",
        "kt_omega" => "symplectic form on kodaira_thurston",
        _ => "",
    }
}

/// `j0` is compatible with `omega`, `j_eta` with `eta`; the `_t` variants are
/// conjugates by symplectic transvections of the respective form.
pub fn structure(name: &str) -> Option<AlmostComplexStructure> {
    let (base, index) = match name.rsplit_once("_t") {
        Some((base, idx)) => (base, idx.parse::<usize>().ok().filter(|i| (1..=3).contains(i))?),
        None => (name, 0),
    };
    let (j, tau) = match base {
        "j0" => (models::j_standard(), models::omega_standard()),
        "j_eta" => (models::j_14_23(), models::omega_14_23()),
        _ => return None,
    };
    let j = AlmostComplexStructure::new(j).ok()?;
    if index == 0 {
        return Some(j);
    }
    transvection_conjugates(&j, &tau, 3).ok()?.into_iter().nth(index - 1)
}
