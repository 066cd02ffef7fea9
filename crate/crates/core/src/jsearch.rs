//! Numerical search for an almost complex structure compatible with two
//! nondegenerate 2-forms at once.
//!
//! The search minimizes
//! `‖A² + I‖² + ‖AᵀE₁A − E₁‖² + ‖AᵀE₂A − E₂‖² + Σ hinge(λ_i(sym E₁A)) + Σ hinge(λ_i(sym E₂A))`
//! over all square matrices by damped Gauss–Newton (Levenberg–Marquardt) with
//! the analytic Jacobian, starting from random conjugates `P J₀ P⁻¹`.
//! A result is reported as found only after the float residuals pass and, if
//! the matrix rationalizes, after exact verification.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::acs::{is_compatible, is_nondegenerate, rationalize_matrix, AlmostComplexStructure};
use crate::algebra::{KForm, LieAlgebraModel};
use crate::error::{Error, Result};
use crate::scalar::{to_f64, Rational};

/// Margin the hinge terms push metric eigenvalues above.
const HINGE_MARGIN: f64 = 1e-2;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchConfig {
    pub restarts: usize,
    pub max_iters: usize,
    /// Initial Levenberg–Marquardt damping.
    pub initial_damping: f64,
    /// Damping is divided by this after an accepted step and multiplied by it
    /// after a rejected one.
    pub damping_factor: f64,
    pub tol_residual: f64,
    pub tol_posdef: f64,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            restarts: 100,
            max_iters: 200,
            initial_damping: 1e-3,
            damping_factor: 4.0,
            tol_residual: 1e-8,
            tol_posdef: 1e-6,
            seed: 0,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [self.initial_damping, self.tol_residual, self.tol_posdef];
        if positive.iter().any(|&t| !(t > 0.0 && t.is_finite())) || self.damping_factor.partial_cmp(&1.0) != Some(std::cmp::Ordering::Greater) {
            return Err(Error::Invalid("tolerances and damping must be positive, damping factor > 1".into()));
        }
        if self.restarts == 0 {
            return Err(Error::Invalid("at least one restart is required".into()));
        }
        Ok(())
    }
}

/// Residuals of a candidate against both forms.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Residuals {
    /// `‖J² + I‖_F`.
    pub square: f64,
    /// `‖JᵀE₁J − E₁‖_F`, `‖JᵀE₂J − E₂‖_F`.
    pub equivariance: [f64; 2],
    /// Smallest eigenvalues of the induced metrics.
    pub min_eigenvalue: [f64; 2],
}

impl Residuals {
    /// Largest of the algebraic residuals.
    pub fn algebraic(&self) -> f64 {
        self.square.max(self.equivariance[0]).max(self.equivariance[1])
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RestartSummary {
    pub restart: usize,
    pub iterations: usize,
    /// Final value of the penalized objective.
    pub objective: f64,
    pub residuals: Residuals,
}

#[derive(Clone, Debug)]
pub enum SearchStatus {
    Found {
        j: DMatrix<f64>,
        residuals: Residuals,
        restart: usize,
        /// Exactly verified rational structure, when the entries rationalize.
        exact: Option<AlmostComplexStructure>,
    },
    NotFound {
        best_objective: f64,
        best_j: DMatrix<f64>,
        best_residuals: Residuals,
    },
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub trace: Vec<RestartSummary>,
}

impl SearchOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self.status, SearchStatus::Found { .. })
    }
}

fn skew_f64(tau: &KForm<Rational>) -> Result<DMatrix<f64>> {
    let e = tau.skew_matrix()?;
    Ok(DMatrix::from_fn(e.rows(), e.cols(), |i, j| to_f64(e.get(i, j))))
}

fn sym_eigen(e: &DMatrix<f64>, a: &DMatrix<f64>) -> SymmetricEigen<f64, nalgebra::Dyn> {
    let g = e * a;
    SymmetricEigen::new((&g + g.transpose()) * 0.5)
}

/// `(‖JᵀEJ − E‖_F, λ_min(sym(E·J)))` where `E` is the matrix of `τ`.
/// The second entry is the smallest eigenvalue of the bilinear form
/// `τ(·, J·)` on vectors.
pub fn compatibility_residual(j: &DMatrix<f64>, tau: &KForm<Rational>) -> Result<(f64, f64)> {
    let e = skew_f64(tau)?;
    if j.nrows() != e.nrows() || j.ncols() != e.ncols() {
        return Err(Error::DimensionMismatch("structure and form dimensions differ".into()));
    }
    let equivariance = (j.transpose() * &e * j - &e).norm();
    let min = sym_eigen(&e, j).eigenvalues.min();
    Ok((equivariance, min))
}

fn residuals(a: &DMatrix<f64>, e: &[DMatrix<f64>; 2]) -> Residuals {
    let m = a.nrows();
    let square = (a * a + DMatrix::identity(m, m)).norm();
    let eq = |e: &DMatrix<f64>| (a.transpose() * e * a - e).norm();
    Residuals {
        square,
        equivariance: [eq(&e[0]), eq(&e[1])],
        min_eigenvalue: [sym_eigen(&e[0], a).eigenvalues.min(), sym_eigen(&e[1], a).eigenvalues.min()],
    }
}

/// Residual vector and its Jacobian with respect to `vec(A)` (row-major).
fn residual_system(a: &DMatrix<f64>, e: &[DMatrix<f64>; 2]) -> (DVector<f64>, DMatrix<f64>) {
    let m = a.nrows();
    let nvar = m * m;
    let mut r = Vec::with_capacity(3 * nvar + 2 * m);
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(3 * nvar + 2 * m);
    let var = |k: usize, l: usize| k * m + l;

    let sq = a * a + DMatrix::identity(m, m);
    for i in 0..m {
        for j in 0..m {
            r.push(sq[(i, j)]);
            let mut row = vec![0.0; nvar];
            for l in 0..m {
                row[var(i, l)] += a[(l, j)];
            }
            for k in 0..m {
                row[var(k, j)] += a[(i, k)];
            }
            rows.push(row);
        }
    }
    for ek in e {
        let ea = ek * a;
        let ate = a.transpose() * ek;
        let inv = &ate * a - ek;
        for i in 0..m {
            for j in 0..m {
                r.push(inv[(i, j)]);
                let mut row = vec![0.0; nvar];
                for k in 0..m {
                    row[var(k, i)] += ea[(k, j)];
                    row[var(k, j)] += ate[(i, k)];
                }
                rows.push(row);
            }
        }
    }
    for ek in e {
        let eig = sym_eigen(ek, a);
        for (idx, &lambda) in eig.eigenvalues.iter().enumerate() {
            let gap = HINGE_MARGIN - lambda;
            let mut row = vec![0.0; nvar];
            if gap > 0.0 {
                let v = eig.eigenvectors.column(idx);
                let vte = v.transpose() * ek;
                for k in 0..m {
                    for l in 0..m {
                        row[var(k, l)] = -vte[k] * v[l];
                    }
                }
                r.push(gap);
            } else {
                r.push(0.0);
            }
            rows.push(row);
        }
    }
    let jac = DMatrix::from_fn(rows.len(), nvar, |i, j| rows[i][j]);
    (DVector::from_vec(r), jac)
}

fn vec_to_matrix(x: &DVector<f64>, m: usize) -> DMatrix<f64> {
    DMatrix::from_fn(m, m, |i, j| x[i * m + j])
}

fn standard_j(m: usize) -> DMatrix<f64> {
    let mut j = DMatrix::zeros(m, m);
    for b in 0..m / 2 {
        j[(2 * b + 1, 2 * b)] = 1.0;
        j[(2 * b, 2 * b + 1)] = -1.0;
    }
    j
}

fn initial_point(rng: &mut ChaCha8Rng, m: usize) -> DMatrix<f64> {
    let j0 = standard_j(m);
    loop {
        let p: DMatrix<f64> = DMatrix::from_fn(m, m, |_, _| rng.random_range(-1.0..=1.0));
        if p.determinant().abs() < 1e-3 {
            continue;
        }
        if let Some(inv) = p.clone().try_inverse() {
            return &p * j0 * inv;
        }
    }
}

struct RestartResult {
    summary: RestartSummary,
    j: DMatrix<f64>,
}

fn run_restart(index: usize, e: &[DMatrix<f64>; 2], cfg: &SearchConfig) -> RestartResult {
    let m = e[0].nrows();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index as u64);
    let mut a = initial_point(&mut rng, m);
    let (mut r, mut jac) = residual_system(&a, e);
    let mut cost = r.norm_squared();
    let mut damping = cfg.initial_damping;
    let mut iterations = 0;
    let target = (cfg.tol_residual * 1e-2).powi(2);
    while iterations < cfg.max_iters && cost > target {
        iterations += 1;
        let jt = jac.transpose();
        let jtj = &jt * &jac;
        let grad = &jt * &r;
        let mut accepted = false;
        while damping < 1e12 {
            let mut lhs = jtj.clone();
            for d in 0..lhs.nrows() {
                lhs[(d, d)] += damping * (1.0 + jtj[(d, d)]);
            }
            let Some(step) = lhs.cholesky().map(|c| c.solve(&grad)) else {
                damping *= cfg.damping_factor;
                continue;
            };
            let x: DVector<f64> = DVector::from_iterator(m * m, a.transpose().iter().copied()) - step;
            let candidate = vec_to_matrix(&x, m);
            let (r2, jac2) = residual_system(&candidate, e);
            let cost2 = r2.norm_squared();
            if cost2 < cost {
                a = candidate;
                r = r2;
                jac = jac2;
                cost = cost2;
                damping = (damping / cfg.damping_factor).max(1e-15);
                accepted = true;
                break;
            }
            damping *= cfg.damping_factor;
        }
        if !accepted {
            break;
        }
    }
    let residuals = residuals(&a, e);
    RestartResult { summary: RestartSummary { restart: index, iterations, objective: cost, residuals }, j: a }
}

fn passes(res: &Residuals, cfg: &SearchConfig) -> bool {
    res.algebraic() <= cfg.tol_residual && res.min_eigenvalue.iter().all(|&l| l >= cfg.tol_posdef)
}

/// Exact check of a rationalized candidate. `Some(true)` when it verifies,
/// `Some(false)` when it rationalizes but fails, `None` when it does not
/// rationalize.
fn exact_check(j: &DMatrix<f64>, omega: &KForm<Rational>, eta: &KForm<Rational>) -> Option<std::result::Result<AlmostComplexStructure, ()>> {
    let m = rationalize_matrix(j, 1e-9)?;
    let verified = AlmostComplexStructure::new(m).ok().filter(|js| {
        [omega, eta].iter().all(|tau| is_compatible(js, tau).map(|c| c.is_compatible()).unwrap_or(false))
    });
    Some(verified.ok_or(()))
}

/// Searches for `J` with `J² = −I` compatible with both `ω` and `η`.
///
/// `NotFound` is evidence only; it does not prove that no such `J` exists.
pub fn find_shared_j(model: &LieAlgebraModel, omega: &KForm<Rational>, eta: &KForm<Rational>, cfg: &SearchConfig) -> Result<SearchOutcome> {
    cfg.validate()?;
    for tau in [omega, eta] {
        if tau.dim() != model.dim() {
            return Err(Error::DimensionMismatch(format!("form on dimension {} for a {}-dimensional model", tau.dim(), model.dim())));
        }
        if !is_nondegenerate(tau)? {
            return Err(Error::Degenerate(tau.to_string()));
        }
    }
    let e = [skew_f64(omega)?, skew_f64(eta)?];
    let results: Vec<RestartResult> = (0..cfg.restarts).into_par_iter().map(|i| run_restart(i, &e, cfg)).collect();

    let mut found = None;
    for res in &results {
        if !passes(&res.summary.residuals, cfg) {
            continue;
        }
        let exact = match exact_check(&res.j, omega, eta) {
            Some(Ok(js)) => Some(js),
            Some(Err(())) => continue,
            None => None,
        };
        let better = match &found {
            None => true,
            Some((_, obj, _)) => res.summary.objective < *obj,
        };
        if better {
            found = Some((res, res.summary.objective, exact));
        }
    }
    let trace = results.iter().map(|r| r.summary.clone()).collect();
    let status = match found {
        Some((res, _, exact)) => SearchStatus::Found {
            j: res.j.clone(),
            residuals: res.summary.residuals.clone(),
            restart: res.summary.restart,
            exact,
        },
        None => {
            let best = results
                .iter()
                .min_by(|a, b| a.summary.objective.total_cmp(&b.summary.objective).then(a.summary.restart.cmp(&b.summary.restart)))
                .expect("at least one restart");
            SearchStatus::NotFound {
                best_objective: best.summary.objective,
                best_j: best.j.clone(),
                best_residuals: best.summary.residuals.clone(),
            }
        }
    };
    Ok(SearchOutcome { status, trace })
}
