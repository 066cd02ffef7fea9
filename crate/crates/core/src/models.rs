//! Built-in Lie-algebra models and the forms and structures attached to them.

use crate::algebra::{KForm, LieAlgebraModel};
use crate::linalg::Matrix;
use crate::scalar::{rat, Rational};

fn e(dim: usize, idx: &[usize]) -> KForm<Rational> {
    KForm::monomial(dim, idx).expect("index in range")
}

fn sum(forms: &[KForm<Rational>]) -> KForm<Rational> {
    forms[1..].iter().fold(forms[0].clone(), |acc, f| acc.add(f).expect("same degree"))
}

/// Abelian 4-dimensional algebra: the torus `T⁴`.
pub fn torus() -> LieAlgebraModel {
    LieAlgebraModel::from_differentials("torus4", vec![KForm::zero(4, 2); 4]).expect("valid")
}

/// Kodaira–Thurston nilmanifold: `de4 = e12`.
pub fn kodaira_thurston() -> LieAlgebraModel {
    let mut d = vec![KForm::zero(4, 2); 4];
    d[3] = e(4, &[1, 2]);
    LieAlgebraModel::from_differentials("kodaira_thurston", d).expect("valid")
}

/// `de1 = e13`, `de2 = −e23`, `de3 = de4 = 0`. Completely solvable, not
/// nilpotent, unimodular.
pub fn paper_example() -> LieAlgebraModel {
    let mut d = vec![KForm::zero(4, 2); 4];
    d[0] = e(4, &[1, 3]);
    d[1] = e(4, &[2, 3]).neg();
    LieAlgebraModel::from_differentials("paper_example", d).expect("valid")
}

/// Two-dimensional non-unimodular algebra `de2 = e12` (the `ax + b` group).
pub fn affine2() -> LieAlgebraModel {
    LieAlgebraModel::from_differentials("affine2", vec![KForm::zero(2, 2), e(2, &[1, 2])]).expect("valid")
}

/// `e12 + e34`.
pub fn omega_standard() -> KForm<Rational> {
    sum(&[e(4, &[1, 2]), e(4, &[3, 4])])
}

/// `e14 + e23`.
pub fn omega_14_23() -> KForm<Rational> {
    sum(&[e(4, &[1, 4]), e(4, &[2, 3])])
}

/// `−e3`.
pub fn theta_minus_e3() -> KForm<Rational> {
    e(4, &[3]).neg()
}

/// Complex structure on the Lie algebra from pairs `(a, b)` with
/// `J e_a = e_b`, `J e_b = −e_a` (1-based frame indices).
pub fn pairing_structure(dim: usize, pairs: &[(usize, usize)]) -> Matrix<Rational> {
    let mut m = Matrix::zeros(dim, dim);
    for &(a, b) in pairs {
        m.set(b - 1, a - 1, rat(1));
        m.set(a - 1, b - 1, rat(-1));
    }
    m
}

/// `J₀`: `e1 ↦ e2`, `e3 ↦ e4`.
pub fn j_standard() -> Matrix<Rational> {
    pairing_structure(4, &[(1, 2), (3, 4)])
}

/// `J_η`: `e1 ↦ e4`, `e2 ↦ e3`; compatible with `e14 + e23`.
pub fn j_14_23() -> Matrix<Rational> {
    pairing_structure(4, &[(1, 4), (2, 3)])
}
