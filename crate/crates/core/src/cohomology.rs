//! Chevalley–Eilenberg cohomology and Lefschetz maps.

use crate::algebra::{GradedOperator, KForm, LieAlgebraModel};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::scalar::{Rational, Scalar};

pub fn kernel<S: Scalar>(op: &GradedOperator<S>) -> Subspace<S> {
    op.matrix().kernel()
}

pub fn image<S: Scalar>(op: &GradedOperator<S>) -> Subspace<S> {
    op.matrix().image()
}

/// `H^k = ker d_k / im d_{k-1}` with canonical representatives.
#[derive(Clone, Debug)]
pub struct CohomologySpace {
    degree: usize,
    dim: usize,
    representatives: Vec<KForm<Rational>>,
    cocycles: Subspace<Rational>,
    coboundaries: Subspace<Rational>,
}

impl CohomologySpace {
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The Betti number `b_k`.
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    /// Closed forms whose classes form a basis. They are the vectors of the
    /// echelon basis of `ker d` independent modulo `im d`, taken in order.
    pub fn representatives(&self) -> &[KForm<Rational>] {
        &self.representatives
    }

    pub fn cocycles(&self) -> &Subspace<Rational> {
        &self.cocycles
    }

    pub fn coboundaries(&self) -> &Subspace<Rational> {
        &self.coboundaries
    }

    pub fn is_closed(&self, form: &KForm<Rational>) -> bool {
        form.degree() == self.degree && self.cocycles.contains(&form.to_coords())
    }

    pub fn is_exact(&self, form: &KForm<Rational>) -> bool {
        form.degree() == self.degree && self.coboundaries.contains(&form.to_coords())
    }

    /// Coordinates of `[form]` in the representative basis.
    pub fn class_of(&self, form: &KForm<Rational>) -> Result<Vec<Rational>> {
        if form.degree() != self.degree || form.dim() != self.dim {
            return Err(Error::WrongDegree { expected: self.degree, got: form.degree() });
        }
        if !self.is_closed(form) {
            return Err(Error::NotClosed(form.to_string()));
        }
        let mut cols: Vec<Vec<Rational>> = self.representatives.iter().map(KForm::to_coords).collect();
        cols.extend(self.coboundaries.basis().iter().cloned());
        let ambient = form.to_coords().len();
        let x = Matrix::from_columns(&cols, ambient).solve(&form.to_coords()).expect("closed forms decompose");
        Ok(x[..self.dim()].to_vec())
    }

    /// The form `Σ c_i r_i` for class coordinates `c`.
    pub fn form_of(&self, class: &[Rational]) -> KForm<Rational> {
        self.representatives
            .iter()
            .zip(class)
            .fold(KForm::zero(self.dim, self.degree), |acc, (r, c)| acc.add(&r.scale(c)).expect("same degree"))
    }
}

pub fn cohomology(model: &LieAlgebraModel, k: usize) -> CohomologySpace {
    let dim = model.dim();
    let cocycles = kernel(model.d_operator(k));
    let coboundaries = if k == 0 { Subspace::zero(1) } else { image(model.d_operator(k - 1)) };
    let representatives = coboundaries
        .complement_in(&cocycles)
        .iter()
        .map(|v| KForm::from_coords(dim, k, v))
        .collect();
    CohomologySpace { degree: k, dim, representatives, cocycles, coboundaries }
}

/// `(b_0, …, b_dim)`.
pub fn betti_numbers(model: &LieAlgebraModel) -> Vec<usize> {
    (0..=model.dim()).map(|k| cohomology(model, k).dim()).collect()
}

pub fn euler_characteristic(betti: &[usize]) -> i64 {
    betti.iter().enumerate().map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
}

/// Matrix of `[L^{n-k}] : H^k → H^{2n-k}` in the representative bases.
#[derive(Clone, Debug)]
pub struct LefschetzMap {
    pub degree: usize,
    pub source: CohomologySpace,
    pub target: CohomologySpace,
    /// `b_{2n-k} × b_k`; column `j` is the class of `ω^{n-k} ∧ r_j`.
    pub matrix: Matrix<Rational>,
}

pub fn lefschetz_map(model: &LieAlgebraModel, omega: &KForm<Rational>, k: usize) -> Result<LefschetzMap> {
    if omega.degree() != 2 {
        return Err(Error::WrongDegree { expected: 2, got: omega.degree() });
    }
    if omega.dim() != model.dim() {
        return Err(Error::DimensionMismatch(format!("form on dimension {} for a {}-dimensional model", omega.dim(), model.dim())));
    }
    if !model.d(omega)?.is_zero() {
        return Err(Error::NotClosed(omega.to_string()));
    }
    let n = model.n();
    if k > n {
        return Err(Error::DegreeOutOfRange(k));
    }
    let source = cohomology(model, k);
    let target = cohomology(model, 2 * n - k);
    let power = omega.power(n - k)?;
    let columns = source
        .representatives()
        .iter()
        .map(|r| target.class_of(&power.wedge(r)?))
        .collect::<Result<Vec<_>>>()?;
    let matrix = Matrix::from_columns(&columns, target.dim());
    Ok(LefschetzMap { degree: k, source, target, matrix })
}

#[derive(Clone, Debug)]
pub struct HardLefschetz {
    pub degree: usize,
    pub isomorphism: bool,
    pub rank: usize,
    pub betti_source: usize,
    pub betti_target: usize,
    pub matrix: Matrix<Rational>,
    /// Closed forms spanning the classes killed by `L^{n-k}`.
    pub kernel_classes: Vec<KForm<Rational>>,
}

/// Whether `[L^{n-k}] : H^k → H^{2n-k}` is an isomorphism.
pub fn hard_lefschetz(model: &LieAlgebraModel, omega: &KForm<Rational>, k: usize) -> Result<HardLefschetz> {
    let map = lefschetz_map(model, omega, k)?;
    let rank = map.matrix.rank();
    let (bs, bt) = (map.source.dim(), map.target.dim());
    let kernel_classes = map.matrix.kernel_basis().iter().map(|c| map.source.form_of(c)).collect();
    Ok(HardLefschetz {
        degree: k,
        isomorphism: bs == bt && rank == bs,
        rank,
        betti_source: bs,
        betti_target: bt,
        matrix: map.matrix,
        kernel_classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;
    use crate::scalar::rat;

    #[test]
    fn kernel_and_image_examples() {
        let t4 = models::torus();
        assert_eq!(kernel(t4.d_operator(1)).dim(), 4);
        assert!(image(t4.d_operator(1)).is_zero());
        let p = models::paper_example();
        let k = kernel(p.d_operator(1));
        assert_eq!(k, Subspace::span(4, vec![p.e(&[3]).unwrap().to_coords(), p.e(&[4]).unwrap().to_coords()]));
        let kt = models::kodaira_thurston();
        let im = image(kt.d_operator(2));
        assert_eq!(im, Subspace::span(4, vec![kt.e(&[1, 2, 3]).unwrap().to_coords()]));
    }

    #[test]
    fn betti_vectors() {
        assert_eq!(betti_numbers(&models::paper_example()), vec![1, 2, 2, 2, 1]);
        assert_eq!(betti_numbers(&models::kodaira_thurston()), vec![1, 3, 4, 3, 1]);
        assert_eq!(betti_numbers(&models::torus()), vec![1, 4, 6, 4, 1]);
        let kt = models::kodaira_thurston();
        let h1 = cohomology(&kt, 1);
        let reps: Vec<_> = [1, 2, 3].iter().map(|&i| kt.e(&[i]).unwrap()).collect();
        assert_eq!(h1.representatives(), &reps[..]);
    }

    #[test]
    fn paper_example_lefschetz() {
        let p = models::paper_example();
        let map = lefschetz_map(&p, &models::omega_standard(), 1).unwrap();
        assert_eq!(map.target.representatives(), &[p.e(&[1, 2, 3]).unwrap(), p.e(&[1, 2, 4]).unwrap()]);
        assert_eq!(map.matrix, Matrix::identity(2));
        let hl = hard_lefschetz(&p, &models::omega_standard(), 1).unwrap();
        assert!(hl.isomorphism);
        assert_eq!(hl.rank, 2);
        assert!(hl.kernel_classes.is_empty());
    }

    #[test]
    fn kodaira_thurston_fails_hard_lefschetz() {
        let kt = models::kodaira_thurston();
        let hl = hard_lefschetz(&kt, &models::omega_14_23(), 1).unwrap();
        assert!(!hl.isomorphism);
        assert_eq!(hl.rank, 2);
        assert_eq!(hl.kernel_classes, vec![kt.e(&[1]).unwrap()]);
        let h3 = cohomology(&kt, 3);
        assert!(h3.is_exact(&models::omega_14_23().wedge(&kt.e(&[1]).unwrap()).unwrap()));
    }

    #[test]
    fn torus_top_power() {
        let t = models::torus();
        let map = lefschetz_map(&t, &models::omega_standard(), 0).unwrap();
        assert_eq!(map.matrix, Matrix::from_rows(vec![vec![rat(2)]], 1));
        assert!(hard_lefschetz(&t, &models::omega_standard(), 1).unwrap().isomorphism);
    }

    #[test]
    fn lefschetz_rejects_bad_input() {
        let p = models::paper_example();
        let not_closed = p.e(&[1, 4]).unwrap();
        assert!(matches!(lefschetz_map(&p, &not_closed, 1), Err(Error::NotClosed(_))));
        assert!(matches!(lefschetz_map(&p, &p.e(&[1]).unwrap(), 1), Err(Error::WrongDegree { .. })));
        assert!(matches!(lefschetz_map(&p, &models::omega_standard(), 3), Err(Error::DegreeOutOfRange(3))));
    }

    #[test]
    fn class_of_rejects_open_forms() {
        let p = models::paper_example();
        let h1 = cohomology(&p, 1);
        assert_eq!(h1.class_of(&models::theta_minus_e3()).unwrap(), vec![rat(-1), rat(0)]);
        assert!(matches!(h1.class_of(&p.e(&[1]).unwrap()), Err(Error::NotClosed(_))));
    }
}
