use crate::exactmath::{DenseMatrix, Field, LinearSolver};

use super::basis::BasisAlgebra;
use super::resolution::minimal_resolution;
use super::{AlgebraError, Limits};

/// A finite-dimensional left module: one action matrix per basis element,
/// acting on column vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct FDModule<F: Field> {
    dim: usize,
    action: Vec<DenseMatrix<F>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModuleKind {
    Trivial,
    Regular,
    Syzygy(usize),
}

impl<F: Field> FDModule<F> {
    /// Validates the unit and the structure-constant relations.
    pub fn new(alg: &BasisAlgebra<F>, dim: usize, action: Vec<DenseMatrix<F>>) -> Result<Self, AlgebraError> {
        if action.len() != alg.dim() {
            return Err(AlgebraError::BadModule(format!(
                "{} action matrices for an algebra of dimension {}",
                action.len(),
                alg.dim()
            )));
        }
        if action.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(AlgebraError::BadModule("action matrices must be square of the module dimension".into()));
        }
        let module = FDModule { dim, action };
        module.check(alg)?;
        Ok(module)
    }

    fn check(&self, alg: &BasisAlgebra<F>) -> Result<(), AlgebraError> {
        let f = alg.field();
        if self.action[alg.unit_index()] != DenseMatrix::identity(f.clone(), self.dim) {
            return Err(AlgebraError::BadModule("unit does not act as the identity".into()));
        }
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let lhs = self.action[i].mul(&self.action[j]);
                let rhs = self.act_element(alg, alg.product(i, j));
                if lhs != rhs {
                    return Err(AlgebraError::BadModule(format!(
                        "action does not respect b_{i} * b_{j}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, i: usize) -> &DenseMatrix<F> {
        &self.action[i]
    }

    pub fn actions(&self) -> &[DenseMatrix<F>] {
        &self.action
    }

    /// Matrix of an arbitrary algebra element.
    pub fn act_element(&self, alg: &BasisAlgebra<F>, x: &[F::Elem]) -> DenseMatrix<F> {
        let f = alg.field();
        x.iter()
            .enumerate()
            .filter(|(_, c)| !f.is_zero(c))
            .fold(DenseMatrix::zeros(f.clone(), self.dim, self.dim), |acc, (i, c)| {
                acc.add(&self.action[i].scale(c))
            })
    }

    pub fn act_vector(&self, alg: &BasisAlgebra<F>, x: &[F::Elem], v: &[F::Elem]) -> Vec<F::Elem> {
        let f = alg.field();
        let mut out = vec![f.zero(); self.dim];
        for (i, c) in x.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            for (o, w) in out.iter_mut().zip(self.action[i].mul_vec(v)) {
                *o = f.mul_add(o, c, &w);
            }
        }
        out
    }

    /// The module with action `P^{-1} A_i P` for an invertible `P`.
    pub fn change_basis(&self, p: &DenseMatrix<F>) -> Result<Self, AlgebraError> {
        let inv = p
            .inverse()
            .ok_or_else(|| AlgebraError::InvalidParameters("change of basis is singular".into()))?;
        Ok(FDModule {
            dim: self.dim,
            action: self.action.iter().map(|a| inv.mul(a).mul(p)).collect(),
        })
    }

    /// The one-dimensional module on which `A` acts through its augmentation.
    pub fn trivial(alg: &BasisAlgebra<F>) -> Result<Self, AlgebraError> {
        let aug = alg.augmentation().ok_or(AlgebraError::NoAugmentation)?;
        let f = alg.field();
        let action = aug
            .iter()
            .map(|v| DenseMatrix::new(f.clone(), 1, 1, vec![v.clone()]).expect("1x1"))
            .collect();
        Ok(FDModule { dim: 1, action })
    }

    /// `A` acting on itself by left multiplication.
    pub fn regular(alg: &BasisAlgebra<F>) -> Self {
        FDModule {
            dim: alg.dim(),
            action: (0..alg.dim()).map(|i| alg.left_matrix(i).clone()).collect(),
        }
    }

    /// The submodule of a free module `A^rank` spanned by `basis`, which
    /// must be closed under the action.
    pub(crate) fn free_submodule(
        alg: &BasisAlgebra<F>,
        rank: usize,
        basis: &[Vec<F::Elem>],
    ) -> Result<Self, AlgebraError> {
        let f = alg.field();
        let ambient = rank * alg.dim();
        let span = DenseMatrix::from_columns(f.clone(), ambient, basis);
        let solver = LinearSolver::new(&span);
        let action = (0..alg.dim())
            .map(|i| {
                let cols = basis
                    .iter()
                    .map(|v| {
                        let image = super::free::left_mul_free(alg, &alg.basis_element(i), v);
                        solver
                            .solve(&image)
                            .ok_or_else(|| AlgebraError::Internal("subspace is not a submodule".into()))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(DenseMatrix::from_columns(f.clone(), basis.len(), &cols))
            })
            .collect::<Result<Vec<_>, AlgebraError>>()?;
        Ok(FDModule {
            dim: basis.len(),
            action,
        })
    }
}

/// Trivial, regular, or the `i`-th syzygy of the trivial module.
pub fn standard_module<F: Field>(alg: &BasisAlgebra<F>, kind: ModuleKind) -> Result<FDModule<F>, AlgebraError> {
    match kind {
        ModuleKind::Trivial => FDModule::trivial(alg),
        ModuleKind::Regular => Ok(FDModule::regular(alg)),
        ModuleKind::Syzygy(0) => Err(AlgebraError::InvalidParameters("syzygy index must be at least 1".into())),
        ModuleKind::Syzygy(i) => {
            let k = FDModule::trivial(alg)?;
            let res = minimal_resolution(alg, &k, i - 1, &Limits::default())?;
            let kernel = res.top_kernel();
            FDModule::free_submodule(alg, res.betti()[i - 1], kernel)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::group;
    use crate::exactmath::PrimeField;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    #[test]
    fn trivial_over_dual_numbers() {
        let a = BasisAlgebra::truncated_polynomial(1, 2, f2()).unwrap();
        let k = standard_module(&a, ModuleKind::Trivial).unwrap();
        assert_eq!(k.dim(), 1);
        assert_eq!(k.action(1).entries(), &[0]);
    }

    #[test]
    fn first_syzygies() {
        let a = BasisAlgebra::truncated_polynomial(1, 2, f2()).unwrap();
        assert_eq!(standard_module(&a, ModuleKind::Syzygy(1)).unwrap().dim(), 1);
        let kv = BasisAlgebra::group_algebra(&group::klein_four(), None, f2()).unwrap();
        let omega = standard_module(&kv, ModuleKind::Syzygy(1)).unwrap();
        assert_eq!(omega.dim(), 3);
        // Omega^2 k over kV4 has dimension 2 * 4 - 3 = 5
        assert_eq!(standard_module(&kv, ModuleKind::Syzygy(2)).unwrap().dim(), 5);
    }

    #[test]
    fn regular_module_is_valid() {
        let a = BasisAlgebra::exterior(2, PrimeField::new(3).unwrap()).unwrap();
        let reg = FDModule::regular(&a);
        FDModule::new(&a, reg.dim(), reg.actions().to_vec()).unwrap();
    }

    #[test]
    fn bad_action_is_rejected() {
        let a = BasisAlgebra::truncated_polynomial(1, 2, f2()).unwrap();
        let one = DenseMatrix::identity(f2(), 1);
        // x acting by 1 breaks x^2 = 0
        let err = FDModule::new(&a, 1, vec![one.clone(), one]).unwrap_err();
        assert!(matches!(err, AlgebraError::BadModule(_)));
    }

    #[test]
    fn no_augmentation_for_nonlocal_custom_algebras() {
        let (table, _) = group::symmetric(3);
        // group algebras always have the augmentation
        let a = BasisAlgebra::group_algebra(&table, None, PrimeField::new(3).unwrap()).unwrap();
        assert!(FDModule::trivial(&a).is_ok());
        // k x k is semisimple and not local, so no distinguished augmentation
        let f = f2();
        let products = vec![vec![1, 0], vec![0, 1], vec![0, 1], vec![0, 1]];
        let kk = BasisAlgebra::from_structure_constants(f, vec!["1".into(), "e".into()], products, 0).unwrap();
        assert_eq!(FDModule::trivial(&kk).unwrap_err(), AlgebraError::NoAugmentation);
    }
}
