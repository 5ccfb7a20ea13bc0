//! Maps between free modules `A^r`, stored by generator images.
//!
//! An element of `A^r` is a field vector of length `r * dim A`, block `t`
//! holding the coefficient of the `t`-th generator. A map is A-linear, so it
//! is determined by the images of the generators; entry `(t, u)` of its
//! algebra-valued matrix is block `u` of the image of generator `t`.

use crate::exactmath::{DenseMatrix, Field};

use super::basis::BasisAlgebra;
use super::module::FDModule;

#[derive(Clone, Debug, PartialEq)]
pub struct FreeMap<F: Field> {
    source_rank: usize,
    target_rank: usize,
    images: Vec<Vec<F::Elem>>,
}

impl<F: Field> FreeMap<F> {
    pub fn new(alg: &BasisAlgebra<F>, source_rank: usize, target_rank: usize, images: Vec<Vec<F::Elem>>) -> Self {
        assert_eq!(images.len(), source_rank, "one image per generator");
        assert!(
            images.iter().all(|v| v.len() == target_rank * alg.dim()),
            "images live in the target free module"
        );
        FreeMap {
            source_rank,
            target_rank,
            images,
        }
    }

    pub fn zero(alg: &BasisAlgebra<F>, source_rank: usize, target_rank: usize) -> Self {
        let z = vec![alg.field().zero(); target_rank * alg.dim()];
        FreeMap {
            source_rank,
            target_rank,
            images: vec![z; source_rank],
        }
    }

    pub fn identity(alg: &BasisAlgebra<F>, rank: usize) -> Self {
        let d = alg.dim();
        let images = (0..rank)
            .map(|t| {
                let mut v = vec![alg.field().zero(); rank * d];
                v[t * d + alg.unit_index()] = alg.field().one();
                v
            })
            .collect();
        FreeMap {
            source_rank: rank,
            target_rank: rank,
            images,
        }
    }

    pub fn source_rank(&self) -> usize {
        self.source_rank
    }

    pub fn target_rank(&self) -> usize {
        self.target_rank
    }

    pub fn images(&self) -> &[Vec<F::Elem>] {
        &self.images
    }

    /// Algebra element at `(t, u)`.
    pub fn entry<'a>(&'a self, alg: &BasisAlgebra<F>, t: usize, u: usize) -> &'a [F::Elem] {
        let d = alg.dim();
        &self.images[t][u * d..(u + 1) * d]
    }

    pub fn is_zero(&self, alg: &BasisAlgebra<F>) -> bool {
        let f = alg.field();
        self.images.iter().flatten().all(|x| f.is_zero(x))
    }

    /// Image of a free-module element.
    pub fn apply(&self, alg: &BasisAlgebra<F>, x: &[F::Elem]) -> Vec<F::Elem> {
        let f = alg.field();
        let d = alg.dim();
        let mut out = vec![f.zero(); self.target_rank * d];
        for t in 0..self.source_rank {
            let coeff = &x[t * d..(t + 1) * d];
            if coeff.iter().all(|c| f.is_zero(c)) {
                continue;
            }
            let part = left_mul_free(alg, coeff, &self.images[t]);
            for (o, v) in out.iter_mut().zip(&part) {
                *o = f.add(o, v);
            }
        }
        out
    }

    /// `other . self`
    pub fn then(&self, alg: &BasisAlgebra<F>, other: &FreeMap<F>) -> FreeMap<F> {
        assert_eq!(self.target_rank, other.source_rank, "maps are not composable");
        FreeMap {
            source_rank: self.source_rank,
            target_rank: other.target_rank,
            images: self.images.iter().map(|v| other.apply(alg, v)).collect(),
        }
    }

    /// Expanded matrix over the ground field: column `t * dim + i` is the
    /// image of `b_i e_t`.
    pub fn field_matrix(&self, alg: &BasisAlgebra<F>) -> DenseMatrix<F> {
        let d = alg.dim();
        let f = alg.field();
        let mut m = DenseMatrix::zeros(f.clone(), self.target_rank * d, self.source_rank * d);
        for (t, img) in self.images.iter().enumerate() {
            for i in 0..d {
                let col = left_mul_free(alg, &alg.basis_element(i), img);
                for (r, v) in col.into_iter().enumerate() {
                    if !f.is_zero(&v) {
                        m.set(r, t * d + i, v);
                    }
                }
            }
        }
        m
    }

    /// Whether every algebra entry lies in the radical.
    pub fn is_minimal(&self, alg: &BasisAlgebra<F>) -> bool {
        (0..self.source_rank).all(|t| (0..self.target_rank).all(|u| alg.radical().contains(self.entry(alg, t, u))))
    }
}

/// A map from a free module to a module `M`, given by generator images.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleMap<F: Field> {
    images: Vec<Vec<F::Elem>>,
}

impl<F: Field> ModuleMap<F> {
    pub fn new(images: Vec<Vec<F::Elem>>) -> Self {
        ModuleMap { images }
    }

    pub fn images(&self) -> &[Vec<F::Elem>] {
        &self.images
    }

    pub fn apply(&self, alg: &BasisAlgebra<F>, module: &FDModule<F>, x: &[F::Elem]) -> Vec<F::Elem> {
        let f = alg.field();
        let d = alg.dim();
        let mut out = vec![f.zero(); module.dim()];
        for (t, m) in self.images.iter().enumerate() {
            let part = module.act_vector(alg, &x[t * d..(t + 1) * d], m);
            for (o, v) in out.iter_mut().zip(&part) {
                *o = f.add(o, v);
            }
        }
        out
    }

    pub fn field_matrix(&self, alg: &BasisAlgebra<F>, module: &FDModule<F>) -> DenseMatrix<F> {
        let d = alg.dim();
        let columns: Vec<Vec<F::Elem>> = self
            .images
            .iter()
            .flat_map(|m| (0..d).map(move |i| module.action(i).mul_vec(m)))
            .collect();
        DenseMatrix::from_columns(alg.field().clone(), module.dim(), &columns)
    }
}

/// `a * v` for an algebra element `a` and `v` in a free module.
pub(crate) fn left_mul_free<F: Field>(alg: &BasisAlgebra<F>, a: &[F::Elem], v: &[F::Elem]) -> Vec<F::Elem> {
    let d = alg.dim();
    v.chunks(d).flat_map(|block| alg.mul(a, block)).collect()
}
