#![allow(dead_code)]

use ext_vanishing::algebra::{group, BasisAlgebra, FDModule};
use ext_vanishing::exactmath::{DenseMatrix, Field, PrimeField};
use rand::Rng;

pub fn fp(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

/// Local algebras over prime fields used throughout the integration tests.
pub fn local_corpus() -> Vec<(&'static str, BasisAlgebra<PrimeField>)> {
    vec![
        ("k[x]/(x^2) F2", BasisAlgebra::truncated_polynomial(1, 2, fp(2)).unwrap()),
        ("k[x]/(x^3) F3", BasisAlgebra::truncated_polynomial(1, 3, fp(3)).unwrap()),
        ("k[x]/(x^4) F5", BasisAlgebra::truncated_polynomial(1, 4, fp(5)).unwrap()),
        ("k[x,y]/(x^2,y^2) F3", BasisAlgebra::truncated_polynomial(2, 2, fp(3)).unwrap()),
        ("exterior(2) F2", BasisAlgebra::exterior(2, fp(2)).unwrap()),
        ("exterior(3) F3", BasisAlgebra::exterior(3, fp(3)).unwrap()),
        ("qci(2,2,-1) F5", BasisAlgebra::quantum_complete_intersection(2, 2, 4, fp(5)).unwrap()),
        ("qci(2,3,2) F7", BasisAlgebra::quantum_complete_intersection(2, 3, 2, fp(7)).unwrap()),
        ("V4 F2", BasisAlgebra::group_algebra(&group::klein_four(), None, fp(2)).unwrap()),
        ("Z/4 F2", BasisAlgebra::group_algebra(&group::cyclic(4), None, fp(2)).unwrap()),
        ("D8 F2", BasisAlgebra::group_algebra(&group::dihedral(4), None, fp(2)).unwrap()),
        ("Z/3 x Z/3 F3", BasisAlgebra::group_algebra(&group::elementary_abelian(3, 2), None, fp(3)).unwrap()),
    ]
}

pub fn random_invertible<F: Field, R: Rng>(f: &F, n: usize, rng: &mut R) -> DenseMatrix<F> {
    loop {
        let entries = (0..n * n).map(|_| f.random(rng)).collect();
        let m = DenseMatrix::new(f.clone(), n, n, entries).unwrap();
        if m.inverse().is_some() {
            return m;
        }
    }
}

/// `k + A`, a module with a non-minimal cover by its obvious basis.
pub fn trivial_plus_regular<F: Field>(alg: &BasisAlgebra<F>) -> FDModule<F> {
    let f = alg.field();
    let aug = alg.augmentation().expect("augmented").to_vec();
    let d = alg.dim();
    let action = (0..d)
        .map(|i| {
            let mut m = DenseMatrix::zeros(f.clone(), d + 1, d + 1);
            m.set(0, 0, aug[i].clone());
            let l = alg.left_matrix(i);
            for r in 0..d {
                for c in 0..d {
                    m.set(1 + r, 1 + c, l.get(r, c).clone());
                }
            }
            m
        })
        .collect();
    FDModule::new(alg, d + 1, action).unwrap()
}
