use crate::exactmath::{DenseMatrix, Field, LinearSolver, Subspace};

use super::radical;
use super::{AlgebraError, DEFAULT_CONSTRUCTOR_CAP};

/// Where an algebra came from; decides which central operators apply.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraKind {
    /// `k[x_1..x_c]/(x_i^a)`
    TruncatedPolynomial { vars: usize, exponent: usize },
    /// `k<x_1..x_c>/(x_i^a, x_i x_j - q x_j x_i)`; exterior algebras are `a = 2, q = -1`.
    QuantumCompleteIntersection { vars: usize, exponent: usize },
    /// Group algebra `kG`.
    Group { order: usize },
    /// Given directly by structure constants.
    Custom,
}

impl AlgebraKind {
    /// Hypersurfaces and quantum complete intersections carry degree-two
    /// cohomology operators.
    pub fn has_degree_two_operators(&self) -> bool {
        matches!(
            self,
            AlgebraKind::TruncatedPolynomial { .. } | AlgebraKind::QuantumCompleteIntersection { .. }
        )
    }

    /// Number of degree-two operators (one per variable).
    pub fn operator_count(&self) -> Option<usize> {
        match self {
            AlgebraKind::TruncatedPolynomial { vars, .. }
            | AlgebraKind::QuantumCompleteIntersection { vars, .. } => Some(*vars),
            _ => None,
        }
    }
}

/// A finite-dimensional algebra given by a basis and structure constants.
///
/// `products[i * dim + j]` holds the coordinates of `b_i * b_j`. The
/// Jacobson radical is stored as a subspace; for the monomial presets it is
/// spanned by the non-constant monomials, for group algebras it is computed.
#[derive(Clone, Debug)]
pub struct BasisAlgebra<F: Field> {
    field: F,
    labels: Vec<String>,
    products: Vec<Vec<F::Elem>>,
    left: Vec<DenseMatrix<F>>,
    unit: usize,
    radical: Subspace<F>,
    radical_generators: Vec<Vec<F::Elem>>,
    augmentation: Option<Vec<F::Elem>>,
    kind: AlgebraKind,
}

impl<F: Field> BasisAlgebra<F> {
    /// Checked constructor for user-supplied structure constants. The
    /// radical is computed and must have a split semisimple quotient.
    pub fn from_structure_constants(
        field: F,
        labels: Vec<String>,
        products: Vec<Vec<F::Elem>>,
        unit: usize,
    ) -> Result<Self, AlgebraError> {
        let dim = labels.len();
        if dim == 0 || products.len() != dim * dim || products.iter().any(|v| v.len() != dim) {
            return Err(AlgebraError::InvalidParameters(format!(
                "expected {dim}x{dim} products of length {dim}"
            )));
        }
        if unit >= dim {
            return Err(AlgebraError::NotUnital(unit));
        }
        if let Some(bad) = products.iter().flatten().find(|e| !field.is_valid(e)) {
            return Err(AlgebraError::InvalidParameters(format!("invalid field element {bad:?}")));
        }
        let mut alg = Self::assemble(field, labels, products, unit, AlgebraKind::Custom);
        alg.check_unit()?;
        alg.check_associative()?;
        alg.install_computed_radical()?;
        Ok(alg)
    }

    fn assemble(
        field: F,
        labels: Vec<String>,
        products: Vec<Vec<F::Elem>>,
        unit: usize,
        kind: AlgebraKind,
    ) -> Self {
        let dim = labels.len();
        let left = (0..dim)
            .map(|i| {
                let cols: Vec<Vec<F::Elem>> = (0..dim).map(|j| products[i * dim + j].clone()).collect();
                DenseMatrix::from_columns(field.clone(), dim, &cols)
            })
            .collect();
        BasisAlgebra {
            radical: Subspace::new(field.clone(), dim),
            field,
            labels,
            products,
            left,
            unit,
            radical_generators: Vec::new(),
            augmentation: None,
            kind,
        }
    }

    /// `k[x_1..x_c]/(x_1^a..x_c^a)`
    pub fn truncated_polynomial(vars: usize, exponent: usize, field: F) -> Result<Self, AlgebraError> {
        Self::truncated_polynomial_with_cap(vars, exponent, field, DEFAULT_CONSTRUCTOR_CAP)
    }

    pub fn truncated_polynomial_with_cap(
        vars: usize,
        exponent: usize,
        field: F,
        cap: usize,
    ) -> Result<Self, AlgebraError> {
        let one = field.one();
        let mut alg = Self::monomial_algebra(vars, exponent, &one, field, cap)?;
        alg.kind = AlgebraKind::TruncatedPolynomial { vars, exponent };
        Ok(alg)
    }

    /// `k<x_1..x_c>/(x_i^a, x_i x_j - q x_j x_i for i < j)`, requires `q^a = 1`.
    pub fn quantum_complete_intersection(
        vars: usize,
        exponent: usize,
        q: F::Elem,
        field: F,
    ) -> Result<Self, AlgebraError> {
        Self::quantum_complete_intersection_with_cap(vars, exponent, q, field, DEFAULT_CONSTRUCTOR_CAP)
    }

    pub fn quantum_complete_intersection_with_cap(
        vars: usize,
        exponent: usize,
        q: F::Elem,
        field: F,
        cap: usize,
    ) -> Result<Self, AlgebraError> {
        if !field.is_valid(&q) || field.is_zero(&q) || !field.is_one(&field.pow(&q, exponent as u64)) {
            return Err(AlgebraError::BadCommutator);
        }
        let mut alg = Self::monomial_algebra(vars, exponent, &q, field, cap)?;
        alg.kind = AlgebraKind::QuantumCompleteIntersection { vars, exponent };
        Ok(alg)
    }

    /// Exterior algebra on `c` generators.
    pub fn exterior(vars: usize, field: F) -> Result<Self, AlgebraError> {
        let minus_one = field.from_i64(-1);
        Self::quantum_complete_intersection(vars, 2, minus_one, field)
    }

    /// Monomials `x_1^e_1 ... x_c^e_c` with `e_i < a`, indexed in mixed radix
    /// with `e_1` least significant, and `x_j x_i = q^{-1} x_i x_j` for `i < j`.
    fn monomial_algebra(vars: usize, exponent: usize, q: &F::Elem, field: F, cap: usize) -> Result<Self, AlgebraError> {
        if vars == 0 || exponent < 2 {
            return Err(AlgebraError::InvalidParameters(format!(
                "need c >= 1 and a >= 2, got c = {vars}, a = {exponent}"
            )));
        }
        let dim = (exponent as u128).checked_pow(vars as u32).unwrap_or(u128::MAX);
        if dim > cap as u128 {
            return Err(AlgebraError::OverflowGuard {
                dim: dim.min(usize::MAX as u128) as usize,
                cap,
            });
        }
        let dim = dim as usize;
        let q_inv = field.inv(q).ok_or(AlgebraError::BadCommutator)?;
        let exps: Vec<Vec<usize>> = (0..dim)
            .map(|mut idx| {
                (0..vars)
                    .map(|_| {
                        let e = idx % exponent;
                        idx /= exponent;
                        e
                    })
                    .collect()
            })
            .collect();
        let index_of = |e: &[usize]| e.iter().rev().fold(0, |acc, &x| acc * exponent + x);
        let mut products = vec![vec![field.zero(); dim]; dim * dim];
        for (i, e) in exps.iter().enumerate() {
            for (j, f) in exps.iter().enumerate() {
                let sum: Vec<usize> = e.iter().zip(f).map(|(a, b)| a + b).collect();
                if sum.iter().any(|&s| s >= exponent) {
                    continue;
                }
                // moving x_i^{f_i} left past x_j^{e_j} for j > i
                let swaps: u64 = (0..vars)
                    .flat_map(|a| (a + 1..vars).map(move |b| (a, b)))
                    .map(|(a, b)| (e[b] * f[a]) as u64)
                    .sum();
                products[i * dim + j][index_of(&sum)] = field.pow(&q_inv, swaps);
            }
        }
        let labels = exps.iter().map(|e| monomial_label(e)).collect();
        let mut alg = Self::assemble(field.clone(), labels, products, 0, AlgebraKind::Custom);
        let radical_rows: Vec<Vec<F::Elem>> = (1..dim).map(|i| unit_vector(&field, dim, i)).collect();
        alg.radical = Subspace::spanned_by(field.clone(), dim, radical_rows.iter());
        alg.radical_generators = (0..vars)
            .map(|v| unit_vector(&field, dim, exponent.pow(v as u32)))
            .collect();
        alg.augmentation = Some(unit_vector(&field, dim, 0));
        Ok(alg)
    }

    /// Group algebra from a multiplication table (`table[g][h]` is the
    /// index of `gh`). The characteristic must divide the group order.
    pub fn group_algebra(table: &[Vec<usize>], labels: Option<Vec<String>>, field: F) -> Result<Self, AlgebraError> {
        let order = table.len();
        let identity = super::group::validate_group(table)?;
        let p = field.characteristic();
        if p == 0 || !(order as u64).is_multiple_of(p) {
            return Err(AlgebraError::SemisimpleCase {
                characteristic: p,
                order,
            });
        }
        let labels = labels.unwrap_or_else(|| (0..order).map(|g| format!("g{g}")).collect());
        if labels.len() != order {
            return Err(AlgebraError::InvalidParameters("one label per group element".into()));
        }
        let mut products = vec![vec![field.zero(); order]; order * order];
        for g in 0..order {
            for h in 0..order {
                products[g * order + h][table[g][h]] = field.one();
            }
        }
        let mut alg = Self::assemble(field.clone(), labels, products, identity, AlgebraKind::Group { order });
        if is_power_of(order as u64, p) {
            // augmentation ideal, spanned by g - 1
            let rows: Vec<Vec<F::Elem>> = (0..order)
                .filter(|&g| g != identity)
                .map(|g| {
                    let mut v = unit_vector(&field, order, g);
                    v[identity] = field.neg(&field.one());
                    v
                })
                .collect();
            alg.radical = Subspace::spanned_by(field.clone(), order, rows.iter());
            alg.radical_generators = radical::right_ideal_generators(&alg);
        } else {
            alg.install_computed_radical()?;
        }
        alg.augmentation = Some(vec![field.one(); order]);
        Ok(alg)
    }

    fn install_computed_radical(&mut self) -> Result<(), AlgebraError> {
        self.radical = radical::compute_radical(self)?;
        radical::check_nilpotent(self)?;
        radical::check_split_quotient(self)?;
        self.radical_generators = radical::right_ideal_generators(self);
        if self.augmentation.is_none() && self.is_local() {
            self.augmentation = Some(self.local_augmentation()?);
        }
        Ok(())
    }

    /// For a local algebra, the projection `A -> A/J = k`.
    fn local_augmentation(&self) -> Result<Vec<F::Elem>, AlgebraError> {
        let dim = self.dim();
        let mut cols = vec![unit_vector(&self.field, dim, self.unit)];
        cols.extend(self.radical.basis().iter().cloned());
        let solver = LinearSolver::new(&DenseMatrix::from_columns(self.field.clone(), dim, &cols));
        (0..dim)
            .map(|i| {
                solver
                    .solve(&unit_vector(&self.field, dim, i))
                    .map(|x| x[0].clone())
                    .ok_or_else(|| AlgebraError::Internal("unit and radical do not span".into()))
            })
            .collect()
    }

    fn check_unit(&self) -> Result<(), AlgebraError> {
        let dim = self.dim();
        for i in 0..dim {
            let e = unit_vector(&self.field, dim, i);
            if self.products[self.unit * dim + i] != e || self.products[i * dim + self.unit] != e {
                return Err(AlgebraError::NotUnital(self.unit));
            }
        }
        Ok(())
    }

    /// `(b_i b_j) b_k = b_i (b_j b_k)` on all basis triples.
    pub fn check_associative(&self) -> Result<(), AlgebraError> {
        let dim = self.dim();
        for i in 0..dim {
            for j in 0..dim {
                let ij = &self.products[i * dim + j];
                for k in 0..dim {
                    let lhs = self.right_mul_basis(ij, k);
                    let jk = &self.products[j * dim + k];
                    let rhs = self.left[i].mul_vec(jk);
                    if lhs != rhs {
                        return Err(AlgebraError::NotAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    fn right_mul_basis(&self, x: &[F::Elem], k: usize) -> Vec<F::Elem> {
        let dim = self.dim();
        let f = &self.field;
        let mut out = vec![f.zero(); dim];
        for (l, c) in x.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            for (m, v) in self.products[l * dim + k].iter().enumerate() {
                if !f.is_zero(v) {
                    out[m] = f.mul_add(&out[m], c, v);
                }
            }
        }
        out
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    pub fn kind(&self) -> &AlgebraKind {
        &self.kind
    }

    /// Coordinates of `b_i b_j`.
    pub fn product(&self, i: usize, j: usize) -> &[F::Elem] {
        &self.products[i * self.dim() + j]
    }

    /// Matrix of left multiplication by `b_i`.
    pub fn left_matrix(&self, i: usize) -> &DenseMatrix<F> {
        &self.left[i]
    }

    pub fn radical(&self) -> &Subspace<F> {
        &self.radical
    }

    /// Elements generating the radical as a right ideal.
    pub fn radical_generators(&self) -> &[Vec<F::Elem>] {
        &self.radical_generators
    }

    /// Values of the augmentation `A -> k` on the basis, if there is one.
    pub fn augmentation(&self) -> Option<&[F::Elem]> {
        self.augmentation.as_deref()
    }

    /// `A/J` is the ground field.
    pub fn is_local(&self) -> bool {
        self.radical.dim() + 1 == self.dim()
    }

    pub fn unit(&self) -> Vec<F::Elem> {
        unit_vector(&self.field, self.dim(), self.unit)
    }

    pub fn basis_element(&self, i: usize) -> Vec<F::Elem> {
        unit_vector(&self.field, self.dim(), i)
    }

    /// Product of two algebra elements in coordinates.
    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let dim = self.dim();
        let mut out = vec![f.zero(); dim];
        for (i, a) in x.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if f.is_zero(b) {
                    continue;
                }
                let ab = f.mul(a, b);
                for (k, c) in self.products[i * dim + j].iter().enumerate() {
                    if !f.is_zero(c) {
                        out[k] = f.mul_add(&out[k], &ab, c);
                    }
                }
            }
        }
        out
    }

    /// Left multiplication by `b_i` on a single coordinate vector.
    pub fn left_mul_basis(&self, i: usize, y: &[F::Elem]) -> Vec<F::Elem> {
        self.left[i].mul_vec(y)
    }

    pub fn pow(&self, x: &[F::Elem], e: u64) -> Vec<F::Elem> {
        (0..e).fold(self.unit(), |acc, _| self.mul(&acc, x))
    }
}

pub(crate) fn unit_vector<F: Field>(field: &F, n: usize, i: usize) -> Vec<F::Elem> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

fn is_power_of(n: u64, p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}

fn monomial_label(e: &[usize]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &x)| x > 0)
        .map(|(i, &x)| if x == 1 { format!("x{}", i + 1) } else { format!("x{}^{x}", i + 1) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::group;
    use crate::exactmath::{PrimeField, Rationals};

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn dual_numbers() {
        let a = BasisAlgebra::truncated_polynomial(1, 2, fp(2)).unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.labels(), &["1", "x1"]);
        assert_eq!(a.product(1, 1), &[0, 0]);
        assert!(a.is_local());
        a.check_associative().unwrap();
    }

    #[test]
    fn cube_of_x_vanishes() {
        let a = BasisAlgebra::truncated_polynomial(1, 3, fp(3)).unwrap();
        assert_eq!(a.product(1, 2), &[0, 0, 0]);
        assert_eq!(a.product(1, 1), &[0, 0, 1]);
    }

    #[test]
    fn truncated_polynomial_is_commutative() {
        let a = BasisAlgebra::truncated_polynomial(2, 3, fp(5)).unwrap();
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                assert_eq!(a.product(i, j), a.product(j, i));
            }
        }
        a.check_associative().unwrap();
    }

    #[test]
    fn overflow_guard() {
        let err = BasisAlgebra::truncated_polynomial(13, 2, fp(2)).unwrap_err();
        assert!(matches!(err, AlgebraError::OverflowGuard { dim: 8192, cap: 4096 }));
    }

    #[test]
    fn exterior_anticommutes() {
        let a = BasisAlgebra::exterior(2, fp(3)).unwrap();
        assert_eq!(a.dim(), 4);
        // basis: 1, x1, x2, x1*x2
        assert_eq!(a.product(1, 2), &[0, 0, 0, 1]);
        assert_eq!(a.product(2, 1), &[0, 0, 0, 2]);
        let x1x2 = a.basis_element(3);
        assert_eq!(a.mul(&x1x2, &x1x2), vec![0; 4]);
        a.check_associative().unwrap();
        assert_eq!(BasisAlgebra::exterior(3, fp(2)).unwrap().dim(), 8);
    }

    #[test]
    fn exterior_on_one_generator_is_dual_numbers() {
        let e = BasisAlgebra::exterior(1, fp(2)).unwrap();
        let t = BasisAlgebra::truncated_polynomial(1, 2, fp(2)).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(e.product(i, j), t.product(i, j));
            }
        }
    }

    #[test]
    fn quantum_ci_commutator() {
        // 2^3 = 8 = 1 mod 7
        let a = BasisAlgebra::quantum_complete_intersection(2, 3, 2, fp(7)).unwrap();
        assert_eq!(a.dim(), 9);
        a.check_associative().unwrap();
        let x1 = a.basis_element(1);
        let x2 = a.basis_element(3);
        let x1x2 = a.mul(&x1, &x2);
        let x2x1 = a.mul(&x2, &x1);
        assert_eq!(x1x2, a.basis_element(4));
        // x2 x1 = q^{-1} x1 x2, and 2^{-1} = 4 mod 7
        assert_eq!(x2x1, x1x2.iter().map(|c| c * 4 % 7).collect::<Vec<_>>());
        assert_eq!(
            BasisAlgebra::quantum_complete_intersection(2, 3, 3, fp(7)).unwrap_err(),
            AlgebraError::BadCommutator
        );
    }

    #[test]
    fn quantum_ci_with_q_one_is_truncated() {
        let q = BasisAlgebra::quantum_complete_intersection(2, 2, 1, fp(2)).unwrap();
        let t = BasisAlgebra::truncated_polynomial(2, 2, fp(2)).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(q.product(i, j), t.product(i, j));
            }
        }
    }

    #[test]
    fn exterior_over_rationals() {
        let a = BasisAlgebra::exterior(2, Rationals).unwrap();
        a.check_associative().unwrap();
        assert!(a.is_local());
    }

    #[test]
    fn klein_four_is_truncated_polynomial() {
        // g -> 1 + x, h -> 1 + y, gh -> (1 + x)(1 + y)
        let kv = BasisAlgebra::group_algebra(&group::klein_four(), None, fp(2)).unwrap();
        let t = BasisAlgebra::truncated_polynomial(2, 2, fp(2)).unwrap();
        let one = t.unit();
        let add = |a: &[u64], b: &[u64]| a.iter().zip(b).map(|(x, y)| (x + y) % 2).collect::<Vec<u64>>();
        let g = add(&one, &t.basis_element(1));
        let h = add(&one, &t.basis_element(2));
        let gh = t.mul(&g, &h);
        // klein_four(): 0 = e, 1 = a, 2 = b, 3 = ab
        let image = [one.clone(), g, h, gh];
        let table = group::klein_four();
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(t.mul(&image[a], &image[b]), image[table[a][b]]);
            }
        }
        let m = DenseMatrix::from_columns(fp(2), 4, &image);
        assert_eq!(m.rank(), 4);
        assert_eq!(kv.radical().dim(), 3);
        assert!(kv.is_local());
    }

    #[test]
    fn cyclic_two_is_dual_numbers() {
        let c2 = BasisAlgebra::group_algebra(&group::cyclic(2), None, fp(2)).unwrap();
        assert!(c2.is_local());
        // (g - 1)^2 = 0
        let r = c2.radical().basis()[0].clone();
        assert_eq!(c2.mul(&r, &r), vec![0, 0]);
    }

    #[test]
    fn semisimple_group_algebra_rejected() {
        let err = BasisAlgebra::group_algebra(&group::cyclic(3), None, fp(2)).unwrap_err();
        assert!(matches!(err, AlgebraError::SemisimpleCase { .. }));
    }

    #[test]
    fn custom_structure_constants_are_checked() {
        let f = fp(2);
        // k[x]/(x^2) written out by hand
        let products = vec![vec![1, 0], vec![0, 1], vec![0, 1], vec![0, 0]];
        let a = BasisAlgebra::from_structure_constants(f, vec!["1".into(), "x".into()], products, 0).unwrap();
        assert!(a.is_local());
        assert_eq!(a.augmentation().unwrap(), &[1, 0]);

        let bad_unit = vec![vec![1, 0], vec![0, 1], vec![0, 1], vec![1, 0]];
        let a = BasisAlgebra::from_structure_constants(f, vec!["1".into(), "x".into()], bad_unit, 1);
        assert!(matches!(a, Err(AlgebraError::NotUnital(1))));
    }
}
