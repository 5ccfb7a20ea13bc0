//! Jacobson radical of a basis algebra.
//!
//! In characteristic zero the radical is the kernel of the trace form
//! `(a, b) -> Tr(L_ab)`. Over `F_p` we use the Cohen-Ivanyos-Wales
//! refinement: with `g_i(a) = Tr(~L_a^{p^i}) / p^i mod p` for an integer
//! lift `~L_a`, set `I_{-1} = A`, `I_i = {a in I_{i-1} : g_i(ab) = 0 for all b}`;
//! then `J = I_l` for `l = floor(log_p dim)`.

use crate::exactmath::{DenseMatrix, Field, Subspace};

use super::basis::BasisAlgebra;
use super::AlgebraError;

pub(super) fn compute_radical<F: Field>(alg: &BasisAlgebra<F>) -> Result<Subspace<F>, AlgebraError> {
    let f = alg.field();
    let dim = alg.dim();
    let p = f.characteristic();
    if p == 0 {
        return Ok(trace_form_radical(alg));
    }
    let mut ideal: Vec<Vec<F::Elem>> = (0..dim).map(|i| alg.basis_element(i)).collect();
    let mut level = 0u32;
    while (p as u128).pow(level + 1) <= dim as u128 {
        level += 1;
    }
    for i in 0..=level {
        if ideal.is_empty() {
            break;
        }
        // rows indexed by basis b_j, columns by the current ideal basis a_k
        let mut g = DenseMatrix::zeros(f.clone(), dim, ideal.len());
        for (k, a) in ideal.iter().enumerate() {
            for j in 0..dim {
                let ab = alg.mul(a, &alg.basis_element(j));
                let v = frobenius_trace(alg, &ab, p, i)?;
                g.set(j, k, f.from_i64(v as i64));
            }
        }
        let kernel = g.kernel();
        ideal = kernel
            .iter()
            .map(|lambda| {
                let mut v = vec![f.zero(); dim];
                for (c, a) in lambda.iter().zip(&ideal) {
                    if f.is_zero(c) {
                        continue;
                    }
                    for (x, y) in v.iter_mut().zip(a) {
                        *x = f.mul_add(x, c, y);
                    }
                }
                v
            })
            .collect();
    }
    Ok(Subspace::spanned_by(f.clone(), dim, ideal.iter()))
}

/// `Tr(~L_x^{p^i}) / p^i mod p`, computed with integers mod `p^{i+1}`.
fn frobenius_trace<F: Field>(alg: &BasisAlgebra<F>, x: &[F::Elem], p: u64, i: u32) -> Result<u64, AlgebraError> {
    let f = alg.field();
    let dim = alg.dim();
    let modulus = p.pow(i + 1);
    let mut lx_field = DenseMatrix::zeros(f.clone(), dim, dim);
    for (l, c) in x.iter().enumerate() {
        if !f.is_zero(c) {
            lx_field = lx_field.add(&alg.left_matrix(l).scale(c));
        }
    }
    let lx: Vec<u64> = lx_field
        .entries()
        .iter()
        .map(|e| f.as_residue(e).expect("prime field"))
        .collect();
    let mut power = identity_mod(dim);
    let mut base = lx;
    let mut e = p.pow(i);
    while e > 0 {
        if e & 1 == 1 {
            power = mul_mod(&power, &base, dim, modulus);
        }
        base = mul_mod(&base, &base, dim, modulus);
        e >>= 1;
    }
    let trace = (0..dim).map(|r| power[r * dim + r]).sum::<u64>() % modulus;
    let scale = p.pow(i);
    if !trace.is_multiple_of(scale) {
        return Err(AlgebraError::Internal("trace of p-power not divisible".into()));
    }
    Ok((trace / scale) % p)
}

fn identity_mod(n: usize) -> Vec<u64> {
    let mut m = vec![0u64; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

fn mul_mod(a: &[u64], b: &[u64], n: usize, modulus: u64) -> Vec<u64> {
    let mut out = vec![0u64; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] = (out[i * n + j] + x * b[k * n + j]) % modulus;
            }
        }
    }
    out
}

fn trace_form_radical<F: Field>(alg: &BasisAlgebra<F>) -> Subspace<F> {
    let f = alg.field();
    let dim = alg.dim();
    let traces: Vec<F::Elem> = (0..dim)
        .map(|l| {
            let m = alg.left_matrix(l);
            (0..dim).fold(f.zero(), |acc, r| f.add(&acc, m.get(r, r)))
        })
        .collect();
    let mut form = DenseMatrix::zeros(f.clone(), dim, dim);
    for k in 0..dim {
        for j in 0..dim {
            let v = alg
                .product(k, j)
                .iter()
                .zip(&traces)
                .fold(f.zero(), |acc, (c, t)| f.mul_add(&acc, c, t));
            form.set(j, k, v);
        }
    }
    Subspace::spanned_by(f.clone(), dim, form.kernel().iter())
}

pub(super) fn check_nilpotent<F: Field>(alg: &BasisAlgebra<F>) -> Result<usize, AlgebraError> {
    let f = alg.field();
    let dim = alg.dim();
    let j = alg.radical().basis().to_vec();
    let mut power = j.clone();
    let mut exponent = 1;
    while !power.is_empty() {
        let next = Subspace::spanned_by(
            f.clone(),
            dim,
            power
                .iter()
                .flat_map(|x| j.iter().map(move |y| alg.mul(x, y)))
                .collect::<Vec<_>>()
                .iter(),
        );
        if next.dim() >= power.len() {
            return Err(AlgebraError::Internal("computed radical is not nilpotent".into()));
        }
        power = next.basis().to_vec();
        exponent += 1;
    }
    Ok(exponent)
}

/// Rejects algebras whose semisimple quotient is not a product of matrix
/// algebras over the ground field.
pub(super) fn check_split_quotient<F: Field>(alg: &BasisAlgebra<F>) -> Result<(), AlgebraError> {
    let f = alg.field();
    let dim = alg.dim();
    let p = f.characteristic();
    let radical = alg.radical();
    if p == 0 {
        if alg.is_local() {
            return Ok(());
        }
        return Err(AlgebraError::UnsupportedAlgebra(
            "non-local algebras over the rationals".into(),
        ));
    }
    // z is central mod J iff z b_j - b_j z lies in J for every j
    let columns: Vec<Vec<F::Elem>> = (0..dim)
        .map(|k| {
            (0..dim)
                .flat_map(|j| {
                    let c: Vec<F::Elem> = alg
                        .product(k, j)
                        .iter()
                        .zip(alg.product(j, k))
                        .map(|(a, b)| f.sub(a, b))
                        .collect();
                    radical.reduce(&c)
                })
                .collect()
        })
        .collect();
    let m = DenseMatrix::from_columns(f.clone(), dim * dim, &columns);
    for z in m.kernel() {
        let frob = alg.pow(&z, p);
        let diff: Vec<F::Elem> = frob.iter().zip(&z).map(|(a, b)| f.sub(a, b)).collect();
        if !radical.contains(&diff) {
            return Err(AlgebraError::UnsupportedAlgebra(
                "semisimple quotient is not split over the ground field".into(),
            ));
        }
    }
    Ok(())
}

/// Lifts of a basis of `J / J^2`; they generate `J` as a right ideal.
pub(super) fn right_ideal_generators<F: Field>(alg: &BasisAlgebra<F>) -> Vec<Vec<F::Elem>> {
    let f = alg.field();
    let j = alg.radical().basis();
    let squares: Vec<Vec<F::Elem>> = j.iter().flat_map(|x| j.iter().map(move |y| alg.mul(x, y))).collect();
    let mut span = Subspace::spanned_by(f.clone(), alg.dim(), squares.iter());
    j.iter().filter(|x| span.insert(x)).cloned().collect()
}

#[cfg(test)]
mod tests {
    use crate::algebra::group;
    use crate::algebra::BasisAlgebra;
    use crate::exactmath::{PrimeField, Rationals};

    #[test]
    fn s3_mod_3_has_four_dimensional_radical() {
        let (table, labels) = group::symmetric(3);
        let a = BasisAlgebra::group_algebra(&table, Some(labels), PrimeField::new(3).unwrap()).unwrap();
        // two one-dimensional simples, A/J = k x k
        assert_eq!(a.radical().dim(), 4);
        assert!(!a.is_local());
        assert!(super::check_nilpotent(&a).is_ok());
    }

    #[test]
    fn s3_mod_2_radical_is_spanned_by_the_group_sum() {
        let (table, _) = group::symmetric(3);
        let a = BasisAlgebra::group_algebra(&table, None, PrimeField::new(2).unwrap()).unwrap();
        assert_eq!(a.radical().dim(), 1);
        assert!(a.radical().contains(&[1u64; 6]));
    }

    #[test]
    fn s4_mod_2_quotient_is_k_times_matrices() {
        let (table, labels) = group::symmetric(4);
        let a = BasisAlgebra::group_algebra(&table, Some(labels), PrimeField::new(2).unwrap()).unwrap();
        // A/J = k x M_2(k)
        assert_eq!(a.dim() - a.radical().dim(), 5);
    }

    #[test]
    fn p_group_shortcut_agrees_with_general_algorithm() {
        let f = PrimeField::new(2).unwrap();
        let kd8 = BasisAlgebra::group_algebra(&group::dihedral(4), None, f).unwrap();
        let general = super::compute_radical(&kd8).unwrap();
        assert_eq!(general.dim(), 7);
        for v in kd8.radical().basis() {
            assert!(general.contains(v));
        }
    }

    #[test]
    fn trace_form_over_rationals() {
        let a = BasisAlgebra::truncated_polynomial(2, 2, Rationals).unwrap();
        let j = super::compute_radical(&a).unwrap();
        assert_eq!(j.dim(), 3);
    }
}
