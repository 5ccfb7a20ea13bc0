mod common;

use common::{fp, local_corpus, random_invertible, trivial_plus_regular};
use ext_vanishing::algebra::{
    ext_dims, ext_ring_generators, group, lift_chain_map, minimal_resolution, operator_window, standard_module,
    BasisAlgebra, FDModule, Limits, ModuleKind,
};
use ext_vanishing::exactmath::PrimeField;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn modules(alg: &BasisAlgebra<PrimeField>) -> Vec<(&'static str, FDModule<PrimeField>)> {
    vec![
        ("trivial", standard_module(alg, ModuleKind::Trivial).unwrap()),
        ("regular", standard_module(alg, ModuleKind::Regular).unwrap()),
        ("syzygy(1)", standard_module(alg, ModuleKind::Syzygy(1)).unwrap()),
        ("k + A", trivial_plus_regular(alg)),
    ]
}

#[test]
fn complexes_are_exact_and_minimal() {
    let limits = Limits::default();
    for (name, alg) in local_corpus() {
        for (mname, m) in modules(&alg) {
            let res = minimal_resolution(&alg, &m, 6, &limits).unwrap();
            assert!(res.check_complex(), "{name} / {mname}: d^2 != 0");
            assert!(res.check_exactness(), "{name} / {mname}: not exact");
            assert!(res.check_minimality(&alg), "{name} / {mname}: not minimal");
            assert!(res.is_minimal());
        }
    }
}

#[test]
fn betti_numbers_survive_basis_changes() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let limits = Limits::default();
    for (name, alg) in local_corpus() {
        for (mname, m) in modules(&alg) {
            let base = minimal_resolution(&alg, &m, 5, &limits).unwrap();
            let k = FDModule::trivial(&alg).unwrap();
            let ext = ext_dims(&alg, &m, &k, 4, &limits).unwrap();
            for _ in 0..5 {
                let p = random_invertible(alg.field(), m.dim(), &mut rng);
                let conj = m.change_basis(&p).unwrap();
                let res = minimal_resolution(&alg, &conj, 5, &limits).unwrap();
                assert_eq!(res.betti(), base.betti(), "{name} / {mname}");
                assert_eq!(ext_dims(&alg, &conj, &k, 4, &limits).unwrap().dims, ext.dims);
            }
        }
    }
}

#[test]
fn truncated_polynomials_have_constant_ext() {
    for a in 2..=4 {
        for p in [2, 3, 5] {
            let alg = BasisAlgebra::truncated_polynomial(1, a, fp(p)).unwrap();
            let k = FDModule::trivial(&alg).unwrap();
            let seq = ext_dims(&alg, &k, &k, 40, &Limits::default()).unwrap();
            assert!(seq.dims.terms().iter().all(|&x| x == 1), "a={a} p={p}");
        }
    }
}

#[test]
fn exterior_ext_is_binomial() {
    // Ext over an exterior algebra on c generators is a polynomial ring in
    // c degree-1 variables: dim Ext^n = C(n + c - 1, c - 1)
    let binom = |n: u64, k: u64| (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1));
    for c in 1..=3u64 {
        let alg = BasisAlgebra::exterior(c as usize, fp(3)).unwrap();
        let k = FDModule::trivial(&alg).unwrap();
        let seq = ext_dims(&alg, &k, &k, 12, &Limits::default()).unwrap();
        let expected: Vec<u64> = (0..=12).map(|n| binom(n + c - 1, c - 1)).collect();
        assert_eq!(seq.dims.terms(), &expected[..], "c={c}");
    }
}

#[test]
fn projective_modules_have_no_higher_ext() {
    let limits = Limits::default();
    for (name, alg) in local_corpus() {
        let reg = FDModule::regular(&alg);
        for (_, n) in modules(&alg) {
            let seq = ext_dims(&alg, &reg, &n, 6, &limits).unwrap();
            assert!(seq.dims.terms()[1..].iter().all(|&x| x == 0), "{name}");
            assert_eq!(seq.dims.terms()[0], n.dim() as u64, "Hom(A, N) = N");
        }
    }
}

#[test]
fn s4_resolution_in_characteristic_two() {
    // non-local, so the resolution is a free resolution but not minimal;
    // cohomology does not depend on that
    let (table, _) = group::symmetric(4);
    let alg = BasisAlgebra::group_algebra(&table, None, fp(2)).unwrap();
    let k = FDModule::trivial(&alg).unwrap();
    let res = minimal_resolution(&alg, &k, 4, &Limits::default()).unwrap();
    assert!(res.check_complex());
    assert!(res.check_exactness());
    // H^*(S_4, F_2) = F_2[s1, s2, c3] / (s1 c3) with degrees 1, 2, 3
    let seq = ext_dims(&alg, &k, &k, 3, &Limits::default()).unwrap();
    assert_eq!(seq.dims.terms(), &[1, 1, 2, 3]);
}

#[test]
fn lifted_operators_satisfy_the_chain_identity() {
    let limits = Limits::default();
    for (name, alg) in local_corpus() {
        let k = FDModule::trivial(&alg).unwrap();
        let res = minimal_resolution(&alg, &k, 6, &limits).unwrap();
        let gens = ext_ring_generators(&alg, &res, 3).unwrap();
        assert!(!gens.degrees.is_empty(), "{name}");
        for op in &gens.operators {
            assert!(op.check_chain_identity(&alg, &res), "{name}");
        }
        let zero = vec![vec![0u64]; res.betti()[2]];
        assert!(lift_chain_map(&alg, &res, 2, &zero).unwrap().is_zero(&alg));
    }
}

#[test]
fn even_operators_commute_on_ext() {
    // squares of degree-1 generators and degree-2 generators are even
    let limits = Limits::default();
    for (name, alg) in local_corpus() {
        let k = FDModule::trivial(&alg).unwrap();
        let res = minimal_resolution(&alg, &k, 8, &limits).unwrap();
        let gens = ext_ring_generators(&alg, &res, 2).unwrap();
        let mut even = Vec::new();
        for (i, op) in gens.operators.iter().enumerate() {
            if gens.degrees[i] == 2 {
                even.push(op.clone());
            }
            for other in &gens.operators[i..] {
                if gens.degrees[i] == 1 && other.degree() == 1 {
                    even.push(op.compose(&alg, other));
                }
            }
        }
        for (i, x) in even.iter().enumerate() {
            for y in &even[i + 1..] {
                let xy = x.compose(&alg, y);
                let yx = y.compose(&alg, x);
                let w = operator_window(&alg, &res, &k, &[xy, yx], 0, 7).unwrap();
                for n in 0..=3u64 {
                    assert_eq!(w.operators()[0].matrix(n), w.operators()[1].matrix(n), "{name} at {n}");
                }
            }
        }
    }
}

#[test]
fn klein_four_window_operators_are_injective() {
    let alg = BasisAlgebra::group_algebra(&group::klein_four(), None, fp(2)).unwrap();
    let k = FDModule::trivial(&alg).unwrap();
    let res = minimal_resolution(&alg, &k, 11, &Limits::default()).unwrap();
    let gens = ext_ring_generators(&alg, &res, 6).unwrap();
    assert_eq!(gens.degrees, vec![1, 1]);
    let w = operator_window(&alg, &res, &k, &gens.operators, 0, 10).unwrap();
    assert_eq!(w.piece_dims(), (1..=11).collect::<Vec<_>>());
    for op in w.operators() {
        for (n, m) in op.matrices() {
            assert_eq!(m.rank(), *n as usize + 1);
        }
    }
}

#[test]
fn dimension_cap_is_reported() {
    let alg = BasisAlgebra::exterior(3, fp(2)).unwrap();
    let k = FDModule::trivial(&alg).unwrap();
    let limits = Limits {
        max_algebra_dim: 64,
        max_free_dim: 100,
    };
    assert!(minimal_resolution(&alg, &k, 20, &limits).is_err());
    let small = Limits {
        max_algebra_dim: 4,
        max_free_dim: 20_000,
    };
    assert!(minimal_resolution(&alg, &k, 1, &small).is_err());
}
