mod common;

use common::{fp, local_corpus};
use ext_vanishing::algebra::{
    ext_dims, ext_ring_generators, minimal_resolution, operator_window, standard_module, BasisAlgebra, FDModule,
    Limits, ModuleKind,
};
use ext_vanishing::exactmath::{Field, PrimeField, SeriesWindow};
use ext_vanishing::hilbert::Verdict;
use ext_vanishing::vanishing::{
    analyze, find_regular_element, verify_verdict, ActingDegrees, AnalyzeOptions, VerifyOutcome,
};

fn generator_degrees(alg: &BasisAlgebra<PrimeField>) -> Vec<usize> {
    let k = FDModule::trivial(alg).unwrap();
    let res = minimal_resolution(alg, &k, 7, &Limits::default()).unwrap();
    ext_ring_generators(alg, &res, 6).unwrap().degrees
}

fn pairs(alg: &BasisAlgebra<PrimeField>) -> Vec<(&'static str, FDModule<PrimeField>, FDModule<PrimeField>)> {
    let k = FDModule::trivial(alg).unwrap();
    let omega = standard_module(alg, ModuleKind::Syzygy(1)).unwrap();
    let reg = FDModule::regular(alg);
    vec![
        ("k, k", k.clone(), k.clone()),
        ("Omega k, k", omega, k.clone()),
        ("A, k", reg.clone(), k.clone()),
        ("k, A", k, reg),
    ]
}

fn check_holdout(name: &str, alg: &BasisAlgebra<PrimeField>, total: usize, train: usize) {
    let degrees = generator_degrees(alg);
    let acting = ActingDegrees::ExtGenerators(degrees.clone());
    let opts = AnalyzeOptions::<PrimeField>::default();
    let p = alg.field().characteristic();
    for (pname, m, n) in pairs(alg) {
        let seq = ext_dims(alg, &m, &n, total - 1, &Limits::default()).unwrap().dims;
        let head = seq.slice(0, train as u64 - 1).unwrap();
        let tail = seq.slice(train as u64, total as u64 - 1).unwrap();
        let a = analyze(&head, &acting, p, &opts).unwrap_or_else(|e| panic!("{name} / {pname}: {e}"));
        assert!(a.report.m0 <= train as u64, "{name} / {pname}: m0 = {}", a.report.m0);
        assert_eq!(
            verify_verdict(&a.report, &tail),
            VerifyOutcome::Pass,
            "{name} / {pname} with degrees {degrees:?}"
        );
        // dropping a short prefix does not change the asymptotic answer
        for s in 1..=5u64 {
            let shifted = seq.slice(s, train as u64 - 1 + s).unwrap();
            let b = analyze(&shifted, &acting, p, &opts).unwrap();
            assert_eq!(b.report.verdict, a.report.verdict, "{name} / {pname} shift {s}");
            assert_eq!(b.report.period, a.report.period);
            assert_eq!(b.report.nonvanishing_residues, a.report.nonvanishing_residues);
        }
    }
}

#[test]
fn holdout_verification_on_the_corpus() {
    for (name, alg) in local_corpus() {
        if alg.dim() == 8 && name.starts_with("exterior") {
            // quadratic Betti growth; covered at a shorter length below
            continue;
        }
        check_holdout(name, &alg, 60, 40);
    }
}

#[test]
fn holdout_verification_for_exterior_three() {
    let alg = BasisAlgebra::exterior(3, fp(3)).unwrap();
    // six even-part degrees of 2: numerators reach degree 12, so the
    // training window needs 12 + 1 + guard terms
    check_holdout("exterior(3) F3", &alg, 34, 24);
}

#[test]
fn quantum_complete_intersection_has_period_two() {
    let alg = BasisAlgebra::quantum_complete_intersection(2, 2, 4, fp(5)).unwrap();
    let k = FDModule::trivial(&alg).unwrap();
    let seq = ext_dims(&alg, &k, &k, 59, &Limits::default()).unwrap().dims;
    let opts = AnalyzeOptions::<PrimeField>::default();
    for start in 0..=5u64 {
        let train = seq.slice(start, start + 29).unwrap();
        let a = analyze(&train, &ActingDegrees::DegreeTwo(2), 5, &opts).unwrap();
        assert_eq!(a.report.period, 2);
        assert_eq!(a.report.nonvanishing_residues, vec![0, 1]);
        let holdout = seq.slice(start + 30, 59).unwrap();
        assert_eq!(verify_verdict(&a.report, &holdout), VerifyOutcome::Pass);
    }
}

#[test]
fn injectivity_propagates_nonvanishing() {
    for (name, alg) in local_corpus().into_iter().filter(|(_, a)| a.dim() <= 9) {
        let k = FDModule::trivial(&alg).unwrap();
        let res = minimal_resolution(&alg, &k, 15, &Limits::default()).unwrap();
        let gens = ext_ring_generators(&alg, &res, 4).unwrap();
        let window = operator_window(&alg, &res, &k, &gens.operators, 0, 14).unwrap();
        let d = gens.degrees.iter().fold(1, |acc, &x| num_integer::lcm(acc, x));
        let Ok(w) = find_regular_element(&window, d, 64, 1) else {
            continue;
        };
        let (a, b) = w.certified_range;
        for n in a..=b {
            if window.piece_dim(n) == 0 {
                continue;
            }
            let mut m = n;
            while m <= b + d as u64 {
                assert!(window.piece_dim(m) > 0, "{name}: zero piece at {m} after nonzero {n}");
                m += d as u64;
            }
        }
    }
}

#[test]
fn exterior_window_has_a_linear_witness_over_f2() {
    let alg = BasisAlgebra::exterior(2, fp(2)).unwrap();
    let k = FDModule::trivial(&alg).unwrap();
    let res = minimal_resolution(&alg, &k, 9, &Limits::default()).unwrap();
    let gens = ext_ring_generators(&alg, &res, 3).unwrap();
    let window = operator_window(&alg, &res, &k, &gens.operators, 0, 8).unwrap();
    let w = find_regular_element(&window, 1, 16, 0).unwrap();
    assert_eq!(w.certified_range, (1, 7));
    // 2^2 coefficient vectors are searched exhaustively, the first alone
    // already works since Ext is a polynomial ring
    assert_eq!(w.candidates_tried, 1);
    assert_eq!(w.coefficients, vec![1, 0]);
}

#[test]
fn all_zero_windows_short_circuit() {
    let zeros = SeriesWindow::new(2, vec![0; 12]).unwrap();
    let a = analyze(&zeros, &ActingDegrees::DegreeTwo(1), 2, &AnalyzeOptions::<PrimeField>::default()).unwrap();
    assert_eq!(a.report.verdict, Verdict::EventuallyZero);
    assert_eq!(a.report.m0, 2);
    assert!(a.gf.is_none());
}
