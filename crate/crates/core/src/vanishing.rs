//! Eventual vanishing of Ext: generator-degree bookkeeping, the search for
//! an element acting injectively on a window, and the analysis pipeline
//! that combines it with the quasi-polynomial fit.

use std::collections::{BTreeMap, BTreeSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exactmath::{DenseMatrix, Field, SeriesWindow};
use crate::hilbert::{
    classify, fit_numerator, lcm_degrees, quasi_polynomial, reduce_gf, HilbertError, Provenance, QuasiPolynomial,
    RationalGF, ReducedGF, VanishingReport, Verdict, DEFAULT_GUARD,
};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum VanishingError {
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
    #[error("window is inconsistent: {0}")]
    BadWindow(String),
    #[error("no operator to search with")]
    NoOperators,
    #[error("target degree {degree} is not a multiple of every operator degree")]
    BadTargetDegree { degree: usize },
    #[error("window [{start}, {end}] is too short for degree {degree}")]
    WindowTooShort { start: u64, end: u64, degree: usize },
    #[error("no injective element of degree {degree} found after {tried} candidates")]
    NotFound { degree: usize, tried: u64 },
}

/// Matrices of one operator of degree `degree`, keyed by source degree.
#[derive(Clone, Debug, PartialEq)]
pub struct WindowOperator<F: Field> {
    degree: usize,
    matrices: BTreeMap<u64, DenseMatrix<F>>,
}

impl<F: Field> WindowOperator<F> {
    pub fn new(degree: usize, matrices: BTreeMap<u64, DenseMatrix<F>>) -> Self {
        WindowOperator { degree, matrices }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn matrix(&self, n: u64) -> Option<&DenseMatrix<F>> {
        self.matrices.get(&n)
    }

    pub fn matrices(&self) -> &BTreeMap<u64, DenseMatrix<F>> {
        &self.matrices
    }
}

/// Graded pieces `E^n` for `start <= n <= end` with operator matrices
/// `E^n -> E^{n + d_i}`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedWindow<F: Field> {
    field: F,
    start: u64,
    piece_bases: Vec<Vec<Vec<F::Elem>>>,
    operators: Vec<WindowOperator<F>>,
}

impl<F: Field> GradedWindow<F> {
    /// Checks that every matrix sits inside the window with matching shape.
    pub fn new(
        field: F,
        start: u64,
        piece_bases: Vec<Vec<Vec<F::Elem>>>,
        operators: Vec<WindowOperator<F>>,
    ) -> Result<Self, VanishingError> {
        if piece_bases.is_empty() {
            return Err(VanishingError::BadWindow("no graded pieces".into()));
        }
        let end = start + piece_bases.len() as u64 - 1;
        let dim = |n: u64| piece_bases[(n - start) as usize].len();
        for op in &operators {
            if op.degree == 0 {
                return Err(VanishingError::BadWindow("operators have positive degree".into()));
            }
            for (&n, m) in &op.matrices {
                let target = n + op.degree as u64;
                if n < start || target > end {
                    return Err(VanishingError::BadWindow(format!(
                        "matrix at {n} of an operator of degree {} leaves the window",
                        op.degree
                    )));
                }
                if m.rows() != dim(target) || m.cols() != dim(n) {
                    return Err(VanishingError::BadWindow(format!("matrix at {n} has the wrong shape")));
                }
            }
        }
        Ok(GradedWindow {
            field,
            start,
            piece_bases,
            operators,
        })
    }

    /// A window without bases or operators, from dimensions alone.
    pub fn from_dims(field: F, dims: &SeriesWindow) -> Self {
        let piece_bases = dims
            .terms()
            .iter()
            .map(|&d| {
                (0..d as usize)
                    .map(|i| {
                        let mut v = vec![field.zero(); d as usize];
                        v[i] = field.one();
                        v
                    })
                    .collect()
            })
            .collect();
        GradedWindow {
            field,
            start: dims.start(),
            piece_bases,
            operators: Vec::new(),
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn start(&self) -> u64 {
        self.start
    }

    pub fn end(&self) -> u64 {
        self.start + self.piece_bases.len() as u64 - 1
    }

    pub fn piece_dims(&self) -> Vec<usize> {
        self.piece_bases.iter().map(Vec::len).collect()
    }

    pub fn piece_dim(&self, n: u64) -> usize {
        self.piece_bases[(n - self.start) as usize].len()
    }

    pub fn piece_basis(&self, n: u64) -> &[Vec<F::Elem>] {
        &self.piece_bases[(n - self.start) as usize]
    }

    pub fn operators(&self) -> &[WindowOperator<F>] {
        &self.operators
    }

    pub fn dims(&self) -> SeriesWindow {
        SeriesWindow::new(self.start, self.piece_dims().iter().map(|&d| d as u64).collect())
            .expect("window is nonempty")
    }

    /// Matrix of the product of operators `ops[0] ops[1] ...` (the last one
    /// applied first) on `E^n`, or `None` if some factor is missing.
    pub fn monomial_matrix(&self, word: &[usize], n: u64) -> Option<DenseMatrix<F>> {
        let mut degree = n;
        let mut acc = DenseMatrix::identity(self.field.clone(), self.piece_dim(n));
        for &i in word.iter().rev() {
            let op = &self.operators[i];
            acc = op.matrix(degree)?.mul(&acc);
            degree += op.degree as u64;
        }
        Some(acc)
    }
}

/// Degrees of generators of the even subalgebra, from the degrees of a
/// generating set of the whole ring.
///
/// In characteristic 2 the ring is commutative and the degrees are kept.
/// Otherwise: the even degrees, every sum of two distinct odd generators,
/// and twice every odd degree. The squares are kept although they may
/// vanish, so the result can overestimate.
pub fn even_generator_degrees(degrees: &[usize], characteristic: u64) -> Result<Vec<usize>, VanishingError> {
    if degrees.is_empty() {
        return Err(HilbertError::EmptyDegrees.into());
    }
    if characteristic == 2 {
        return Ok(degrees.to_vec());
    }
    let odd: Vec<usize> = degrees.iter().copied().filter(|d| d % 2 == 1).collect();
    let mut out: Vec<usize> = degrees.iter().copied().filter(|d| d % 2 == 0).collect();
    for i in 0..odd.len() {
        for j in i + 1..odd.len() {
            out.push(odd[i] + odd[j]);
        }
    }
    out.extend(odd.iter().map(|d| 2 * d));
    out.sort_unstable();
    Ok(out)
}

/// `x = sum_w lambda_w w` over the degree-`d` monomials `w`, certified
/// injective `E^n -> E^{n+d}` for every `n` in `certified_range`.
#[derive(Clone, Debug, PartialEq)]
pub struct RegularElementWitness<F: Field> {
    pub degree: usize,
    /// Operator indices of each monomial, ascending.
    pub monomials: Vec<Vec<usize>>,
    pub coefficients: Vec<F::Elem>,
    /// Inclusive range of source degrees.
    pub certified_range: (u64, u64),
    pub candidates_tried: u64,
}

/// Multisets of operator indices whose degrees sum to `d`.
fn monomials_of_degree(degrees: &[usize], d: usize) -> Vec<Vec<usize>> {
    fn rec(degrees: &[usize], first: usize, left: usize, word: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(word.clone());
            return;
        }
        for i in first..degrees.len() {
            if degrees[i] <= left {
                word.push(i);
                rec(degrees, i, left - degrees[i], word, out);
                word.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(degrees, 0, d, &mut Vec::new(), &mut out);
    out
}

/// Largest number of candidate coefficient vectors searched exhaustively.
pub const EXHAUSTIVE_LIMIT: u64 = 128;

/// Searches for a combination of degree-`d` monomials in the window's
/// operators that is injective on every source degree in
/// `[start + d, end - d]`.
///
/// Over a finite field with at most [`EXHAUSTIVE_LIMIT`] coefficient
/// vectors every nonzero vector is tried in order; otherwise `trials`
/// random vectors are drawn, trial `i` from a generator seeded by
/// `seed + i`.
pub fn find_regular_element<F: Field>(
    window: &GradedWindow<F>,
    d: usize,
    trials: u64,
    seed: u64,
) -> Result<RegularElementWitness<F>, VanishingError> {
    let ops = window.operators();
    if ops.is_empty() {
        return Err(VanishingError::NoOperators);
    }
    let degrees: Vec<usize> = ops.iter().map(WindowOperator::degree).collect();
    if d == 0 || degrees.iter().any(|&di| !d.is_multiple_of(di)) {
        return Err(VanishingError::BadTargetDegree { degree: d });
    }
    let (lo, hi) = (window.start() + d as u64, window.end().saturating_sub(d as u64));
    if window.end() < window.start() + 2 * d as u64 || lo > hi {
        return Err(VanishingError::WindowTooShort {
            start: window.start(),
            end: window.end(),
            degree: d,
        });
    }
    let monomials = monomials_of_degree(&degrees, d);
    let mut blocks: Vec<(usize, Vec<DenseMatrix<F>>)> = Vec::new();
    for n in lo..=hi {
        let mats = monomials
            .iter()
            .map(|w| window.monomial_matrix(w, n))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| VanishingError::BadWindow(format!("operator matrices missing at degree {n}")))?;
        blocks.push((window.piece_dim(n), mats));
    }

    let field = window.field();
    let injective = |lambda: &[F::Elem]| {
        blocks.iter().all(|(dim, mats)| {
            if *dim == 0 {
                return true;
            }
            let combined = mats
                .iter()
                .zip(lambda)
                .filter(|(_, c)| !field.is_zero(c))
                .fold(DenseMatrix::zeros(field.clone(), mats[0].rows(), *dim), |acc, (m, c)| {
                    acc.add(&m.scale(c))
                });
            combined.rank() == *dim
        })
    };
    let witness = |coefficients: Vec<F::Elem>, tried: u64| RegularElementWitness {
        degree: d,
        monomials: monomials.clone(),
        coefficients,
        certified_range: (lo, hi),
        candidates_tried: tried,
    };

    let k = monomials.len() as u32;
    let exhaustive = field
        .size()
        .and_then(|q| q.checked_pow(k))
        .filter(|&total| total <= EXHAUSTIVE_LIMIT);
    if let (Some(total), Some(q)) = (exhaustive, field.size()) {
        for idx in 1..total {
            // base-q digits, least significant first: idx = 1 is the first
            // monomial alone
            let mut rest = idx;
            let lambda: Vec<F::Elem> = (0..k)
                .map(|_| {
                    let digit = rest % q;
                    rest /= q;
                    field.element(digit)
                })
                .collect();
            if injective(&lambda) {
                return Ok(witness(lambda, idx));
            }
        }
        return Err(VanishingError::NotFound {
            degree: d,
            tried: total - 1,
        });
    }
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(trial));
        let lambda: Vec<F::Elem> = (0..k).map(|_| field.random(&mut rng)).collect();
        if lambda.iter().all(|c| field.is_zero(c)) {
            continue;
        }
        if injective(&lambda) {
            return Ok(witness(lambda, trial + 1));
        }
    }
    Err(VanishingError::NotFound { degree: d, tried: trials })
}

/// Which ring is taken to act on the Ext sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ActingDegrees {
    /// Degrees of Ext-ring generators; passed through
    /// [`even_generator_degrees`].
    ExtGenerators(Vec<usize>),
    /// A polynomial ring on this many degree-2 operators.
    DegreeTwo(usize),
    /// Used as given.
    Explicit(Vec<usize>),
}

impl ActingDegrees {
    pub fn resolve(&self, characteristic: u64) -> Result<Vec<usize>, VanishingError> {
        match self {
            ActingDegrees::ExtGenerators(d) => even_generator_degrees(d, characteristic),
            ActingDegrees::DegreeTwo(0) => Err(HilbertError::EmptyDegrees.into()),
            ActingDegrees::DegreeTwo(c) => Ok(vec![2; *c]),
            ActingDegrees::Explicit(d) if d.is_empty() => Err(HilbertError::EmptyDegrees.into()),
            ActingDegrees::Explicit(d) => Ok(d.clone()),
        }
    }
}

pub const DEFAULT_SEED: u64 = 0x0e57_a11e;
pub const DEFAULT_TRIALS: u64 = 64;

#[derive(Clone, Debug)]
pub struct AnalyzeOptions<'a, F: Field> {
    pub guard: usize,
    pub window: Option<&'a GradedWindow<F>>,
    pub trials: u64,
    pub seed: u64,
}

impl<F: Field> Default for AnalyzeOptions<'_, F> {
    fn default() -> Self {
        AnalyzeOptions {
            guard: DEFAULT_GUARD,
            window: None,
            trials: DEFAULT_TRIALS,
            seed: DEFAULT_SEED,
        }
    }
}

/// Every intermediate of the pipeline. The fit fields are `None` only for
/// an all-zero window, which is classified directly.
#[derive(Clone, Debug)]
pub struct Analysis<F: Field> {
    pub degrees: Vec<usize>,
    pub gf: Option<RationalGF>,
    pub reduced: Option<ReducedGF>,
    pub quasi_polynomial: Option<QuasiPolynomial>,
    pub report: VanishingReport,
    pub witness: Option<RegularElementWitness<F>>,
    pub notes: Vec<String>,
}

pub fn analyze<F: Field>(
    seq: &SeriesWindow,
    acting: &ActingDegrees,
    characteristic: u64,
    options: &AnalyzeOptions<'_, F>,
) -> Result<Analysis<F>, VanishingError> {
    let degrees = acting.resolve(characteristic)?;
    let d = lcm_degrees(&degrees)?;
    let mut notes = Vec::new();
    if matches!(acting, ActingDegrees::ExtGenerators(g) if characteristic != 2 && g.iter().any(|x| x % 2 == 1)) {
        notes.push(format!(
            "odd generators: even-part degrees {degrees:?} include squares that may vanish, so d = {d} may be larger than needed"
        ));
    }

    let (gf, reduced, qp, mut report) = if seq.is_all_zero() {
        let report = VanishingReport {
            verdict: Verdict::EventuallyZero,
            period: d,
            nonvanishing_residues: Vec::new(),
            m0: seq.start(),
            provenance: Provenance::QuasiPolynomial,
            minimal_period: 1,
        };
        (None, None, None, report)
    } else {
        let gf = fit_numerator(seq, &degrees, options.guard)?;
        let reduced = reduce_gf(&gf)?;
        let qp = quasi_polynomial(&reduced, d, seq)?;
        let report = classify(&qp);
        (Some(gf), Some(reduced), Some(qp), report)
    };
    notes.push(
        "m0 bounds the nonnegative integer roots of the components; it need not equal a bound from complex root moduli"
            .into(),
    );

    let mut witness = None;
    if let Some(window) = options.window {
        let wd = lcm_degrees(&window.operators().iter().map(WindowOperator::degree).collect::<Vec<_>>())
            .map_err(|_| VanishingError::NoOperators)?;
        match find_regular_element(window, wd, options.trials, options.seed) {
            Ok(w) => {
                if confirms(&report, window, &w) {
                    report.provenance = Provenance::Both;
                }
                witness = Some(w);
            }
            Err(VanishingError::NotFound { degree, tried }) => {
                let hint = if window.field().size().is_some() {
                    " (the ground field is finite, so this does not contradict the fit)"
                } else {
                    ""
                };
                notes.push(format!(
                    "no injective element of degree {degree} among {tried} candidates{hint}"
                ));
            }
            Err(e) => return Err(e),
        }
    }
    Ok(Analysis {
        degrees,
        gf,
        reduced,
        quasi_polynomial: qp,
        report,
        witness,
        notes,
    })
}

/// The witness supports the report when every nonvanishing residue has a
/// nonzero piece inside the certified range beyond `m0`; injectivity then
/// carries it forward in steps of the witness degree.
fn confirms<F: Field>(report: &VanishingReport, window: &GradedWindow<F>, w: &RegularElementWitness<F>) -> bool {
    if report.verdict == Verdict::EventuallyZero {
        return false;
    }
    let (a, b) = w.certified_range;
    let d = report.period as u64;
    let seen: BTreeSet<usize> = (a.max(report.m0)..=b)
        .filter(|&n| window.piece_dim(n) > 0)
        .map(|n| (n % d) as usize)
        .collect();
    report.nonvanishing_residues.iter().all(|j| seen.contains(j))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyOutcome {
    Pass,
    /// First absolute index whose zero pattern contradicts the report.
    Fail { position: u64 },
}

/// Beyond `m0`, an entry must be nonzero exactly when its residue is listed.
/// Entries before `m0` are skipped.
pub fn verify_verdict(report: &VanishingReport, holdout: &SeriesWindow) -> VerifyOutcome {
    let d = report.period as u64;
    for (n, a) in holdout.iter().filter(|(n, _)| *n >= report.m0) {
        let expected = report.nonvanishing_residues.contains(&((n % d) as usize));
        if (a != 0) != expected {
            return VerifyOutcome::Fail { position: n };
        }
    }
    VerifyOutcome::Pass
}
