//! Runs a [`RunConfig`] through the library, dispatching on the field at
//! runtime.

use std::path::Path;

use ext_vanishing::algebra::{
    detect_periodicity, ext_dims, ext_groups, ext_ring_generators, group, minimal_resolution, operator_window,
    standard_module, BasisAlgebra, ChainOperator, FDModule, Limits, ModuleKind, Periodicity,
};
use ext_vanishing::exactmath::{Field, PrimeField, Rationals, SeriesWindow};
use ext_vanishing::vanishing::{analyze, verify_verdict, ActingDegrees, AnalyzeOptions, GradedWindow, VanishingError};

use crate::config::{
    ActingConfig, AlgebraConfig, FieldConfig, ModuleConfig, RunConfig, Scalar, SequenceConfig, StructureConstantsFile,
};
use crate::error::CliError;
use crate::report::{
    poly_strings, ActingSummary, AlgebraSummary, ExtSummary, FitSummary, QuasiPolynomialSummary, ReducedSummary,
    ReportDocument, VerdictSummary, VerificationSummary, WitnessSummary, REPORT_SCHEMA_VERSION,
};

impl From<ModuleConfig> for ModuleKind {
    fn from(m: ModuleConfig) -> Self {
        match m {
            ModuleConfig::Trivial => ModuleKind::Trivial,
            ModuleConfig::Regular => ModuleKind::Regular,
            ModuleConfig::Syzygy(i) => ModuleKind::Syzygy(i),
        }
    }
}

fn prime_field(p: u64) -> Result<PrimeField, CliError> {
    PrimeField::new(p).map_err(|e| CliError::Config(format!("at `field.prime`: {e}")))
}

fn parse_scalar<F: Field>(field: &F, s: &Scalar) -> Result<F::Elem, String> {
    match s {
        Scalar::Int(v) => Ok(field.from_i64(*v)),
        Scalar::Text(t) => {
            let (num, den) = match t.split_once('/') {
                Some((a, b)) => (a.trim(), b.trim()),
                None => (t.trim(), "1"),
            };
            let num: i64 = num.parse().map_err(|_| format!("cannot read `{t}` as a rational"))?;
            let den: i64 = den.parse().map_err(|_| format!("cannot read `{t}` as a rational"))?;
            let inv = field
                .inv(&field.from_i64(den))
                .ok_or_else(|| format!("denominator of `{t}` vanishes in the field"))?;
            Ok(field.mul(&field.from_i64(num), &inv))
        }
    }
}

fn read_group_table(path: &Path) -> Result<(Vec<Vec<usize>>, Vec<String>), CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CliError::Config(format!("at `algebra`: {}: {e}", path.display())))?;
    let labels: Vec<String> = reader
        .headers()
        .map_err(|e| CliError::Config(format!("at `algebra`: {e}")))?
        .iter()
        .map(str::to_string)
        .collect();
    let mut table = Vec::new();
    for (r, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CliError::Config(format!("at `algebra`: {e}")))?;
        let row = record
            .iter()
            .enumerate()
            .map(|(c, v)| {
                v.parse::<usize>().map_err(|_| {
                    CliError::Config(format!("at `algebra`: row {}, column {}: `{v}` is not an index", r + 1, c + 1))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        table.push(row);
    }
    Ok((table, labels))
}

fn read_structure_constants<F: Field>(field: &F, path: &Path) -> Result<BasisAlgebra<F>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("at `algebra`: {}: {e}", path.display())))?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    let file: StructureConstantsFile = serde_path_to_error::deserialize(de).map_err(|e| {
        let inner = e.path().to_string();
        CliError::Config(format!("in {} at `{inner}`: {}", path.display(), e.into_inner()))
    })?;
    let dim = file.labels.len();
    if file.products.len() != dim || file.products.iter().any(|row| row.len() != dim) {
        return Err(CliError::Config(format!(
            "in {} at `products`: expected a {dim} x {dim} table",
            path.display()
        )));
    }
    let mut products = Vec::with_capacity(dim * dim);
    for (i, row) in file.products.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            let coords = v
                .iter()
                .map(|s| parse_scalar(field, s))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| CliError::Config(format!("in {} at `products[{i}][{j}]`: {e}", path.display())))?;
            products.push(coords);
        }
    }
    Ok(BasisAlgebra::from_structure_constants(field.clone(), file.labels, products, file.unit)?)
}

pub fn build_algebra<F: Field>(field: F, spec: &AlgebraConfig) -> Result<BasisAlgebra<F>, CliError> {
    let alg = match spec {
        AlgebraConfig::TruncPoly { vars, exponent } => BasisAlgebra::truncated_polynomial(*vars, *exponent, field)?,
        AlgebraConfig::Exterior { vars } => BasisAlgebra::exterior(*vars, field)?,
        AlgebraConfig::QuantumCi { vars, exponent, q } => {
            let q = field.from_i64(*q);
            BasisAlgebra::quantum_complete_intersection(*vars, *exponent, q, field)?
        }
        AlgebraConfig::KleinFour => BasisAlgebra::group_algebra(&group::klein_four(), None, field)?,
        AlgebraConfig::Cyclic { order } => BasisAlgebra::group_algebra(&group::cyclic(*order), None, field)?,
        AlgebraConfig::Dihedral { n } => BasisAlgebra::group_algebra(&group::dihedral(*n), None, field)?,
        AlgebraConfig::Symmetric { n } => {
            let (table, labels) = group::symmetric(*n);
            BasisAlgebra::group_algebra(&table, Some(labels), field)?
        }
        AlgebraConfig::GroupTable(path) => {
            let (table, labels) = read_group_table(path)?;
            BasisAlgebra::group_algebra(&table, Some(labels), field)?
        }
        AlgebraConfig::StructureConstants(path) => read_structure_constants(&field, path)?,
    };
    Ok(alg)
}

fn algebra_input(cfg: &RunConfig) -> Result<(FieldConfig, &AlgebraConfig, usize), CliError> {
    match (cfg.field, &cfg.algebra, cfg.n_max) {
        (Some(f), Some(a), Some(n)) => Ok((f, a, n)),
        _ => Err(CliError::Config("at `algebra`: this command needs `field`, `algebra` and `n_max`".into())),
    }
}

/// Dimensions of `Ext^n(M, N)` for `0 <= n <= n_max`.
pub fn ext_dimensions(cfg: &RunConfig) -> Result<SeriesWindow, CliError> {
    fn run<F: Field>(field: F, spec: &AlgebraConfig, n_max: usize, cfg: &RunConfig) -> Result<SeriesWindow, CliError> {
        let alg = build_algebra(field, spec)?;
        let m = standard_module(&alg, cfg.m.into())?;
        let n = standard_module(&alg, cfg.n.into())?;
        Ok(ext_dims(&alg, &m, &n, n_max, &cfg.limits.into())?.dims)
    }
    let (field, spec, n_max) = algebra_input(cfg)?;
    match field {
        FieldConfig::Prime(p) => run(prime_field(p)?, spec, n_max, cfg),
        FieldConfig::Rationals => run(Rationals, spec, n_max, cfg),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionSummary {
    pub betti: Vec<usize>,
    pub minimal: bool,
    pub complex: bool,
    pub exact: bool,
    /// Only checked when the resolution claims minimality.
    pub minimality_checked: Option<bool>,
}

/// Resolves `M` through `P_{n_max}` and checks the complex.
pub fn resolve(cfg: &RunConfig) -> Result<ResolutionSummary, CliError> {
    fn run<F: Field>(field: F, spec: &AlgebraConfig, n_max: usize, cfg: &RunConfig) -> Result<ResolutionSummary, CliError> {
        let alg = build_algebra(field, spec)?;
        let m = standard_module(&alg, cfg.m.into())?;
        let res = minimal_resolution(&alg, &m, n_max, &cfg.limits.into())?;
        Ok(ResolutionSummary {
            betti: res.betti().to_vec(),
            minimal: res.is_minimal(),
            complex: res.check_complex(),
            exact: res.check_exactness(),
            minimality_checked: res.is_minimal().then(|| res.check_minimality(&alg)),
        })
    }
    let (field, spec, n_max) = algebra_input(cfg)?;
    match field {
        FieldConfig::Prime(p) => run(prime_field(p)?, spec, n_max, cfg),
        FieldConfig::Rationals => run(Rationals, spec, n_max, cfg),
    }
}

/// Reads a sequence given in the config; a CSV must list consecutive `n`.
pub fn read_sequence(seq: &SequenceConfig) -> Result<SeriesWindow, CliError> {
    let bad = |msg: String| CliError::Config(format!("at `sequence`: {msg}"));
    match seq {
        SequenceConfig::Terms(t) => SeriesWindow::new(0, t.clone()).map_err(|e| bad(e.to_string())),
        SequenceConfig::Csv(path) => {
            let mut reader = csv::ReaderBuilder::new()
                .has_headers(true)
                .trim(csv::Trim::All)
                .from_path(path)
                .map_err(|e| bad(format!("{}: {e}", path.display())))?;
            let mut start = None;
            let mut terms = Vec::new();
            for (r, record) in reader.records().enumerate() {
                let record = record.map_err(|e| bad(e.to_string()))?;
                let field = |c: usize| -> Result<u64, CliError> {
                    record
                        .get(c)
                        .and_then(|v| v.parse().ok())
                        .ok_or_else(|| bad(format!("row {}: expected two nonnegative integers `n,dim`", r + 1)))
                };
                let (n, v) = (field(0)?, field(1)?);
                let first = *start.get_or_insert(n);
                if n != first + terms.len() as u64 {
                    return Err(bad(format!("row {}: index {n} is not consecutive", r + 1)));
                }
                terms.push(v);
            }
            SeriesWindow::new(start.unwrap_or(0), terms).map_err(|e| bad(e.to_string()))
        }
    }
}

/// Everything the fit and the report need, however the data was produced.
struct Prepared<F: Field> {
    field: F,
    dims: SeriesWindow,
    holdout_from: u64,
    acting: ActingDegrees,
    generator_degrees: Option<Vec<usize>>,
    window: Option<GradedWindow<F>>,
    notes: Vec<String>,
    algebra: Option<AlgebraSummary>,
    betti: Vec<usize>,
    minimal_resolution: Option<bool>,
}

fn holdout_bounds(cfg: &RunConfig, start: u64, n_max: u64) -> Result<u64, CliError> {
    let h = cfg.holdout_start(start as usize, n_max as usize) as u64;
    if h <= start || h > n_max {
        return Err(CliError::Config(format!(
            "at `holdout_from`: {h} leaves no training or no holdout data in [{start}, {n_max}]"
        )));
    }
    Ok(h)
}

/// Full pipeline: Ext dimensions, acting ring, fit, classification,
/// optional regular element, and the holdout check.
pub fn analyze_config(cfg: &RunConfig) -> Result<ReportDocument, CliError> {
    cfg.validate()?;
    cfg.validate_acting()?;
    if let Some(seq) = &cfg.sequence {
        let dims = read_sequence(seq)?;
        let n_max = match cfg.n_max {
            Some(n) if n as u64 > dims.end() || (n as u64) < dims.start() => {
                return Err(CliError::Config(format!(
                    "at `n_max`: {n} lies outside the sequence [{}, {}]",
                    dims.start(),
                    dims.end()
                )));
            }
            Some(n) => n as u64,
            None => dims.end(),
        };
        let dims = dims.slice(dims.start(), n_max).map_err(|e| CliError::Failed(e.to_string()))?;
        let holdout_from = holdout_bounds(cfg, dims.start(), n_max)?;
        let Some(ActingConfig::Degrees(degrees)) = &cfg.acting else {
            unreachable!("validate requires explicit degrees for a sequence")
        };
        return finish(
            cfg,
            Prepared {
                field: Rationals,
                dims,
                holdout_from,
                acting: ActingDegrees::Explicit(degrees.clone()),
                generator_degrees: None,
                window: None,
                notes: Vec::new(),
                algebra: None,
                betti: Vec::new(),
                minimal_resolution: None,
            },
        );
    }
    let (field, spec, n_max) = algebra_input(cfg)?;
    match field {
        FieldConfig::Prime(p) => analyze_algebra(prime_field(p)?, spec, n_max, cfg),
        FieldConfig::Rationals => analyze_algebra(Rationals, spec, n_max, cfg),
    }
}

fn analyze_algebra<F: Field>(
    field: F,
    spec: &AlgebraConfig,
    n_max: usize,
    cfg: &RunConfig,
) -> Result<ReportDocument, CliError> {
    let alg = build_algebra(field.clone(), spec)?;
    let limits: Limits = cfg.limits.into();
    let m = standard_module(&alg, cfg.m.into())?;
    let n = standard_module(&alg, cfg.n.into())?;
    let res = minimal_resolution(&alg, &m, n_max + 1, &limits)?;
    let dims: Vec<u64> = ext_groups(&alg, &res, &n).iter().map(|g| g.dim() as u64).collect();
    let dims = SeriesWindow::new(0, dims).map_err(|e| CliError::Failed(e.to_string()))?;
    let holdout_from = holdout_bounds(cfg, 0, n_max as u64)?;
    let train_to = holdout_from - 1;

    let mut notes = Vec::new();
    let mut ops: Vec<ChainOperator<F>> = Vec::new();
    let mut ops_from = 0;
    let mut generator_degrees = None;
    let acting = match &cfg.acting() {
        ActingConfig::ExtGenerators(top) => {
            let gens = if cfg.m == ModuleConfig::Trivial {
                ext_ring_generators(&alg, &res, *top)?
            } else {
                let k = FDModule::trivial(&alg)?;
                let res_k = minimal_resolution(&alg, &k, top + 1, &limits)?;
                ext_ring_generators(&alg, &res_k, *top)?
            };
            generator_degrees = Some(gens.degrees.clone());
            if cfg.m == ModuleConfig::Trivial {
                ops = gens.operators;
            } else if cfg.regular_element {
                notes.push("Ext(k, k) operators act on the resolution of k only, so the regular-element search needs M trivial".into());
            }
            if gens.degrees.is_empty() {
                notes.push(format!("Ext(k, k) has no generators through degree {top}; fitting with degrees [1]"));
                ActingDegrees::Explicit(vec![1])
            } else {
                ActingDegrees::ExtGenerators(gens.degrees)
            }
        }
        ActingConfig::DegreeTwo => {
            let count = alg.kind().operator_count().ok_or_else(|| {
                CliError::Config("at `acting`: this algebra has no degree-two operators".into())
            })?;
            if cfg.regular_element {
                match detect_periodicity(&alg, &res) {
                    Periodicity::Periodic { operator, .. } => {
                        ops_from = operator.from();
                        ops = vec![operator];
                    }
                    Periodicity::NotPeriodic => notes.push(
                        "the resolution of M has no periodic tail in range, so no operator is available for the regular-element search"
                            .into(),
                    ),
                }
            }
            ActingDegrees::DegreeTwo(count)
        }
        ActingConfig::Degrees(d) => ActingDegrees::Explicit(d.clone()),
    };
    if !cfg.regular_element {
        ops.clear();
    }
    let window = if !ops.is_empty() && (ops_from as u64) < train_to {
        Some(operator_window(&alg, &res, &n, &ops, ops_from, train_to as usize)?)
    } else {
        None
    };
    let algebra = AlgebraSummary {
        preset: spec.name().into(),
        field: field.spec().to_string(),
        dim: alg.dim(),
        radical_dim: alg.radical().dim(),
        local: alg.is_local(),
        m: cfg.m.describe(),
        n: cfg.n.describe(),
    };
    finish(
        cfg,
        Prepared {
            field,
            dims,
            holdout_from,
            acting,
            generator_degrees,
            window,
            notes,
            algebra: Some(algebra),
            betti: res.betti().to_vec(),
            minimal_resolution: Some(res.is_minimal()),
        },
    )
}

fn finish<F: Field>(cfg: &RunConfig, p: Prepared<F>) -> Result<ReportDocument, CliError> {
    let Prepared {
        field,
        dims,
        holdout_from,
        acting,
        generator_degrees,
        window,
        mut notes,
        algebra,
        betti,
        minimal_resolution,
    } = p;
    let window_err = |e: ext_vanishing::exactmath::MathError| CliError::Failed(e.to_string());
    let train = dims.slice(dims.start(), holdout_from - 1).map_err(window_err)?;
    let holdout = dims.slice(holdout_from, dims.end()).map_err(window_err)?;
    let characteristic = cfg.field.map_or(0, |f| match f {
        FieldConfig::Prime(p) => p,
        FieldConfig::Rationals => 0,
    });
    let options = AnalyzeOptions {
        guard: cfg.guard,
        window: window.as_ref(),
        trials: cfg.trials,
        seed: cfg.seed,
    };
    let analysis = match analyze(&train, &acting, characteristic, &options) {
        Err(
            e @ (VanishingError::WindowTooShort { .. }
            | VanishingError::NoOperators
            | VanishingError::BadTargetDegree { .. }),
        ) => {
            notes.push(format!("regular-element search skipped: {e}"));
            analyze(&train, &acting, characteristic, &AnalyzeOptions { window: None, ..options })?
        }
        other => other?,
    };
    notes.extend(analysis.notes.iter().cloned());
    let outcome = verify_verdict(&analysis.report, &holdout);

    Ok(ReportDocument {
        schema: REPORT_SCHEMA_VERSION,
        tool: format!("extvan {}", env!("CARGO_PKG_VERSION")),
        input: cfg.clone(),
        algebra,
        ext: ExtSummary {
            start: dims.start(),
            dims: dims.terms().to_vec(),
            betti,
            minimal_resolution,
        },
        acting: ActingSummary {
            source: match cfg.acting() {
                ActingConfig::ExtGenerators(_) => "ext-generators",
                ActingConfig::DegreeTwo => "degree-two",
                ActingConfig::Degrees(_) => "degrees",
            }
            .into(),
            generator_degrees,
            degrees: analysis.degrees.clone(),
            period: analysis.report.period,
        },
        fit: analysis.gf.as_ref().map(|gf| FitSummary {
            train_from: train.start(),
            train_to: train.end(),
            guard: cfg.guard,
            numerator: poly_strings(&gf.numerator),
            denominator_degrees: gf.degrees.clone(),
        }),
        reduced: analysis.reduced.as_ref().map(|r| ReducedSummary {
            poly_part: poly_strings(&r.poly_part),
            numerator: poly_strings(&r.numerator),
            denominator: poly_strings(&r.denominator),
            factor_count: r.factor_count,
            valid_from: r.valid_from(),
        }),
        quasi_polynomial: analysis.quasi_polynomial.as_ref().map(|qp| QuasiPolynomialSummary {
            period: qp.period,
            valid_from: qp.valid_from,
            components: qp.components.iter().map(poly_strings).collect(),
        }),
        verdict: VerdictSummary::from(&analysis.report),
        witness: analysis.witness.as_ref().map(|w| WitnessSummary {
            degree: w.degree,
            operator_degrees: window
                .as_ref()
                .map(|win| win.operators().iter().map(|o| o.degree()).collect())
                .unwrap_or_default(),
            monomials: w.monomials.clone(),
            coefficients: w.coefficients.iter().map(|c| field.to_string(c)).collect(),
            certified_range: [w.certified_range.0, w.certified_range.1],
            candidates_tried: w.candidates_tried,
        }),
        verification: VerificationSummary::from_outcome(holdout_from, dims.end(), outcome),
        notes,
    })
}
