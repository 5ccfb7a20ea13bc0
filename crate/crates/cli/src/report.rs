//! The machine-readable report and its text rendering.
//!
//! Rationals are written as strings (`"3"`, `"-1/2"`) so that the JSON is
//! lossless. Nothing time-dependent is stored, which keeps the document
//! byte-identical across runs with the same config.

use std::fmt::Write as _;

use ext_vanishing::exactmath::{Poly, SeriesWindow};
use ext_vanishing::hilbert::{Provenance, VanishingReport, Verdict};
use ext_vanishing::vanishing::{verify_verdict, VerifyOutcome};
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::CliError;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDocument {
    pub schema: u32,
    pub tool: String,
    pub input: RunConfig,
    /// Absent when the config gives a sequence directly.
    pub algebra: Option<AlgebraSummary>,
    pub ext: ExtSummary,
    pub acting: ActingSummary,
    pub fit: Option<FitSummary>,
    pub reduced: Option<ReducedSummary>,
    pub quasi_polynomial: Option<QuasiPolynomialSummary>,
    pub verdict: VerdictSummary,
    pub witness: Option<WitnessSummary>,
    pub verification: VerificationSummary,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSummary {
    pub preset: String,
    pub field: String,
    pub dim: usize,
    pub radical_dim: usize,
    pub local: bool,
    pub m: String,
    pub n: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtSummary {
    pub start: u64,
    pub dims: Vec<u64>,
    /// Ranks of the free modules `P_0 .. P_{n_max + 1}`; empty for a
    /// given sequence.
    pub betti: Vec<usize>,
    /// False when the algebra is not local and the resolution is only
    /// a projective one.
    pub minimal_resolution: Option<bool>,
}

impl ExtSummary {
    pub fn window(&self) -> Result<SeriesWindow, CliError> {
        SeriesWindow::new(self.start, self.dims.clone()).map_err(|e| CliError::Failed(e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActingSummary {
    /// `ext-generators`, `degree-two` or `degrees`.
    pub source: String,
    /// Computed Ext-ring generator degrees, when asked for.
    pub generator_degrees: Option<Vec<usize>>,
    /// Degrees of the polynomial ring used in the fit.
    pub degrees: Vec<usize>,
    pub period: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FitSummary {
    pub train_from: u64,
    pub train_to: u64,
    pub guard: usize,
    /// Coefficients in ascending order of `h(z)` with
    /// `sum a_n z^n = h(z) / prod (1 - z^{d_i})`.
    pub numerator: Vec<String>,
    pub denominator_degrees: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReducedSummary {
    pub poly_part: Vec<String>,
    pub numerator: Vec<String>,
    pub denominator: Vec<String>,
    pub factor_count: usize,
    pub valid_from: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuasiPolynomialSummary {
    pub period: usize,
    pub valid_from: u64,
    /// `components[j]` gives `g_j(n)` for `n = j mod period`, ascending
    /// coefficients in `n`.
    pub components: Vec<Vec<String>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictKind {
    EventuallyZero,
    PeriodicNonvanishing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProvenanceKind {
    QuasiPolynomial,
    RegularElement,
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictSummary {
    pub verdict: VerdictKind,
    pub period: usize,
    pub nonvanishing_residues: Vec<usize>,
    pub m0: u64,
    pub provenance: ProvenanceKind,
    pub minimal_period: usize,
}

impl From<&VanishingReport> for VerdictSummary {
    fn from(r: &VanishingReport) -> Self {
        VerdictSummary {
            verdict: match r.verdict {
                Verdict::EventuallyZero => VerdictKind::EventuallyZero,
                Verdict::PeriodicNonvanishing => VerdictKind::PeriodicNonvanishing,
            },
            period: r.period,
            nonvanishing_residues: r.nonvanishing_residues.clone(),
            m0: r.m0,
            provenance: match r.provenance {
                Provenance::QuasiPolynomial => ProvenanceKind::QuasiPolynomial,
                Provenance::RegularElement => ProvenanceKind::RegularElement,
                Provenance::Both => ProvenanceKind::Both,
            },
            minimal_period: r.minimal_period,
        }
    }
}

impl From<&VerdictSummary> for VanishingReport {
    fn from(s: &VerdictSummary) -> Self {
        VanishingReport {
            verdict: match s.verdict {
                VerdictKind::EventuallyZero => Verdict::EventuallyZero,
                VerdictKind::PeriodicNonvanishing => Verdict::PeriodicNonvanishing,
            },
            period: s.period,
            nonvanishing_residues: s.nonvanishing_residues.clone(),
            m0: s.m0,
            provenance: match s.provenance {
                ProvenanceKind::QuasiPolynomial => Provenance::QuasiPolynomial,
                ProvenanceKind::RegularElement => Provenance::RegularElement,
                ProvenanceKind::Both => Provenance::Both,
            },
            minimal_period: s.minimal_period,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessSummary {
    pub degree: usize,
    /// Window operators, in order, by their degrees.
    pub operator_degrees: Vec<usize>,
    pub monomials: Vec<Vec<usize>>,
    pub coefficients: Vec<String>,
    /// Inclusive range of source degrees on which the element is injective.
    pub certified_range: [u64; 2],
    pub candidates_tried: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckOutcome {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerificationSummary {
    pub holdout_from: u64,
    pub holdout_to: u64,
    pub outcome: CheckOutcome,
    /// First index contradicting the verdict.
    pub failed_at: Option<u64>,
}

impl VerificationSummary {
    pub fn from_outcome(from: u64, to: u64, outcome: VerifyOutcome) -> Self {
        let (outcome, failed_at) = match outcome {
            VerifyOutcome::Pass => (CheckOutcome::Pass, None),
            VerifyOutcome::Fail { position } => (CheckOutcome::Fail, Some(position)),
        };
        VerificationSummary {
            holdout_from: from,
            holdout_to: to,
            outcome,
            failed_at,
        }
    }

    pub fn outcome(&self) -> VerifyOutcome {
        match self.failed_at {
            Some(position) => VerifyOutcome::Fail { position },
            None => VerifyOutcome::Pass,
        }
    }
}

pub fn poly_strings(p: &Poly) -> Vec<String> {
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let doc: ReportDocument = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            CliError::Config(format!("in report at `{path}`: {}", e.into_inner()))
        })?;
        if doc.schema != REPORT_SCHEMA_VERSION {
            return Err(CliError::Config(format!("in report at `schema`: unsupported version {}", doc.schema)));
        }
        Ok(doc)
    }

    /// Checks the stored verdict against the stored holdout dimensions.
    pub fn reverify(&self) -> Result<VerifyOutcome, CliError> {
        let v = &self.verification;
        let holdout = self
            .ext
            .window()?
            .slice(v.holdout_from, v.holdout_to)
            .map_err(|e| CliError::Failed(e.to_string()))?;
        Ok(verify_verdict(&VanishingReport::from(&self.verdict), &holdout))
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        match &self.algebra {
            Some(a) => {
                let _ = writeln!(
                    out,
                    "algebra {} over {} (dim {}, radical dim {}), M = {}, N = {}",
                    a.preset, a.field, a.dim, a.radical_dim, a.m, a.n
                );
            }
            None => {
                let _ = writeln!(out, "sequence given directly");
            }
        }
        let dims: Vec<String> = self.ext.dims.iter().map(u64::to_string).collect();
        let _ = writeln!(
            out,
            "dims n = {}..{}: {}",
            self.ext.start,
            self.ext.start + self.ext.dims.len() as u64 - 1,
            dims.join(" ")
        );
        if self.ext.minimal_resolution == Some(false) {
            let _ = writeln!(out, "resolution is projective but not minimal (algebra is not local)");
        }
        let ac = &self.acting;
        if let Some(g) = &ac.generator_degrees {
            let _ = writeln!(out, "Ext-ring generator degrees: {g:?}");
        }
        let _ = writeln!(out, "acting ring ({}): degrees {:?}, d = {}", ac.source, ac.degrees, ac.period);
        if let Some(fit) = &self.fit {
            let _ = writeln!(
                out,
                "fit on n = {}..{} (guard {}): numerator [{}] over degrees {:?}",
                fit.train_from,
                fit.train_to,
                fit.guard,
                fit.numerator.join(", "),
                fit.denominator_degrees
            );
        }
        if let Some(qp) = &self.quasi_polynomial {
            for (j, c) in qp.components.iter().enumerate() {
                let _ = writeln!(out, "  g_{j}(n) = {}", render_poly(c));
            }
        }
        let v = &self.verdict;
        let provenance = match v.provenance {
            ProvenanceKind::QuasiPolynomial => "quasi-polynomial",
            ProvenanceKind::RegularElement => "regular element",
            ProvenanceKind::Both => "quasi-polynomial and regular element",
        };
        match v.verdict {
            VerdictKind::EventuallyZero => {
                let _ = writeln!(out, "verdict: Ext^n(M, N) = 0 for all n >= {}", v.m0);
            }
            VerdictKind::PeriodicNonvanishing => {
                let residues: Vec<String> = v.nonvanishing_residues.iter().map(usize::to_string).collect();
                let _ = writeln!(
                    out,
                    "verdict: periodic nonvanishing, d = {}, nonzero exactly for n = {{{}}} mod {} once n >= {}",
                    v.period,
                    residues.join(", "),
                    v.period,
                    v.m0
                );
                if v.period == 2 && v.nonvanishing_residues.len() == 1 {
                    let parity = if v.nonvanishing_residues[0] == 0 { "even" } else { "odd" };
                    let _ = writeln!(
                        out,
                        "  all even or all odd: for n >= {} the group Ext^n(M, N) is nonzero exactly for {parity} n",
                        v.m0
                    );
                }
            }
        }
        let _ = writeln!(out, "provenance: {provenance}; minimal period {}", v.minimal_period);
        if let Some(w) = &self.witness {
            let terms: Vec<String> = w
                .monomials
                .iter()
                .zip(&w.coefficients)
                .filter(|(_, c)| c.as_str() != "0")
                .map(|(m, c)| {
                    let word: Vec<String> = m.iter().map(|i| format!("t{i}")).collect();
                    format!("{c}*{}", word.join(""))
                })
                .collect();
            let _ = writeln!(
                out,
                "regular element of degree {}: {} injective for source degrees {}..{} ({} candidates)",
                w.degree,
                terms.join(" + "),
                w.certified_range[0],
                w.certified_range[1],
                w.candidates_tried
            );
        }
        let h = &self.verification;
        match h.failed_at {
            None => {
                let _ = writeln!(out, "holdout n = {}..{}: pass", h.holdout_from, h.holdout_to);
            }
            Some(p) => {
                let _ = writeln!(out, "holdout n = {}..{}: FAIL at n = {p}", h.holdout_from, h.holdout_to);
            }
        }
        for note in &self.notes {
            let _ = writeln!(out, "note: {note}");
        }
        out
    }
}

fn render_poly(coeffs: &[String]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| c.as_str() != "0")
        .map(|(i, c)| match i {
            0 => c.clone(),
            1 => format!("{c}*n"),
            _ => format!("{c}*n^{i}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}
