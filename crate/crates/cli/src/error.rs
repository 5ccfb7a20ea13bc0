use ext_vanishing::algebra::AlgebraError;
use ext_vanishing::hilbert::HilbertError;
use ext_vanishing::vanishing::VanishingError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error {0}")]
    Config(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("fit failure: {0}")]
    NotRational(String),
    #[error("resource cap: {0}")]
    ResourceCap(String),
    #[error("computation failed: {0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Usage(_) | CliError::Io(_) | CliError::Failed(_) => 1,
            CliError::NotRational(_) => 2,
            CliError::ResourceCap(_) => 3,
        }
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::DimensionCap(_) | AlgebraError::OverflowGuard { .. } => CliError::ResourceCap(e.to_string()),
            AlgebraError::InvalidParameters(_)
            | AlgebraError::BadCommutator
            | AlgebraError::NotAGroup(_)
            | AlgebraError::NotAssociative(..)
            | AlgebraError::NotUnital(_)
            | AlgebraError::SemisimpleCase { .. }
            | AlgebraError::UnsupportedAlgebra(_)
            | AlgebraError::NoAugmentation => CliError::Config(format!("(algebra): {e}")),
            _ => CliError::Failed(e.to_string()),
        }
    }
}

impl From<HilbertError> for CliError {
    fn from(e: HilbertError) -> Self {
        match e {
            HilbertError::NotRational { .. } | HilbertError::FitContradiction { .. } => {
                CliError::NotRational(e.to_string())
            }
            HilbertError::InsufficientData { .. } => {
                CliError::Config(format!("at `n_max`: {e}; raise n_max or holdout_from"))
            }
            _ => CliError::Failed(e.to_string()),
        }
    }
}

impl From<VanishingError> for CliError {
    fn from(e: VanishingError) -> Self {
        match e {
            VanishingError::Hilbert(h) => h.into(),
            _ => CliError::Failed(e.to_string()),
        }
    }
}
