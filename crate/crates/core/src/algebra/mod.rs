//! Finite-dimensional basis algebras, their modules, minimal free
//! resolutions, Ext groups and chain-level operators.

mod basis;
mod ext;
mod free;
pub mod group;
mod module;
mod operators;
mod radical;
mod resolution;

pub use basis::{AlgebraKind, BasisAlgebra};
pub use ext::{ext_dims, ext_groups, hom_pullback, ExtGroup, ExtSequence};
pub use free::{FreeMap, ModuleMap};
pub use module::{standard_module, FDModule, ModuleKind};
pub use operators::{
    detect_periodicity, ext_ring_generators, lift_chain_map, operator_window, ChainOperator,
    ExtGenerators, Periodicity,
};
pub use resolution::{minimal_resolution, MinimalResolution};

use crate::exactmath::MathError;

/// Size guards for resolutions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest algebra dimension accepted by the resolution engine.
    pub max_algebra_dim: usize,
    /// Largest field dimension of a single free module `P_n`.
    pub max_free_dim: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_algebra_dim: 64,
            max_free_dim: 20_000,
        }
    }
}

/// Dimension cap for the algebra constructors.
pub const DEFAULT_CONSTRUCTOR_CAP: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Math(#[from] MathError),
    #[error("algebra of dimension {dim} exceeds the cap {cap}")]
    OverflowGuard { dim: usize, cap: usize },
    #[error("commutation scalar q does not satisfy q^a = 1")]
    BadCommutator,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("characteristic {characteristic} does not divide the group order {order}")]
    SemisimpleCase { characteristic: u64, order: usize },
    #[error("unsupported algebra: {0}")]
    UnsupportedAlgebra(String),
    #[error("structure constants are not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("basis element {0} is not a two-sided unit")]
    NotUnital(usize),
    #[error("module action is inconsistent: {0}")]
    BadModule(String),
    #[error("algebra has no augmentation onto the ground field")]
    NoAugmentation,
    #[error("dimension cap exceeded: {0}")]
    DimensionCap(String),
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("requested range exceeds the computed resolution: {0}")]
    RangeExceedsResolution(String),
    #[error("internal error: {0}")]
    Internal(String),
}
