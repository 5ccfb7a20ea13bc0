//! Cohomology dimension sequences over small finite-dimensional algebras and
//! the classification of their asymptotic vanishing.
//!
//! The crate is organised bottom-up:
//!
//! - [`exactmath`]: exact fields, matrices, polynomials, power series;
//! - [`algebra`]: basis algebras, modules, minimal resolutions, Ext, chain
//!   operators and Ext-ring generators;
//! - [`hilbert`]: rational generating functions, quasi-polynomials and the
//!   eventually-zero / periodic-nonvanishing classification;
//! - [`vanishing`]: regular-element search on operator windows and the
//!   end-to-end analysis pipeline.

pub mod algebra;
pub mod exactmath;
pub mod hilbert;
pub mod vanishing;
