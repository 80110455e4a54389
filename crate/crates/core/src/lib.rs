//! Good edge-labellings of simple graphs.
//!
//! A labelling of the edges with real numbers is *good* when every ordered
//! vertex pair (u, v) has at most one nondecreasing path from u to v; a graph
//! is good when it admits a good labelling. This crate provides:
//!
//! - graphs, generators, and structural screens ([`graph`], [`generate`]),
//! - nice-walk counting and goodness verdicts with witnesses ([`walks`]),
//! - the exact-rational bound calculus and badness certificates ([`bounds`]),
//! - labelling constructions, exhaustive decision, and the gamma table
//!   ([`label`]),
//! - plain-text graph and labelling formats ([`format`]).
//!
//! All label comparisons and bound evaluations are exact; nothing on a
//! decision path uses floating point. Randomized operations are reproducible
//! from their seed alone.

#![forbid(unsafe_code)]

pub mod bounds;
pub mod error;
pub mod format;
pub mod generate;
pub mod graph;
pub mod label;
pub mod labelling;
pub mod rational;
pub mod walks;

pub use error::{Error, Result};
pub use graph::Graph;
pub use labelling::Labelling;
