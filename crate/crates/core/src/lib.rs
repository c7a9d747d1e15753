//! Exact-arithmetic engine for piecewise-linear embeddings of complete graphs.
//!
//! Embeddings carry exact rational coordinates and are projected to crossing
//! diagrams without any tolerance. On top of the diagrams the crate computes
//! linking numbers and the second Conway coefficient `a2`, enumerates cycles of
//! `K_n`, and runs the constructive searches for links of large linking number
//! and knots of large `|a2|`.

pub mod constructions;
pub mod cycles;
pub mod diagram;
mod error;
pub mod format;
pub mod geometry;
pub mod invariants;
pub mod scenarios;

pub use crate::error::{Error, Result};
pub use crate::geometry::{Axis, Edge, Embedding, Point3, Rational};
pub use crate::diagram::{Cycle, Diagram, GaussCode, OrientedLink};
