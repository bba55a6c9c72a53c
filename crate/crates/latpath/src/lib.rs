//! Exact-arithmetic library for lattice paths with vertical steps.
//!
//! Paths are words over a step alphabet consisting of the vertical step
//! `V = (0,-1)` and non-vertical steps `S_k = (1,k)`. The library counts and
//! enumerates free paths (no sign constraint) and m-primary paths (every
//! point except possibly the last on or above the x-axis), implements the
//! weight-preserving bijection between vertical-step paths and weighted
//! Lukasiewicz-style paths, step statistics, the associated Riordan array,
//! and the functional-equation systems for the primary-path generating
//! functions. All arithmetic is exact (big integers and rationals).

pub mod bijection;
pub mod brute;
pub mod compositions;
pub mod count;
pub mod paths;
pub mod riordan;
pub mod series;
pub mod stats;
pub mod steps;

mod error;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
