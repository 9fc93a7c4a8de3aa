//! Exact enumeration and series analysis of polyominoes with nearly convex
//! columns ("level-m column-subconvex polyominoes") on the hexagonal lattice.
//!
//! The crate has three layers that check one another:
//!
//! - [`lattice`] and [`enumerate`] provide the combinatorial ground truth:
//!   hexagonal-lattice geometry, a Redelmeier-style exhaustive enumerator,
//!   and a column-state dynamic program that reaches much larger areas.
//! - [`qseries`], [`closedform`] and [`temperley`] provide the algebra:
//!   a truncated power-series ring over exact rationals, the closed-form
//!   area generating function for the level-one model, and the six-equation
//!   linear system it comes from.
//! - [`analysis`] turns coefficient tables and certified denominator
//!   evaluations into growth constants, amplitudes and rigorous bounds.
//!
//! Everything algebraic is cross-checked against brute-force enumeration
//! wherever the ranges overlap; see the `acceptance` test suite and the
//! runnable examples under `examples/`.

pub mod enumerate;
pub mod lattice;
pub mod qseries;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty figure: {0}")]
    EmptyFigure(&'static str),
    #[error("figure is not a polyomino (cell-adjacency graph is disconnected)")]
    NotPolyomino,
    #[error("operation requires a figure with at least two columns")]
    SingleColumn,
    #[error("figure is neither a level-{level} polyomino nor an incomplete one")]
    Unclassifiable { level: u32 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("series error: {0}")]
    Series(String),
    #[error("division by a series of higher valuation than the dividend")]
    SeriesDivision,
    #[error("no invertible pivot available while solving the series system")]
    NoPivot,
    #[error("counter overflow in dynamic program at area {0}")]
    Overflow(usize),
    #[error("evaluation point outside the admissible domain")]
    OutOfDomain,
    #[error("tail bound does not converge at this evaluation point")]
    NonConvergentTail,
    #[error("no sign change over the given bracket")]
    NoSignChange,
    #[error("precision cap reached; best interval so far: [{0}, {1}]")]
    PrecisionCap(String, String),
    #[error("too few terms: need at least {need}, have {have}")]
    TooFewTerms { need: usize, have: usize },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
