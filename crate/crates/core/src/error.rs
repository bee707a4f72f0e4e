use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0}: empty input")]
    Empty(&'static str),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("ground set size {d} outside supported range {min}..={max}")]
    DimensionOutOfRange { d: usize, min: usize, max: usize },
    #[error("set function is not submodular")]
    NotSubmodular,
    #[error("set function must vanish on the empty set")]
    NonzeroAtEmptySet,
    #[error("vertices have unequal coordinate sums")]
    UnequalCoordinateSums,
    #[error("not a permutation of 0..{0}")]
    InvalidPermutation(usize),
    #[error("invalid composition: {0}")]
    InvalidComposition(String),
    #[error("face is not a face of this polytope")]
    NotAFace,
    #[error("k = {k} out of range 0..={max}")]
    KOutOfRange { k: usize, max: usize },
    #[error("enumeration of {needed} items exceeds budget {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),
    #[error("invalid heading: {0}")]
    InvalidHeading(String),
    #[error("invalid coloring: {0}")]
    InvalidColoring(String),
    #[error("invalid polytope: {0}")]
    InvalidPolytope(String),
    #[error("fan is not complete: lattice point {0:?} lies in no cone")]
    FanNotComplete(Vec<i64>),
    #[error("interpolation check failed at t = {t}: model gives {model}, count is {count}")]
    InterpolationMismatch { t: i64, model: String, count: String },
    #[error("coefficients too large for machine-integer counting")]
    Overflow,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
