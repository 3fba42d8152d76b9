use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("incompatible cyclotomic levels: {0} and {1}")]
    LevelMismatch(u32, u32),
    #[error("division by zero in Q(ζ_{0})")]
    CyclotomicDivisionByZero(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("series not invertible: {0}")]
    NotInvertible(String),
    #[error("incompatible series: {0}")]
    SeriesMismatch(String),
    #[error("invalid level N = {0}: Eisenstein series require N >= 2")]
    InvalidLevel(i64),
    #[error("too few values: partition has {needed} parts but only {got} values were given")]
    TooFewValues { needed: usize, got: usize },
    #[error("missing Chern number for partition {0}")]
    MissingChernNumber(String),
    #[error("zero weight at point {point}, slot {slot}")]
    ZeroWeight { point: usize, slot: usize },
    #[error("no fixed points")]
    NoFixedPoints,
    #[error("ragged weight vectors: point {point} has {got} weights, expected {expected}")]
    RaggedWeights { point: usize, expected: usize, got: usize },
    #[error("localization integrality violated: {0}")]
    IntegralityViolated(String),
    #[error("below localization degree: k = {k} < n = {n}")]
    BelowLocalizationDegree { k: usize, n: usize },
    #[error("pole at t=1: not a global index (coefficient of s^{exponent} is {coefficient})")]
    PoleAtOne { exponent: i64, coefficient: String },
    #[error("H_m not polynomial of degree ≤ n: interpolant predicts {predicted} at k = {node}, localization gives {actual}")]
    NotPolynomial { node: i64, predicted: String, actual: String },
    #[error("invalid projective-space weights: {0}")]
    InvalidCpnWeights(String),
    #[error("non-generic circle direction: root {root} of coset {coset} pairs to zero")]
    NonGenericDirection { coset: usize, root: String },
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("degenerate lattice edge: endpoints coincide")]
    DegenerateEdge,
    #[error("empty edge list")]
    NoEdges,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}
