use alloc::string::String;

use crate::exactnum::Field;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: Field, right: Field },
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("cannot parse scalar {input:?}: {reason}")]
    ScalarParse { input: String, reason: String },
    #[error("matrix dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("dim V({i},{j}) = {dij} differs from dim V({j},{i}) = {dji}")]
    AsymmetricDims { i: usize, j: usize, dij: usize, dji: usize },
    #[error("form E({i},{j}) is degenerate")]
    DegenerateForm { i: usize, j: usize },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("graph has no bilinear forms attached")]
    MissingForms,
    #[error("graph type is not ADET")]
    NotAdet,
    #[error("combinatorial and spectral classification disagree: {0}")]
    ClassificationMismatch(String),
    #[error("boundary mismatch: expected {expected} points, found {found}")]
    BoundaryMismatch { expected: usize, found: usize },
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("quantum integer [{0}] vanishes")]
    QuantumIntegerZero(usize),
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("rescaling factor at vertex {0} is zero")]
    ZeroScale(usize),
    #[error("compute budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("zig-zag identity failed for the graded realization")]
    ZigZagFailure,
}
