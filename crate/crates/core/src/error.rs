//! Error types shared across the crate.

use num_complex::Complex64;
use thiserror::Error;

/// Errors produced by the expression parser.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown function '{name}' at byte {pos}")]
    UnknownFunction { name: String, pos: usize },
    #[error("only the variable 'z' is allowed, found '{name}' at byte {pos}")]
    NotTheVariable { name: String, pos: usize },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { pos, .. }
            | ParseError::UnknownFunction { pos, .. }
            | ParseError::NotTheVariable { pos, .. } => *pos,
        }
    }
}

/// Errors produced by principal-value evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("{op} hits a pole or singularity at {arg}")]
    PoleOrSingularity { op: String, arg: Complex64 },
    #[error("input point has a non-finite component")]
    NonFinitePoint,
    #[error("integer exponent {0} exceeds the supported range")]
    ExponentOverflow(String),
}

/// Errors produced by the cut engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error("engine limit exceeded: {0}")]
    EngineLimit(String),
    #[error("symbolic inversion failed: {0}")]
    InversionFailure(String),
    #[error("expression is not polynomial in z")]
    NotPolynomial,
    #[error("requested approach cannot handle this input: {0}")]
    ApproachUnsupported(String),
}

/// Errors produced when sampling a cut.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SampleError {
    #[error("cut does not intersect the active window")]
    EmptyInWindow,
    #[error("need at least two sample points, got {0}")]
    TooFewPoints(usize),
}
