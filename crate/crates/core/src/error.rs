use std::fmt;

use thiserror::Error;

/// A text-format error with the offending token and its byte offset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub token: String,
    pub message: String,
}

impl ParseError {
    pub fn new(position: usize, token: impl Into<String>, message: impl Into<String>) -> Self {
        ParseError {
            position,
            token: token.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at position {} (token {:?})",
            self.message, self.position, self.token
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("invalid origami: {0}")]
    InvalidOrigami(String),
    #[error("matrix [[{a},{b}],[{c},{d}]] has determinant {det}, not 1")]
    NotSl2 {
        a: i64,
        b: i64,
        c: i64,
        d: i64,
        det: i64,
    },
    #[error("orbit larger than cap {cap} (explored {explored} nodes)")]
    OrbitCap { cap: usize, explored: usize },
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("not an affine word: {0} does not stabilize the origami")]
    NotAffineWord(String),
    #[error("word {0} is not direct hyperbolic")]
    NotDirectHyperbolic(String),
    #[error("origami has {0} automorphisms; the affine action on homology is not determined by the matrix")]
    NontrivialAutomorphisms(usize),
    #[error("characteristic polynomial has non-integral coefficient {0}")]
    NonIntegralCharPoly(String),
    #[error("polynomial {0} is not reciprocal")]
    NotReciprocal(String),
    #[error("polynomial {0} is not squarefree")]
    NotSquarefree(String),
    #[error("vectors do not form a basis: {0}")]
    NotABasis(String),
    #[error("splitting degree is not a power of two; use compositum evidence instead")]
    NotTwoPowerDegree,
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
