use thiserror::Error;

use crate::complex::Simplex;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("simplex has repeated vertex {0}")]
    RepeatedVertex(u32),
    #[error("simplex must have at least one vertex")]
    EmptySimplex,
    #[error("complex is not face-closed: {face} is missing (face of {simplex})")]
    NotFaceClosed { simplex: Simplex, face: Simplex },
    #[error("invalid weight {weight} on {simplex}")]
    InvalidWeight { simplex: Simplex, weight: f64 },
    #[error("duplicate simplex {0}")]
    DuplicateSimplex(Simplex),
    #[error("chain dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("simplex {0} is not in the complex")]
    NotInComplex(Simplex),
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("decomposition does not match the graph: {0}")]
    GraphMismatch(String),
    #[error("bag scope of {0} simplices exceeds the 127-bit table key")]
    ScopeTooLarge(usize),
    #[error("time limit exceeded")]
    Timeout,
    #[error("entry cap exceeded ({0} entries)")]
    MemoryCap(usize),
    #[error("brute force over {count} simplices exceeds the cap of {cap}")]
    TooLarge { count: usize, cap: usize },
    #[error("no nontrivial homology in dimension {0}")]
    TrivialHomology(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("root table has no feasible entry")]
    Infeasible,
}

pub type Result<T> = std::result::Result<T, Error>;
