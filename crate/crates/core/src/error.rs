use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole in 1F1(-{n}; {b}; x): (b)_k vanishes at k = {k}")]
    Pole { n: u32, b: f64, k: u32 },

    #[error("overflow evaluating {0}")]
    Overflow(&'static str),

    #[error("quadrature on [{a}, {b}] did not converge (subdivision limit)")]
    Quadrature { a: f64, b: f64 },

    #[error("{what}: x = {x} outside domain ({lo}, {hi})")]
    Domain { what: &'static str, x: f64, lo: f64, hi: f64 },

    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("validity error: {0}")]
    Validity(String),

    #[error("non-finite coefficient at grid point x = {x}")]
    Singular { x: f64 },

    #[error("requested {k} eigenvalues of an operator of size {n}")]
    Range { k: usize, n: usize },

    #[error("inverse iteration did not converge for lambda = {lambda}")]
    NoConvergence { lambda: f64 },

    #[error("function vanishes on the whole grid")]
    ZeroNorm,

    #[error("grid [{left}, {right}] does not cover the support of level n = {n}, l = {l} (boundary ratio {ratio:.3e})")]
    Support { left: f64, right: f64, n: u32, l: u32, ratio: f64 },

    #[error("invalid grid: {0}")]
    Grid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
