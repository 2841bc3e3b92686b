use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("zero rational function")]
    ZeroFunction,
    #[error("pole at {0}")]
    Pole(String),
    #[error("cusp: d = 0 is not in the coarse moduli space")]
    Cusp,
    #[error("Weierstrass discriminant vanishes identically")]
    DegenerateFamily,
    #[error("two tracked roots came within the safety radius near lambda = {0}")]
    RootCollision(String),
    #[error("path tracker step size underflowed near lambda = {0}")]
    NonConvergence(String),
    #[error("tracked root set failed to close up after the loop (relative error {0:e})")]
    LoopNotClosed(f64),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("cover is disconnected ({0} orbits)")]
    Disconnected(usize),
    #[error("branch marks do not match: {0}")]
    MarkMismatch(String),
    #[error("invalid branch data: {0}")]
    InvalidBranchData(String),
    #[error("unsupported by the formula: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
