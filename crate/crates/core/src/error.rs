use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid grid parameter L = {0}: need L >= 2 and L^2 representable")]
    InvalidGrid(usize),
    #[error("index {index} out of range for N = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("stride {stride} does not divide N = {n}")]
    StrideMismatch { stride: usize, n: usize },
    #[error("grid mismatch: N = {left} vs N = {right}")]
    GridMismatch { left: usize, right: usize },
    #[error("expected {expected} values, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("non-finite value at index {0}")]
    NonFinite(usize),
    #[error("window is identically zero")]
    ZeroWindow,
    #[error("full STFT refused for N = {0} (limit {limit})", limit = crate::transforms::STFT_MAX_N)]
    TooLarge(usize),
    #[error("not a frame: dual window residual {residual:e} after {iterations} iterations")]
    NotAFrame { residual: f64, iterations: usize },
    #[error("frame operator is numerically singular (bounds {lower:e} .. {upper:e})")]
    IllConditioned { lower: f64, upper: f64 },
    #[error("Gabor system has no dual window")]
    MissingDual,
    #[error("aliasing: band {band} needs {needed} frequency slots, stride {stride} leaves {available} ({overlap} overlap)")]
    Aliasing {
        band: usize,
        stride: usize,
        needed: usize,
        available: usize,
        overlap: usize,
    },
    #[error("covariance is not positive semidefinite (smallest eigenvalue {0:e})")]
    NotPositiveSemidefinite(f64),
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
}
