use thiserror::Error;

use crate::fock::Mode;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Two fermions were placed in the same composite mode.
    #[error("Pauli exclusion: two fermions cannot occupy mode (path {}, label {})", .mode.path, .mode.label)]
    PauliExclusion { mode: Mode },

    #[error("fermionic monomial is not in canonical order")]
    NotNormalOrdered,

    #[error("path index {path} out of range for {n_paths} paths")]
    PathOutOfRange { path: usize, n_paths: usize },

    #[error("beamsplitter needs two distinct paths, got {0} twice")]
    EqualPaths(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not unitary (max deviation {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("statistics mismatch: circuit is {circuit:?}, input is {input:?}")]
    StatisticsMismatch {
        circuit: crate::Statistics,
        input: crate::Statistics,
    },

    #[error("state has {count} particles, more than the supported {limit}")]
    TooManyParticles { count: u32, limit: u32 },

    #[error("overlap parameter r = {0} is outside [0, 1]")]
    InvalidOverlap(f64),

    #[error("particle number mismatch: {input} in, {output} out")]
    ParticleNumberMismatch { input: u32, output: u32 },

    #[error("permanent of a {0}x{0} matrix exceeds the supported size")]
    MatrixTooLarge(usize),
}
