use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("state is not normalized (|a1|^2 + |a2|^2 = {norm_sq})")]
    Unnormalized { norm_sq: f64 },

    #[error("zero-length Bloch vector has no polar angles")]
    ZeroVector,

    #[error("matrix is not unitary (max |U^dag U - I| = {residual:e})")]
    NonUnitary { residual: f64 },

    #[error("library size {size} exceeds the full-vector verification cap {cap}")]
    VerificationCap { size: usize, cap: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("step size {dt} exceeds the stability limit {limit}")]
    StepSize { dt: f64, limit: f64 },

    #[error("dephasing rate {gamma} is outside the {regime} regime for N = {size}")]
    WrongRegime {
        gamma: f64,
        size: f64,
        regime: &'static str,
    },

    #[error("success probability {p_star} is never reached (supremum {supremum})")]
    Unreachable { p_star: f64, supremum: f64 },

    #[error(
        "interval does not bracket the target {target}: f({lo}) = {f_lo}, f({hi}) = {f_hi}"
    )]
    NonBracketing {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
        target: f64,
    },

    #[error("degenerate grid: {0}")]
    DegenerateGrid(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Process exit status for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::InvalidParameter(_) | Error::DegenerateGrid(_) => 2,
            Error::Io { .. } => 4,
            _ => 3,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
