use thiserror::Error;

/// Errors produced by the solver library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A zero-range potential was asked for a pointwise value.
    #[error("zero-range potential is not pointwise evaluable")]
    NotPointwise,

    /// Bad configuration (missing key, malformed value, inconsistent family).
    #[error("configuration error: {0}")]
    Config(String),

    /// The 2D scattering length does not exist for this potential.
    #[error("scattering length undefined: {0}")]
    ScatteringLengthUndefined(String),

    /// Logarithmic fit of the zero-energy solution did not hold in the window.
    #[error("scattering-length fit window invalid: residual {residual:.3e} exceeds {limit:.3e}")]
    RangeWindow { residual: f64, limit: f64 },

    /// The angular discretization does not resolve the problem.
    #[error("grid error: {0}")]
    Grid(String),

    /// Complex eigenvalues where the spectrum must be real.
    #[error("discretization error: eigenvalue {re} has imaginary part {im:.3e}")]
    NonReal { re: f64, im: f64 },

    /// Adiabatic channel identity could not be tracked between neighbouring points.
    #[error("channel tracking failed at rho = {rho}: overlap {overlap:.3}")]
    Tracking { rho: f64, overlap: f64 },

    /// Finite-difference derivatives disagree under step refinement.
    #[error("finite-difference step error at rho = {rho}: Richardson mismatch {mismatch:.3e}")]
    StepSize { rho: f64, mismatch: f64 },

    /// Iterative numerics failed to converge.
    #[error("numerical failure in {context}: {detail}")]
    Numerical {
        context: &'static str,
        detail: String,
    },

    /// A caller-side contract was violated (e.g. unnormalized state).
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn numerical(context: &'static str, detail: impl Into<String>) -> Self {
        Error::Numerical {
            context,
            detail: detail.into(),
        }
    }

    /// Process exit code for the CLI: 2 for configuration problems, 3 for numerics.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Io(_) => 2,
            _ => 3,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
