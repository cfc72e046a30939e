use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An input violated a precondition.
    #[error("invalid {field}: {reason}")]
    Validation { field: String, reason: String },

    /// A function was evaluated outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("quadrature did not converge: estimate {estimate:e}, error bound {error_bound:e}")]
    Quadrature { estimate: f64, error_bound: f64 },

    /// The ODE integrator gave up; carries the last accepted state.
    #[error("integration failed at t = {t}: {reason} (last state {state:?})")]
    Integration {
        t: f64,
        state: Vec<f64>,
        reason: String,
    },

    #[error("series truncated at n_max = {n_max}: remainder bound {bound:e} exceeds tolerance")]
    SeriesNotConverged { n_max: usize, bound: f64 },

    #[error("value out of representable range: {0}")]
    Range(String),

    /// The imaginary residue of a quantity that must be real was too large.
    #[error("imaginary residue {imag:e} exceeds {limit:e} (real part {real:e})")]
    ImaginaryResidue { real: f64, imag: f64, limit: f64 },

    #[error("config line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("method {method} failed at t = {t}: {source}")]
    SeriesPoint {
        method: String,
        t: f64,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn validation(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            reason: reason.into(),
        }
    }

    /// Process exit code for the command-line driver.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Validation { .. } | Error::Parse { .. } => 2,
            Error::SeriesPoint { source, .. } => source.exit_code(),
            _ => 3,
        }
    }

    /// Short machine-readable kind tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Validation { .. } => "validation",
            Error::Domain(_) => "domain",
            Error::Quadrature { .. } => "quadrature",
            Error::Integration { .. } => "integration",
            Error::SeriesNotConverged { .. } => "series",
            Error::Range(_) => "range",
            Error::ImaginaryResidue { .. } => "imaginary_residue",
            Error::Parse { .. } => "parse",
            Error::SeriesPoint { .. } => "series_point",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }
}
