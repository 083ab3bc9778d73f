use thiserror::Error;

/// Errors raised by model construction, simulation and validation.
#[derive(Debug, Error)]
pub enum Error {
    /// A distribution or model parameter is outside its domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A scenario-level setting is inconsistent.
    #[error("invalid scenario: {0}")]
    Config(String),

    /// The requested support interval carries essentially no probability
    /// mass (below 1e-300), so conditional quantities are undefined.
    #[error("probability mass underflow over [{lo}, {hi}]")]
    MassUnderflow { lo: f64, hi: f64 },

    /// The requested moment integral does not converge.
    #[error("moment of order {order} diverges")]
    DivergentMoment { order: u32 },

    /// Numeric convolution is limited to short lists.
    #[error("numeric convolution supports 2 or 3 densities, got {0}")]
    UnsupportedConvolutionSize(usize),

    /// An empirical operation was asked for on an empty sample set.
    #[error("empty sample set")]
    EmptySamples,

    /// A scenario file could not be parsed.
    #[error("scenario parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
