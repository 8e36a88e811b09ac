use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what}: argument {value} is outside the domain")]
    Domain { what: &'static str, value: f64 },

    #[error("polygamma order {order} is not supported (maximum {max})")]
    UnsupportedOrder { order: usize, max: usize },

    #[error("quadrature did not converge within {budget} subdivisions")]
    NonConvergence { budget: usize },

    #[error("{0} overflows binary64")]
    Overflow(&'static str),

    #[error("series operands differ in expansion point or order")]
    SeriesMismatch,

    #[error("series division by a series with zero constant term")]
    ZeroConstantTerm,

    #[error("logarithm of a series with nonpositive constant term {0}")]
    NonPositiveConstant(f64),

    #[error("derivative order {requested} exceeds the available order {available}")]
    OrderExceeded { requested: usize, available: usize },

    #[error("series coefficient {index} has magnitude {magnitude:e}, above the overflow guard")]
    CoefficientOverflow { index: usize, magnitude: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("x = {x} lies within {distance:e} of the removable point {point}")]
    NearRemovablePoint { x: f64, point: f64, distance: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("finite-difference step underflows near the domain boundary at x = {0}")]
    StepUnderflow(f64),

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

impl Error {
    pub(crate) fn domain(what: &'static str, value: f64) -> Self {
        Error::Domain { what, value }
    }

    pub(crate) fn parse(input: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            input: input.to_string(),
            reason: reason.into(),
        }
    }
}
