use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("{law} evaluated outside its domain at x = {x}")]
    OutOfDomain { law: String, x: f64 },

    #[error("{law} produced a non-finite value at x = {x}")]
    NonFinite { law: String, x: f64 },

    #[error("weighted sum needs at least one term")]
    EmptySum,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),

    #[error("no root of {what} on [{lo:e}, {hi:e}]; scan trace: {trace}")]
    NoRoot {
        what: String,
        lo: f64,
        hi: f64,
        trace: String,
    },

    #[error("unstable orbital motion: {0}")]
    UnstableOrbital(String),

    #[error("degenerate orbital motion: {0}")]
    DegenerateOrbital(String),

    #[error("unstable normal mode (A = {a}, B = {b})")]
    UnstableMode { a: f64, b: f64 },

    #[error(
        "Newton iteration did not converge after {iterations} steps \
         (r_aa = {r_aa}, R0 = {r0}, residuals = [{res_a:e}, {res_b:e}])"
    )]
    NonConvergence {
        iterations: usize,
        r_aa: f64,
        r0: f64,
        res_a: f64,
        res_b: f64,
    },

    #[error("fermionic filling and phi_a did not settle after {iterations} iterations")]
    FillingNotSettled { iterations: usize },

    #[error("no bound solution: {0}")]
    NoBinding(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
