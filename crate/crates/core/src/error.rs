use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter `{name}` = {value} is out of domain: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("bisection did not converge after {iterations} iterations; best bracket for ln p is [{lo}, {hi}]")]
    NonConvergence { iterations: usize, lo: f64, hi: f64 },

    #[error("derivative of the fixed point is singular at p = {p} (scaled g(p) = {g})")]
    Singular { p: f64, g: f64 },

    #[error("optimizer output failed re-verification: closed form gives {closed_form}, full solve gives {solved}")]
    VerificationFailed { closed_form: f64, solved: f64 },

    #[error("invalid simulation config: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
