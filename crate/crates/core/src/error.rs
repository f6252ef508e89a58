use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Input outside the operation's domain (wrong group kind, bad genus, bad angle, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A numerical procedure did not reach the requested accuracy.
    #[error("{what} did not converge: estimate {estimate:e}, residual {residual:e}")]
    NonConvergent {
        what: String,
        estimate: f64,
        residual: f64,
    },

    /// The quantity is infinite (divergent series or integral).
    #[error("divergent: {0}")]
    Divergent(String),

    /// Enumeration would exceed the tuple budget.
    #[error("resource limit: {needed} tuples exceeds budget of {budget}")]
    Budget { needed: u128, budget: u64 },

    #[error("invalid group construction: {0}")]
    Construction(String),
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
