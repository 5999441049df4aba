use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),

    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// The degree cap was too small to finish a completion or certify a basis.
    #[error("cap-insufficient (cap {cap}): {detail}")]
    CapInsufficient { cap: usize, detail: String },

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("configuration error: {0}")]
    Config(String),
}

impl Error {
    /// Cap and resource problems are computational limits, not mathematical failures.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::CapInsufficient { .. } | Error::Resource(_))
    }
}
