use thiserror::Error;

use crate::steiner::ConstructionFailure;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{what} of size {size} exceeds the cap of {cap}")]
    SizeCap {
        what: &'static str,
        size: u128,
        cap: u128,
    },

    #[error("construction failed: {0}")]
    Construction(Box<ConstructionFailure>),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}

impl From<ConstructionFailure> for Error {
    fn from(f: ConstructionFailure) -> Self {
        Error::Construction(Box::new(f))
    }
}
