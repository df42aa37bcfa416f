use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("source {index} at distance {distance} m lies outside the ball of radius {radius} m")]
    Containment {
        index: usize,
        distance: f64,
        radius: f64,
    },

    #[error("fields are sampled on different grids")]
    GridMismatch,

    #[error("grid exactness degree {available} is below the required degree {required}")]
    InsufficientExactness { required: usize, available: usize },

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
