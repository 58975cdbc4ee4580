use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("position ({x}, {y}) lies outside the {width}x{height} domain")]
    DomainBounds { x: f64, y: f64, width: u32, height: u32 },

    #[error("structural error: {0}")]
    Structure(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("attractor placement failed: {0}")]
    Placement(String),

    #[error("invalid state: {0}")]
    State(String),

    #[error("no bifurcations to evaluate")]
    NoBifurcation,

    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    Dimension(u32, u32, u32, u32),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("image codec: {0}")]
    Image(#[from] image::ImageError),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn param(msg: impl Into<String>) -> Error {
    Error::Parameter(msg.into())
}
