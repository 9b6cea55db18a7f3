use thiserror::Error;

/// Errors raised by the field, propagation, element, analysis and scenario layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum OpticsError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("incompatible grids: {0}")]
    IncompatibleGrid(String),

    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("object at the focal plane (u = f = {0} m) has no finite image")]
    NoFiniteImage(f64),

    #[error("object inside the focal length (u = {u} m < f = {f} m) forms a virtual image")]
    VirtualImage { u: f64, f: f64 },

    #[error("undefined ratio: {0}")]
    UndefinedRatio(String),

    #[error("analysis error: {0}")]
    Analysis(String),

    #[error("configuration error: {0}")]
    Configuration(String),
}

pub type Result<T> = std::result::Result<T, OpticsError>;
