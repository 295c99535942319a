use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("capacity exceeded: {what} needs {needed}, cap is {cap}")]
    Capacity {
        what: &'static str,
        needed: u64,
        cap: u64,
    },

    #[error("graph generation failed: {reason} (degrees {degrees:?})")]
    Generation { reason: String, degrees: Vec<usize> },

    #[error("degree sequence is not graphical: Erdos-Gallai condition fails at k = {index}")]
    NotGraphical { index: usize },

    #[error("scaling undefined: graph has no edges")]
    NoEdges,

    #[error("solver did not converge after {iterations} iterations (best residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("invalid data: {0}")]
    Data(String),

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn param<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parameter(msg.into()))
}
