use thiserror::Error;

/// Errors raised by setup, the spatial operators and the run drivers.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("numeric error: {0}")]
    Numeric(String),

    /// Non-physical state (density or pressure not positive, or non-finite).
    #[error("positivity violation in cell {cell} node {node:?} (stage {stage:?}, t = {time:?}): {detail}")]
    Positivity {
        cell: usize,
        node: Option<usize>,
        stage: Option<usize>,
        time: Option<f64>,
        detail: String,
    },
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn positivity(cell: usize, node: Option<usize>, detail: impl Into<String>) -> Self {
        Error::Positivity {
            cell,
            node,
            stage: None,
            time: None,
            detail: detail.into(),
        }
    }

    /// Attach RK stage and time information to a positivity error.
    pub fn at_stage(self, stage_idx: usize, t: f64) -> Self {
        match self {
            Error::Positivity {
                cell, node, detail, ..
            } => Error::Positivity {
                cell,
                node,
                stage: Some(stage_idx),
                time: Some(t),
                detail,
            },
            other => other,
        }
    }

    /// Remap the cell index of a positivity error (line-local to global).
    pub(crate) fn map_cell(self, f: impl FnOnce(usize) -> usize) -> Self {
        match self {
            Error::Positivity {
                cell,
                node,
                stage,
                time,
                detail,
            } => Error::Positivity {
                cell: f(cell),
                node,
                stage,
                time,
                detail,
            },
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
