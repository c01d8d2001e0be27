use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input text. `line` is 1-based; 0 means the input as a whole.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),

    /// A caller broke an operation's documented precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A search refused to run because its input exceeds the configured budget.
    #[error("budget exceeded: {0}")]
    Budget(String),

    /// Two independent computations disagreed. Always a bug, never bad input.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn precondition(message: impl Into<String>) -> Self {
        Error::Precondition(message.into())
    }

    /// True for errors caused by the input text or vertex ids, as opposed to
    /// contract, budget or internal failures.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. } | Error::VertexOutOfRange { .. } | Error::SelfLoop(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
