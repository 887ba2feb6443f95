use thiserror::Error;

pub type Result<T, E = FriezeError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum FriezeError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("division by zero")]
    DivisionByZero,

    /// A search would visit (or has visited) more nodes than allowed.
    #[error("resource limit exceeded: {what} needs more than {cap} nodes{}", visited_note(*.visited))]
    ResourceLimit { what: String, visited: u64, cap: u64 },

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    /// Internal consistency check failed. Always a bug.
    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("unsupported parameters: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn visited_note(visited: u64) -> String {
    if visited == 0 { " (refused before searching)".into() } else { format!(" (stopped after {visited})") }
}

impl FriezeError {
    /// Process exit status for the command-line front end: 2 for anything the
    /// caller asked wrong, 3 for caps, 1 for a failed mathematical check.
    pub fn exit_code(&self) -> i32 {
        match self {
            FriezeError::ResourceLimit { .. } => 3,
            FriezeError::PreconditionViolation(_) | FriezeError::InvariantViolation(_) => 1,
            _ => 2,
        }
    }
}
