use thiserror::Error;

#[derive(Debug, Error)]
pub enum RunError {
    #[error("config error: {0}")]
    Config(String),

    #[error("numerical contract violated: {0}")]
    Numerical(String),

    #[error(transparent)]
    Physics(#[from] wignerkit::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl RunError {
    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => 2,
            RunError::Numerical(_) | RunError::Physics(_) => 3,
            RunError::Io(_) => 1,
        }
    }
}
