use hodgewalk::Error;

/// Failure classes, each with its own exit status.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, parameters or input documents: exit 1.
    Usage(String),
    /// The computation itself failed: exit 2.
    Compute(String),
    /// Reading or writing files failed: exit 2.
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) => 1,
            Self::Compute(_) | Self::Io(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Usage(m) => write!(f, "invalid request: {m}"),
            Self::Compute(m) => write!(f, "computation failed: {m}"),
            Self::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::Rejected(_) | Error::Config(_) => Self::Usage(e.to_string()),
            _ => Self::Compute(e.to_string()),
        }
    }
}

/// Rejects a request unless `cond` holds.
pub fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<(), CliError> {
    if cond {
        Ok(())
    } else {
        Err(CliError::Usage(msg()))
    }
}
