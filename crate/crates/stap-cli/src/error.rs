//! Error/exit-code plumbing. Contract: 0 = success (thresholds met),
//! 1 = configuration/usage error, 2 = runtime (I/O or numerical-accuracy)
//! error, 3 = threshold violation.

use std::fmt;

#[derive(Debug)]
pub enum CliError {
    /// Bad flag/config/value combination — exit 1.
    Config(String),
    /// I/O failure or numerical-accuracy violation — exit 2.
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 1,
            CliError::Runtime(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Runtime(m) => write!(f, "runtime error: {m}"),
        }
    }
}

pub fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

pub fn runtime_err(msg: impl Into<String>) -> CliError {
    CliError::Runtime(msg.into())
}

impl From<stap_core::Error> for CliError {
    fn from(e: stap_core::Error) -> Self {
        match e {
            // invalid values and unsupported request combinations are the
            // caller's to fix
            stap_core::Error::Parameter(_) | stap_core::Error::Unsupported(_) => {
                CliError::Config(e.to_string())
            }
            stap_core::Error::Dimension(_) | stap_core::Error::Accuracy(_) => {
                CliError::Runtime(e.to_string())
            }
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(format!("I/O error: {e}"))
    }
}

pub const EXIT_THRESHOLD: i32 = 3;
