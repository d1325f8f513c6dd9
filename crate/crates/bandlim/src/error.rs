use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid spec:\n  {}", .0.join("\n  "))]
    Parse(Vec<String>),
    #[error("unknown builtin `{name}`; available: {available}")]
    UnknownBuiltin { name: String, available: String },
    #[error("invalid family parameters: {0}")]
    InvalidFamily(bandlim_core::Error),
    #[error("invalid argument {0}")]
    Argument(String),
    #[error(transparent)]
    Core(#[from] bandlim_core::Error),
    #[error("io: {0}")]
    Io(String),
}
