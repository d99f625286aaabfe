pub mod config;
pub mod output;
pub mod parse;
pub mod run;
pub mod verify;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Numerical(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) | CliError::Io(_) => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Numerical(_) => "numerical",
            CliError::Io(_) => "io",
        }
    }
}

macro_rules! numerical_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Numerical(e.to_string())
            }
        }
    )*};
}

numerical_from!(
    dqd_model::ModelError,
    dqd_channel::ChannelError,
    dqd_evolution::EvolutionError,
    dqd_magnetometry::MagError
);
