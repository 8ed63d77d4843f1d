use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error at `{path}`: {message}")]
    Config { path: String, message: String },

    #[error("{context} {}: {source}", path.display())]
    Io {
        context: &'static str,
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("numerical failure: {0}")]
    Numerical(gramkit::Error),
}

impl CliError {
    pub fn config(path: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Config {
            path: path.into(),
            message: message.into(),
        }
    }

    /// 1 for configuration and I/O problems, 2 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config { .. } | CliError::Io { .. } => 1,
            CliError::Numerical(_) => 2,
        }
    }

    /// Routes a library error raised while building `path` to the right exit class.
    pub(crate) fn from_build(path: &str, err: gramkit::Error) -> Self {
        use gramkit::Error as E;
        match err {
            E::IllConditioned { .. }
            | E::NoConvergence { .. }
            | E::Singular { .. }
            | E::NonPositiveDiagonal { .. }
            | E::KernelVanishes { .. }
            | E::DegenerateSection => CliError::Numerical(err),
            other => CliError::config(path, other.to_string()),
        }
    }
}

impl From<gramkit::Error> for CliError {
    fn from(err: gramkit::Error) -> Self {
        CliError::Numerical(err)
    }
}
