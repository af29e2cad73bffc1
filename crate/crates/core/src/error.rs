use std::io;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("invalid surface parameters: {0}")]
    InvalidSpec(String),

    #[error(
        "lattice of (n={n}, d={d}, g={g}) is not hyperbolic (d^2 <= 4n(g-1)); \
         the inequality search has no termination bound"
    )]
    NotHyperbolic { n: i64, d: i64, g: i64 },

    #[error("invalid scan range: {0}")]
    InvalidRange(String),

    #[error("at triple (n={n}, d={d}, g={g}): {source}")]
    AtTriple {
        n: i64,
        d: i64,
        g: i64,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    /// True if this error, or the error it wraps, is an arithmetic overflow.
    pub fn is_overflow(&self) -> bool {
        match self {
            Error::Overflow(_) => true,
            Error::AtTriple { source, .. } => source.is_overflow(),
            _ => false,
        }
    }
}

impl From<csv::Error> for Error {
    fn from(err: csv::Error) -> Self {
        Error::Io(err.into())
    }
}
