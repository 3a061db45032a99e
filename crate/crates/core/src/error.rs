use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("generator index {index} out of range for a presentation with {count} generators")]
    GeneratorOutOfRange { index: usize, count: usize },

    #[error("relator {relator} has nonzero image in the abelian target")]
    InvalidQuotient { relator: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: unknown letter '{letter}'")]
    UnknownLetter { line: usize, letter: char },

    #[error("unknown catalog entry '{0}'")]
    UnknownCatalog(String),

    #[error("resource cap exceeded: {what} (cap {cap})")]
    Resource { what: String, cap: String },

    #[error("witness rejected: {0}")]
    Witness(String),

    /// No modulus satisfies a schedule's inequality within the search range.
    #[error("no admissible modulus: {0}")]
    NoAdmissible(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A checked mathematical invariant failed; always a bug.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn resource(what: impl Into<String>, cap: impl ToString) -> Self {
        Error::Resource {
            what: what.into(),
            cap: cap.to_string(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
