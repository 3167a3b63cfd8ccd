use thiserror::Error;

/// Every failure the library can report.
///
/// UNDEFINED ranker evaluations and negative verdicts are values, not errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    Alphabet(String),

    #[error("letter '{letter}' is not in the alphabet {alphabet}")]
    UnknownLetter { letter: char, alphabet: String },

    #[error("words are over different alphabets ({left} vs {right})")]
    AlphabetMismatch { left: String, right: String },

    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("signature violation at offset {offset}: successor is not allowed under the order-only signature")]
    Signature { offset: usize },

    #[error("{0}")]
    Precondition(String),

    #[error("resource cap exceeded: {what} (cap {cap})")]
    Resource { what: &'static str, cap: u64 },
}

impl Error {
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn syntax(offset: usize, msg: impl Into<String>) -> Self {
        Error::Syntax {
            offset,
            message: msg.into(),
        }
    }

    /// True for cap violations; callers map these to a distinct exit status.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource { .. })
    }

    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Alphabet(_) => "alphabet",
            Error::UnknownLetter { .. } => "unknown-letter",
            Error::AlphabetMismatch { .. } => "alphabet-mismatch",
            Error::Syntax { .. } => "syntax",
            Error::Signature { .. } => "signature",
            Error::Precondition(_) => "precondition",
            Error::Resource { .. } => "resource-cap",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
