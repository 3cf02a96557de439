use std::fmt;

/// Classification of a rejected input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ErrorKind {
    InvalidDate,
    InvalidTime,
    InvalidLeapTable,
    OutOfRange,
    ParseError,
}

impl ErrorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorKind::InvalidDate => "InvalidDate",
            ErrorKind::InvalidTime => "InvalidTime",
            ErrorKind::InvalidLeapTable => "InvalidLeapTable",
            ErrorKind::OutOfRange => "OutOfRange",
            ErrorKind::ParseError => "ParseError",
        }
    }

    /// Process exit status used by the command-line tool.
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::OutOfRange => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{kind}: {detail}")]
pub struct Error {
    pub kind: ErrorKind,
    pub detail: String,
}

impl Error {
    pub fn new(kind: ErrorKind, detail: impl Into<String>) -> Self {
        Error {
            kind,
            detail: detail.into(),
        }
    }

    pub fn invalid_date(detail: impl Into<String>) -> Self {
        Self::new(ErrorKind::InvalidDate, detail)
    }

    pub fn invalid_time(detail: impl Into<String>) -> Self {
        Self::new(ErrorKind::InvalidTime, detail)
    }

    pub fn invalid_leap_table(detail: impl Into<String>) -> Self {
        Self::new(ErrorKind::InvalidLeapTable, detail)
    }

    pub fn out_of_range(detail: impl Into<String>) -> Self {
        Self::new(ErrorKind::OutOfRange, detail)
    }

    pub fn parse(detail: impl Into<String>) -> Self {
        Self::new(ErrorKind::ParseError, detail)
    }
}

/// Success, or a classified error describing the problematic input.
pub type Possibly<T> = Result<T, Error>;
