use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("diagram is not planar: {0}")]
    NotPlanar(String),
    #[error("inconsistent strand orientation at crossing {0}")]
    Orientation(usize),
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("configuration is not of type {0}")]
    TypeMismatch(String),
    #[error("edge path is not admissible for {0}")]
    InadmissiblePath(String),
    #[error("edges do not form a path")]
    BrokenPath,
    #[error("edge assignment is not of kind {0} for this configuration")]
    InvalidAssignment(char),
    #[error("no edge assignment of kind {0} exists")]
    Unsolvable(char),
    #[error("assignments are not gauge equivalent")]
    NotGaugeEquivalent,
    #[error("differential does not square to zero")]
    NotAComplex,
    #[error("integer overflow in sparse elimination")]
    Overflow,
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
