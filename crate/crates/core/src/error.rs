use thiserror::Error;

/// Errors raised anywhere in the torsion pipeline.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at position {pos}: unexpected character {found:?}")]
    WordParse { pos: usize, found: char },

    #[error("line {line}: {msg}")]
    FileFormat { line: usize, msg: String },

    #[error("undeclared generator '{0}'")]
    UndeclaredGenerator(char),

    #[error("not a knot-like presentation: {0}")]
    NotKnotLike(String),

    #[error("number field mismatch")]
    FieldMismatch,

    #[error("division by zero")]
    DivisionByZero,

    #[error("zero divisor: modulus reducible at this element")]
    ZeroDivisor,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("presentation has deficiency {0}, expected 1")]
    Deficiency(i64),

    #[error("denominator degenerate: pick a homologically nontrivial generator (alpha({0}) = 0)")]
    DegenerateDenominator(char),

    #[error("representation not acyclic at this twist")]
    NotAcyclic,

    #[error("pole at evaluation point")]
    Pole,

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("system is positive-dimensional; add a trace constraint (e.g. --meridian WORD)")]
    PositiveDimensional,

    #[error("no solutions found; add or change trace constraints (e.g. --meridian WORD)")]
    NoSolutions,

    #[error("elimination resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("inconsistent solve setup: {0}")]
    SolveSetup(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
