use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("graph parse error on line {line}: {message}")]
    GraphParse { line: usize, message: String },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("pivot needs two distinct vertices, got `{0}` twice")]
    SameVertex(String),
    #[error("vertices `{0}` and `{1}` are not adjacent")]
    NotAdjacent(String, String),

    #[error("unknown ground element `{0}`")]
    UnknownLabel(String),
    #[error("no parameter assignment for ground element `{0}`")]
    MissingAssignment(String),
    #[error("transversal classes do not match the matroid: {0}")]
    SchemeMismatch(String),

    #[error("{what} has size {size}, above the enumeration cap of {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("polynomial parse error: {0}")]
    PolyParse(String),
    #[error("division is not exact")]
    NotExact,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("no value given for variable `{0}`")]
    UnassignedVariable(String),
    #[error("unexpected variable `{0}`")]
    ForeignVariable(String),
    #[error("invalid rational `{0}`")]
    BadRational(String),

    #[error("parameter file error on line {line}: {message}")]
    ParamParse { line: usize, message: String },
}
