use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: expected {expected}, found {found}")]
    VariableMismatch { expected: usize, found: usize },

    #[error("zero linear form does not define a hyperplane")]
    ZeroForm,

    #[error("hyperplane {index} is proportional to hyperplane {existing}")]
    DuplicateHyperplane { index: usize, existing: usize },

    #[error("form has {found} coefficients, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("index {index} out of range for {len} hyperplanes")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("subspace is not a flat of the intersection lattice")]
    NotAFlat,

    #[error("arrangement is not essential")]
    NonEssential,

    #[error("arrangement is empty")]
    EmptyArrangement,

    #[error("derivation is not in the module: {0}")]
    NotInModule(String),

    #[error("polynomial is not divisible")]
    NotDivisible,

    #[error("arrangement is not free")]
    NotFree,

    #[error("operation requires an arrangement in {expected} variables, found {found}")]
    WrongDimension { expected: usize, found: usize },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalog(String),

    /// A proved statement failed on a concrete instance. This signals an
    /// engine bug, never a property of the input.
    #[error("theorem check failed: {0}")]
    Violation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
