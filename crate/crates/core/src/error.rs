use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a unit")]
    NotAUnit(String),

    #[error("{0} is not an odd prime")]
    NotOddPrime(usize),

    #[error("2 is not a QR mod {0}")]
    TwoNotQuadraticResidue(usize),

    #[error("{a} is not invertible mod {p}")]
    NotInvertibleModP { a: usize, p: usize },

    #[error("p = {0} is not congruent to {1}")]
    WrongResidueClass(usize, &'static str),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("X not unimodular: <X,X> = {found}, expected {expected}")]
    NotUnimodular { found: String, expected: String },

    #[error("input code is not self-dual")]
    NotSelfDual,

    #[error("generator is not of the form [I | A]: {0}")]
    NotSystematic(String),

    #[error("row sums of A are not all equal to one unit: {0}")]
    RowSums(String),

    #[error("hex value needs more than {0} bits")]
    HexOverflow(usize),

    #[error("no nonzero codewords")]
    ZeroCode,

    #[error("full enumeration of dimension {k} exceeds the cap of {cap}; use an `upto` bound or bz")]
    EnumerationTooLarge { k: usize, cap: usize },

    #[error("length {0} is beyond the supported word count for enumeration")]
    TooLong(usize),

    #[error("profile does not match form {form}: {reason}")]
    FormMismatch { form: String, reason: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("store line {line}: {reason}")]
    CorruptStore { line: usize, reason: String },

    #[error("identity check failed: {0}")]
    IdentityMismatch(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
