use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field size {0} exceeds the 2^20 table budget")]
    FieldTooLarge(u64),
    #[error("q must be odd, got {0}")]
    EvenCharacteristic(u64),
    #[error("field of size {0} is not a quadratic extension")]
    NotQuadraticExtension(u64),
    #[error("inversion of zero")]
    ZeroInverse,
    #[error("{t} does not divide the group order {order}")]
    NotARootOrder { t: u64, order: u64 },
    #[error("lambda = {lambda} does not divide q - 1 = {qm1}")]
    BadLambda { lambda: u64, qm1: u64 },
    #[error("evaluation set {j} is invalid: {reason}")]
    BadEvalSet { j: usize, reason: String },
    #[error("t = {t} out of range, need 2 <= t <= (q+3)/2 = {max}")]
    BadT { t: u64, max: u64 },
    #[error("box size a_{j} = {a} out of range [2, q^2-1]")]
    BadBoxSize { j: usize, a: u64 },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("empty exponent set")]
    EmptySet,
    #[error("work budget must be positive")]
    BadBudget,
    #[error("instance too large for exhaustive enumeration ({0} words)")]
    InstanceTooLarge(u128),
    #[error("self-orthogonality violated for {0} row pairs")]
    SelfOrthogonalityViolated(usize),
    #[error("d = {d} out of range, need 5 <= d <= (q+3)/2 = {max}")]
    BadGvRange { d: u64, max: u64 },
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
