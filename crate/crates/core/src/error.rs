use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("length shares factor with characteristic: gcd({n}, {q}) != 1")]
    LengthSharesFactor { n: u64, q: u64 },

    #[error("no primitive {n}th root of unity in a field of order {order}")]
    NoRootOfUnity { n: u64, order: u64 },

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("field of order {p}^{degree} does not fit the element representation")]
    FieldTooLarge { p: u64, degree: u32 },

    #[error("modulus is not irreducible over GF({0})")]
    Reducible(u64),

    #[error("element index {index} out of range for a field of order {order}")]
    ElementOutOfRange { index: u64, order: u64 },

    #[error("incompatible fields: {0}")]
    IncompatibleFields(String),

    #[error("no power-series expansion: denominator vanishes at zero")]
    NoPowerSeries,

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("candidate invalid for n = {n}: {reason}")]
    CandidateInvalid { n: u64, reason: String },

    #[error("{0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}
