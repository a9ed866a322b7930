use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different coefficient fields")]
    FieldMismatch,
    #[error("bad prime {0}: need a prime p >= 7 below 2^31")]
    BadPrime(u64),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("polynomial is not homogeneous of degree {expected}")]
    NotHomogeneous { expected: u32 },
    #[error("substitution is not graded: {0}")]
    NotGraded(String),
    #[error("degree {n} is beyond the oracle bound {bound}")]
    DegreeOutOfRange { n: u32, bound: u32 },
    #[error("bundle map is not injective as a sheaf map")]
    NotInjective,
    #[error("bad bundle map: {0}")]
    BadBundleMap(String),
    #[error("cokernel is not locally free: {0}")]
    TorsionDetected(String),
    #[error("dimension profile too short: {0}")]
    ProfileTooShort(String),
    #[error("sigma_2 data is degenerate: {0}")]
    InvalidSigma2(String),
    #[error("pair failed validation: {0}")]
    Validation(String),
    #[error("characteristic 2 is not supported here")]
    Characteristic2,
    #[error("field {0} has no primitive cube root of unity")]
    NoCubeRoot(String),
    #[error("transformed pair left the V' shape: {0}")]
    LeftVPrime(String),
    #[error("sampling budget of {0} attempts exhausted")]
    SamplingExhausted(usize),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
