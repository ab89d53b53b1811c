use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("polynomial is not divisible")]
    NotDivisible,
    #[error("constant term is zero")]
    ZeroConstantTerm,
    #[error("constant term is even, reduction mod 2 is divisible by X")]
    EvenConstantTerm,
    #[error("polynomial is not irreducible over F2")]
    NotIrreducible,
    #[error("root isolation failed at the maximum precision of {0} bits")]
    PrecisionExhausted(u32),
    #[error("modulus must be monic of degree at least 1")]
    NonMonicModulus,
    #[error("input too large: {0}")]
    TooLarge(&'static str),
    #[error("root pattern could not be resolved at maximum precision")]
    Undecidable,
    #[error("invalid digit set: {0}")]
    InvalidDigits(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
}
