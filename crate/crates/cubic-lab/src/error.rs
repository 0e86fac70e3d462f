//! Error type shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid modulus {0} (must be in 1..={1})")]
    InvalidModulus(u64, u64),

    #[error("{op} requires a primitive character, got conductor {conductor} mod {modulus}")]
    NotPrimitive {
        op: &'static str,
        conductor: u64,
        modulus: u64,
    },

    #[error("{op} is undefined for the principal character")]
    PrincipalCharacter { op: &'static str },

    #[error("character product is principal: L(s, .) has a pole at s = 1")]
    PoleAtOne,

    #[error("grid resolution {0} too small (need R >= 8)")]
    InvalidGrid(u64),

    #[error("missing prime value at p = {0}")]
    MissingPrime(u64),

    #[error("index range overflow: {0}")]
    RangeOverflow(String),

    #[error("cost guard: {0}")]
    CostGuard(String),

    #[error("domain error: {0}")]
    Domain(String),
}
