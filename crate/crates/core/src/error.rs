use num_bigint::BigInt;
use thiserror::Error;

/// Errors raised by argument validation across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(BigInt),

    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: BigInt, modulus: BigInt },

    #[error("{name} = {value} is out of range: {expected}")]
    OutOfRange {
        name: &'static str,
        value: i64,
        expected: &'static str,
    },

    #[error("checked range {checked_up_to} is shorter than the period {period}")]
    RangeTooShort { checked_up_to: u64, period: u64 },

    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn ensure_range(
    name: &'static str,
    value: i64,
    ok: bool,
    expected: &'static str,
) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name,
            value,
            expected,
        })
    }
}
