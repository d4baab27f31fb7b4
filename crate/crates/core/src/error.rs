use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("value {value} outside supported range [{min}, {max}]")]
    OutOfRange { value: u64, min: u64, max: u64 },

    #[error("{f1}x + {f2}x^2 is not a permutation polynomial modulo {modulus}")]
    NotPermutation { modulus: u64, f1: u64, f2: u64 },

    #[error("polynomial does not permute Z_{0}")]
    NotBijective(u64),

    #[error("polynomial is not an inverse of the interleaver modulo {0}")]
    NotInverse(u64),

    #[error("input length {got} does not match interleaver length {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid constituent encoder: {0}")]
    InvalidEncoder(String),

    #[error("tailbiting termination has no unique circulation state for length {0}")]
    TailbitingUnsolvable(usize),

    #[error("search budget of {budget} nodes exhausted (best upper bound so far: {best_upper:?})")]
    BudgetExhausted { budget: u64, best_upper: Option<u32> },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("dataset error: {0}")]
    Dataset(String),
}
