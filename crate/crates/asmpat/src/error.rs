use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows} rows, {cols} cols")]
    NotSquare { rows: usize, cols: usize },
    #[error("entry at ({row}, {col}) is {value}, expected -1, 0, or 1")]
    BadEntry { row: usize, col: usize, value: i64 },
    #[error("matrix violates the alternating sign conditions: {0}")]
    NotAsm(String),
    #[error("not a permutation of 1..{n}: {reason}")]
    BadPermutation { n: usize, reason: String },
    #[error("empty pattern rejected")]
    EmptyPattern,
    #[error("empty word rejected")]
    EmptyWord,
    #[error("empty block list rejected")]
    EmptyBlockList,
    #[error("size mismatch: n = {n} requires a permutation of size {expected}, got {got}")]
    GammaSizeMismatch { n: usize, expected: usize, got: usize },
    #[error("n = {n} is below the smallest supported construction size 3")]
    GammaTooSmall { n: usize },
    #[error("n = {n} exceeds the generation ceiling {ceiling} (about {estimate} matrices); pass the override to proceed")]
    CeilingExceeded {
        n: usize,
        ceiling: usize,
        estimate: BigUint,
    },
    #[error("unknown lemma id {0:?}")]
    UnknownLemma(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
