use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed group spec `{0}`: {1}")]
    Spec(String, String),

    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),

    #[error("group order {order} exceeds the cap of {cap} for {what}")]
    OrderCap {
        what: &'static str,
        order: usize,
        cap: usize,
    },

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("map is not an automorphism")]
    NotAutomorphism,

    #[error("map has a nontrivial fixed point at element {0}")]
    NotFixedPointFree(usize),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("permutation set is not regular: {0}")]
    NotRegular(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("objects live on different groups or carriers: {0}")]
    Mismatch(String),

    #[error("selector out of range: {0}")]
    OutOfRange(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
