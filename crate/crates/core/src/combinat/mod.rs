//! Monomial lattices of the B- and C-terms, digit vectors and vector
//! partitions, and the mod-`p` block identities built on them.

mod blocks;
mod digits;
mod identities;
mod monomials;

pub use blocks::{
    block_series, check_vector_b, cumulant_collapse_check, euler_power, first_block_series, truncated_block_series,
    vector_b_expansion,
};
pub use digits::{digit_vectors_up_to, enumerate_vector_partitions, DigitVector, VectorPartition};
pub use identities::{tree_function_check, truncated_exp_identity};
pub use monomials::{
    b_coefficient, b_component_from_monomials, c_coefficient, c_component_from_monomials, classify_b_survivors,
    enumerate_b_monomials, enumerate_c_monomials, MonomialRecord, MultiIndex, SurvivorClassification,
};

use thiserror::Error;

use crate::boettcher::SolveError;
use crate::padic::PadicError;
use crate::series::SeriesError;

/// Largest `k` enumerated for primes other than 3.
pub const MONOMIAL_GUARD_K: u64 = 40;
/// Largest digit-vector weight whose partitions are enumerated.
pub const PARTITION_GUARD_WEIGHT: u64 = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombinatError {
    #[error("enumeration refused for p = {p}, k = {k}: only p = 3 or k <= {MONOMIAL_GUARD_K} is tractable")]
    MonomialGuard { p: u64, k: u64 },
    #[error("partition enumeration refused for weight {weight} > {PARTITION_GUARD_WEIGHT}")]
    PartitionGuard { weight: u64 },
    #[error("index k = {k} must be positive")]
    ZeroIndex { k: u64 },
    #[error("k = {k} is not divisible by p = {p}")]
    NotDivisible { p: u64, k: u64 },
    #[error("invalid digit vector: {0}")]
    InvalidDigitVector(String),
    #[error("residue a = {a} must lie in 1..={max}", max = .p - 1)]
    ResidueOutOfRange { a: u64, p: u64 },
    #[error("table reaches a_{max_k} but a_{needed} is required")]
    TableTooShort { needed: usize, max_k: usize },
    #[error("this operation needs the special fiber r = 0, got r = {r}")]
    NotSpecialFiber { r: u32 },
    #[error("digit-vector weight {weight} must be below p = {p}")]
    WeightTooLarge { weight: u64, p: u64 },
    #[error("monomial {index}: valuation {actual} disagrees with the digit-sum formula {expected}")]
    ValuationFormula {
        index: String,
        expected: i64,
        actual: String,
    },
    #[error("monomial {index} does not belong to the lattice for k = {k}")]
    ForeignMonomial { index: String, k: u64 },
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}
