//! Checkers for the congruences and valuation laws satisfied by `a_k(r)`.
//!
//! Every checker returns a [`CheckReport`](crate::report::CheckReport) with
//! one witness per index in its declared range. Checkers for the special
//! fiber `r = 0` and for `r >= 1` are disjoint; calling one on the wrong
//! kind of table is a [`VerifyError::WrongFiber`].

mod special;
mod suite;
mod valuations;

pub use special::{check_a_c_lemmas, check_digit_sum, check_first_block, check_multiple_residues};
pub use suite::{
    check_cumulants, check_monomial_reassembly, check_survivors, default_checks, run_check, run_checks, CheckKind,
    CHECK_NAMES,
};
pub use valuations::{
    build_v_table, check_alpha_gamma, check_branch_pattern, check_lambda_lower_bound, check_leading_term,
    check_pure_slope_and_deviation, check_pure_units, check_subadditivity, predicted_v, DigitWeight, Dominance,
    SubadditivityMode, VTable, ALPHA_GAMMA_GUARD,
};

use thiserror::Error;

use crate::boettcher::SolveError;
use crate::combinat::CombinatError;
use crate::padic::PadicError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("check `{check}` applies to {expected}, but the table has r = {r}")]
    WrongFiber {
        check: String,
        expected: &'static str,
        r: u32,
    },
    #[error("table reaches a_{max_k} but the check needs a_{needed}")]
    Coverage { needed: u64, max_k: usize },
    #[error("valuation table covers layers 0..={n_max} but index {k} needs layer {level}")]
    LayerCoverage { k: u64, level: usize, n_max: usize },
    #[error("{0}")]
    Guard(String),
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Combinat(#[from] CombinatError),
}

pub(crate) fn require_r0(check: &str, table: &crate::CoefficientTable) -> Result<(), VerifyError> {
    let r = table.params().r();
    if r != 0 {
        return Err(VerifyError::WrongFiber {
            check: check.into(),
            expected: "r = 0",
            r,
        });
    }
    Ok(())
}

pub(crate) fn require_deformed(check: &str, r: u32) -> Result<(), VerifyError> {
    if r == 0 {
        return Err(VerifyError::WrongFiber {
            check: check.into(),
            expected: "r >= 1",
            r,
        });
    }
    Ok(())
}

pub(crate) fn require_coverage(table: &crate::CoefficientTable, needed: u64) -> Result<(), VerifyError> {
    if needed as usize > table.max_k() {
        return Err(VerifyError::Coverage {
            needed,
            max_k: table.max_k(),
        });
    }
    Ok(())
}
