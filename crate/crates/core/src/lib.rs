//! Exact computation and verification of the coefficients `a_k(r)` of the
//! Böttcher coordinate of `phi_r(x) = x^{p^2} + p^{r+2} x^{p^2+1}` over the
//! `p`-adic integers.
//!
//! * [`padic`]: valuations, digit sums and residues of exact rationals.
//! * [`series`]: truncated power series over `Q` and `F_p`.
//! * [`boettcher`]: the coefficient solver and its residual certificate.
//! * [`combinat`]: monomial lattices, vector partitions and block identities.
//! * [`verify`]: one checker per congruence or valuation law.

pub mod boettcher;
pub mod combinat;
pub mod padic;
pub mod report;
pub mod series;
pub mod verify;

pub use boettcher::{CoefficientTable, FamilyParams};
pub use padic::{Prime, Valuation};
pub use report::{CheckReport, Witness};
