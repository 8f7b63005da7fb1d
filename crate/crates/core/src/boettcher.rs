//! The coefficient solver for `f_r(x) = x * sum_k a_k(r) x^k / k!`.
//!
//! Writing `g(x) = sum_k a_k x^k / k!`, the conjugacy
//! `phi_r(f_r(x)) = f_r(x^q)` becomes
//! `g(x^q) = g(x)^q + p^{r+2} x g(x)^{q+1}`. Comparing `x^k` coefficients
//! and scaling by `k!/q` gives the triangular recursion
//!
//! ```text
//! a_k = A_k - B_k - p^r C_k
//! A_k = k!/q [x^k] sum_{l<k} a_l/l! x^{ql}
//! B_k = k!/q [x^k] (sum_{l<k} a_l/l! x^l)^q
//! C_k = k!   [x^{k-1}] (sum_{l<k} a_l/l! x^l)^{q+1}
//! ```
//!
//! where `k! p^{r+2} / q = k! p^r` supplies the factor in front of `C_k`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::padic::{format_rational, ord_p, PadicError, Prime, Valuation};
use crate::report::CheckReport;
use crate::series::{PowerSeries, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("truncation order must be at least 1")]
    ZeroOrder,
    #[error("a_{k} has {p}-adic valuation {valuation} < 0")]
    NotIntegral { k: usize, p: u64, valuation: i64 },
    #[error("index {k} outside the table range 1..={max_k}")]
    IndexOutOfRange { k: usize, max_k: usize },
    #[error("a coefficient table needs at least a_0")]
    EmptyTable,
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// `p`, `r` and `q = p^2` for `phi_r(x) = x^q + p^{r+2} x^{q+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyParams {
    p: Prime,
    r: u32,
}

impl FamilyParams {
    pub fn new(p: u64, r: u32) -> Result<Self, PadicError> {
        Ok(FamilyParams { p: Prime::new(p)?, r })
    }

    pub fn from_prime(p: Prime, r: u32) -> Self {
        FamilyParams { p, r }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn p(&self) -> u64 {
        self.p.get()
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn q(&self) -> u64 {
        self.p() * self.p()
    }

    /// `p^r`, the factor in front of the C-term.
    pub fn c_scale(&self) -> BigInt {
        self.p.pow_big(self.r)
    }

    /// `p^{r+2}`, the coefficient of `x^{q+1}` in `phi_r`.
    pub fn phi_coefficient(&self) -> BigInt {
        self.p.pow_big(self.r + 2)
    }
}

/// `a_0(r), ..., a_K(r)` together with their valuations.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientTable {
    params: FamilyParams,
    a: Vec<BigRational>,
    valuations: Vec<Valuation>,
}

impl CoefficientTable {
    /// Wraps externally supplied coefficients (a loaded file, a corrupted
    /// copy). No recursion invariants are enforced; that is what
    /// [`residual_check`] is for.
    pub fn from_coefficients(params: FamilyParams, a: Vec<BigRational>) -> Result<Self, SolveError> {
        if a.is_empty() {
            return Err(SolveError::EmptyTable);
        }
        let valuations = a.iter().map(|x| ord_p(x, params.prime())).collect();
        Ok(CoefficientTable { params, a, valuations })
    }

    pub fn params(&self) -> FamilyParams {
        self.params
    }

    pub fn prime(&self) -> Prime {
        self.params.prime()
    }

    pub fn max_k(&self) -> usize {
        self.a.len() - 1
    }

    /// `a_k`.
    ///
    /// # Panics
    /// If `k > max_k`.
    pub fn a(&self, k: usize) -> &BigRational {
        &self.a[k]
    }

    pub fn get(&self, k: usize) -> Option<&BigRational> {
        self.a.get(k)
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.a
    }

    pub fn valuation(&self, k: usize) -> Valuation {
        self.valuations[k]
    }

    pub fn valuations(&self) -> &[Valuation] {
        &self.valuations
    }

    /// The first `max_k + 1` coefficients.
    pub fn truncated(&self, max_k: usize) -> Result<Self, SolveError> {
        if max_k > self.max_k() {
            return Err(SolveError::IndexOutOfRange {
                k: max_k,
                max_k: self.max_k(),
            });
        }
        Ok(CoefficientTable {
            params: self.params,
            a: self.a[..=max_k].to_vec(),
            valuations: self.valuations[..=max_k].to_vec(),
        })
    }

    /// A copy with `a_k` replaced by `a_k + delta`.
    pub fn perturbed(&self, k: usize, delta: i64) -> Result<Self, SolveError> {
        if k > self.max_k() {
            return Err(SolveError::IndexOutOfRange { k, max_k: self.max_k() });
        }
        let mut a = self.a.clone();
        a[k] += BigRational::from_integer(BigInt::from(delta));
        Self::from_coefficients(self.params, a)
    }

    /// `g(x) = sum_{l<=K} a_l x^l / l!` at order `K`.
    pub fn exponential_series(&self) -> PowerSeries {
        let coeffs = self
            .a
            .iter()
            .zip(factorials(self.max_k()))
            .map(|(a, f)| a / BigRational::from_integer(f))
            .collect();
        PowerSeries::new(coeffs).expect("table is nonempty")
    }

    /// The `x^k` coefficient `a_k/k!` of `g`.
    pub fn g_coefficient(&self, k: usize) -> BigRational {
        &self.a[k] / BigRational::from_integer(crate::padic::factorial(k as u64))
    }
}

/// `0!, 1!, ..., n!`.
pub fn factorials(n: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(BigInt::one());
    for i in 1..=n {
        let next = &out[i - 1] * BigInt::from(i);
        out.push(next);
    }
    out
}

/// The three bracketed terms of the recursion at index `k`; they satisfy
/// `a_k = A - B - p^r C` exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ABCDecomposition {
    pub k: usize,
    pub a_term: BigRational,
    pub b_term: BigRational,
    pub c_term: BigRational,
}

impl ABCDecomposition {
    pub fn reassemble(&self, params: &FamilyParams) -> BigRational {
        &self.a_term - &self.b_term - BigRational::from_integer(params.c_scale()) * &self.c_term
    }
}

/// Incrementally maintained `g`, `g^q` and `g^{q+1}`.
///
/// Uses the power recurrence `n h_n = sum_{j=1}^{n} ((alpha+1) j - n) g_j h_{n-j}`
/// for `h = g^alpha`, `g_0 = 1`. Leaving out the `j = k` term at step `k`
/// yields exactly `[x^k] (g_{<k})^q`.
struct RunningPowers {
    params: FamilyParams,
    fact: Vec<BigInt>,
    g: Vec<BigRational>,
    pow_q: Vec<BigRational>,
    pow_q1: Vec<BigRational>,
}

impl RunningPowers {
    fn new(params: FamilyParams, max_k: usize) -> Self {
        RunningPowers {
            params,
            fact: factorials(max_k),
            g: vec![BigRational::one()],
            pow_q: vec![BigRational::one()],
            pow_q1: vec![BigRational::one()],
        }
    }

    fn next_index(&self) -> usize {
        self.g.len()
    }

    /// `sum_{j=1}^{upto} ((alpha+1) j - n) g_j h_{n-j}`.
    fn power_sum(&self, h: &[BigRational], alpha: u64, n: usize, upto: usize) -> BigRational {
        let mut acc = BigRational::zero();
        for j in 1..=upto {
            let gj = &self.g[j];
            if gj.is_zero() {
                continue;
            }
            let weight = (alpha as i64 + 1) * j as i64 - n as i64;
            if weight == 0 {
                continue;
            }
            acc += BigRational::from_integer(BigInt::from(weight)) * gj * &h[n - j];
        }
        acc
    }

    /// A, B, C at the next index from the coefficients pushed so far.
    fn pending(&self) -> (ABCDecomposition, BigRational) {
        let k = self.next_index();
        let q = self.params.q();
        let kf = BigRational::from_integer(self.fact[k].clone());
        let q_rat = BigRational::from_integer(BigInt::from(q));
        let kr = BigRational::from_integer(BigInt::from(k));

        let a_term = if (k as u64).is_multiple_of(q) {
            &kf / &q_rat * &self.g[k / q as usize]
        } else {
            BigRational::zero()
        };
        let truncated_pow_q = self.power_sum(&self.pow_q, q, k, k - 1) / &kr;
        let b_term = &kf / &q_rat * &truncated_pow_q;
        let c_term = &kf * &self.pow_q1[k - 1];
        (
            ABCDecomposition {
                k,
                a_term,
                b_term,
                c_term,
            },
            truncated_pow_q,
        )
    }

    fn push(&mut self, a_k: &BigRational, truncated_pow_q: BigRational) {
        let k = self.next_index();
        let gk = a_k / BigRational::from_integer(self.fact[k].clone());
        let q_rat = BigRational::from_integer(BigInt::from(self.params.q()));
        self.pow_q.push(truncated_pow_q + q_rat * &gk);
        self.g.push(gk);
        let kr = BigRational::from_integer(BigInt::from(k));
        let next = self.power_sum(&self.pow_q1, self.params.q() + 1, k, k) / kr;
        self.pow_q1.push(next);
    }
}

/// Solves for `a_0(r), ..., a_K(r)`.
pub fn solve_coefficients(params: FamilyParams, max_k: usize) -> Result<CoefficientTable, SolveError> {
    if max_k == 0 {
        return Err(SolveError::ZeroOrder);
    }
    let mut powers = RunningPowers::new(params, max_k);
    let mut a = vec![BigRational::one()];
    for k in 1..=max_k {
        let (terms, truncated) = powers.pending();
        let a_k = terms.reassemble(&params);
        if let Valuation::Finite(v) = ord_p(&a_k, params.prime()) {
            if v < 0 {
                return Err(SolveError::NotIntegral {
                    k,
                    p: params.p(),
                    valuation: v,
                });
            }
        }
        powers.push(&a_k, truncated);
        a.push(a_k);
    }
    CoefficientTable::from_coefficients(params, a)
}

/// The decomposition at `k`, recomputed from scratch by raising the
/// truncation `sum_{l<k} a_l x^l / l!` to the `q`-th and `(q+1)`-th powers.
pub fn abc_decompose(table: &CoefficientTable, k: usize) -> Result<ABCDecomposition, SolveError> {
    if k == 0 || k > table.max_k() {
        return Err(SolveError::IndexOutOfRange {
            k,
            max_k: table.max_k(),
        });
    }
    let params = table.params();
    let q = params.q();
    let mut coeffs: Vec<BigRational> = (0..k).map(|l| table.g_coefficient(l)).collect();
    coeffs.push(BigRational::zero());
    let g_lt = PowerSeries::new(coeffs)?;

    let kf = BigRational::from_integer(crate::padic::factorial(k as u64));
    let q_rat = BigRational::from_integer(BigInt::from(q));
    let a_term = if (k as u64).is_multiple_of(q) {
        &kf / &q_rat * table.g_coefficient(k / q as usize)
    } else {
        BigRational::zero()
    };
    let pow_q = g_lt.pow(q)?;
    let b_term = &kf / &q_rat * pow_q.coeff(k)?;
    let pow_q1 = pow_q.mul(&g_lt);
    let c_term = &kf * pow_q1.coeff(k - 1)?;
    Ok(ABCDecomposition {
        k,
        a_term,
        b_term,
        c_term,
    })
}

/// Decompositions for every `1 <= k <= K`, replaying the incremental
/// recurrence over the stored coefficients.
pub fn abc_decompose_all(table: &CoefficientTable) -> Vec<ABCDecomposition> {
    let mut powers = RunningPowers::new(table.params(), table.max_k());
    let mut out = Vec::with_capacity(table.max_k());
    for k in 1..=table.max_k() {
        let (terms, truncated) = powers.pending();
        powers.push(table.a(k), truncated);
        out.push(terms);
    }
    out
}

/// Certifies `phi_r(f) = f(x^q)` through `x^{K+q}`, the last coefficient
/// determined by `a_0..a_K`, together with the normalization `f = x + O(x^2)`
/// (witness `a_0`). Without the latter, `a_0 = 0` would pass whenever `K < q`.
///
/// After dividing by `x^q` the residual is
/// `g^q + p^{r+2} x g^{q+1} - g(x^q)`, evaluated at orders `0..=K`. The
/// powers are formed by repeated squaring, independently of the solver.
pub fn residual_check(table: &CoefficientTable) -> CheckReport {
    let params = table.params();
    let q = params.q() as usize;
    let max_k = table.max_k();
    let mut report = CheckReport::new(
        "residual",
        params.p(),
        Some(params.r()),
        format!("x^{}..=x^{}", q, max_k + q),
    );
    let a0 = table.a(0);
    report.push("a_0", "1", format_rational(a0), a0.is_one());
    let g = table.exponential_series();
    let pow_q = g.pow(q as u64).expect("q >= 1");
    let pow_q1 = pow_q.mul(&g);
    let lhs_shift = BigRational::from_integer(params.phi_coefficient());
    let composed = g
        .substitute_power(q, max_k)
        .expect("order K needs only floor(K/q) coefficients");
    let mut first_nonzero = None;
    for n in 0..=max_k {
        let mut residual = pow_q.coefficients()[n].clone();
        if n >= 1 {
            residual += &lhs_shift * &pow_q1.coefficients()[n - 1];
        }
        residual -= &composed.coefficients()[n];
        let pass = residual.is_zero();
        if !pass && first_nonzero.is_none() {
            first_nonzero = Some(n + q);
        }
        report.push(format!("x^{}", n + q), "0", format_rational(&residual), pass);
    }
    if let Some(idx) = first_nonzero {
        report.add_metric("first_nonzero_index", idx);
    }
    report
}
