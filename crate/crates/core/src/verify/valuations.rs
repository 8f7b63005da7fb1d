//! Valuation laws on the deformed fibers `r >= 1`.
//!
//! The pure layers `v_n = ord_p a_{p^n}(r)` satisfy `v_0 = r`, `v_1 = p r` and
//! `v_n = min(A_n, B_n)` with `A_n = (p+1) p^{n-2} - 2 + v_{n-2}` and
//! `B_n = p v_{n-1}`. Every other divisible index is governed by the digit
//! weight `Lambda(k) = sum_i k_i v_i`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::boettcher::CoefficientTable;
use crate::padic::{
    digit_sum, factorial, format_rational, mod_p_reduce, ord_p, ord_p_int, sign_mod, unit_part_mod_p, DigitExpansion,
    Prime, Valuation,
};
use crate::report::CheckReport;

use super::special::residue;
use super::{require_coverage, require_deformed, VerifyError};

/// Which branch attains `min(A_n, B_n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dominance {
    A,
    B,
    Tie,
}

impl fmt::Display for Dominance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dominance::A => "A",
            Dominance::B => "B",
            Dominance::Tie => "tie",
        })
    }
}

fn a_branch(p: u64, n: usize, v_nm2: i64) -> i64 {
    (p as i64 + 1) * (p as i64).pow(n as u32 - 2) - 2 + v_nm2
}

fn b_branch(p: u64, v_nm1: i64) -> i64 {
    p as i64 * v_nm1
}

/// Measured pure-layer valuations `v_0..v_N` of one table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VTable {
    p: Prime,
    r: u32,
    v: Vec<i64>,
}

impl VTable {
    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn v(&self) -> &[i64] {
        &self.v
    }

    pub fn n_max(&self) -> usize {
        self.v.len() - 1
    }

    /// `s = floor((r+1)/2)`.
    pub fn s(&self) -> usize {
        (self.r as usize).div_ceil(2)
    }

    /// `A_n` from the measured `v_{n-2}`, for `n >= 2`.
    pub fn a_branch(&self, n: usize) -> i64 {
        a_branch(self.p.get(), n, self.v[n - 2])
    }

    /// `B_n` from the measured `v_{n-1}`, for `n >= 1`.
    pub fn b_branch(&self, n: usize) -> i64 {
        b_branch(self.p.get(), self.v[n - 1])
    }

    /// The branch attaining the minimum at layer `n >= 2`.
    pub fn dominance(&self, n: usize) -> Dominance {
        let (a, b) = (self.a_branch(n), self.b_branch(n));
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Dominance::A,
            std::cmp::Ordering::Greater => Dominance::B,
            std::cmp::Ordering::Equal => Dominance::Tie,
        }
    }

    pub fn digit_weight(&self) -> DigitWeight {
        DigitWeight {
            p: self.p,
            v: self.v.clone(),
        }
    }
}

/// `Lambda(k) = sum_i k_i v_i` over the base-`p` digits of `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitWeight {
    p: Prime,
    v: Vec<i64>,
}

impl DigitWeight {
    pub fn new(p: Prime, v: Vec<i64>) -> Self {
        DigitWeight { p, v }
    }

    pub fn lambda(&self, k: u64) -> Result<i64, VerifyError> {
        let digits = DigitExpansion::new(k, self.p);
        let n_max = self.v.len() - 1;
        if digits.digits().len() > n_max + 1 {
            return Err(VerifyError::LayerCoverage {
                k,
                level: digits.digits().len() - 1,
                n_max,
            });
        }
        Ok(digits.digits().iter().zip(&self.v).map(|(&d, &v)| d as i64 * v).sum())
    }

    /// `Lambda_m = sum_i m_i v_{i+1}`, which equals `Lambda(p m)`.
    pub fn lambda_m(&self, m: u64) -> Result<i64, VerifyError> {
        self.lambda(m * self.p.get())
    }
}

/// `v_0..v_{n_max}` from the branch rule alone: `A_n` when `n` is even and
/// `r >= n - 1`, `B_n` otherwise.
pub fn predicted_v(p: Prime, r: u32, n_max: usize) -> Vec<i64> {
    let p_u = p.get();
    let mut v = vec![r as i64];
    if n_max >= 1 {
        v.push(p_u as i64 * r as i64);
    }
    for n in 2..=n_max {
        let next = if n % 2 == 0 && r as usize + 1 >= n {
            a_branch(p_u, n, v[n - 2])
        } else {
            b_branch(p_u, v[n - 1])
        };
        v.push(next);
    }
    v
}

fn pure_index(p: Prime, n: usize) -> Result<u64, VerifyError> {
    p.checked_pow(n as u32)
        .ok_or_else(|| VerifyError::Guard(format!("{p}^{n} overflows")))
}

/// Measures `v_0..v_{n_max}` and checks them against `v_0 = r`, `v_1 = p r`,
/// the min formula (`n:min`) and the branch rule (`n:branch`).
pub fn build_v_table(table: &CoefficientTable, n_max: usize) -> Result<(VTable, CheckReport), VerifyError> {
    let params = table.params();
    require_deformed("v_table", params.r())?;
    let p = params.prime();
    require_coverage(table, pure_index(p, n_max)?)?;

    let mut v = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let k = pure_index(p, n)? as usize;
        match table.valuation(k) {
            Valuation::Finite(x) => v.push(x),
            Valuation::Infinite => return Err(VerifyError::Guard(format!("a_{k} vanishes, so v_{n} is undefined"))),
        }
    }
    let vt = VTable { p, r: params.r(), v };
    let predicted = predicted_v(p, params.r(), n_max);

    let mut report = CheckReport::new("v_table", p.get(), Some(params.r()), format!("n=0..={n_max}"));
    report.push_eq("0:init", params.r() as i64, vt.v[0]);
    if n_max >= 1 {
        report.push_eq("1:init", p.get() as i64 * params.r() as i64, vt.v[1]);
    }
    for n in 2..=n_max {
        report.push_eq(format!("{n}:min"), vt.a_branch(n).min(vt.b_branch(n)), vt.v[n]);
    }
    for (n, (&want, &got)) in predicted.iter().zip(&vt.v).enumerate() {
        report.push_eq(format!("{n}:branch"), want, got);
    }
    let tags: Vec<String> = (2..=n_max).map(|n| vt.dominance(n).to_string()).collect();
    let v_text: Vec<String> = vt.v.iter().map(i64::to_string).collect();
    report.add_metric("v", format!("({})", v_text.join(",")));
    report.add_metric("dominance", tags.join(","));
    Ok((vt, report))
}

/// Odd layers are B-dominated; the even layer `2j` is A-dominated iff
/// `r >= 2j - 1`; layers from `2s + 1` on are B-dominated; and
/// `A_{2j+1} - B_{2j+1} = 2p - 2` whenever layers `2..=2j` alternate.
pub fn check_branch_pattern(vt: &VTable) -> CheckReport {
    let p = vt.p.get();
    let r = vt.r as usize;
    let mut report = CheckReport::new("branch_pattern", p, Some(vt.r), format!("n=2..={}", vt.n_max()));
    for n in 2..=vt.n_max() {
        let expected = if n % 2 == 0 && r + 1 >= n {
            Dominance::A
        } else {
            Dominance::B
        };
        report.push_eq(format!("{n}:tag"), expected, vt.dominance(n));
        if n > 2 * vt.s() {
            report.push_eq(format!("{n}:tail"), Dominance::B, vt.dominance(n));
        }
        if n % 2 == 1 && r + 2 >= n {
            report.push_eq(format!("{n}:gap"), 2 * p as i64 - 2, vt.a_branch(n) - vt.b_branch(n));
        }
    }
    report
}

/// `p^{-v_n} a_{p^n} = -1` mod `p`, with `v_n` taken from the branch rule so
/// that a wrong valuation fails instead of being absorbed.
pub fn check_pure_units(table: &CoefficientTable, vt: &VTable) -> Result<CheckReport, VerifyError> {
    require_deformed("pure_units", vt.r)?;
    let p = vt.p;
    let predicted = predicted_v(p, vt.r, vt.n_max());
    let mut report = CheckReport::new("pure_units", p.get(), Some(vt.r), format!("n=0..={}", vt.n_max()));
    for (n, &v_n) in predicted.iter().enumerate() {
        let k = pure_index(p, n)?;
        require_coverage(table, k)?;
        let expected = residue(p.get() - 1, p.get());
        match unit_part_mod_p(table.a(k as usize), p, v_n) {
            Ok(u) => report.push(n, expected, residue(u, p.get()), u == p.get() - 1),
            Err(e) => report.push(n, expected, e, false),
        }
    }
    Ok(report)
}

/// `(1 - p^{-r})/(p - 1) = (p^r - 1) / (p^r (p - 1))`.
fn slope(p: u64, r: u32) -> BigRational {
    let pr = BigInt::from(p).pow(r);
    BigRational::new(&pr - 1, pr * BigInt::from(p - 1))
}

/// Slope equality `v_n = (1 - p^{-r})/(p-1) p^n` for covered `n >= 2s`
/// (witnesses `n:slope`), and boundedness of
/// `dev(k) = ord_p a_k - (1 - p^{-r})/(p-1) k` over `p | k <= K` by the
/// largest deviation among `p | j < p^{2s}` (witnesses `k:dev`).
///
/// Metrics: `deviation_bound` and `deviation_argmax` (the empirical
/// constant), `max_deviation`, `min_deviation`, and `residue_periodic`,
/// which records whether `dev(k) = dev(k mod p^{2s})` on the whole range.
pub fn check_pure_slope_and_deviation(table: &CoefficientTable, vt: &VTable) -> Result<CheckReport, VerifyError> {
    require_deformed("slope_deviation", vt.r)?;
    let p = vt.p;
    let p_u = p.get();
    let max_k = table.max_k() as u64;
    let period = pure_index(p, 2 * vt.s())?;
    require_coverage(table, period)?;
    let sl = slope(p_u, vt.r);
    let mut report = CheckReport::new(
        "slope_deviation",
        p_u,
        Some(vt.r),
        format!("n={}..={}, p|k<={max_k}", 2 * vt.s(), vt.n_max()),
    );

    for n in 2 * vt.s()..=vt.n_max() {
        let expected = &sl * BigRational::from_integer(BigInt::from(pure_index(p, n)?));
        let actual = BigRational::from_integer(BigInt::from(vt.v[n]));
        let pass = expected == actual;
        report.push(format!("{n}:slope"), format_rational(&expected), vt.v[n], pass);
    }

    let deviation = |k: u64| -> Option<BigRational> {
        table
            .valuation(k as usize)
            .finite()
            .map(|o| BigRational::from_integer(BigInt::from(o)) - &sl * BigRational::from_integer(BigInt::from(k)))
    };
    let mut bound = BigRational::zero();
    let mut argmax = 0u64;
    for j in (p_u..period).step_by(p_u as usize) {
        if let Some(d) = deviation(j) {
            if d > bound {
                bound = d;
                argmax = j;
            }
        }
    }
    let mut periodic = true;
    let mut max_dev: Option<(BigRational, u64)> = None;
    let mut min_dev: Option<BigRational> = None;
    for k in (p_u..=max_k).step_by(p_u as usize) {
        let Some(d) = deviation(k) else {
            report.push(
                format!("{k}:dev"),
                format!("<= {}", format_rational(&bound)),
                "inf",
                false,
            );
            continue;
        };
        let rem = k % period;
        let reference = if rem == 0 {
            Some(BigRational::zero())
        } else {
            deviation(rem)
        };
        periodic &= reference.as_ref() == Some(&d);
        if max_dev.as_ref().is_none_or(|(m, _)| d > *m) {
            max_dev = Some((d.clone(), k));
        }
        if min_dev.as_ref().is_none_or(|m| d < *m) {
            min_dev = Some(d.clone());
        }
        let pass = d <= bound;
        report.push(
            format!("{k}:dev"),
            format!("<= {}", format_rational(&bound)),
            format_rational(&d),
            pass,
        );
    }
    report.add_metric("deviation_bound", format_rational(&bound));
    report.add_metric("deviation_argmax", argmax);
    if let Some((m, k)) = max_dev {
        report.add_metric("max_deviation", format_rational(&m));
        report.add_metric("max_deviation_at", k);
    }
    if let Some(m) = min_dev {
        report.add_metric("min_deviation", format_rational(&m));
    }
    report.add_metric("residue_periodic", periodic);
    Ok(report)
}

fn top_level_covered(vt: &VTable, max_k: u64) -> Result<(), VerifyError> {
    let level = DigitExpansion::new(max_k, vt.p).digits().len().saturating_sub(1);
    if level > vt.n_max() {
        return Err(VerifyError::LayerCoverage {
            k: max_k,
            level,
            n_max: vt.n_max(),
        });
    }
    Ok(())
}

/// `ord_p a_k >= Lambda(k)` for every `1 <= k <= K`; the metric
/// `equality_count` counts the indices where equality holds.
pub fn check_lambda_lower_bound(table: &CoefficientTable, vt: &VTable) -> Result<CheckReport, VerifyError> {
    require_deformed("lambda_lower_bound", vt.r)?;
    let max_k = table.max_k() as u64;
    top_level_covered(vt, max_k)?;
    let dw = vt.digit_weight();
    let mut report = CheckReport::new("lambda_lower_bound", vt.p.get(), Some(vt.r), format!("1..={max_k}"));
    let mut equalities = 0usize;
    for k in 1..=max_k {
        let lambda = dw.lambda(k)?;
        let ord = table.valuation(k as usize);
        equalities += usize::from(ord == lambda);
        report.push(k, format!(">= {lambda}"), ord, ord >= lambda);
    }
    report.add_metric("equality_count", equalities);
    Ok(report)
}

fn is_power_of(mut m: u64, p: u64) -> bool {
    while m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}

/// For `k = p m <= K` with `m` not a power of `p`:
/// `a_k = prod_i a_{p^i}^{k_i}` mod `p^{Lambda(k)+1}` (witness `k:product`)
/// and `p^{-Lambda(k)} a_k = (-1)^{S_p(m)}` mod `p` (witness `k:unit`).
pub fn check_leading_term(table: &CoefficientTable, vt: &VTable) -> Result<CheckReport, VerifyError> {
    require_deformed("leading_term", vt.r)?;
    let p = vt.p;
    let p_u = p.get();
    let max_k = table.max_k() as u64;
    top_level_covered(vt, max_k)?;
    let dw = vt.digit_weight();
    let mut report = CheckReport::new(
        "leading_term",
        p_u,
        Some(vt.r),
        format!("p*m<={max_k}, m not a power of p"),
    );
    for m in 2..=max_k / p_u {
        if is_power_of(m, p_u) {
            continue;
        }
        let k = p_u * m;
        let lambda = dw.lambda(k)?;
        let a_k = table.a(k as usize);

        let digits = DigitExpansion::new(k, p);
        let mut product = BigRational::one();
        for (i, &d) in digits.digits().iter().enumerate() {
            let pure = table.a(pure_index(p, i)? as usize);
            product *= num_traits::pow(pure.clone(), d as usize);
        }
        let diff = ord_p(&(a_k - &product), p);
        report.push(
            format!("{k}:product"),
            format!("ord >= {}", lambda + 1),
            format!("ord = {diff}"),
            diff > lambda,
        );

        let expected = sign_mod(digit_sum(m, p), p_u);
        match unit_part_mod_p(a_k, p, lambda) {
            Ok(u) => report.push(
                format!("{k}:unit"),
                residue(expected, p_u),
                residue(u, p_u),
                u == expected,
            ),
            Err(e) => report.push(format!("{k}:unit"), residue(expected, p_u), e, false),
        }
    }
    Ok(report)
}

/// How [`check_subadditivity`] chooses its pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubadditivityMode {
    /// Every `0 <= m <= n` with `m + n <= p^{n_max}`.
    Exhaustive,
    /// `count` pairs drawn from a ChaCha8 stream seeded with `seed`.
    Sampled { count: usize, seed: u64 },
}

/// `Lambda(m + n) <= Lambda(m) + Lambda(n)` for pairs with `m + n <= p^{n_max}`.
pub fn check_subadditivity(vt: &VTable, mode: SubadditivityMode) -> Result<CheckReport, VerifyError> {
    require_deformed("subadditivity", vt.r)?;
    let limit = pure_index(vt.p, vt.n_max())?;
    let dw = vt.digit_weight();
    let range = match mode {
        SubadditivityMode::Exhaustive => format!("m+n<={limit}"),
        SubadditivityMode::Sampled { count, seed } => format!("{count} samples of m+n<={limit}, seed {seed}"),
    };
    let mut report = CheckReport::new("subadditivity", vt.p.get(), Some(vt.r), range);
    let push = |m: u64, n: u64, report: &mut CheckReport| -> Result<(), VerifyError> {
        let lhs = dw.lambda(m + n)?;
        let rhs = dw.lambda(m)? + dw.lambda(n)?;
        report.push(format!("{m}+{n}"), format!("<= {rhs}"), lhs, lhs <= rhs);
        Ok(())
    };
    match mode {
        SubadditivityMode::Exhaustive => {
            for m in 0..=limit / 2 {
                for n in m..=limit - m {
                    push(m, n, &mut report)?;
                }
            }
        }
        SubadditivityMode::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                let m = rng.gen_range(0..=limit);
                let n = rng.gen_range(0..=limit - m);
                push(m, n, &mut report)?;
            }
        }
    }
    Ok(report)
}

/// Largest `p^n` whose factorial identities are evaluated.
pub const ALPHA_GAMMA_GUARD: u64 = 125;

/// For `2 <= n <= n_max`, with `alpha_n = (p^n)!/(q (p^{n-2})!)` and
/// `gamma_n = (p^n)!/(p (p^{n-1})!^p) * binom(p^2-1, p-1)`:
/// `ord alpha_n = (p+1) p^{n-2} - 2`, its unit is `1` mod `p`,
/// `ord (p^n)!/(p^{n-1})!^p = 1`, `binom(p^2-1, p-1) = 1` and
/// `gamma_n = -1` mod `p`.
pub fn check_alpha_gamma(p: Prime, n_max: usize) -> Result<CheckReport, VerifyError> {
    let p_u = p.get();
    if n_max < 2 {
        return Err(VerifyError::Guard(format!("n range 2..={n_max} is empty")));
    }
    let top = pure_index(p, n_max)?;
    if top > ALPHA_GAMMA_GUARD {
        return Err(VerifyError::Guard(format!(
            "{p}^{n_max} = {top} exceeds the factorial guard {ALPHA_GAMMA_GUARD}"
        )));
    }
    let mut report = CheckReport::new("alpha_gamma", p_u, None, format!("n=2..={n_max}"));
    let q = BigInt::from(p_u * p_u);
    let binom = factorial(p_u * p_u - 1) / (factorial(p_u - 1) * factorial(p_u * p_u - p_u));
    for n in 2..=n_max {
        let pn = pure_index(p, n)?;
        let big = factorial(pn);
        let alpha = BigRational::new(big.clone(), &q * factorial(pn / (p_u * p_u)));
        let ord_alpha = (p_u as i64 + 1) * (p_u as i64).pow(n as u32 - 2) - 2;
        report.push_eq(format!("{n}:ord_alpha"), Valuation::Finite(ord_alpha), ord_p(&alpha, p));
        let unit = unit_part_mod_p(&alpha, p, ord_alpha).map_err(|e| e.to_string());
        match unit {
            Ok(u) => report.push(format!("{n}:unit_alpha"), residue(1, p_u), residue(u, p_u), u == 1),
            Err(e) => report.push(format!("{n}:unit_alpha"), residue(1, p_u), e, false),
        }

        let block = num_traits::pow(factorial(pn / p_u), p_u as usize);
        let ratio = BigRational::new(big.clone(), block.clone());
        report.push_eq(format!("{n}:ord_ratio"), Valuation::Finite(1), ord_p(&ratio, p));
        report.push_eq(
            format!("{n}:binom"),
            residue(1, p_u),
            residue(mod_p_reduce(&BigRational::from_integer(binom.clone()), p)?, p_u),
        );

        let gamma = BigRational::new(big * &binom, block * BigInt::from(p_u));
        let expected = residue(p_u - 1, p_u);
        match mod_p_reduce(&gamma, p) {
            Ok(g) => report.push(format!("{n}:gamma"), expected, residue(g, p_u), g == p_u - 1),
            Err(e) => report.push(format!("{n}:gamma"), expected, e, false),
        }
    }
    report.add_metric("binom_valuation", ord_p_int(&binom, p));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boettcher::{solve_coefficients, FamilyParams};

    fn table(p: u64, r: u32, max_k: usize) -> CoefficientTable {
        solve_coefficients(FamilyParams::new(p, r).unwrap(), max_k).unwrap()
    }

    fn prime(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    #[test]
    fn predicted_sequences() {
        assert_eq!(predicted_v(prime(3), 1, 4), vec![1, 3, 3, 9, 27]);
        assert_eq!(predicted_v(prime(3), 3, 5), vec![3, 9, 5, 15, 39, 117]);
    }

    #[test]
    fn v_table_matches_on_small_table() {
        let t = table(3, 1, 81);
        let (vt, report) = build_v_table(&t, 4).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(vt.v(), &[1, 3, 3, 9, 27]);
        assert_eq!(vt.dominance(2), Dominance::A);
        assert_eq!(vt.dominance(4), Dominance::B);
        assert!(check_branch_pattern(&vt).passed());
        assert!(check_pure_units(&t, &vt).unwrap().passed());
    }

    #[test]
    fn v_table_refuses_special_fiber_and_short_tables() {
        assert!(matches!(
            build_v_table(&table(3, 0, 10), 2),
            Err(VerifyError::WrongFiber { .. })
        ));
        assert!(matches!(
            build_v_table(&table(3, 1, 20), 3),
            Err(VerifyError::Coverage { .. })
        ));
    }

    #[test]
    fn lambda_examples() {
        let dw = DigitWeight::new(prime(3), vec![1, 3, 3, 9, 27]);
        assert_eq!(dw.lambda(12).unwrap(), 6);
        assert_eq!(dw.lambda(2).unwrap(), 2);
        assert_eq!(dw.lambda(0).unwrap(), 0);
        assert_eq!(dw.lambda_m(4).unwrap(), 6);
        assert!(matches!(dw.lambda(243), Err(VerifyError::LayerCoverage { .. })));
        let r3 = DigitWeight::new(prime(3), vec![3, 9, 5]);
        assert_eq!(r3.lambda(9).unwrap(), 5);
        assert_eq!(r3.lambda(6).unwrap() + r3.lambda(3).unwrap(), 27);
    }

    #[test]
    fn r1_checks_on_p3() {
        let t = table(3, 1, 81);
        let (vt, _) = build_v_table(&t, 4).unwrap();
        let lb = check_lambda_lower_bound(&t, &vt).unwrap();
        assert!(lb.passed(), "{lb}");
        let w = lb.witnesses().iter().find(|w| w.index == "12").unwrap();
        assert_eq!((w.expected.as_str(), w.actual.as_str()), (">= 6", "6"));
        let lt = check_leading_term(&t, &vt).unwrap();
        assert!(lt.passed(), "{lt}");
        let w = lt.witnesses().iter().find(|w| w.index == "12:unit").unwrap();
        assert_eq!(w.actual, "1 mod 3");
        let slope = check_pure_slope_and_deviation(&t, &vt).unwrap();
        assert!(slope.passed(), "{slope}");
        assert_eq!(slope.metric("deviation_bound"), Some("4"));
        assert_eq!(slope.metric("deviation_argmax"), Some("6"));
        let w = slope.witnesses().iter().find(|w| w.index == "12:dev").unwrap();
        assert_eq!(w.actual, "2");
    }

    #[test]
    fn subadditivity_modes() {
        let t = table(3, 3, 81);
        let (vt, _) = build_v_table(&t, 4).unwrap();
        let ex = check_subadditivity(&vt, SubadditivityMode::Exhaustive).unwrap();
        assert!(ex.passed());
        let w = ex.witnesses().iter().find(|w| w.index == "3+6").unwrap();
        assert_eq!((w.expected.as_str(), w.actual.as_str()), ("<= 27", "5"));
        let sampled = check_subadditivity(&vt, SubadditivityMode::Sampled { count: 50, seed: 7 }).unwrap();
        assert_eq!(sampled.witnesses().len(), 50);
        assert!(sampled.passed());
        let again = check_subadditivity(&vt, SubadditivityMode::Sampled { count: 50, seed: 7 }).unwrap();
        assert_eq!(sampled, again);
    }

    #[test]
    fn alpha_gamma_examples() {
        let report = check_alpha_gamma(prime(3), 4).unwrap();
        assert!(report.passed(), "{report}");
        assert!(check_alpha_gamma(prime(5), 3).unwrap().passed());
        assert!(matches!(check_alpha_gamma(prime(3), 5), Err(VerifyError::Guard(_))));
        let alpha2 = BigRational::new(factorial(9), BigInt::from(9));
        assert_eq!(alpha2, BigRational::from_integer(BigInt::from(40320)));
    }
}
