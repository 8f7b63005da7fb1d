use rayon::prelude::*;

use crate::boettcher::{abc_decompose_all, residual_check, CoefficientTable};
use crate::combinat::{
    b_component_from_monomials, c_component_from_monomials, check_vector_b, classify_b_survivors,
    cumulant_collapse_check, tree_function_check, truncated_exp_identity, CombinatError, DigitVector, MONOMIAL_GUARD_K,
    PARTITION_GUARD_WEIGHT,
};
use crate::padic::{format_rational, Prime};
use crate::report::CheckReport;

use super::special::{check_a_c_lemmas, check_digit_sum, check_first_block, check_multiple_residues};
use super::valuations::{
    build_v_table, check_alpha_gamma, check_branch_pattern, check_lambda_lower_bound, check_leading_term,
    check_pure_slope_and_deviation, check_pure_units, check_subadditivity, SubadditivityMode, VTable,
    ALPHA_GAMMA_GUARD,
};
use super::{require_coverage, require_r0, VerifyError};

/// Which tables a check accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    /// Independent of `r`, or meaningful on every fiber.
    Any,
    SpecialFiber,
    Deformed,
}

/// Every check name, in report order.
pub const CHECK_NAMES: &[&str] = &[
    "residual",
    "first_block",
    "digit_sum",
    "pm_residues",
    "a_c_lemmas",
    "survivors",
    "monomial_reassembly",
    "vector_b",
    "cumulants",
    "truncated_exp",
    "tree_function",
    "v_table",
    "branch_pattern",
    "pure_units",
    "slope_deviation",
    "lambda_lower_bound",
    "leading_term",
    "subadditivity",
    "alpha_gamma",
];

impl CheckKind {
    pub fn of(name: &str) -> Option<CheckKind> {
        Some(match name {
            "residual" | "a_c_lemmas" | "truncated_exp" | "tree_function" | "alpha_gamma" => CheckKind::Any,
            "first_block"
            | "digit_sum"
            | "pm_residues"
            | "survivors"
            | "monomial_reassembly"
            | "vector_b"
            | "cumulants" => CheckKind::SpecialFiber,
            "v_table" | "branch_pattern" | "pure_units" | "slope_deviation" | "lambda_lower_bound" | "leading_term"
            | "subadditivity" => CheckKind::Deformed,
            _ => return None,
        })
    }

    pub fn accepts(self, r: u32) -> bool {
        match self {
            CheckKind::Any => true,
            CheckKind::SpecialFiber => r == 0,
            CheckKind::Deformed => r >= 1,
        }
    }
}

/// The checks `all` expands to for a table with parameters `(p, r)` and
/// truncation `K`. Checks whose range cannot be covered are left out:
/// `alpha_gamma` when `p^2` exceeds its factorial guard, and
/// `slope_deviation` when `K < p^{2s}`.
pub fn default_checks(p: u64, r: u32, max_k: usize) -> Vec<&'static str> {
    let period = p.checked_pow(2 * r.div_ceil(2));
    CHECK_NAMES
        .iter()
        .copied()
        .filter(|name| CheckKind::of(name).is_some_and(|kind| kind.accepts(r)))
        .filter(|name| *name != "alpha_gamma" || p * p <= ALPHA_GAMMA_GUARD)
        .filter(|name| *name != "slope_deviation" || period.is_some_and(|t| t as usize <= max_k))
        .collect()
}

/// Exhaustive survivor classification for every `p | k <= max_k`.
pub fn check_survivors(p: Prime, max_k: u64) -> Result<CheckReport, VerifyError> {
    let p_u = p.get();
    if p_u != 3 && max_k > MONOMIAL_GUARD_K {
        return Err(CombinatError::MonomialGuard { p: p_u, k: max_k }.into());
    }
    let mut report = CheckReport::new("survivors", p_u, None, format!("p|k<={max_k}"));
    let mut scanned = 0usize;
    for k in (p_u..=max_k).step_by(p_u as usize) {
        let expected = format!("exceptional={} unexplained=0", u8::from(k == p_u));
        match classify_b_survivors(p, k) {
            Ok(c) => {
                scanned += c.monomials_scanned;
                let actual = format!(
                    "exceptional={} unexplained={} all_divisible={}",
                    c.exceptional.len(),
                    c.unexplained.len(),
                    c.all_divisible.len()
                );
                let pass = c.is_consistent() && c.exceptional.len() == usize::from(k == p_u);
                report.push(k, expected, actual, pass);
            }
            Err(e @ CombinatError::ValuationFormula { .. }) => report.push(k, expected, e, false),
            Err(e) => return Err(e.into()),
        }
    }
    report.add_metric("monomials_scanned", scanned);
    Ok(report)
}

/// The monomial sums for B and C against the decomposition, `1 <= k <= max_k`.
pub fn check_monomial_reassembly(table: &CoefficientTable, max_k: usize) -> Result<CheckReport, VerifyError> {
    require_coverage(table, max_k as u64)?;
    let p = table.params().p();
    let mut report = CheckReport::new(
        "monomial_reassembly",
        p,
        Some(table.params().r()),
        format!("1..={max_k}"),
    );
    let truncated = table.truncated(max_k)?;
    for dec in abc_decompose_all(&truncated) {
        let k = dec.k as u64;
        let b = b_component_from_monomials(table, k)?;
        report.push(
            format!("{k}:B"),
            format_rational(&dec.b_term),
            format_rational(&b),
            b == dec.b_term,
        );
        let c = c_component_from_monomials(table, k)?;
        report.push(
            format!("{k}:C"),
            format_rational(&dec.c_term),
            format_rational(&c),
            c == dec.c_term,
        );
    }
    Ok(report)
}

/// Vectors of length `1..=max_len` with weight `1..=max_weight`.
fn small_digit_vectors(p: Prime, max_len: usize, max_weight: u64) -> Vec<DigitVector> {
    let mut out = Vec::new();
    for len in 1..=max_len {
        let mut current: Vec<Vec<u64>> = vec![Vec::new()];
        for _ in 0..len {
            current = current
                .into_iter()
                .flat_map(|prefix| {
                    let used: u64 = prefix.iter().sum();
                    (0..=max_weight - used).map(move |x| {
                        let mut v = prefix.clone();
                        v.push(x);
                        v
                    })
                })
                .collect();
        }
        out.extend(
            current
                .into_iter()
                .filter(|v| v.iter().any(|&x| x > 0))
                .map(|v| DigitVector::new(p, v).expect("entries below the weight cap are digits")),
        );
    }
    out
}

/// Cumulant collapse on every `1 <= a <= max_a` and every digit vector of
/// length at most `max_len` with `1 <= |d| <= max_weight`.
pub fn check_cumulants(
    table: &CoefficientTable,
    max_a: u64,
    max_weight: u64,
    max_len: usize,
) -> Result<CheckReport, VerifyError> {
    require_r0("cumulants", table)?;
    let p = table.prime();
    if max_weight >= p.get() || max_a >= p.get() {
        return Err(VerifyError::Guard(format!(
            "cumulants need a, |d| < p = {p}, got a <= {max_a}, |d| <= {max_weight}"
        )));
    }
    let mut report = CheckReport::new(
        "cumulants",
        p.get(),
        Some(0),
        format!("a<={max_a}, |d|<={max_weight}, len<={max_len}"),
    );
    let vectors = small_digit_vectors(p, max_len, max_weight);
    for a in 1..=max_a {
        for d in &vectors {
            report.absorb(cumulant_collapse_check(table, a, d)?);
        }
    }
    Ok(report)
}

fn v_table_for(table: &CoefficientTable) -> Result<(VTable, CheckReport), VerifyError> {
    let p = table.params().p();
    let mut n_max = 0usize;
    while p.pow(n_max as u32 + 1) as usize <= table.max_k() {
        n_max += 1;
    }
    build_v_table(table, n_max)
}

fn relabel(source: CheckReport, p: u64, r: u32, range: String) -> CheckReport {
    let mut out = CheckReport::new(source.check_name().to_string(), p, Some(r), range);
    out.absorb(source);
    out
}

/// Runs one named check with the suite's default parameters.
pub fn run_check(name: &str, table: &CoefficientTable) -> Result<CheckReport, VerifyError> {
    let params = table.params();
    let (p, r) = (params.p(), params.r());
    let kind = CheckKind::of(name).ok_or_else(|| VerifyError::UnknownCheck(name.to_string()))?;
    if !kind.accepts(r) {
        let expected = if kind == CheckKind::SpecialFiber {
            "r = 0"
        } else {
            "r >= 1"
        };
        return Err(VerifyError::WrongFiber {
            check: name.to_string(),
            expected,
            r,
        });
    }
    let max_k = table.max_k();
    match name {
        "residual" => Ok(residual_check(table)),
        "first_block" => check_first_block(table),
        "digit_sum" => check_digit_sum(table),
        "pm_residues" => check_multiple_residues(table),
        "a_c_lemmas" => check_a_c_lemmas(table, max_k),
        "survivors" => {
            let cap = if p == 3 { 30 } else { MONOMIAL_GUARD_K };
            let report = check_survivors(params.prime(), cap.min(max_k as u64))?;
            let range = report.range().to_string();
            Ok(relabel(report, p, r, range))
        }
        "monomial_reassembly" => check_monomial_reassembly(table, max_k.min(15)),
        "vector_b" => Ok(check_vector_b(table, PARTITION_GUARD_WEIGHT)?),
        "cumulants" => {
            let cap = 3.min(p - 1);
            check_cumulants(table, cap, cap, 3)
        }
        "truncated_exp" => {
            let mut report = CheckReport::new("truncated_exp", p, Some(r), "m=1..=20");
            for m in 1..=20 {
                report.absorb(truncated_exp_identity(params.prime(), m));
            }
            Ok(report)
        }
        "tree_function" => Ok(relabel(tree_function_check(20), p, r, "m=1..=20".into())),
        "alpha_gamma" => {
            let mut n_max = 2usize;
            while p.pow(n_max as u32 + 1) <= ALPHA_GAMMA_GUARD {
                n_max += 1;
            }
            let report = check_alpha_gamma(params.prime(), n_max)?;
            let range = report.range().to_string();
            Ok(relabel(report, p, r, range))
        }
        deformed => {
            let (vt, v_report) = v_table_for(table)?;
            match deformed {
                "v_table" => Ok(v_report),
                "branch_pattern" => Ok(check_branch_pattern(&vt)),
                "pure_units" => check_pure_units(table, &vt),
                "slope_deviation" => check_pure_slope_and_deviation(table, &vt),
                "lambda_lower_bound" => check_lambda_lower_bound(table, &vt),
                "leading_term" => check_leading_term(table, &vt),
                "subadditivity" => {
                    let mode = if p == 3 {
                        SubadditivityMode::Exhaustive
                    } else {
                        SubadditivityMode::Sampled {
                            count: 2000,
                            seed: 0x5eed_0001,
                        }
                    };
                    check_subadditivity(&vt, mode)
                }
                other => Err(VerifyError::UnknownCheck(other.to_string())),
            }
        }
    }
}

/// Runs the named checks concurrently; reports come back in the order given.
pub fn run_checks(names: &[&str], table: &CoefficientTable) -> Result<Vec<CheckReport>, VerifyError> {
    names.par_iter().map(|name| run_check(name, table)).collect()
}
