use crate::boettcher::{abc_decompose_all, CoefficientTable};
use crate::padic::{digit_sum, mod_p_reduce, mul_mod, pow_mod, sign_mod};
use crate::report::CheckReport;

use super::{require_coverage, require_r0, VerifyError};

pub(crate) fn residue(value: u64, p: u64) -> String {
    format!("{value} mod {p}")
}

/// Reduces `a_k` mod `p`, rendering a non-integral value as its error.
fn observed(table: &CoefficientTable, k: usize) -> Result<u64, String> {
    mod_p_reduce(table.a(k), table.prime()).map_err(|e| e.to_string())
}

fn push_residue(report: &mut CheckReport, index: String, expected: u64, actual: Result<u64, String>, p: u64) {
    match actual {
        Ok(v) => report.push(index, residue(expected, p), residue(v, p), v == expected),
        Err(e) => report.push(index, residue(expected, p), e, false),
    }
}

/// `(-1)^n (n+1)^{n-1}` mod `p`, read as `1` at `n = 0`.
pub(crate) fn first_block_residue(n: u64, p: u64) -> u64 {
    if n == 0 {
        return 1;
    }
    mul_mod(sign_mod(n, p), pow_mod(n + 1, n - 1, p), p)
}

/// `a_n mod p` against `(-1)^n (n+1)^{n-1}` for `0 <= n <= p-1`.
pub fn check_first_block(table: &CoefficientTable) -> Result<CheckReport, VerifyError> {
    require_r0("first_block", table)?;
    let p = table.params().p();
    require_coverage(table, p - 1)?;
    let mut report = CheckReport::new("first_block", p, Some(0), format!("0..={}", p - 1));
    for n in 0..p {
        push_residue(
            &mut report,
            n.to_string(),
            first_block_residue(n, p),
            observed(table, n as usize),
            p,
        );
    }
    Ok(report)
}

/// Both forms of the digit-sum law for every `1 <= k <= K`. With
/// `k = a + sum d_i p^i` and `s = sum d_i`:
/// `a_k = (-1)^s (a+1)^s a_a` (witness `k:eq1`) and
/// `a_k = (-1)^{a+s} (a+1)^{a+s-1}` (witness `k:eq2`), both mod `p`.
pub fn check_digit_sum(table: &CoefficientTable) -> Result<CheckReport, VerifyError> {
    require_r0("digit_sum", table)?;
    let prime = table.prime();
    let p = prime.get();
    let max_k = table.max_k() as u64;
    let mut report = CheckReport::new("digit_sum", p, Some(0), format!("1..={max_k}"));
    for k in 1..=max_k {
        let a = k % p;
        let s = digit_sum(k, prime) - a;
        let actual = observed(table, k as usize);

        let eq1 = match observed(table, a as usize) {
            Ok(a_a) => Ok(mul_mod(mul_mod(sign_mod(s, p), pow_mod(a + 1, s, p), p), a_a, p)),
            Err(e) => Err(e),
        };
        match eq1 {
            Ok(expected) => push_residue(&mut report, format!("{k}:eq1"), expected, actual.clone(), p),
            Err(e) => report.push(format!("{k}:eq1"), e, "-", false),
        }
        let eq2 = mul_mod(sign_mod(a + s, p), pow_mod(a + 1, a + s - 1, p), p);
        push_residue(&mut report, format!("{k}:eq2"), eq2, actual, p);
    }
    Ok(report)
}

/// `a_{pm} = (-1)^m`, `a_{pm-1} = 0` and `a_{pm-2} = -1` mod `p` for
/// every `pm <= K`.
pub fn check_multiple_residues(table: &CoefficientTable) -> Result<CheckReport, VerifyError> {
    require_r0("pm_residues", table)?;
    let p = table.params().p();
    let max_k = table.max_k() as u64;
    let mut report = CheckReport::new("pm_residues", p, Some(0), format!("p*m<={max_k}"));
    for m in 1..=max_k / p {
        let k = p * m;
        push_residue(
            &mut report,
            format!("{k}:pm"),
            sign_mod(m, p),
            observed(table, k as usize),
            p,
        );
        push_residue(
            &mut report,
            format!("{}:pm-1", k - 1),
            0,
            observed(table, k as usize - 1),
            p,
        );
        push_residue(
            &mut report,
            format!("{}:pm-2", k - 2),
            p - 1,
            observed(table, k as usize - 2),
            p,
        );
    }
    Ok(report)
}

/// The A- and C-terms of the decomposition for `1 <= k <= max_k`.
///
/// On every fiber: `A_k = 0` mod `p` (witness `k:A`), and `C_k = 0` mod `p`
/// when `p | k` (witness `k:C`). On `r = 0` the C witness covers every `k`
/// with prediction `C_k = (k mod p) a_{k-1}` mod `p`.
pub fn check_a_c_lemmas(table: &CoefficientTable, max_k: usize) -> Result<CheckReport, VerifyError> {
    require_coverage(table, max_k as u64)?;
    let params = table.params();
    let prime = table.prime();
    let p = prime.get();
    let truncated = table.truncated(max_k)?;
    let mut report = CheckReport::new("a_c_lemmas", p, Some(params.r()), format!("1..={max_k}"));
    for dec in abc_decompose_all(&truncated) {
        let k = dec.k;
        let reduce = |x| mod_p_reduce(x, prime).map_err(|e| e.to_string());
        push_residue(&mut report, format!("{k}:A"), 0, reduce(&dec.a_term), p);
        let a = k as u64 % p;
        if params.r() == 0 {
            let expected = observed(table, k - 1).map(|prev| mul_mod(a, prev, p));
            match expected {
                Ok(e) => push_residue(&mut report, format!("{k}:C"), e, reduce(&dec.c_term), p),
                Err(e) => report.push(format!("{k}:C"), e, "-", false),
            }
        } else if a == 0 {
            push_residue(&mut report, format!("{k}:C"), 0, reduce(&dec.c_term), p);
        }
    }
    Ok(report)
}
