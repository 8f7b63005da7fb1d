use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::padic::{factorial, format_rational, Prime};
use crate::report::CheckReport;
use crate::series::PowerSeries;

fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Compares `[y^m] (sum_{i<m} y^i / (p^i i!))^q` with `p^m/m! - q/(p^m m!)`
/// as exact rationals.
pub fn truncated_exp_identity(p: Prime, m: u64) -> CheckReport {
    let mut report = CheckReport::new("truncated_exp", p.get(), None, format!("m={m}"));
    let q = p.get() * p.get();
    let m_us = m as usize;
    let coeffs: Vec<BigRational> = (0..=m_us)
        .map(|i| {
            if i < m_us {
                BigRational::new(BigInt::one(), p.pow_big(i as u32) * factorial(i as u64))
            } else {
                BigRational::zero()
            }
        })
        .collect();
    let truncated = PowerSeries::new(coeffs).expect("nonempty");
    let lhs = truncated
        .pow(q)
        .expect("positive exponent")
        .coeff(m_us)
        .expect("within order")
        .clone();
    let pm = p.pow_big(m as u32);
    let mf = factorial(m);
    let rhs = BigRational::new(pm.clone(), mf.clone()) - BigRational::new(BigInt::from(q), pm * mf);
    let pass = lhs == rhs;
    report.push(m, format_rational(&rhs), format_rational(&lhs), pass);
    report
}

/// Solves `U = x e^{-U}` through `x^order` by coefficient recursion and
/// compares `[x^m] U` with `(-m)^{m-1}/m!` for `1 <= m <= order`.
///
/// With `W = e^{-U}` one has `U_m = W_{m-1}` and, from `W' = -U' W`,
/// `n W_n = -sum_{j=1}^{n} j U_j W_{n-j}`.
pub fn tree_function_check(order: usize) -> CheckReport {
    let mut report = CheckReport::new("tree_function", 0, None, format!("1..={order}"));
    let mut u = vec![BigRational::zero(); order + 1];
    let mut w = vec![BigRational::one(); 1];
    for m in 1..=order {
        u[m] = w[m - 1].clone();
        let mut acc = BigRational::zero();
        for j in 1..=m {
            acc += rat(j as i64) * &u[j] * &w[m - j];
        }
        w.push(-acc / rat(m as i64));
    }
    for (m, um) in u.iter().enumerate().skip(1) {
        let expected = BigRational::new(num_traits::pow(BigInt::from(-(m as i64)), m - 1), factorial(m as u64));
        let pass = *um == expected;
        report.push(m, format_rational(&expected), format_rational(um), pass);
    }
    report
}
