//! Block polynomials `F_a`, `H_beta`, `H~_d` reduced mod `p`, and the two
//! identities assembled from them: the vector-partition expansion of the
//! B-term and the collapse of the multivariate cumulants.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::digits::{digit_vectors_up_to, enumerate_vector_partitions, DigitVector};
use super::{CombinatError, PARTITION_GUARD_WEIGHT};
use crate::boettcher::{abc_decompose_all, CoefficientTable};
use crate::padic::{factorial, mod_p_reduce, mul_mod, pow_mod, sign_mod, Prime};
use crate::report::CheckReport;
use crate::series::{Fp, MVPolynomial, PowerSeries};

fn check_residue(a: u64, p: Prime) -> Result<(), CombinatError> {
    if a == 0 || a >= p.get() {
        return Err(CombinatError::ResidueOutOfRange { a, p: p.get() });
    }
    Ok(())
}

fn check_length(table: &CoefficientTable, needed: u64) -> Result<(), CombinatError> {
    if needed as usize > table.max_k() {
        return Err(CombinatError::TableTooShort {
            needed: needed as usize,
            max_k: table.max_k(),
        });
    }
    Ok(())
}

fn bigint_mod(x: &BigInt, p: Prime) -> Result<u64, CombinatError> {
    Ok(mod_p_reduce(&BigRational::from_integer(x.clone()), p)?)
}

/// `sum_{j < len} a_{offset+j}/j! y^j` mod `p`, padded with zeros to degree `a`.
fn shifted_block(table: &CoefficientTable, offset: u64, len: u64, a: u64) -> Result<PowerSeries<Fp>, CombinatError> {
    let p = table.prime();
    check_length(table, offset + a)?;
    let coeffs = (0..=a)
        .map(|j| {
            if j < len {
                let term = table.a((offset + j) as usize) / BigRational::from_integer(factorial(j));
                Ok(Fp::new(mod_p_reduce(&term, p)?, p.get()))
            } else {
                Ok(Fp::new(0, p.get()))
            }
        })
        .collect::<Result<Vec<_>, CombinatError>>()?;
    Ok(PowerSeries::new(coeffs)?)
}

/// `F_a(y) = sum_{j<=a} a_j/j! y^j` mod `p`.
pub fn first_block_series(table: &CoefficientTable, a: u64) -> Result<PowerSeries<Fp>, CombinatError> {
    check_residue(a, table.prime())?;
    shifted_block(table, 0, a + 1, a)
}

/// `H_beta(y) = sum_{j<=a} a_{N(beta)+j}/j! y^j` mod `p`.
pub fn block_series(table: &CoefficientTable, beta: &DigitVector, a: u64) -> Result<PowerSeries<Fp>, CombinatError> {
    check_residue(a, table.prime())?;
    shifted_block(table, beta.numeric_value(), a + 1, a)
}

/// `H~_d(y)`, the block of `d` without its top coefficient `a_{N(d)+a}`.
pub fn truncated_block_series(
    table: &CoefficientTable,
    d: &DigitVector,
    a: u64,
) -> Result<PowerSeries<Fp>, CombinatError> {
    check_residue(a, table.prime())?;
    shifted_block(table, d.numeric_value(), a, a)
}

/// `D^m` with `D = 1 + y d/dy`, i.e. the `y^j` coefficient times `(j+1)^m`.
pub fn euler_power(series: &PowerSeries<Fp>, m: u64) -> PowerSeries<Fp> {
    series.map_indexed(|j, c| {
        let p = c.modulus();
        Fp::new(mul_mod(c.value(), pow_mod((j as u64 + 1) % p, m, p), p), p)
    })
}

fn ratio(num: &PowerSeries<Fp>, den_inv: &PowerSeries<Fp>) -> PowerSeries<Fp> {
    num.mul(den_inv)
}

fn top_coefficient_times_factorial(series: &PowerSeries<Fp>, a: u64, p: Prime) -> Result<u64, CombinatError> {
    let top = series.coeff(a as usize)?.value();
    Ok(mul_mod(top, bigint_mod(&factorial(a), p)?, p.get()))
}

fn require_special_fiber(table: &CoefficientTable) -> Result<(), CombinatError> {
    let r = table.params().r();
    if r != 0 {
        return Err(CombinatError::NotSpecialFiber { r });
    }
    Ok(())
}

/// The vector-partition expansion of `B_k[x^k]` mod `p` at `k = N(d) + a`.
pub fn vector_b_expansion(table: &CoefficientTable, d: &DigitVector, a: u64) -> Result<u64, CombinatError> {
    require_special_fiber(table)?;
    let p = table.prime();
    check_residue(a, p)?;
    if d.prime() != p.get() {
        return Err(CombinatError::InvalidDigitVector(format!(
            "{d} is not a base-{p} vector"
        )));
    }
    check_length(table, d.numeric_value() + a)?;
    let partitions = enumerate_vector_partitions(d)?;

    let f_inv = first_block_series(table, a)?.inverse()?;
    let mut total = ratio(&truncated_block_series(table, d, a)?, &f_inv);
    for partition in partitions.iter().filter(|part| !part.is_single_block()) {
        let big_r = partition.block_count();
        let mut weight = bigint_mod(&(factorial(big_r - 1) * partition.multinomial(d)), p)?;
        weight = mul_mod(weight, sign_mod(big_r - 1, p.get()), p.get());
        if weight == 0 {
            continue;
        }
        let mut product = PowerSeries::constant(Fp::new(1, p.get()), a as usize + 1);
        for (beta, r_beta) in partition.blocks() {
            let v = ratio(&block_series(table, beta, a)?, &f_inv);
            product = product.mul(&v.pow(*r_beta)?);
        }
        total = total.add(&product.scale(&Fp::new(weight, p.get())));
    }
    top_coefficient_times_factorial(&total, a, p)
}

/// Compares [`vector_b_expansion`] with the B component of the exact
/// decomposition, reduced mod `p`, on every cell `k = N(d) + a <= K` with
/// `|d| <= max_weight`.
pub fn check_vector_b(table: &CoefficientTable, max_weight: u64) -> Result<CheckReport, CombinatError> {
    require_special_fiber(table)?;
    if max_weight > PARTITION_GUARD_WEIGHT {
        return Err(CombinatError::PartitionGuard { weight: max_weight });
    }
    let p = table.prime();
    let max_k = table.max_k() as u64;
    let mut report = CheckReport::new(
        "vector_b",
        p.get(),
        Some(0),
        format!("k=N(d)+a<={max_k}, |d|<={max_weight}"),
    );
    let decompositions = abc_decompose_all(table);
    for d in digit_vectors_up_to(p, max_k.saturating_sub(1)) {
        for a in 1..p.get() {
            let k = d.numeric_value() + a;
            if k > max_k {
                break;
            }
            if d.weight() > max_weight {
                continue;
            }
            let direct = mod_p_reduce(&decompositions[k as usize - 1].b_term, p)?;
            let expanded = vector_b_expansion(table, &d, a)?;
            report.push(format!("k={k} d={d} a={a}"), direct, expanded, direct == expanded);
        }
    }
    Ok(report)
}

/// `U_m(y) = (-1)^m D^m F_a / F_a` mod `p`, for `m = 0..=s`.
fn moment_series(table: &CoefficientTable, a: u64, s: u64) -> Result<Vec<PowerSeries<Fp>>, CombinatError> {
    let p = table.prime().get();
    let f = first_block_series(table, a)?;
    let f_inv = f.inverse()?;
    Ok((0..=s)
        .map(|m| ratio(&euler_power(&f, m), &f_inv).scale(&Fp::new(sign_mod(m, p), p)))
        .collect())
}

/// Every vector of length `len` with entries summing to `1..=s`.
fn compositions_up_to(len: usize, s: u64) -> Vec<Vec<u64>> {
    let mut out: Vec<Vec<u64>> = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                let used: u64 = prefix.iter().sum();
                (0..=s - used).map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out.retain(|v| v.iter().any(|&x| x > 0));
    out
}

/// Builds the multivariate moment series `M(t) = 1 + sum U_beta t^beta/beta!`
/// over `F_p`, takes its logarithm, and compares `a! [y^a] K_d` with
/// `(-1)^{s+1} a^{s+1} a_{a-1}` mod `p`, where `s = |d| < p`.
pub fn cumulant_collapse_check(
    table: &CoefficientTable,
    a: u64,
    d: &DigitVector,
) -> Result<CheckReport, CombinatError> {
    require_special_fiber(table)?;
    let p = table.prime();
    check_residue(a, p)?;
    let s = d.weight();
    if d.is_zero() {
        return Err(CombinatError::InvalidDigitVector(
            "the zero vector has no cumulant".into(),
        ));
    }
    if s >= p.get() {
        return Err(CombinatError::WeightTooLarge { weight: s, p: p.get() });
    }
    check_length(table, a)?;

    let moments = moment_series(table, a, s)?;
    let t_vars = d.len();
    let mut m = MVPolynomial::one(p, t_vars, s as u32, a as u32);
    for beta in compositions_up_to(t_vars, s) {
        let beta_fact: BigInt = beta.iter().map(|&b| factorial(b)).product();
        let inv = crate::padic::inv_mod(bigint_mod(&beta_fact, p)?, p.get());
        let weight: u64 = beta.iter().sum();
        for (j, c) in moments[weight as usize].coefficients().iter().enumerate() {
            if c.value() == 0 {
                continue;
            }
            let mut exps: Vec<u32> = beta.iter().map(|&b| b as u32).collect();
            exps.push(j as u32);
            m.add_term(exps, mul_mod(c.value(), inv, p.get()))?;
        }
    }
    let log_m = m.log()?;
    let mut exps: Vec<u32> = d.components().iter().map(|&c| c as u32).collect();
    exps.push(a as u32);
    let coefficient = mul_mod(log_m.coeff(&exps), bigint_mod(&d.factorial(), p)?, p.get());
    let actual = mul_mod(coefficient, bigint_mod(&factorial(a), p)?, p.get());

    let prev = mod_p_reduce(table.a(a as usize - 1), p)?;
    let expected = mul_mod(
        mul_mod(sign_mod(s + 1, p.get()), pow_mod(a, s + 1, p.get()), p.get()),
        prev,
        p.get(),
    );
    let mut report = CheckReport::new("cumulant_collapse", p.get(), Some(0), format!("a={a} d={d}"));
    report.push(format!("a={a} d={d}"), expected, actual, expected == actual);
    Ok(report)
}
