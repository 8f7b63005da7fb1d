use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{CombinatError, MONOMIAL_GUARD_K};
use crate::boettcher::CoefficientTable;
use crate::padic::{digit_sum, factorial, ord_p, Prime, Valuation};

/// A monomial `a^e = prod_n a_n^{e_n}`, stored sparsely (`e_n >= 1`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex {
    entries: BTreeMap<u64, u64>,
    sigma: u64,
    weight: u64,
}

impl MultiIndex {
    /// Builds from `(n, e_n)` pairs; zero multiplicities are dropped and
    /// repeated indices accumulate.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u64, u64)>) -> Self {
        let mut entries = BTreeMap::new();
        for (n, e) in pairs {
            if e > 0 {
                *entries.entry(n).or_insert(0) += e;
            }
        }
        let sigma = entries.values().sum();
        let weight = entries.iter().map(|(n, e)| n * e).sum();
        MultiIndex { entries, sigma, weight }
    }

    /// `e_n`, zero when absent.
    pub fn get(&self, n: u64) -> u64 {
        self.entries.get(&n).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.entries.iter().map(|(&n, &e)| (n, e))
    }

    /// `sigma(e) = sum_n e_n`.
    pub fn sigma(&self) -> u64 {
        self.sigma
    }

    /// `sum_n n e_n`.
    pub fn weight(&self) -> u64 {
        self.weight
    }

    pub fn max_index(&self) -> u64 {
        self.entries.keys().next_back().copied().unwrap_or(0)
    }

    /// `Sigma(e) = sum_n S_p(e_n)`.
    pub fn multiplicity_digit_sum(&self, p: Prime) -> u64 {
        self.entries.values().map(|&e| digit_sum(e, p)).sum()
    }

    /// `T(e) = sum_n e_n S_p(n)`.
    pub fn index_digit_weight(&self, p: Prime) -> u64 {
        self.entries.iter().map(|(&n, &e)| e * digit_sum(n, p)).sum()
    }

    /// Whether every positive index present is divisible by `p`.
    pub fn positive_indices_divisible_by(&self, p: u64) -> bool {
        self.entries.keys().all(|&n| n == 0 || n % p == 0)
    }

    /// `prod_n a_n^{e_n}` evaluated on a table.
    pub fn evaluate(&self, table: &CoefficientTable) -> BigRational {
        self.entries.iter().fold(BigRational::one(), |acc, (&n, &e)| {
            acc * num_traits::pow(table.a(n as usize).clone(), e as usize)
        })
    }

    /// `prod_n e_n! (n!)^{e_n}`.
    fn denominator(&self) -> BigInt {
        self.entries.iter().fold(BigInt::one(), |acc, (&n, &e)| {
            acc * factorial(e) * num_traits::pow(factorial(n), e as usize)
        })
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (n, e)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}:{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An enumerated monomial with its exact coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialRecord {
    pub index: MultiIndex,
    pub coefficient: BigRational,
    pub valuation: Valuation,
    /// Carry defects `(c(e), d(e))`; present for B-monomials.
    pub defects: Option<(u64, u64)>,
}

fn check_guard(p: Prime, k: u64) -> Result<(), CombinatError> {
    if k == 0 {
        return Err(CombinatError::ZeroIndex { k });
    }
    if p.get() != 3 && k > MONOMIAL_GUARD_K {
        return Err(CombinatError::MonomialGuard { p: p.get(), k });
    }
    Ok(())
}

/// Nonincreasing partitions of `total` into at most `max_parts` parts of size
/// at most `max_part`, in lexicographic order.
fn partitions(total: u64, max_part: u64, max_parts: u64) -> Vec<Vec<u64>> {
    fn rec(remaining: u64, cap: u64, parts_left: u64, current: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        if parts_left == 0 {
            return;
        }
        for part in 1..=cap.min(remaining) {
            // the rest must fit into parts_left - 1 parts of size <= part
            if remaining - part > part * (parts_left - 1) {
                continue;
            }
            current.push(part);
            rec(remaining - part, part, parts_left - 1, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, max_part, max_parts, &mut Vec::new(), &mut out);
    out
}

fn lattice(total_count: u64, weight: u64, max_part: u64) -> Vec<MultiIndex> {
    partitions(weight, max_part, total_count)
        .into_iter()
        .map(|parts| {
            let zeros = total_count - parts.len() as u64;
            MultiIndex::from_pairs(std::iter::once((0, zeros)).chain(parts.into_iter().map(|n| (n, 1))))
        })
        .collect()
}

/// All `e` with `sum e_n = q` and `sum n e_n = k`.
///
/// This is the full lattice of `[x^k] (sum_l a_l x^l / l!)^q`, so it includes
/// the top monomial `a_0^{q-1} a_k`; the B-term itself, which only sees
/// `a_0..a_{k-1}`, excludes it (see [`b_component_from_monomials`]).
pub fn enumerate_b_monomials(p: Prime, k: u64) -> Result<Vec<MultiIndex>, CombinatError> {
    check_guard(p, k)?;
    let q = p.get() * p.get();
    Ok(lattice(q, k, k))
}

/// All `e` with `sum e_n = q + 1` and `sum n e_n = k - 1`.
pub fn enumerate_c_monomials(p: Prime, k: u64) -> Result<Vec<MultiIndex>, CombinatError> {
    check_guard(p, k)?;
    let q = p.get() * p.get();
    Ok(lattice(q + 1, k - 1, k - 1))
}

fn is_top_monomial(e: &MultiIndex, k: u64) -> bool {
    e.get(k) > 0
}

/// `gamma_B(e) = k!/q * q!/prod e_n! * prod (n!)^{-e_n}`, with the carry
/// defects `c(e)`, `d(e)` and the check `ord_p = c + d - 2`.
pub fn b_coefficient(e: &MultiIndex, p: Prime, k: u64) -> Result<MonomialRecord, CombinatError> {
    let q = p.get() * p.get();
    if e.sigma() != q || e.weight() != k {
        return Err(CombinatError::ForeignMonomial {
            index: e.to_string(),
            k,
        });
    }
    let numerator = factorial(k) * factorial(q);
    let denominator = e.denominator() * BigInt::from(q);
    let coefficient = BigRational::new(numerator, denominator);
    let valuation = ord_p(&coefficient, p);

    let pm1 = p.get() - 1;
    let index_carries = e.index_digit_weight(p) - digit_sum(k, p);
    let count_carries = e.multiplicity_digit_sum(p) - 1;
    debug_assert_eq!(index_carries % pm1, 0);
    debug_assert_eq!(count_carries % pm1, 0);
    let (c, d) = (index_carries / pm1, count_carries / pm1);
    let expected = c as i64 + d as i64 - 2;
    if valuation != expected {
        return Err(CombinatError::ValuationFormula {
            index: e.to_string(),
            expected,
            actual: valuation.to_string(),
        });
    }
    Ok(MonomialRecord {
        index: e.clone(),
        coefficient,
        valuation,
        defects: Some((c, d)),
    })
}

/// `gamma_C(e) = k! (q+1)!/prod e_n! * prod (n!)^{-e_n}`, checked against
/// `(p-1) ord_p = -S_p(k) - 1 + Sigma(e) + T(e)`.
pub fn c_coefficient(e: &MultiIndex, p: Prime, k: u64) -> Result<MonomialRecord, CombinatError> {
    let q = p.get() * p.get();
    if k == 0 || e.sigma() != q + 1 || e.weight() != k - 1 {
        return Err(CombinatError::ForeignMonomial {
            index: e.to_string(),
            k,
        });
    }
    let coefficient = BigRational::new(factorial(k) * factorial(q + 1), e.denominator());
    let valuation = ord_p(&coefficient, p);
    let scaled = e.multiplicity_digit_sum(p) as i64 + e.index_digit_weight(p) as i64 - digit_sum(k, p) as i64 - 1;
    let pm1 = p.get() as i64 - 1;
    let matches = scaled % pm1 == 0 && valuation == scaled / pm1;
    if !matches {
        return Err(CombinatError::ValuationFormula {
            index: e.to_string(),
            expected: scaled / pm1,
            actual: valuation.to_string(),
        });
    }
    Ok(MonomialRecord {
        index: e.clone(),
        coefficient,
        valuation,
        defects: None,
    })
}

/// `sum_e gamma_B(e) a^e` over the truncated lattice.
pub fn b_component_from_monomials(table: &CoefficientTable, k: u64) -> Result<BigRational, CombinatError> {
    let p = table.prime();
    let mut total = BigRational::zero();
    for e in enumerate_b_monomials(p, k)? {
        if is_top_monomial(&e, k) {
            continue;
        }
        let rec = b_coefficient(&e, p, k)?;
        total += rec.coefficient * e.evaluate(table);
    }
    Ok(total)
}

/// `sum_e gamma_C(e) a^e`.
pub fn c_component_from_monomials(table: &CoefficientTable, k: u64) -> Result<BigRational, CombinatError> {
    let p = table.prime();
    let mut total = BigRational::zero();
    for e in enumerate_c_monomials(p, k)? {
        let rec = c_coefficient(&e, p, k)?;
        total += rec.coefficient * e.evaluate(table);
    }
    Ok(total)
}

/// Unit-coefficient B-monomials at an index divisible by `p`, sorted into
/// the exceptional monomial `a_0^{q-p} a_1^p`, monomials whose positive
/// indices are all divisible by `p`, and anything else.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurvivorClassification {
    pub p: u64,
    pub k: u64,
    pub monomials_scanned: usize,
    pub exceptional: Vec<MultiIndex>,
    pub all_divisible: Vec<MultiIndex>,
    pub unexplained: Vec<MultiIndex>,
}

impl SurvivorClassification {
    /// No third class, and the exceptional monomial appears only at `k = p`.
    pub fn is_consistent(&self) -> bool {
        self.unexplained.is_empty() && (self.exceptional.is_empty() || self.k == self.p)
    }
}

pub fn classify_b_survivors(p: Prime, k: u64) -> Result<SurvivorClassification, CombinatError> {
    if k == 0 || !k.is_multiple_of(p.get()) {
        return Err(CombinatError::NotDivisible { p: p.get(), k });
    }
    let q = p.get() * p.get();
    let exceptional_index = MultiIndex::from_pairs([(0, q - p.get()), (1, p.get())]);
    let mut out = SurvivorClassification {
        p: p.get(),
        k,
        monomials_scanned: 0,
        exceptional: Vec::new(),
        all_divisible: Vec::new(),
        unexplained: Vec::new(),
    };
    for e in enumerate_b_monomials(p, k)? {
        if is_top_monomial(&e, k) {
            continue;
        }
        out.monomials_scanned += 1;
        let rec = b_coefficient(&e, p, k)?;
        if rec.valuation != 0 {
            continue;
        }
        if e == exceptional_index {
            out.exceptional.push(e);
        } else if e.positive_indices_divisible_by(p.get()) {
            out.all_divisible.push(e);
        } else {
            out.unexplained.push(e);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::mod_p_reduce;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn mi(pairs: &[(u64, u64)]) -> MultiIndex {
        MultiIndex::from_pairs(pairs.iter().copied())
    }

    #[test]
    fn multi_index_invariants() {
        let e = mi(&[(0, 5), (2, 0), (3, 2), (3, 1)]);
        assert_eq!(e.get(2), 0);
        assert_eq!(e.get(3), 3);
        assert_eq!(e.sigma(), 8);
        assert_eq!(e.weight(), 9);
        assert_eq!(e.to_string(), "{0:5,3:3}");
        assert_eq!(e.multiplicity_digit_sum(p(3)), 1 + 2 + 1);
        assert_eq!(e.index_digit_weight(p(3)), 3);
    }

    #[test]
    fn b_lattice_small_cases() {
        assert_eq!(enumerate_b_monomials(p(3), 1).unwrap(), vec![mi(&[(0, 8), (1, 1)])]);
        assert_eq!(
            enumerate_b_monomials(p(3), 2).unwrap(),
            vec![mi(&[(0, 7), (1, 2)]), mi(&[(0, 8), (2, 1)])]
        );
        assert_eq!(
            enumerate_b_monomials(p(3), 3).unwrap(),
            vec![
                mi(&[(0, 6), (1, 3)]),
                mi(&[(0, 7), (1, 1), (2, 1)]),
                mi(&[(0, 8), (3, 1)])
            ]
        );
    }

    #[test]
    fn b_lattice_matches_brute_force_count() {
        // partitions of k into at most 9 parts, counted by dynamic programming
        for k in 1..=20u64 {
            let mut table = vec![vec![0u64; 10]; (k + 1) as usize];
            table[0] = vec![1; 10];
            for n in 1..=k as usize {
                for parts in 1..10 {
                    // partitions of n into at most `parts` parts
                    table[n][parts] = table[n][parts - 1] + if n >= parts { table[n - parts][parts] } else { 0 };
                }
            }
            assert_eq!(
                enumerate_b_monomials(p(3), k).unwrap().len() as u64,
                table[k as usize][9]
            );
        }
    }

    #[test]
    fn guard_refuses_large_cases() {
        assert_eq!(
            enumerate_b_monomials(p(5), 41),
            Err(CombinatError::MonomialGuard { p: 5, k: 41 })
        );
        assert!(enumerate_b_monomials(p(3), 41).is_ok());
        assert!(enumerate_c_monomials(p(7), 50).is_err());
    }

    #[test]
    fn exceptional_coefficient_is_minus_one() {
        for prime in [3u64, 5, 7] {
            let q = prime * prime;
            let e = mi(&[(0, q - prime), (1, prime)]);
            let rec = b_coefficient(&e, p(prime), prime).unwrap();
            assert_eq!(mod_p_reduce(&rec.coefficient, p(prime)).unwrap(), prime - 1);
            assert_eq!(rec.defects, Some((1, 1)));
        }
    }

    #[test]
    fn pure_pattern_defects() {
        for prime in [3u64, 5] {
            let q = prime * prime;
            let e = mi(&[(1, q)]);
            let rec = b_coefficient(&e, p(prime), q).unwrap();
            assert_eq!(rec.defects, Some((prime + 1, 0)));
            assert_eq!(rec.valuation, (prime - 1) as i64);
        }
    }

    #[test]
    fn foreign_monomial_is_rejected() {
        let e = mi(&[(0, 8), (2, 1)]);
        assert!(matches!(
            b_coefficient(&e, p(3), 3),
            Err(CombinatError::ForeignMonomial { .. })
        ));
    }

    #[test]
    fn c_survivor_is_unique_for_non_divisible_k() {
        let prime = p(3);
        for k in [2u64, 4, 5, 7] {
            let units: Vec<_> = enumerate_c_monomials(prime, k)
                .unwrap()
                .into_iter()
                .map(|e| c_coefficient(&e, prime, k).unwrap())
                .filter(|r| r.valuation == 0)
                .collect();
            assert_eq!(units.len(), 1, "k={k}");
            assert_eq!(units[0].index, mi(&[(0, 9), (k - 1, 1)]));
            assert_eq!(units[0].coefficient, BigRational::from_integer(BigInt::from(k * 10)));
        }
    }

    #[test]
    fn c_records_divisible_when_p_divides_k() {
        for k in [3u64, 6, 9, 12] {
            for e in enumerate_c_monomials(p(3), k).unwrap() {
                assert!(c_coefficient(&e, p(3), k).unwrap().valuation >= 1);
            }
        }
    }

    #[test]
    fn survivor_examples() {
        let s3 = classify_b_survivors(p(3), 3).unwrap();
        assert_eq!(s3.exceptional, vec![mi(&[(0, 6), (1, 3)])]);
        assert!(s3.all_divisible.is_empty() && s3.unexplained.is_empty());
        let s6 = classify_b_survivors(p(3), 6).unwrap();
        assert!(s6.exceptional.is_empty() && s6.unexplained.is_empty());
        let s9 = classify_b_survivors(p(3), 9).unwrap();
        assert!(s9.exceptional.is_empty());
        assert!(s9.all_divisible.contains(&mi(&[(0, 6), (3, 3)])));
        assert!(s9.is_consistent());
        assert_eq!(
            classify_b_survivors(p(3), 4),
            Err(CombinatError::NotDivisible { p: 3, k: 4 })
        );
    }
}
