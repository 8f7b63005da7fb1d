use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::{CombinatError, PARTITION_GUARD_WEIGHT};
use crate::padic::{factorial, DigitExpansion, Prime};

/// `d = (d_1, ..., d_r)` with `0 <= d_i < p`, standing for the number
/// `N(d) = sum_i d_i p^i` (positions start at 1).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DigitVector {
    p: u64,
    comps: Vec<u64>,
}

impl DigitVector {
    pub fn new(p: Prime, comps: Vec<u64>) -> Result<Self, CombinatError> {
        if comps.is_empty() {
            return Err(CombinatError::InvalidDigitVector("length must be at least 1".into()));
        }
        if let Some(bad) = comps.iter().find(|&&c| c >= p.get()) {
            return Err(CombinatError::InvalidDigitVector(format!(
                "component {bad} is not a base-{p} digit"
            )));
        }
        Ok(DigitVector { p: p.get(), comps })
    }

    /// The vector whose numeric value is `n`; `n` must be a positive
    /// multiple of `p`. The result has no trailing zero components.
    pub fn from_numeric_value(p: Prime, n: u64) -> Result<Self, CombinatError> {
        if n == 0 || !n.is_multiple_of(p.get()) {
            return Err(CombinatError::NotDivisible { p: p.get(), k: n });
        }
        let comps = DigitExpansion::new(n / p.get(), p).digits().to_vec();
        Self::new(p, comps)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn components(&self) -> &[u64] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|&c| c == 0)
    }

    /// `|d|`.
    pub fn weight(&self) -> u64 {
        self.comps.iter().sum()
    }

    /// `N(d)`.
    pub fn numeric_value(&self) -> u64 {
        self.comps.iter().rev().fold(0, |acc, &c| (acc + c) * self.p)
    }

    /// `d! = prod_i d_i!`.
    pub fn factorial(&self) -> BigInt {
        self.comps.iter().fold(BigInt::one(), |acc, &c| acc * factorial(c))
    }

    /// Componentwise `self <= other` (lengths must agree).
    pub fn le_componentwise(&self, other: &Self) -> bool {
        self.comps.len() == other.comps.len() && self.comps.iter().zip(&other.comps).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for DigitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.comps.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for DigitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A multiset of nonzero digit vectors, stored as `(beta, r_beta)` with
/// `r_beta >= 1`, sorted by `beta`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VectorPartition {
    blocks: Vec<(DigitVector, u64)>,
}

impl VectorPartition {
    pub fn blocks(&self) -> &[(DigitVector, u64)] {
        &self.blocks
    }

    /// `R(Pi) = sum r_beta`.
    pub fn block_count(&self) -> u64 {
        self.blocks.iter().map(|(_, r)| r).sum()
    }

    /// Whether this is the one-block partition `(d)`.
    pub fn is_single_block(&self) -> bool {
        self.block_count() == 1
    }

    /// `d! / prod_beta r_beta! (beta!)^{r_beta}`, which is always an integer.
    pub fn multinomial(&self, d: &DigitVector) -> BigInt {
        let denominator = self.blocks.iter().fold(BigInt::one(), |acc, (beta, r)| {
            acc * factorial(*r) * num_traits::pow(beta.factorial(), *r as usize)
        });
        d.factorial() / denominator
    }

    /// Componentwise `sum r_beta beta`.
    pub fn total(&self) -> Vec<u64> {
        let len = self.blocks.first().map_or(0, |(b, _)| b.len());
        let mut out = vec![0; len];
        for (beta, r) in &self.blocks {
            for (slot, c) in out.iter_mut().zip(beta.components()) {
                *slot += c * r;
            }
        }
        out
    }
}

impl fmt::Debug for VectorPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|(b, r)| if *r == 1 { b.to_string() } else { format!("{b}^{r}") })
            .collect();
        write!(f, "{{{}}}", parts.join(" "))
    }
}

/// Every vector partition of a nonzero `d` with `|d| <= 6`, in a fixed order.
pub fn enumerate_vector_partitions(d: &DigitVector) -> Result<Vec<VectorPartition>, CombinatError> {
    if d.is_zero() {
        return Err(CombinatError::InvalidDigitVector(
            "the zero vector has no partitions".into(),
        ));
    }
    if d.weight() > PARTITION_GUARD_WEIGHT {
        return Err(CombinatError::PartitionGuard { weight: d.weight() });
    }
    let p = Prime::new(d.prime())?;
    let candidates: Vec<DigitVector> = sub_vectors(d)
        .into_iter()
        .map(|c| DigitVector::new(p, c))
        .collect::<Result<_, _>>()?;

    fn rec(
        candidates: &[DigitVector],
        remaining: &mut Vec<u64>,
        chosen: &mut Vec<(DigitVector, u64)>,
        out: &mut Vec<VectorPartition>,
    ) {
        if remaining.iter().all(|&c| c == 0) {
            out.push(VectorPartition { blocks: chosen.clone() });
            return;
        }
        let Some((beta, rest)) = candidates.split_first() else {
            return;
        };
        // largest multiplicity of beta that still fits
        let max_r = beta
            .components()
            .iter()
            .zip(remaining.iter())
            .filter(|(b, _)| **b > 0)
            .map(|(b, rem)| rem / b)
            .min()
            .unwrap_or(0);
        for r in (0..=max_r).rev() {
            for (slot, b) in remaining.iter_mut().zip(beta.components()) {
                *slot -= b * r;
            }
            if r > 0 {
                chosen.push((beta.clone(), r));
            }
            rec(rest, remaining, chosen, out);
            if r > 0 {
                chosen.pop();
            }
            for (slot, b) in remaining.iter_mut().zip(beta.components()) {
                *slot += b * r;
            }
        }
    }

    let mut out = Vec::new();
    rec(&candidates, &mut d.components().to_vec(), &mut Vec::new(), &mut out);
    Ok(out)
}

/// Nonzero vectors below `d` componentwise, largest first.
fn sub_vectors(d: &DigitVector) -> Vec<Vec<u64>> {
    let mut out: Vec<Vec<u64>> = vec![Vec::new()];
    for &c in d.components() {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=c).map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out.retain(|v| v.iter().any(|&x| x > 0));
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// Nonzero digit vectors without trailing zeros and with `N(d) <= max_value`,
/// ordered by numeric value.
pub fn digit_vectors_up_to(p: Prime, max_value: u64) -> Vec<DigitVector> {
    (1..=max_value / p.get())
        .map(|m| DigitVector::from_numeric_value(p, m * p.get()).expect("positive multiple of p"))
        .collect()
}
