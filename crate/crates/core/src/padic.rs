//! Valuations, base-`p` digits and mod-`p` residues of exact rationals.
//!
//! Everything here is a pure function of its arguments. Indices and
//! multiplicities are small enough for `u64`; coefficient values are
//! [`BigRational`].

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

/// Largest prime accepted by [`Prime::new`].
pub const MAX_PRIME: u64 = 100;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PadicError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("p = {0} is not supported (need an odd prime)")]
    EvenPrime(u64),
    #[error("p = {0} exceeds the supported bound {MAX_PRIME}")]
    PrimeTooLarge(u64),
    #[error("value has negative {p}-adic valuation {valuation}; not {p}-integral")]
    NotIntegral { p: u64, valuation: i64 },
    #[error("valuation mismatch: expected {expected}, found {actual}")]
    ValuationMismatch { expected: i64, actual: Valuation },
    #[error("zero has no unit part")]
    ZeroUnitPart,
    #[error("empty summand list")]
    EmptySummands,
}

/// An odd prime `p` with `3 <= p <= MAX_PRIME`, checked by trial division.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self, PadicError> {
        if p > MAX_PRIME {
            return Err(PadicError::PrimeTooLarge(p));
        }
        if !is_prime(p) {
            return Err(PadicError::NotPrime(p));
        }
        if p == 2 {
            return Err(PadicError::EvenPrime(p));
        }
        Ok(Prime(p))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// `p^e` as a big integer.
    pub fn pow_big(self, e: u32) -> BigInt {
        num_traits::pow(BigInt::from(self.0), e as usize)
    }

    /// `p^e` as a `u64`, `None` on overflow.
    pub fn checked_pow(self, e: u32) -> Option<u64> {
        self.0.checked_pow(e)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A `p`-adic valuation. Zero has valuation [`Valuation::Infinite`], which
/// compares above every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinite) => Ordering::Less,
            (Valuation::Infinite, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq<i64> for Valuation {
    fn eq(&self, other: &i64) -> bool {
        *self == Valuation::Finite(*other)
    }
}

impl PartialOrd<i64> for Valuation {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.cmp(&Valuation::Finite(*other)))
    }
}

impl std::ops::Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// Exponent of `p` in a nonzero integer; `Infinite` for zero.
pub fn ord_p_int(x: &BigInt, p: Prime) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    let pb = BigUint::from(p.get());
    let mut m = x.magnitude().clone();
    let mut v = 0i64;
    loop {
        let (quo, rem) = m.div_rem(&pb);
        if !rem.is_zero() {
            break;
        }
        m = quo;
        v += 1;
    }
    Valuation::Finite(v)
}

/// `ord_p(num) - ord_p(den)` for a nonzero rational; `Infinite` for zero.
pub fn ord_p(x: &BigRational, p: Prime) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    let num = ord_p_int(x.numer(), p).finite().unwrap_or(0);
    let den = ord_p_int(x.denom(), p).finite().unwrap_or(0);
    Valuation::Finite(num - den)
}

/// Base-`p` digits of a nonnegative integer, least significant first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitExpansion {
    base: u64,
    digits: Vec<u64>,
}

impl DigitExpansion {
    pub fn new(mut n: u64, p: Prime) -> Self {
        let base = p.get();
        let mut digits = Vec::new();
        while n > 0 {
            digits.push(n % base);
            n /= base;
        }
        DigitExpansion { base, digits }
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    /// Digits `d_0, d_1, ...`; empty for zero.
    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    /// Digit at position `i`, zero past the top.
    pub fn digit(&self, i: usize) -> u64 {
        self.digits.get(i).copied().unwrap_or(0)
    }

    pub fn digit_sum(&self) -> u64 {
        self.digits.iter().sum()
    }

    pub fn value(&self) -> u64 {
        self.digits.iter().rev().fold(0, |acc, &d| acc * self.base + d)
    }
}

/// `S_p(n)`, the sum of the base-`p` digits of `n`.
pub fn digit_sum(mut n: u64, p: Prime) -> u64 {
    let b = p.get();
    let mut s = 0;
    while n > 0 {
        s += n % b;
        n /= b;
    }
    s
}

/// Legendre: `ord_p(n!) = (n - S_p(n)) / (p - 1)`.
pub fn factorial_valuation(n: u64, p: Prime) -> u64 {
    (n - digit_sum(n, p)) / (p.get() - 1)
}

/// `T_p(n) mod p`, where `T_p(n)` is the prime-to-`p` part of `n!`.
///
/// Uses `T_p(n) = (-1)^{floor(n/p)} (n mod p)! T_p(floor(n/p)) (mod p)`,
/// which follows from splitting `1..=n` into complete Wilson blocks.
pub fn prime_part_factorial_mod_p(mut n: u64, p: Prime) -> u64 {
    let pm = p.get();
    let mut acc = 1u64;
    while n > 0 {
        let blocks = n / pm;
        let tail = n % pm;
        for i in 2..=tail {
            acc = acc * i % pm;
        }
        if blocks % 2 == 1 {
            acc = (pm - acc) % pm;
        }
        n = blocks;
    }
    acc
}

/// `(sum S_p(n_i) - S_p(sum n_i)) / (p - 1)`, the number of base-`p` carries
/// when adding the summands.
pub fn carry_defect(summands: &[u64], p: Prime) -> Result<u64, PadicError> {
    if summands.is_empty() {
        return Err(PadicError::EmptySummands);
    }
    let separate: u64 = summands.iter().map(|&n| digit_sum(n, p)).sum();
    let total = digit_sum(summands.iter().sum(), p);
    Ok((separate - total) / (p.get() - 1))
}

fn residue_of(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits in u64")
}

/// Reduces a `p`-integral rational to `F_p`.
pub fn mod_p_reduce(x: &BigRational, p: Prime) -> Result<u64, PadicError> {
    match ord_p(x, p) {
        Valuation::Infinite => Ok(0),
        Valuation::Finite(v) if v < 0 => Err(PadicError::NotIntegral {
            p: p.get(),
            valuation: v,
        }),
        Valuation::Finite(v) if v > 0 => Ok(0),
        Valuation::Finite(_) => {
            let num = residue_of(x.numer(), p.get());
            let den = residue_of(x.denom(), p.get());
            Ok(mul_mod(num, inv_mod(den, p.get()), p.get()))
        }
    }
}

/// `mod_p_reduce(x / p^expected)`, after checking that `ord_p(x) = expected`.
pub fn unit_part_mod_p(x: &BigRational, p: Prime, expected: i64) -> Result<u64, PadicError> {
    let actual = ord_p(x, p);
    if actual.is_infinite() {
        return Err(PadicError::ZeroUnitPart);
    }
    if actual != expected {
        return Err(PadicError::ValuationMismatch { expected, actual });
    }
    let shift = p.pow_big(expected.unsigned_abs() as u32);
    let unit = if expected >= 0 {
        x / BigRational::from_integer(shift)
    } else {
        x * BigRational::from_integer(shift)
    };
    mod_p_reduce(&unit, p)
}

/// Does `ord_p(x - y) >= t` hold?
pub fn congruent_mod_p_power(x: &BigRational, y: &BigRational, p: Prime, t: i64) -> bool {
    ord_p(&(x - y), p) >= t
}

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of a unit mod `p` via Fermat.
///
/// # Panics
/// If `a` is divisible by `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "{a} is not invertible mod {p}");
    pow_mod(a, p - 2, p)
}

/// Maps a signed integer into `0..p`.
pub fn signed_mod(a: i64, p: u64) -> u64 {
    a.rem_euclid(p as i64) as u64
}

/// `(-1)^e mod p`.
pub fn sign_mod(e: u64, p: u64) -> u64 {
    if e.is_multiple_of(2) {
        1
    } else {
        p - 1
    }
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Prints a rational, dropping a unit denominator.
pub fn format_rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
