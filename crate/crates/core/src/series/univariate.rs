use num_rational::BigRational;

use super::{Scalar, SeriesError};

/// A power series `c_0 + c_1 x + ... + c_K x^K + O(x^{K+1})`.
///
/// Always holds exactly `K + 1` coefficients. Binary operations truncate to
/// the smaller order; reading past `K` is an error rather than a zero.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries<S: Scalar = BigRational> {
    coeffs: Vec<S>,
}

impl<S: Scalar> PowerSeries<S> {
    pub fn new(coeffs: Vec<S>) -> Result<Self, SeriesError> {
        if coeffs.is_empty() {
            return Err(SeriesError::Empty);
        }
        Ok(PowerSeries { coeffs })
    }

    /// The constant `c` at order `order`.
    pub fn constant(c: S, order: usize) -> Self {
        let mut coeffs = vec![c.zero_like(); order + 1];
        coeffs[0] = c;
        PowerSeries { coeffs }
    }

    pub fn truncation_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coefficients(self) -> Vec<S> {
        self.coeffs
    }

    pub fn coeff(&self, index: usize) -> Result<&S, SeriesError> {
        self.coeffs.get(index).ok_or(SeriesError::BeyondTruncation {
            index,
            order: self.truncation_order(),
        })
    }

    fn zero(&self) -> S {
        self.coeffs[0].zero_like()
    }

    pub fn truncate(&self, order: usize) -> Result<Self, SeriesError> {
        if order > self.truncation_order() {
            return Err(SeriesError::Extension {
                have: self.truncation_order(),
                want: order,
            });
        }
        Ok(PowerSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.truncation_order().min(other.truncation_order());
        let coeffs = (0..=order).map(|i| self.coeffs[i].add_ref(&other.coeffs[i])).collect();
        PowerSeries { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.truncation_order().min(other.truncation_order());
        let coeffs = (0..=order).map(|i| self.coeffs[i].sub_ref(&other.coeffs[i])).collect();
        PowerSeries { coeffs }
    }

    pub fn scale(&self, c: &S) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|x| x.mul_ref(c)).collect(),
        }
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.truncation_order().min(other.truncation_order());
        let coeffs = (0..=order)
            .map(|n| {
                let mut acc = self.zero();
                for i in 0..=n {
                    let (a, b) = (&self.coeffs[i], &other.coeffs[n - i]);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc.add_assign_ref(&a.mul_ref(b));
                }
                acc
            })
            .collect();
        PowerSeries { coeffs }
    }

    /// `self^e` by binary exponentiation.
    pub fn pow(&self, e: u64) -> Result<Self, SeriesError> {
        if e == 0 {
            return Err(SeriesError::ZeroExponent);
        }
        let mut base = self.clone();
        let mut acc: Option<Self> = None;
        let mut e = e;
        loop {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul(&base);
        }
        Ok(acc.expect("e >= 1"))
    }

    /// `s(x^q)` at truncation order `order`.
    ///
    /// Only the first `floor(order / q)` coefficients of `self` are read, so
    /// that many must be available.
    pub fn substitute_power(&self, q: usize, order: usize) -> Result<Self, SeriesError> {
        if q == 0 {
            return Err(SeriesError::ZeroStep);
        }
        let needed = order / q;
        if needed > self.truncation_order() {
            return Err(SeriesError::Extension {
                have: self.truncation_order(),
                want: needed,
            });
        }
        let mut coeffs = vec![self.zero(); order + 1];
        for i in 0..=needed {
            coeffs[i * q] = self.coeffs[i].clone();
        }
        Ok(PowerSeries { coeffs })
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let inv0 = self.coeffs[0].try_inverse().ok_or(SeriesError::NotInvertible)?;
        let order = self.truncation_order();
        let mut out = Vec::with_capacity(order + 1);
        out.push(inv0.clone());
        for n in 1..=order {
            let mut acc = self.zero();
            for j in 1..=n {
                acc.add_assign_ref(&self.coeffs[j].mul_ref(&out[n - j]));
            }
            out.push(acc.neg_ref().mul_ref(&inv0));
        }
        Ok(PowerSeries { coeffs: out })
    }

    /// Formal derivative; the result has order `K - 1` (order 0 stays 0).
    pub fn derivative(&self) -> Self {
        if self.truncation_order() == 0 {
            return PowerSeries {
                coeffs: vec![self.zero()],
            };
        }
        let coeffs = (1..=self.truncation_order())
            .map(|i| self.coeffs[i].mul_ref(&self.coeffs[0].int_like(i as i64)))
            .collect();
        PowerSeries { coeffs }
    }

    fn reciprocal_of_index(&self, n: usize) -> Result<S, SeriesError> {
        self.zero()
            .int_like(n as i64)
            .try_inverse()
            .ok_or(SeriesError::NonInvertibleInteger(n as i64))
    }

    /// `log(s)` for constant term 1, as the integral of `s'/s`.
    pub fn log(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::LogConstant);
        }
        let order = self.truncation_order();
        let mut coeffs = vec![self.zero(); order + 1];
        if order == 0 {
            return Ok(PowerSeries { coeffs });
        }
        // (log s)' = s'/s, both at order K - 1
        let inv = self.truncate(order - 1)?.inverse()?;
        let quotient = self.derivative().mul(&inv);
        for (n, slot) in coeffs.iter_mut().enumerate().skip(1) {
            *slot = quotient.coeffs[n - 1].mul_ref(&self.reciprocal_of_index(n)?);
        }
        Ok(PowerSeries { coeffs })
    }

    /// `exp(s)` for constant term 0, via `n E_n = sum_j j s_j E_{n-j}`.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::ExpConstant);
        }
        let order = self.truncation_order();
        let mut out = Vec::with_capacity(order + 1);
        out.push(self.zero().one_like());
        for n in 1..=order {
            let mut acc = self.zero();
            for j in 1..=n {
                let weight = self.zero().int_like(j as i64);
                acc.add_assign_ref(&weight.mul_ref(&self.coeffs[j]).mul_ref(&out[n - j]));
            }
            out.push(acc.mul_ref(&self.reciprocal_of_index(n)?));
        }
        Ok(PowerSeries { coeffs: out })
    }

    /// Replaces each coefficient `c_j` by `f(j, c_j)`.
    pub fn map_indexed(&self, f: impl Fn(usize, &S) -> S) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().enumerate().map(|(j, c)| f(j, c)).collect(),
        }
    }
}
