use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::padic::{inv_mod, mul_mod, Prime};

use super::SeriesError;

/// A truncated polynomial over `F_p` in `t_1..t_r` and `y`.
///
/// Exponent vectors have length `r + 1` with the `y` exponent last. Terms
/// with total `t`-degree above `t_cap` or `y`-degree above `y_cap` are
/// dropped by every operation. Absent keys are zero; stored values are
/// never zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MVPolynomial {
    p: Prime,
    t_vars: usize,
    t_cap: u32,
    y_cap: u32,
    terms: BTreeMap<Vec<u32>, u64>,
}

impl MVPolynomial {
    pub fn zero(p: Prime, t_vars: usize, t_cap: u32, y_cap: u32) -> Self {
        MVPolynomial {
            p,
            t_vars,
            t_cap,
            y_cap,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(p: Prime, t_vars: usize, t_cap: u32, y_cap: u32) -> Self {
        let mut m = Self::zero(p, t_vars, t_cap, y_cap);
        m.terms.insert(vec![0; t_vars + 1], 1);
        m
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn t_vars(&self) -> usize {
        self.t_vars
    }

    pub fn t_cap(&self) -> u32 {
        self.t_cap
    }

    pub fn y_cap(&self) -> u32 {
        self.y_cap
    }

    fn within_caps(&self, exps: &[u32]) -> bool {
        exps.len() == self.t_vars + 1
            && exps[..self.t_vars].iter().sum::<u32>() <= self.t_cap
            && exps[self.t_vars] <= self.y_cap
    }

    /// Adds `coeff * monomial(exps)`; rejects exponents outside the caps.
    pub fn add_term(&mut self, exps: Vec<u32>, coeff: u64) -> Result<(), SeriesError> {
        if !self.within_caps(&exps) {
            return Err(SeriesError::CapViolation { exponents: exps });
        }
        self.accumulate(exps, coeff);
        Ok(())
    }

    fn accumulate(&mut self, exps: Vec<u32>, coeff: u64) {
        let p = self.p.get();
        let c = coeff % p;
        if c == 0 {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                let sum = (*slot.get() + c) % p;
                if sum == 0 {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn coeff(&self, exps: &[u32]) -> u64 {
        self.terms.get(exps).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], u64)> {
        self.terms.iter().map(|(k, &v)| (k.as_slice(), v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> u64 {
        self.coeff(&vec![0; self.t_vars + 1])
    }

    fn same_shape(&self, other: &Self) -> Result<(), SeriesError> {
        if self.p != other.p || self.t_vars != other.t_vars || self.t_cap != other.t_cap || self.y_cap != other.y_cap {
            return Err(SeriesError::ShapeMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (k, &v) in &other.terms {
            out.accumulate(k.clone(), v);
        }
        Ok(out)
    }

    pub fn scale(&self, c: u64) -> Self {
        let mut out = Self::zero(self.p, self.t_vars, self.t_cap, self.y_cap);
        for (k, &v) in &self.terms {
            out.accumulate(k.clone(), mul_mod(v, c, self.p.get()));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.same_shape(other)?;
        let p = self.p.get();
        let mut out = Self::zero(self.p, self.t_vars, self.t_cap, self.y_cap);
        for (ka, &va) in &self.terms {
            for (kb, &vb) in &other.terms {
                let exps: Vec<u32> = ka.iter().zip(kb).map(|(a, b)| a + b).collect();
                if out.within_caps(&exps) {
                    out.accumulate(exps, mul_mod(va, vb, p));
                }
            }
        }
        Ok(out)
    }

    /// `log(self)` for constant term 1, as `sum_m (-1)^{m-1} X^m / m` with
    /// `X = self - 1`. The sum stops once `X^m` vanishes under the caps; a
    /// surviving power with `p | m` is an error.
    pub fn log(&self) -> Result<Self, SeriesError> {
        if self.constant_term() != 1 {
            return Err(SeriesError::LogConstant);
        }
        let p = self.p.get();
        let mut x = self.clone();
        x.terms.remove(&vec![0; self.t_vars + 1]);
        let mut out = Self::zero(self.p, self.t_vars, self.t_cap, self.y_cap);
        let mut power = x.clone();
        let mut m = 1u64;
        while !power.is_zero() {
            if m.is_multiple_of(p) {
                return Err(SeriesError::NonInvertibleInteger(m as i64));
            }
            let mut c = inv_mod(m % p, p);
            if m.is_multiple_of(2) {
                c = (p - c) % p;
            }
            out = out.add(&power.scale(c))?;
            power = power.mul(&x)?;
            m += 1;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn log_of_one_is_zero() {
        let one = MVPolynomial::one(p(5), 2, 3, 2);
        assert!(one.log().unwrap().is_zero());
    }

    #[test]
    fn log_one_plus_t() {
        let mut m = MVPolynomial::one(p(5), 1, 2, 0);
        m.add_term(vec![1, 0], 1).unwrap();
        let l = m.log().unwrap();
        assert_eq!(l.coeff(&[1, 0]), 1);
        // -1/2 = -3 = 2 mod 5
        assert_eq!(l.coeff(&[2, 0]), 2);
        assert_eq!(l.terms().count(), 2);
    }

    #[test]
    fn caps_are_enforced() {
        let mut m = MVPolynomial::zero(p(3), 2, 2, 1);
        assert!(m.add_term(vec![2, 1, 0], 1).is_err());
        assert!(m.add_term(vec![0, 0, 2], 1).is_err());
        assert!(m.add_term(vec![1, 0], 1).is_err());
        m.add_term(vec![1, 1, 1], 2).unwrap();
        let sq = m.mul(&m).unwrap();
        assert!(sq.is_zero());
    }

    #[test]
    fn log_refuses_to_divide_by_p() {
        // y-only terms stay alive for y_cap >= 3 powers; 1/3 is undefined mod 3
        let mut m = MVPolynomial::one(p(3), 1, 0, 3);
        m.add_term(vec![0, 1], 1).unwrap();
        assert_eq!(m.log(), Err(SeriesError::NonInvertibleInteger(3)));
        assert_eq!(MVPolynomial::zero(p(3), 1, 1, 1).log(), Err(SeriesError::LogConstant));
    }

    #[test]
    fn cancellation_removes_terms() {
        let mut m = MVPolynomial::zero(p(7), 1, 2, 2);
        m.add_term(vec![1, 1], 3).unwrap();
        m.add_term(vec![1, 1], 4).unwrap();
        assert!(m.is_zero());
    }
}
