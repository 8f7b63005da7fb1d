use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::padic::{inv_mod, mul_mod};

/// Coefficient ring of a [`PowerSeries`](super::PowerSeries).
///
/// Constructors take `&self` so that rings with a runtime modulus can
/// produce constants of the right characteristic.
pub trait Scalar: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn int_like(&self, n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn try_inverse(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn add_assign_ref(&mut self, other: &Self) {
        *self = self.add_ref(other);
    }
}

impl Scalar for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn int_like(&self, n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn try_inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
}

/// An element of `F_p`, carrying its modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    p: u64,
}

impl Fp {
    pub fn new(value: u64, p: u64) -> Self {
        Fp { value: value % p, p }
    }

    pub fn from_i64(value: i64, p: u64) -> Self {
        Fp {
            value: value.rem_euclid(p as i64) as u64,
            p,
        }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    pub fn pow(self, e: u64) -> Fp {
        Fp::new(crate::padic::pow_mod(self.value, e, self.p), self.p)
    }

    fn check(&self, other: &Fp) {
        debug_assert_eq!(self.p, other.p, "mixed moduli");
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.p)
    }
}

impl Scalar for Fp {
    fn zero_like(&self) -> Self {
        Fp::new(0, self.p)
    }
    fn one_like(&self) -> Self {
        Fp::new(1, self.p)
    }
    fn int_like(&self, n: i64) -> Self {
        Fp::from_i64(n, self.p)
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn add_ref(&self, other: &Self) -> Self {
        self.check(other);
        Fp::new(self.value + other.value, self.p)
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.check(other);
        Fp::new(self.value + self.p - other.value, self.p)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.check(other);
        Fp::new(mul_mod(self.value, other.value, self.p), self.p)
    }
    fn neg_ref(&self) -> Self {
        Fp::new(self.p - self.value, self.p)
    }
    fn try_inverse(&self) -> Option<Self> {
        if self.value == 0 {
            None
        } else {
            Some(Fp::new(inv_mod(self.value, self.p), self.p))
        }
    }
}
