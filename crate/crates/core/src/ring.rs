//! Coefficient rings.
//!
//! Every coefficient type used by the series kernel implements [`Ring`]. The
//! trait is deliberately small: exact arithmetic, an exact zero test and a
//! partial inverse. Rationals are embedded into every ring through
//! [`Ring::from_rational`].

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

/// Exact rational numbers.
pub type Rational = BigRational;

/// A commutative ring with exact arithmetic containing the rationals.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Multiplicative inverse, `None` when the element is not a unit.
    fn try_inv(&self) -> Option<Self>;
    fn from_rational(q: &Rational) -> Self;

    fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.neg_ref())
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn scale(&self, q: &Rational) -> Self {
        self.mul_ref(&Self::from_rational(q))
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(&rat(n, 1))
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn try_inv(&self) -> Option<Self> {
        if num_traits::Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

/// Shorthand for the rational `num/den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `1/n!` as an exact rational.
pub fn inv_factorial(n: u32) -> Rational {
    let mut f: BigInt = num_traits::One::one();
    for i in 2..=n {
        f *= i;
    }
    Rational::new(num_traits::One::one(), f)
}

/// Formats a rational as `a` or `a/b`.
pub fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Writes `coeff * body` as a signed term, returning whether a leading minus
/// was consumed into `negative`.
pub(crate) fn split_sign(q: &Rational) -> (bool, Rational) {
    if q.is_negative() {
        (true, -q)
    } else {
        (false, q.clone())
    }
}
