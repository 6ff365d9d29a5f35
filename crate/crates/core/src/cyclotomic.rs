//! Elements of cyclotomic fields `Q(ζ_n)`.
//!
//! An element is a polynomial in `ζ_n` reduced modulo the `n`-th cyclotomic
//! polynomial. Binary operations on elements of different orders embed both
//! operands into `Q(ζ_L)` with `L = lcm` of the orders, via
//! `ζ_n = ζ_L^{L/n}`. Rational constants live in order 1.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;

use crate::poly::QPoly;
use crate::ring::{Rational, Ring};

/// The `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u64) -> QPoly {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    let mut p = QPoly::monomial(Rational::one(), n as usize).sub(&QPoly::one());
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = p.div_rem(&cyclotomic_polynomial(d)).0;
        }
    }
    p
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

#[derive(Clone, Debug)]
pub struct CyclotomicElement {
    order: u64,
    modulus: Arc<QPoly>,
    coords: QPoly,
}

impl CyclotomicElement {
    fn with_modulus(order: u64, modulus: Arc<QPoly>, poly: QPoly) -> Self {
        let coords = poly.rem(&modulus);
        Self {
            order,
            modulus,
            coords,
        }
    }

    /// Reduces an arbitrary polynomial in `ζ_n`.
    pub fn from_poly(order: u64, poly: QPoly) -> Self {
        Self::with_modulus(order, Arc::new(cyclotomic_polynomial(order)), poly)
    }

    pub fn rational(q: Rational) -> Self {
        Self::from_poly(1, QPoly::constant(q))
    }

    /// `ζ_n^k` for any integer `k`.
    pub fn zeta_power(order: u64, k: i64) -> Self {
        let e = k.rem_euclid(order as i64) as usize;
        Self::from_poly(order, QPoly::monomial(Rational::one(), e))
    }

    pub fn zeta(order: u64) -> Self {
        Self::zeta_power(order, 1)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Coordinates in the power basis `1, ζ, ..., ζ^{φ(n)-1}`.
    pub fn coords(&self) -> Vec<Rational> {
        let d = self.modulus.degree().unwrap_or(0);
        (0..d).map(|i| self.coords.coeff(i)).collect()
    }

    /// `Some(q)` when the element is rational.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coords.is_constant() {
            Some(self.coords.coeff(0))
        } else {
            None
        }
    }

    /// The same element viewed in `Q(ζ_m)`; `m` must be a multiple of the order.
    pub fn embed(&self, m: u64) -> Self {
        assert!(
            m.is_multiple_of(self.order),
            "cannot embed Q(ζ_{}) into Q(ζ_{m})",
            self.order
        );
        if m == self.order {
            return self.clone();
        }
        let k = (m / self.order) as usize;
        Self::from_poly(m, self.coords.inflate(k))
    }

    fn aligned(&self, rhs: &Self) -> (Self, Self) {
        if self.order == rhs.order {
            (self.clone(), rhs.clone())
        } else {
            let l = self.order.lcm(&rhs.order);
            (self.embed(l), rhs.embed(l))
        }
    }
}

impl PartialEq for CyclotomicElement {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.aligned(other);
        a.coords == b.coords
    }
}

impl fmt::Display for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.order == 1 {
            f.write_str(&self.coords.display_with("1").replace("1^", ""))
        } else {
            f.write_str(&self.coords.display_with(&format!("ζ{}", self.order)))
        }
    }
}

impl Ring for CyclotomicElement {
    fn zero() -> Self {
        Self::rational(Rational::zero())
    }
    fn one() -> Self {
        Self::rational(Rational::one())
    }
    fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        let (a, b) = self.aligned(rhs);
        Self {
            coords: a.coords.add(&b.coords),
            ..a
        }
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        let (a, b) = self.aligned(rhs);
        let p = a.coords.mul(&b.coords);
        Self::with_modulus(a.order, a.modulus.clone(), p)
    }
    fn neg_ref(&self) -> Self {
        Self {
            coords: self.coords.neg(),
            ..self.clone()
        }
    }
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let (g, s, _) = self.coords.ext_gcd(&self.modulus);
        // The modulus is irreducible, so any nonzero reduced element is coprime to it.
        debug_assert_eq!(g, QPoly::one());
        Some(Self::with_modulus(self.order, self.modulus.clone(), s))
    }
    fn from_rational(q: &Rational) -> Self {
        Self::rational(q.clone())
    }
}
