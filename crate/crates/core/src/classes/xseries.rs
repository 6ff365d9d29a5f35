//! Power series in a single formal root `x`, truncated at a fixed degree.

use crate::ring::{inv_factorial, rat, Rational, Ring};

/// `c[0] + c[1] x + ... + c[top] x^top`, with everything above `top` unknown.
#[derive(Clone, Debug, PartialEq)]
pub struct XSeries<R: Ring> {
    coeffs: Vec<R>,
}

impl<R: Ring> XSeries<R> {
    pub fn from_fn(top: usize, f: impl Fn(usize) -> R) -> Self {
        Self {
            coeffs: (0..=top).map(f).collect(),
        }
    }

    pub fn constant(c: R, top: usize) -> Self {
        Self::from_fn(top, |i| if i == 0 { c.clone() } else { R::zero() })
    }

    pub fn one(top: usize) -> Self {
        Self::constant(R::one(), top)
    }

    /// `e^{s x}` for a rational `s`.
    pub fn exp_linear(s: &Rational, top: usize) -> Self {
        Self::from_fn(top, |i| {
            R::from_rational(&(num_traits::pow(s.clone(), i) * inv_factorial(i as u32)))
        })
    }

    pub fn top(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &R {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let top = self.top().min(rhs.top());
        Self::from_fn(top, |i| self.coeffs[i].add_ref(&rhs.coeffs[i]))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let top = self.top().min(rhs.top());
        Self::from_fn(top, |i| self.coeffs[i].sub_ref(&rhs.coeffs[i]))
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c.neg_ref()).collect(),
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a.mul_ref(c)).collect(),
        }
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> XSeries<S> {
        XSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let top = self.top().min(rhs.top());
        let mut out = vec![R::zero(); top + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(top + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(top + 1 - i) {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
                }
            }
        }
        Self { coeffs: out }
    }

    /// Inverse, given an inverse of the constant coefficient.
    pub fn invert_with(&self, inv0: &R) -> Self {
        let top = self.top();
        let mut out: Vec<R> = Vec::with_capacity(top + 1);
        out.push(inv0.clone());
        for n in 1..=top {
            let mut acc = R::zero();
            for k in 1..=n {
                acc = acc.add_ref(&self.coeffs[k].mul_ref(&out[n - k]));
            }
            out.push(acc.mul_ref(inv0).neg_ref());
        }
        Self { coeffs: out }
    }

    /// Inverse; `None` when the constant coefficient is not a unit.
    pub fn invert(&self) -> Option<Self> {
        self.coeffs[0].try_inv().map(|inv0| self.invert_with(&inv0))
    }

    /// `log(self)` for a series with constant coefficient one, via `(log g)' = g'/g`.
    pub fn log(&self) -> Self {
        assert!(
            self.coeffs[0].sub_ref(&R::one()).is_zero(),
            "log of a series with constant coefficient other than one"
        );
        let top = self.top();
        let inv = self.invert_with(&R::one());
        let deriv = Self::from_fn(top, |i| {
            if i < top {
                self.coeffs[i + 1].scale(&rat((i + 1) as i64, 1))
            } else {
                R::zero()
            }
        });
        let q = deriv.mul(&inv);
        Self::from_fn(top, |i| {
            if i == 0 {
                R::zero()
            } else {
                q.coeffs[i - 1].scale(&rat(1, i as i64))
            }
        })
    }

    /// `exp(self)` for a series without constant term.
    pub fn exp(&self) -> Self {
        assert!(
            self.coeffs[0].is_zero(),
            "exp of a series with a constant term"
        );
        let top = self.top();
        // g' = f' g, solved degree by degree.
        let mut out: Vec<R> = vec![R::one()];
        for n in 1..=top {
            let mut acc = R::zero();
            for k in 1..=n {
                let fk = self.coeffs[k].scale(&rat(k as i64, 1));
                acc = acc.add_ref(&fk.mul_ref(&out[n - k]));
            }
            out.push(acc.scale(&rat(1, n as i64)));
        }
        Self { coeffs: out }
    }

    /// True when all odd coefficients are exactly zero.
    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(|c| c.is_zero())
    }
}
