//! Even characteristic power series `Q(x)` and the two elliptic kernels.

use thiserror::Error;

use crate::classes::xseries::XSeries;
use crate::ring::{inv_factorial, rat, Rational, Ring};
use crate::series::{PuiseuxSeries, QExponent};

/// A q-series with rational coefficients.
pub type QSeries = PuiseuxSeries<Rational>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharSeriesError {
    #[error("characteristic series has a nonzero coefficient at odd degree x^{0}")]
    OddCoefficient(usize),
    #[error("characteristic series has a non-unit constant coefficient")]
    NonUnitLeading,
}

/// `Q(x) = a_0 + a_1 x^2 + a_2 x^4 + ...`, an even series with unit `a_0`.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacteristicPowerSeries<R: Ring> {
    coeffs: Vec<R>,
}

impl<R: Ring> CharacteristicPowerSeries<R> {
    /// Checks evenness and that `a_0` is a unit.
    pub fn from_xseries(s: &XSeries<R>) -> Result<Self, CharSeriesError> {
        for (i, c) in s.coeffs().iter().enumerate() {
            if i % 2 == 1 && !c.is_zero() {
                return Err(CharSeriesError::OddCoefficient(i));
            }
        }
        if s.coeff(0).try_inv().is_none() {
            return Err(CharSeriesError::NonUnitLeading);
        }
        Ok(Self {
            coeffs: s.coeffs().iter().step_by(2).cloned().collect(),
        })
    }

    /// From the even coefficients `a_j` of `x^{2j}`.
    pub fn from_even_coeffs(coeffs: Vec<R>) -> Result<Self, CharSeriesError> {
        match coeffs.first() {
            Some(a0) if a0.try_inv().is_some() => Ok(Self { coeffs }),
            _ => Err(CharSeriesError::NonUnitLeading),
        }
    }

    /// Coefficient of `x^{2j}`.
    pub fn coeff(&self, j: usize) -> &R {
        &self.coeffs[j]
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    /// Highest `j` such that `x^{2j}` is known.
    pub fn top_weight(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &R {
        &self.coeffs[0]
    }

    /// As a series in `u = x^2`.
    pub fn in_u(&self) -> XSeries<R> {
        XSeries::from_fn(self.top_weight(), |j| self.coeffs[j].clone())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let p = self.in_u().mul(&rhs.in_u());
        Self {
            coeffs: p.coeffs().to_vec(),
        }
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> CharacteristicPowerSeries<S> {
        CharacteristicPowerSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

fn rational_x(top: usize, f: impl Fn(usize) -> Rational) -> XSeries<Rational> {
    XSeries::from_fn(top, f)
}

/// `(e^{x/2} - e^{-x/2}) / x`, to degree `top`.
fn sinh_half_over_x(top: usize) -> XSeries<Rational> {
    let plus = XSeries::<Rational>::exp_linear(&rat(1, 2), top + 1);
    let minus = XSeries::<Rational>::exp_linear(&rat(-1, 2), top + 1);
    let diff = plus.sub(&minus);
    rational_x(top, |i| diff.coeff(i + 1).clone())
}

/// `x / (e^{x/2} - e^{-x/2}) = x / (2 sinh(x/2))`.
pub fn ahat_series(x_top: usize) -> CharacteristicPowerSeries<Rational> {
    let s = sinh_half_over_x(x_top)
        .invert()
        .expect("unit constant term");
    CharacteristicPowerSeries::from_xseries(&s).expect("x/(2 sinh(x/2)) is even")
}

/// `x / tanh(x)`, the classical L-series.
pub fn l_series(x_top: usize) -> CharacteristicPowerSeries<Rational> {
    let plus = XSeries::<Rational>::exp_linear(&rat(1, 1), x_top + 1);
    let minus = XSeries::<Rational>::exp_linear(&rat(-1, 1), x_top + 1);
    let cosh = plus.add(&minus);
    let sinh = plus.sub(&minus);
    let sinh_over_x = rational_x(x_top, |i| sinh.coeff(i + 1).clone());
    let cosh = rational_x(x_top, |i| cosh.coeff(i).clone());
    let q = cosh.mul(&sinh_over_x.invert().expect("unit constant term"));
    CharacteristicPowerSeries::from_xseries(&q).expect("x/tanh(x) is even")
}

fn lift(s: &XSeries<Rational>, q_trunc: i64) -> XSeries<QSeries> {
    s.map(|c| QSeries::from_unit_terms(1, [(0, c.clone())], Some(q_trunc + 1)))
}

/// `1 + eps q^n e^{s x}` with `q`-coefficients known below `q^{q_trunc+1}`.
fn linear_factor(eps: i64, n: i64, s: i64, x_top: usize, q_trunc: i64) -> XSeries<QSeries> {
    let e = XSeries::<Rational>::exp_linear(&rat(s, 1), x_top);
    XSeries::from_fn(x_top, |i| {
        let mut terms = vec![(n, e.coeff(i).clone() * rat(eps, 1))];
        if i == 0 {
            terms.push((0, rat(1, 1)));
        }
        QSeries::from_unit_terms(1, terms, Some(q_trunc + 1))
    })
}

/// `(1 + eps q^n e^x)(1 + eps q^n e^{-x})`.
fn paired_factor(eps: i64, n: i64, x_top: usize, q_trunc: i64) -> XSeries<QSeries> {
    linear_factor(eps, n, 1, x_top, q_trunc).mul(&linear_factor(eps, n, -1, x_top, q_trunc))
}

/// `Q(x) = x / f(q, x)` where
/// `f(q,x) = (e^{x/2} - e^{-x/2}) q^{1/4} ∏_{n even} (1 - q^n e^x)(1 - q^n e^{-x}) / ∏_{n odd} (same)`.
///
/// Coefficients are q-series known modulo `q^{-1/4 + q_trunc + 1}`; the
/// products run over `1 <= n <= q_trunc`. Fails only if an odd coefficient
/// survives, which would be a kernel bug.
pub fn taylor_x_over_f(
    q_trunc: i64,
    x_top: usize,
) -> Result<CharacteristicPowerSeries<QSeries>, CharSeriesError> {
    assert!(q_trunc >= 1, "q truncation must be at least 1");
    let base = sinh_half_over_x(x_top)
        .invert()
        .expect("unit constant term");
    let mut acc = lift(&base, q_trunc);
    for n in 1..=q_trunc {
        let factor = paired_factor(-1, n, x_top, q_trunc);
        let factor = if n % 2 == 1 {
            factor
        } else {
            factor.invert().expect("factor is 1 + O(q)")
        };
        acc = acc.mul(&factor);
    }
    let shifted = acc.map(|c| c.shift(QExponent::new(-1, 4)));
    CharacteristicPowerSeries::from_xseries(&shifted)
}

/// The signature-cusp kernel
/// `x (1 + e^{-x}) / (1 - e^{-x}) · ∏_{n>=1} (1 + q^n e^x)(1 + q^n e^{-x}) / ((1 - q^n e^x)(1 - q^n e^{-x}))`.
///
/// Its `q^0` layer is `x / tanh(x/2)`, whose genus is the signature.
pub fn signature_kernel(
    q_trunc: i64,
    x_top: usize,
) -> Result<CharacteristicPowerSeries<QSeries>, CharSeriesError> {
    assert!(q_trunc >= 1, "q truncation must be at least 1");
    // x/(1 - e^{-x}) from (1 - e^{-x})/x = Σ (-1)^i x^i/(i+1)!.
    let den = rational_x(x_top, |i| {
        inv_factorial(i as u32 + 1) * rat(if i % 2 == 0 { 1 } else { -1 }, 1)
    });
    let one_plus = XSeries::<Rational>::exp_linear(&rat(-1, 1), x_top).add(&XSeries::one(x_top));
    let base = one_plus.mul(&den.invert().expect("unit constant term"));
    let mut acc = lift(&base, q_trunc);
    for n in 1..=q_trunc {
        let num = paired_factor(1, n, x_top, q_trunc);
        let den = paired_factor(-1, n, x_top, q_trunc)
            .invert()
            .expect("factor is 1 + O(q)");
        acc = acc.mul(&num).mul(&den);
    }
    CharacteristicPowerSeries::from_xseries(&acc)
}

/// `x / tanh(x/2)`, the q^0 layer of [`signature_kernel`].
pub fn signature_constant_series(x_top: usize) -> CharacteristicPowerSeries<Rational> {
    let l = l_series(x_top);
    // x/tanh(x/2) = 2 · (x/2)/tanh(x/2).
    let coeffs = l
        .coeffs()
        .iter()
        .enumerate()
        .map(|(j, c)| c * rat(2, 1) * num_traits::pow(rat(1, 2), 2 * j))
        .collect();
    CharacteristicPowerSeries::from_even_coeffs(coeffs).expect("unit constant term")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ahat_coefficients() {
        let a = ahat_series(4);
        assert_eq!(a.coeffs(), &[rat(1, 1), rat(-1, 24), rat(7, 5760)]);
    }

    #[test]
    fn l_coefficients() {
        let l = l_series(4);
        assert_eq!(l.coeffs(), &[rat(1, 1), rat(1, 3), rat(-1, 45)]);
    }

    #[test]
    fn x_over_f_leading_layer_is_ahat() {
        let q = taylor_x_over_f(2, 4).unwrap();
        let a = ahat_series(4);
        for j in 0..=2 {
            let c = q.coeff(j).shift(QExponent::new(1, 4));
            assert_eq!(
                c.coeff(QExponent::from_integer(0)),
                Some(a.coeff(j).clone())
            );
        }
        assert_eq!(q.coeff(0).valuation(), Some(QExponent::new(-1, 4)));
    }

    #[test]
    fn signature_kernel_leading_layer() {
        let s = signature_kernel(2, 4).unwrap();
        let c = signature_constant_series(4);
        for j in 0..=2 {
            assert_eq!(
                s.coeff(j).coeff(QExponent::from_integer(0)),
                Some(c.coeff(j).clone())
            );
        }
        assert_eq!(c.coeffs(), &[rat(2, 1), rat(1, 6), rat(-1, 360)]);
    }
}
