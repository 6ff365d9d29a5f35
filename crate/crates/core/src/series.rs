//! Truncated Laurent–Puiseux series in `q`.
//!
//! A series stores a common exponent denominator `D` and a dense block of
//! coefficients; index `i` holds the coefficient of `q^{(min_exp + i)/D}`.
//! A series is either *exact* (a finite sum, infinite precision) or known
//! modulo `q^{trunc/D}`. Arithmetic tracks precision pessimistically and
//! never reports coefficients at or beyond the truncation.
//!
//! Binary operations on series with different denominators first rescale
//! both operands to the least common multiple. The denominator of a series
//! never shrinks implicitly.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use thiserror::Error;

use crate::ring::{fmt_rational, Rational, Ring};

/// A rational exponent of `q`.
pub type QExponent = Ratio<i64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("cannot invert the zero series")]
    ZeroSeries,
    #[error("leading coefficient {0} is not a unit")]
    NonUnitLeading(String),
    #[error("the inverse of an exact series with more than one term needs a truncation order")]
    UnboundedInverse,
}

#[derive(Clone, Debug)]
pub struct PuiseuxSeries<R: Ring> {
    denom: i64,
    min_exp: i64,
    coeffs: Vec<R>,
    trunc: Option<i64>,
}

fn exponent_units(e: QExponent, denom: i64) -> i64 {
    let scaled = e * denom;
    assert!(
        scaled.is_integer(),
        "exponent {e} is not a multiple of 1/{denom}"
    );
    scaled.to_integer()
}

impl<R: Ring> PuiseuxSeries<R> {
    fn canonical(denom: i64, mut min_exp: i64, mut coeffs: Vec<R>, trunc: Option<i64>) -> Self {
        assert!(denom >= 1, "series denominator must be positive");
        let lead = coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                coeffs.clear();
                min_exp = trunc.unwrap_or(0);
            }
            Some(k) => {
                coeffs.drain(..k);
                min_exp += k as i64;
            }
        }
        match trunc {
            Some(t) => {
                let len = (t - min_exp).max(0) as usize;
                coeffs.resize(len, R::zero());
                if coeffs.is_empty() {
                    min_exp = t;
                }
            }
            None => {
                while coeffs.last().is_some_and(|c| c.is_zero()) {
                    coeffs.pop();
                }
            }
        }
        Self {
            denom,
            min_exp,
            coeffs,
            trunc,
        }
    }

    /// Builds a series from `(exponent in units of 1/denom, coefficient)` pairs.
    /// Terms at or beyond the truncation are discarded.
    pub fn from_unit_terms(
        denom: i64,
        terms: impl IntoIterator<Item = (i64, R)>,
        trunc: Option<i64>,
    ) -> Self {
        let terms: Vec<(i64, R)> = terms
            .into_iter()
            .filter(|(e, _)| trunc.is_none_or(|t| *e < t))
            .collect();
        if terms.is_empty() {
            return Self::canonical(denom, 0, Vec::new(), trunc);
        }
        let lo = terms.iter().map(|(e, _)| *e).min().unwrap_or(0);
        let hi = terms.iter().map(|(e, _)| *e).max().unwrap_or(0);
        let mut coeffs = vec![R::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            let slot = &mut coeffs[(e - lo) as usize];
            *slot = slot.add_ref(&c);
        }
        Self::canonical(denom, lo, coeffs, trunc)
    }

    /// Builds a series from rational exponents; `denom` must clear all of them.
    pub fn from_terms(
        denom: i64,
        terms: impl IntoIterator<Item = (QExponent, R)>,
        trunc: Option<QExponent>,
    ) -> Self {
        let terms: Vec<(i64, R)> = terms
            .into_iter()
            .map(|(e, c)| (exponent_units(e, denom), c))
            .collect();
        Self::from_unit_terms(denom, terms, trunc.map(|t| exponent_units(t, denom)))
    }

    /// Exact zero.
    pub fn zero() -> Self {
        Self::canonical(1, 0, Vec::new(), None)
    }

    /// `O(q^trunc)` with denominator `denom`.
    pub fn zero_to(denom: i64, trunc: QExponent) -> Self {
        Self::canonical(denom, 0, Vec::new(), Some(exponent_units(trunc, denom)))
    }

    pub fn constant(c: R) -> Self {
        Self::canonical(1, 0, vec![c], None)
    }

    /// The exact monomial `c q^e`.
    pub fn monomial(c: R, e: QExponent) -> Self {
        let denom = *e.denom();
        Self::canonical(denom, *e.numer(), vec![c], None)
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    pub fn is_exact(&self) -> bool {
        self.trunc.is_none()
    }

    /// Truncation order as a rational exponent, `None` when exact.
    pub fn trunc(&self) -> Option<QExponent> {
        self.trunc.map(|t| QExponent::new(t, self.denom))
    }

    /// Least exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<QExponent> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(QExponent::new(self.min_exp, self.denom))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `q^e`; `None` when `e` is at or beyond the truncation.
    pub fn coeff(&self, e: QExponent) -> Option<R> {
        let scaled = e * self.denom;
        if let Some(t) = self.trunc {
            if scaled >= Ratio::from_integer(t) {
                return None;
            }
        }
        if !scaled.is_integer() {
            return Some(R::zero());
        }
        let u = scaled.to_integer();
        if u < self.min_exp {
            return Some(R::zero());
        }
        Some(
            self.coeffs
                .get((u - self.min_exp) as usize)
                .cloned()
                .unwrap_or_else(R::zero),
        )
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (QExponent, &R)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (QExponent::new(self.min_exp + i as i64, self.denom), c))
    }

    /// All coefficient slots, including zeros, as `(exponent, coefficient)`.
    pub fn slots(&self) -> impl Iterator<Item = (QExponent, &R)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (QExponent::new(self.min_exp + i as i64, self.denom), c))
    }

    /// The same series with exponent denominator `new_denom` (a multiple of the current one).
    pub fn rescale(&self, new_denom: i64) -> Self {
        assert!(
            new_denom % self.denom == 0,
            "cannot rescale 1/{} to 1/{new_denom}",
            self.denom
        );
        let k = new_denom / self.denom;
        if k == 1 {
            return self.clone();
        }
        let mut coeffs = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                coeffs.extend(std::iter::repeat_n(R::zero(), (k - 1) as usize));
            }
            coeffs.push(c.clone());
        }
        Self::canonical(
            new_denom,
            self.min_exp * k,
            coeffs,
            self.trunc.map(|t| t * k),
        )
    }

    fn align(&self, rhs: &Self) -> (Self, Self) {
        if self.denom == rhs.denom {
            (self.clone(), rhs.clone())
        } else {
            let d = self.denom.lcm(&rhs.denom);
            (self.rescale(d), rhs.rescale(d))
        }
    }

    /// Applies (additional) truncation at `q^t`.
    pub fn truncate(&self, t: QExponent) -> Self {
        let d = self.denom.lcm(t.denom());
        let s = self.rescale(d);
        let tu = exponent_units(t, d);
        let trunc = Some(s.trunc.map_or(tu, |old| old.min(tu)));
        let keep = (tu - s.min_exp).clamp(0, s.coeffs.len() as i64) as usize;
        Self::canonical(d, s.min_exp, s.coeffs[..keep].to_vec(), trunc)
    }

    /// Multiplies by `q^e`.
    pub fn shift(&self, e: QExponent) -> Self {
        let d = self.denom.lcm(e.denom());
        let s = self.rescale(d);
        let u = exponent_units(e, d);
        Self::canonical(d, s.min_exp + u, s.coeffs, s.trunc.map(|t| t + u))
    }

    pub fn scale(&self, c: &R) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a.mul_ref(c)).collect();
        Self::canonical(self.denom, self.min_exp, coeffs, self.trunc)
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> PuiseuxSeries<S> {
        PuiseuxSeries::canonical(
            self.denom,
            self.min_exp,
            self.coeffs.iter().map(f).collect(),
            self.trunc,
        )
    }

    /// Fallible coefficient map; used by evaluation at torsion points.
    pub fn try_map_coeffs<S: Ring, E>(
        &self,
        f: impl Fn(&R) -> Result<S, E>,
    ) -> Result<PuiseuxSeries<S>, E> {
        let coeffs = self.coeffs.iter().map(f).collect::<Result<Vec<_>, _>>()?;
        Ok(PuiseuxSeries::canonical(
            self.denom,
            self.min_exp,
            coeffs,
            self.trunc,
        ))
    }

    pub fn series_add(&self, rhs: &Self) -> Self {
        let (a, b) = self.align(rhs);
        let trunc = match (a.trunc, b.trunc) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        };
        let lo = a.min_exp.min(b.min_exp);
        let hi = {
            let end = |s: &Self| s.min_exp + s.coeffs.len() as i64;
            let e = end(&a).max(end(&b));
            trunc.map_or(e, |t| e.min(t))
        };
        let len = (hi - lo).max(0) as usize;
        let mut coeffs = vec![R::zero(); len];
        for s in [&a, &b] {
            for (i, c) in s.coeffs.iter().enumerate() {
                let idx = s.min_exp + i as i64 - lo;
                if idx >= 0 && (idx as usize) < len {
                    coeffs[idx as usize] = coeffs[idx as usize].add_ref(c);
                }
            }
        }
        Self::canonical(a.denom, lo, coeffs, trunc)
    }

    pub fn series_neg(&self) -> Self {
        Self {
            denom: self.denom,
            min_exp: self.min_exp,
            coeffs: self.coeffs.iter().map(|c| c.neg_ref()).collect(),
            trunc: self.trunc,
        }
    }

    pub fn series_sub(&self, rhs: &Self) -> Self {
        self.series_add(&rhs.series_neg())
    }

    /// Cauchy product.
    pub fn series_mul(&self, rhs: &Self) -> Self {
        let (a, b) = self.align(rhs);
        if (a.is_exact() && a.is_zero()) || (b.is_exact() && b.is_zero()) {
            return Self::canonical(a.denom, 0, Vec::new(), None);
        }
        let trunc = match (a.trunc, b.trunc) {
            (Some(x), Some(y)) => Some((a.min_exp + y).min(b.min_exp + x)),
            (Some(x), None) => Some(b.min_exp + x),
            (None, Some(y)) => Some(a.min_exp + y),
            (None, None) => None,
        };
        let lo = a.min_exp + b.min_exp;
        let natural = (a.coeffs.len() + b.coeffs.len()).saturating_sub(1) as i64;
        let len = trunc.map_or(natural, |t| (t - lo).min(natural)).max(0) as usize;
        let mut coeffs = vec![R::zero(); len];
        for (i, x) in a.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if y.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add_ref(&x.mul_ref(y));
            }
        }
        Self::canonical(a.denom, lo, coeffs, trunc)
    }

    /// Multiplicative inverse to the available relative precision.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        let lead = self.coeffs.first().ok_or(SeriesError::ZeroSeries)?;
        let lead_inv = lead
            .try_inv()
            .ok_or_else(|| SeriesError::NonUnitLeading(lead.to_string()))?;
        let rel = match self.trunc {
            Some(t) => (t - self.min_exp) as usize,
            None if self.coeffs.len() == 1 => {
                return Ok(Self::canonical(
                    self.denom,
                    -self.min_exp,
                    vec![lead_inv],
                    None,
                ));
            }
            None => return Err(SeriesError::UnboundedInverse),
        };
        let mut out: Vec<R> = Vec::with_capacity(rel);
        out.push(lead_inv.clone());
        for k in 1..rel {
            let mut acc = R::zero();
            for j in 1..=k.min(self.coeffs.len() - 1) {
                let a = &self.coeffs[j];
                if a.is_zero() {
                    continue;
                }
                acc = acc.add_ref(&a.mul_ref(&out[k - j]));
            }
            out.push(acc.mul_ref(&lead_inv).neg_ref());
        }
        Ok(Self::canonical(
            self.denom,
            -self.min_exp,
            out,
            Some(-self.min_exp + rel as i64),
        ))
    }

    /// Inverse of a possibly exact series, computed modulo `q^t`.
    pub fn invert_to(&self, t: QExponent) -> Result<Self, SeriesError> {
        let val = self.valuation().ok_or(SeriesError::ZeroSeries)?;
        // Relative precision needed so the inverse is known below q^t.
        let rel = t + val;
        self.truncate(rel).invert()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(R::one());
        for _ in 0..e {
            acc = acc.series_mul(self);
        }
        acc
    }
}

impl<R: Ring> PartialEq for PuiseuxSeries<R> {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.align(other);
        a.trunc == b.trunc && a.min_exp == b.min_exp && a.coeffs == b.coeffs
    }
}

/// Renders an exponent with the minimal denominator.
pub fn fmt_exponent(e: QExponent) -> String {
    if e.is_integer() {
        e.to_integer().to_string()
    } else {
        format!("{}/{}", e.numer(), e.denom())
    }
}

fn q_power(e: QExponent) -> String {
    if e == QExponent::from_integer(1) {
        "q".to_string()
    } else {
        format!("q^{{{}}}", fmt_exponent(e))
    }
}

/// Signed rendering of coefficients inside a sum.
pub trait TermDisplay {
    /// `(is_negative, absolute value rendered as a factor)`.
    fn term_parts(&self) -> (bool, String);
    fn is_unit_magnitude(&self) -> bool {
        false
    }
}

impl TermDisplay for Rational {
    fn term_parts(&self) -> (bool, String) {
        let (neg, abs) = crate::ring::split_sign(self);
        (neg, fmt_rational(&abs))
    }
    fn is_unit_magnitude(&self) -> bool {
        self.numer() == self.denom() || -self.numer() == *self.denom()
    }
}

fn wrap_compound(s: String) -> (bool, String) {
    let body = s.strip_prefix('-').unwrap_or(&s);
    let compound = body.contains(" + ") || body.contains(" - ") || body.contains('/');
    if compound {
        (false, format!("({s})"))
    } else if let Some(rest) = s.strip_prefix('-') {
        (true, rest.to_string())
    } else {
        (false, s)
    }
}

impl TermDisplay for crate::ratfn::RationalFunction {
    fn term_parts(&self) -> (bool, String) {
        wrap_compound(self.pretty())
    }
    fn is_unit_magnitude(&self) -> bool {
        self.as_constant()
            .is_some_and(|c| c.numer() == c.denom() || -c.numer() == *c.denom())
    }
}

impl TermDisplay for crate::cyclotomic::CyclotomicElement {
    fn term_parts(&self) -> (bool, String) {
        wrap_compound(self.to_string())
    }
    fn is_unit_magnitude(&self) -> bool {
        self.as_rational()
            .is_some_and(|c| c.numer() == c.denom() || -c.numer() == *c.denom())
    }
}

impl<R: Ring + TermDisplay> PuiseuxSeries<R> {
    /// Human-readable form such as `2·q^{-1/2} - 5·q^{1/2} + O(q^{3/2})`.
    pub fn pretty(&self) -> String {
        let mut out = String::new();
        for (e, c) in self.terms() {
            let (neg, abs) = c.term_parts();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if e == QExponent::from_integer(0) {
                out.push_str(&abs);
            } else if c.is_unit_magnitude() {
                out.push_str(&q_power(e));
            } else {
                out.push_str(&format!("{abs}·{}", q_power(e)));
            }
        }
        match self.trunc() {
            Some(t) => {
                if out.is_empty() {
                    out.push('0');
                }
                format!("{out} + O({})", q_power(t))
            }
            None if out.is_empty() => "0".to_string(),
            None => out,
        }
    }
}

impl<R: Ring> fmt::Display for PuiseuxSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})·q^{{{}}}", fmt_exponent(e))?;
        }
        match self.trunc() {
            Some(t) if first => write!(f, "O(q^{{{}}})", fmt_exponent(t)),
            Some(t) => write!(f, " + O(q^{{{}}})", fmt_exponent(t)),
            None if first => f.write_str("0"),
            None => Ok(()),
        }
    }
}

impl<R: Ring> Ring for PuiseuxSeries<R> {
    fn zero() -> Self {
        Self::zero()
    }
    fn one() -> Self {
        Self::constant(R::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self.series_add(rhs)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.series_mul(rhs)
    }
    fn neg_ref(&self) -> Self {
        self.series_neg()
    }
    fn try_inv(&self) -> Option<Self> {
        self.invert().ok()
    }
    fn from_rational(q: &Rational) -> Self {
        Self::constant(R::from_rational(q))
    }
    fn scale(&self, q: &Rational) -> Self {
        self.scale(&R::from_rational(q))
    }
}

impl<R: Ring> Add for &PuiseuxSeries<R> {
    type Output = PuiseuxSeries<R>;
    fn add(self, rhs: Self) -> PuiseuxSeries<R> {
        self.series_add(rhs)
    }
}

impl<R: Ring> Sub for &PuiseuxSeries<R> {
    type Output = PuiseuxSeries<R>;
    fn sub(self, rhs: Self) -> PuiseuxSeries<R> {
        self.series_sub(rhs)
    }
}

impl<R: Ring> Mul for &PuiseuxSeries<R> {
    type Output = PuiseuxSeries<R>;
    fn mul(self, rhs: Self) -> PuiseuxSeries<R> {
        self.series_mul(rhs)
    }
}

impl<R: Ring> Neg for &PuiseuxSeries<R> {
    type Output = PuiseuxSeries<R>;
    fn neg(self) -> PuiseuxSeries<R> {
        self.series_neg()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat, rat_int};

    type S = PuiseuxSeries<Rational>;

    fn qe(n: i64, d: i64) -> QExponent {
        QExponent::new(n, d)
    }

    fn s(denom: i64, terms: &[(i64, i64, i64)], trunc: Option<QExponent>) -> S {
        // (exp numerator, exp denominator, integer coefficient)
        S::from_terms(
            denom,
            terms.iter().map(|&(n, d, c)| (qe(n, d), rat_int(c))),
            trunc,
        )
    }

    #[test]
    fn add_examples() {
        let a = s(2, &[(-1, 2, 1), (1, 1, 2)], None);
        let b = s(1, &[(1, 1, 3)], None);
        assert_eq!(&a + &b, s(2, &[(-1, 2, 1), (1, 1, 5)], None));
        assert_eq!(&a + &S::zero(), a);
        let c = s(1, &[(0, 1, 1), (1, 1, -1)], Some(qe(2, 1)));
        let d = s(1, &[(1, 1, 1)], None);
        assert_eq!(&c + &d, s(1, &[(0, 1, 1)], Some(qe(2, 1))));
    }

    #[test]
    fn mul_examples() {
        let a = S::monomial(rat_int(1), qe(1, 4));
        assert_eq!(&a * &a, S::monomial(rat_int(1), qe(1, 2)));
        let p = s(1, &[(0, 1, 1), (1, 1, 1)], None);
        let m = s(1, &[(0, 1, 1), (1, 1, -1)], None);
        assert_eq!(&p * &m, s(1, &[(0, 1, 1), (2, 1, -1)], None));
        let inv_q = S::monomial(rat_int(1), qe(-1, 1));
        let t = s(1, &[(1, 1, 1), (2, 1, 1)], None);
        assert_eq!(&inv_q * &t, p);
    }

    #[test]
    fn truncation_of_products() {
        let a = s(1, &[(0, 1, 1), (1, 1, 1)], Some(qe(3, 1)));
        let b = s(1, &[(-1, 1, 1)], Some(qe(2, 1)));
        let p = &a * &b;
        assert_eq!(p.trunc(), Some(qe(2, 1)));
        assert_eq!(p.valuation(), Some(qe(-1, 1)));
    }

    #[test]
    fn invert_examples() {
        let a = S::monomial(rat_int(1), qe(1, 4));
        assert_eq!(a.invert().unwrap(), S::monomial(rat_int(1), qe(-1, 4)));

        let geo = s(1, &[(0, 1, 1), (1, 1, -1)], Some(qe(4, 1)));
        assert_eq!(
            geo.invert().unwrap(),
            s(
                1,
                &[(0, 1, 1), (1, 1, 1), (2, 1, 1), (3, 1, 1)],
                Some(qe(4, 1))
            )
        );

        // 1/(2+q) by long division: 1/2 - q/4 + q^2/8
        let two_q = s(1, &[(0, 1, 2), (1, 1, 1)], Some(qe(3, 1)));
        let expected = S::from_terms(
            1,
            [
                (qe(0, 1), rat(1, 2)),
                (qe(1, 1), rat(-1, 4)),
                (qe(2, 1), rat(1, 8)),
            ],
            Some(qe(3, 1)),
        );
        assert_eq!(two_q.invert().unwrap(), expected);
    }

    #[test]
    fn invert_errors() {
        assert_eq!(S::zero().invert(), Err(SeriesError::ZeroSeries));
        let exact = s(1, &[(0, 1, 1), (1, 1, 1)], None);
        assert_eq!(exact.invert(), Err(SeriesError::UnboundedInverse));
        assert!(exact.invert_to(qe(3, 1)).is_ok());
    }

    #[test]
    fn coefficient_lookup_respects_truncation() {
        let a = s(4, &[(-1, 4, 3)], Some(qe(1, 1)));
        assert_eq!(a.coeff(qe(-1, 4)), Some(rat_int(3)));
        assert_eq!(a.coeff(qe(1, 2)), Some(rat_int(0)));
        assert_eq!(a.coeff(qe(1, 1)), None);
    }

    #[test]
    fn rescale_preserves_value() {
        let a = s(2, &[(-1, 2, 1), (1, 1, 2)], Some(qe(3, 2)));
        assert_eq!(a.rescale(8), a);
        assert_eq!(a.rescale(8).denom(), 8);
    }

    #[test]
    fn pretty_printing() {
        let a = s(4, &[(-1, 2, 2), (1, 2, -5)], Some(qe(3, 2)));
        assert_eq!(a.pretty(), "2·q^{-1/2} - 5·q^{1/2} + O(q^{3/2})");
        assert_eq!(S::zero_to(1, qe(3, 1)).pretty(), "0 + O(q^{3})");
        assert_eq!(s(1, &[(1, 1, -1)], None).pretty(), "-q");
    }
}
