//! Truncated graded polynomials in characteristic classes.
//!
//! Degrees are measured in units of a formal root, i.e. half the cohomological
//! degree: a Pontryagin class `p_j` has degree `2j`, a Chern class `c_j` has
//! degree `j` and the Euler class of a bundle with `r` roots has degree `r`.
//! A polynomial carries a degree bound and silently drops anything above it.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::ring::{Rational, Ring};

/// A characteristic class used as a polynomial variable.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ClassVar {
    /// Pontryagin class `p_j` of the ambient manifold.
    P(u32),
    /// Pontryagin class of the tangent bundle of a circle-fixed component.
    PY(u32),
    /// Pontryagin class of the tangent bundle of an involution-fixed component.
    PF(u32),
    /// Pontryagin class of the normal bundle of an involution-fixed component.
    PN(u32),
    /// Chern class `c_index` of the normal summand on which the circle acts with weight `weight`.
    C { weight: i64, index: u32 },
    /// Euler class of a normal bundle with `roots` formal roots.
    Euler { roots: u32 },
    /// Power sum `Σ x_i^{2j}` of squared roots; only used by Newton-identity checks.
    S(u32),
}

impl ClassVar {
    pub fn degree(&self) -> u32 {
        match *self {
            ClassVar::P(j)
            | ClassVar::PY(j)
            | ClassVar::PF(j)
            | ClassVar::PN(j)
            | ClassVar::S(j) => 2 * j,
            ClassVar::C { index, .. } => index,
            ClassVar::Euler { roots } => roots,
        }
    }
}

impl fmt::Display for ClassVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ClassVar::P(j) => write!(f, "p{j}"),
            ClassVar::PY(j) => write!(f, "pY{j}"),
            ClassVar::PF(j) => write!(f, "pF{j}"),
            ClassVar::PN(j) => write!(f, "pN{j}"),
            ClassVar::C { weight, index } => write!(f, "c{index}(nu_{weight})"),
            ClassVar::Euler { .. } => f.write_str("e"),
            ClassVar::S(j) => write!(f, "s{j}"),
        }
    }
}

/// A monomial: sorted `(variable, exponent)` pairs with positive exponents.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial(Vec<(ClassVar, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn var(v: ClassVar) -> Self {
        Self(vec![(v, 1)])
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (ClassVar, u32)>) -> Self {
        let mut map: BTreeMap<ClassVar, u32> = BTreeMap::new();
        for (v, e) in factors {
            if e > 0 {
                *map.entry(v).or_default() += e;
            }
        }
        Self(map.into_iter().collect())
    }

    pub fn factors(&self) -> &[(ClassVar, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(v, e)| v.degree() * e).sum()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::from_factors(self.0.iter().chain(rhs.0.iter()).copied())
    }

    pub fn exponent(&self, v: ClassVar) -> u32 {
        self.0.iter().find(|(w, _)| *w == v).map_or(0, |(_, e)| *e)
    }

    /// True when every variable satisfies `pred`.
    pub fn all_vars(&self, pred: impl Fn(&ClassVar) -> bool) -> bool {
        self.0.iter().all(|(v, _)| pred(v))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(v, e)| {
                if *e == 1 {
                    v.to_string()
                } else {
                    format!("{v}^{e}")
                }
            })
            .collect();
        f.write_str(&parts.join("."))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("malformed class monomial `{0}`")]
pub struct MonomialParseError(pub String);

fn parse_var(tok: &str) -> Option<ClassVar> {
    let num = |s: &str| s.parse::<u32>().ok().filter(|&j| j >= 1);
    if tok == "e" {
        // The root count is filled in by the caller, which knows the bundle rank.
        return Some(ClassVar::Euler { roots: 0 });
    }
    if let Some(rest) = tok.strip_prefix("pY") {
        return num(rest).map(ClassVar::PY);
    }
    if let Some(rest) = tok.strip_prefix("pF") {
        return num(rest).map(ClassVar::PF);
    }
    if let Some(rest) = tok.strip_prefix("pN") {
        return num(rest).map(ClassVar::PN);
    }
    if let Some(rest) = tok.strip_prefix('p') {
        return num(rest).map(ClassVar::P);
    }
    if let Some(rest) = tok.strip_prefix('c') {
        let (idx, bundle) = rest.split_once("(nu_")?;
        let weight = bundle
            .strip_suffix(')')?
            .parse::<i64>()
            .ok()
            .filter(|&k| k != 0)?;
        return num(idx).map(|index| ClassVar::C { weight, index });
    }
    None
}

impl FromStr for Monomial {
    type Err = MonomialParseError;

    /// Parses `p1.p1.p2`, `pY1^2.c1(nu_3)` and similar keys. Factors are
    /// separated by dots; an optional `^n` gives an exponent.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || MonomialParseError(s.to_string());
        if s.is_empty() {
            return Err(err());
        }
        let mut factors = Vec::new();
        for tok in s.split('.') {
            // Dots inside `c1(nu_k)` never occur, so a plain split is safe.
            let (base, exp) = match tok.rsplit_once('^') {
                Some((b, e)) if !b.ends_with('(') => (b, e.parse::<u32>().map_err(|_| err())?),
                _ => (tok, 1),
            };
            if exp == 0 {
                return Err(err());
            }
            factors.push((parse_var(base).ok_or_else(err)?, exp));
        }
        Ok(Monomial::from_factors(factors))
    }
}

/// A polynomial in characteristic classes truncated above a degree bound.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassPoly<R: Ring> {
    terms: BTreeMap<Monomial, R>,
    bound: u32,
}

impl<R: Ring> ClassPoly<R> {
    pub fn zero(bound: u32) -> Self {
        Self {
            terms: BTreeMap::new(),
            bound,
        }
    }

    pub fn constant(c: R, bound: u32) -> Self {
        let mut p = Self::zero(bound);
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn one(bound: u32) -> Self {
        Self::constant(R::one(), bound)
    }

    pub fn var(v: ClassVar, bound: u32) -> Self {
        let mut p = Self::zero(bound);
        p.add_term(Monomial::var(v), R::one());
        p
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &R)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> R {
        self.terms.get(m).cloned().unwrap_or_else(R::zero)
    }

    /// Adds `c * m`, dropping it when above the bound.
    pub fn add_term(&mut self, m: Monomial, c: R) {
        if m.degree() > self.bound || c.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&m) {
            Some(old) => old.add_ref(&c),
            None => c,
        };
        if !merged.is_zero() {
            self.terms.insert(m, merged);
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = Self {
            terms: self.terms.clone(),
            bound: self.bound.min(rhs.bound),
        };
        out.terms.retain(|m, _| m.degree() <= out.bound);
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg_ref()))
                .collect(),
            bound: self.bound,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let bound = self.bound.min(rhs.bound);
        let mut out = Self::zero(bound);
        for (ma, ca) in &self.terms {
            let da = ma.degree();
            if da > bound {
                continue;
            }
            for (mb, cb) in &rhs.terms {
                if da + mb.degree() > bound {
                    continue;
                }
                out.add_term(ma.mul(mb), ca.mul_ref(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self::zero(self.bound);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a.mul_ref(c));
        }
        out
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        self.scale(&R::from_rational(q))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.bound);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn with_bound(&self, bound: u32) -> Self {
        let mut out = Self::zero(bound.min(self.bound));
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    /// The part of exact degree `d`.
    pub fn homogeneous(&self, d: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
            bound: self.bound,
        }
    }

    /// Constant coefficient.
    pub fn constant_term(&self) -> R {
        self.coeff(&Monomial::one())
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> ClassPoly<S> {
        let mut out = ClassPoly::zero(self.bound);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// `exp(self)` for a polynomial without constant term.
    pub fn exp(&self) -> Self {
        assert!(
            self.constant_term().is_zero(),
            "exp of a class polynomial with a constant term"
        );
        let mut acc = Self::one(self.bound);
        let mut power = Self::one(self.bound);
        let mut k = 1i64;
        loop {
            power = power.mul(self).scale_rational(&crate::ring::rat(1, k));
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power);
            k += 1;
        }
        acc
    }

    /// Substitutes each variable by a polynomial.
    pub fn substitute(&self, f: &dyn Fn(ClassVar) -> ClassPoly<R>) -> Self {
        let mut out = Self::zero(self.bound);
        for (m, c) in &self.terms {
            let mut t = Self::constant(c.clone(), self.bound);
            for (v, e) in m.factors() {
                t = t.mul(&f(*v).with_bound(self.bound).pow(*e));
            }
            out = out.add(&t);
        }
        out
    }
}

impl<R: Ring> fmt::Display for ClassPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("({c})·{m}"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
