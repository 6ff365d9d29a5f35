//! Bundle expressions built from the tangent bundle and their Chern characters.
//!
//! Everything reduces to Adams operations: `ch(ψ^m V)` is supplied by the
//! caller as a polynomial in characteristic classes, and exterior and
//! symmetric powers follow from the Newton recursions
//! `k λ^k = Σ_{i=1}^k (-1)^{i-1} ψ^i λ^{k-i}` and `k σ^k = Σ_{i=1}^k ψ^i σ^{k-i}`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::classes::charseries::QSeries;
use crate::classes::graded::{ClassPoly, ClassVar};
use crate::classes::mseq::squared_power_sums;
use crate::ring::{fmt_rational, inv_factorial, rat, rat_int, Rational};
use crate::series::QExponent;

/// A virtual bundle over the ambient manifold, graded by powers of `q`.
#[derive(Clone, Debug, PartialEq)]
pub enum BundleExpression {
    /// The trivial complex line.
    Trivial,
    /// The complexified tangent bundle.
    Tangent,
    /// `Λ^k TM`.
    Exterior(u32),
    /// `S^k TM`.
    Symmetric(u32),
    /// The Adams operation `ψ^m TM`.
    Adams(u32),
    Sum(Vec<BundleExpression>),
    Tensor(Vec<BundleExpression>),
    Scale(Rational, Box<BundleExpression>),
    /// `q^w · E`.
    QShift(i64, Box<BundleExpression>),
    /// `Λ_t TM = Σ Λ^k TM t^k` with `t = sign · q^w`.
    LambdaT {
        sign: i64,
        q_weight: i64,
    },
    /// `S_t TM = Σ S^k TM t^k` with `t = q^w`.
    SymmetricT {
        q_weight: i64,
    },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BundleError {
    #[error("`{0}` does not truncate: its formal variable must carry a positive power of q")]
    NonTruncating(String),
    #[error("cannot parse bundle expression `{0}`")]
    Parse(String),
}

impl BundleExpression {
    /// `⊗_{n>=1} S_{q^n} TM ⊗ Λ_{q^n} TM`, through `n <= q_trunc`.
    pub fn witten_signature(q_trunc: i64) -> Self {
        let mut factors = Vec::new();
        for n in 1..=q_trunc {
            factors.push(Self::SymmetricT { q_weight: n });
            factors.push(Self::LambdaT {
                sign: 1,
                q_weight: n,
            });
        }
        Self::Tensor(factors)
    }

    /// `⊗_{n odd} Λ_{-q^n} TM ⊗ ⊗_{n even} S_{q^n} TM`, through `n <= q_trunc`.
    pub fn witten_dirac(q_trunc: i64) -> Self {
        Self::Tensor(
            (1..=q_trunc)
                .map(|n| {
                    if n % 2 == 1 {
                        Self::LambdaT {
                            sign: -1,
                            q_weight: n,
                        }
                    } else {
                        Self::SymmetricT { q_weight: n }
                    }
                })
                .collect(),
        )
    }
}

impl fmt::Display for BundleExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |items: &[BundleExpression], sep: &str| {
            items
                .iter()
                .map(|e| match e {
                    Self::Sum(_) => format!("({e})"),
                    _ => e.to_string(),
                })
                .collect::<Vec<_>>()
                .join(sep)
        };
        match self {
            Self::Trivial => f.write_str("1"),
            Self::Tangent => f.write_str("TM"),
            Self::Exterior(k) => write!(f, "L^{k}"),
            Self::Symmetric(k) => write!(f, "S^{k}"),
            Self::Adams(m) => write!(f, "psi^{m}"),
            Self::Sum(items) if items.is_empty() => f.write_str("0"),
            Self::Sum(items) => f.write_str(&join(items, " + ")),
            Self::Tensor(items) if items.is_empty() => f.write_str("1"),
            Self::Tensor(items) => f.write_str(&join(items, " * ")),
            Self::Scale(c, e) => write!(f, "{}*({e})", fmt_rational(c)),
            Self::QShift(w, e) => write!(f, "q^{w}*({e})"),
            Self::LambdaT { sign, q_weight } => {
                write!(
                    f,
                    "Lambda_{{{}q^{q_weight}}}",
                    if *sign < 0 { "-" } else { "" }
                )
            }
            Self::SymmetricT { q_weight } => write!(f, "Sym_{{q^{q_weight}}}"),
        }
    }
}

impl FromStr for BundleExpression {
    type Err = BundleError;

    /// Parses sums (`+`) of tensor products (`*`) of `1`, `TM`, `L^k`,
    /// `S^k`, `psi^m` and integer multiplicities, e.g. `L^2 + TM` or `2*TM*TM`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || BundleError::Parse(s.to_string());
        let power = |tok: &str, prefix: &str| -> Option<u32> {
            tok.strip_prefix(prefix).and_then(|r| r.parse().ok())
        };
        let mut terms = Vec::new();
        for term in s.split('+') {
            let mut factors = Vec::new();
            let mut coeff = 1i64;
            for tok in term.split('*') {
                let tok = tok.trim();
                let factor = if tok == "TM" {
                    Self::Tangent
                } else if let Some(k) = power(tok, "L^") {
                    Self::Exterior(k)
                } else if let Some(k) = power(tok, "S^") {
                    Self::Symmetric(k)
                } else if let Some(m) = power(tok, "psi^").filter(|&m| m >= 1) {
                    Self::Adams(m)
                } else if let Ok(c) = tok.parse::<i64>() {
                    coeff = coeff.checked_mul(c).ok_or_else(err)?;
                    continue;
                } else {
                    return Err(err());
                };
                factors.push(factor);
            }
            let body = if factors.is_empty() {
                Self::Trivial
            } else {
                Self::Tensor(factors)
            };
            terms.push(if coeff == 1 {
                body
            } else {
                Self::Scale(rat_int(coeff), Box::new(body))
            });
        }
        Ok(if terms.len() == 1 {
            terms.pop().expect("one term")
        } else {
            Self::Sum(terms)
        })
    }
}

/// `ch(ψ^m V) = Σ_i (e^{m x_i} + e^{-m x_i})` for a real bundle with
/// `n_roots` root pairs, `= 2n + Σ_j 2 m^{2j}/(2j)! s_j`.
pub fn adams_character(
    pvar: fn(u32) -> ClassVar,
    n_roots: u32,
    m: u32,
    bound: u32,
) -> ClassPoly<Rational> {
    let top = (bound / 2) as usize;
    let sums = squared_power_sums(pvar, n_roots, top, bound);
    let mut out = ClassPoly::constant(rat(2 * n_roots as i64, 1), bound);
    for j in 1..=top {
        let c = rat(2, 1) * num_traits::pow(rat(m as i64, 1), 2 * j) * inv_factorial(2 * j as u32);
        out = out.add(&sums[j - 1].scale_rational(&c));
    }
    out
}

/// Source of `ch(ψ^m V)` for the bundle playing the role of `TM`.
pub struct ChernContext<'a> {
    pub adams: &'a dyn Fn(u32) -> ClassPoly<Rational>,
    /// Degree bound, in root units.
    pub bound: u32,
    /// Coefficients are known below `q^{q_trunc + 1}`.
    pub q_trunc: i64,
}

impl ChernContext<'_> {
    fn lift(&self, p: &ClassPoly<Rational>) -> ClassPoly<QSeries> {
        let t = Some(self.q_trunc + 1);
        p.map(|c| QSeries::from_unit_terms(1, [(0, c.clone())], t))
    }

    fn q_monomial(&self, c: Rational, w: i64) -> QSeries {
        QSeries::from_unit_terms(1, [(w, c)], Some(self.q_trunc + 1))
    }

    /// `λ^0..λ^top` (or `σ^0..σ^top` when `symmetric`).
    fn powers(&self, top: u32, symmetric: bool) -> Vec<ClassPoly<Rational>> {
        let psi: Vec<ClassPoly<Rational>> = (1..=top).map(|m| (self.adams)(m)).collect();
        let mut out = vec![ClassPoly::one(self.bound)];
        for k in 1..=top as usize {
            let mut acc = ClassPoly::zero(self.bound);
            for i in 1..=k {
                let term = psi[i - 1].mul(&out[k - i]);
                acc = if symmetric || i % 2 == 1 {
                    acc.add(&term)
                } else {
                    acc.sub(&term)
                };
            }
            out.push(acc.scale_rational(&rat(1, k as i64)));
        }
        out
    }
}

/// The Chern character of `expr` as a polynomial in characteristic classes
/// with q-series coefficients.
pub fn bundle_chern_character(
    expr: &BundleExpression,
    ctx: &ChernContext<'_>,
) -> Result<ClassPoly<QSeries>, BundleError> {
    use BundleExpression as B;
    Ok(match expr {
        B::Trivial => ctx.lift(&ClassPoly::one(ctx.bound)),
        B::Tangent => ctx.lift(&(ctx.adams)(1)),
        B::Adams(m) => ctx.lift(&(ctx.adams)(*m)),
        B::Exterior(k) => ctx.lift(&ctx.powers(*k, false)[*k as usize]),
        B::Symmetric(k) => ctx.lift(&ctx.powers(*k, true)[*k as usize]),
        B::Sum(items) => {
            let mut acc = ctx.lift(&ClassPoly::zero(ctx.bound));
            for e in items {
                acc = acc.add(&bundle_chern_character(e, ctx)?);
            }
            acc
        }
        B::Tensor(items) => {
            let mut acc = ctx.lift(&ClassPoly::one(ctx.bound));
            for e in items {
                acc = acc.mul(&bundle_chern_character(e, ctx)?);
            }
            acc
        }
        B::Scale(c, e) => bundle_chern_character(e, ctx)?.scale_rational(c),
        B::QShift(w, e) => {
            let inner = bundle_chern_character(e, ctx)?;
            inner.map(|s| {
                s.shift(QExponent::from_integer(*w))
                    .truncate(QExponent::from_integer(ctx.q_trunc + 1))
            })
        }
        B::LambdaT { q_weight, .. } | B::SymmetricT { q_weight } if *q_weight <= 0 => {
            return Err(BundleError::NonTruncating(expr.to_string()));
        }
        B::LambdaT { sign, q_weight } => {
            let top = (ctx.q_trunc / q_weight) as u32;
            let lambdas = ctx.powers(top, false);
            let mut acc = ctx.lift(&ClassPoly::zero(ctx.bound));
            for (k, l) in lambdas.iter().enumerate() {
                let c = num_traits::pow(rat(*sign, 1), k);
                let t = ctx.q_monomial(c, q_weight * k as i64);
                acc = acc.add(&ctx.lift(l).scale(&t));
            }
            acc
        }
        B::SymmetricT { q_weight } => {
            let top = (ctx.q_trunc / q_weight) as u32;
            let sigmas = ctx.powers(top, true);
            let mut acc = ctx.lift(&ClassPoly::zero(ctx.bound));
            for (k, s) in sigmas.iter().enumerate() {
                let t = ctx.q_monomial(rat(1, 1), q_weight * k as i64);
                acc = acc.add(&ctx.lift(s).scale(&t));
            }
            acc
        }
    })
}
