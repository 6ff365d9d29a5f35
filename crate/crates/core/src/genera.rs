//! Non-equivariant genera: both cusp expansions of the elliptic genus,
//! twisted indices and pole orders.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classes::{
    adams_character, ahat_series, bundle_chern_character, multiplicative_class, pair,
    signature_constant_series, signature_kernel, taylor_x_over_f, BundleError, BundleExpression,
    ChernContext, ClassPoly, ClassVar, Monomial, Partition, QSeries,
};
use crate::ring::{Rational, Ring};
use crate::series::{fmt_exponent, QExponent};

/// Which expansion of the elliptic genus.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Cusp {
    /// Witten's twisted-signature series `sign(q, LM)`.
    #[serde(rename = "sign")]
    Signature,
    /// The twisted-Dirac series `Φ_0(M)` with prefactor `q^{-dim/8}`.
    #[serde(rename = "ahat")]
    AHat,
}

impl fmt::Display for Cusp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Cusp::Signature => "signature",
            Cusp::AHat => "ahat",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenusError {
    #[error("manifold `{name}`: dimension must be positive")]
    ZeroDimension { name: String },
    #[error("manifold `{name}`: Pontryagin number `{key}` has weight {weight}, expected dim/4 = {expected}")]
    PartitionWeight {
        name: String,
        key: String,
        weight: u32,
        expected: u32,
    },
    #[error("manifold `{name}`: dimension {dim} is not divisible by 4 but Pontryagin numbers were given")]
    NumbersInWrongDimension { name: String, dim: u32 },
    #[error(transparent)]
    Bundle(#[from] BundleError),
}

/// The non-equivariant input: dimension, Spin flag and Pontryagin numbers.
#[derive(Clone, Debug, PartialEq)]
pub struct ManifoldDescriptor {
    pub name: String,
    pub dim: u32,
    pub spin: bool,
    pub pontryagin_numbers: BTreeMap<Partition, i64>,
    pub signature: Option<i64>,
    /// Asserts `H^{4i}(M; Q) = 0` for `0 < i <= r`.
    pub cohomology_vanishing_r: Option<u32>,
}

impl ManifoldDescriptor {
    pub fn new(name: &str, dim: u32, spin: bool, numbers: &[(&str, i64)]) -> Self {
        Self {
            name: name.to_string(),
            dim,
            spin,
            pontryagin_numbers: numbers
                .iter()
                .map(|(k, v)| (k.parse().expect("partition key"), *v))
                .collect(),
            signature: None,
            cohomology_vanishing_r: None,
        }
    }

    pub fn validate(&self) -> Result<(), GenusError> {
        if self.dim == 0 {
            return Err(GenusError::ZeroDimension {
                name: self.name.clone(),
            });
        }
        if !self.dim.is_multiple_of(4) {
            if !self.pontryagin_numbers.is_empty() {
                return Err(GenusError::NumbersInWrongDimension {
                    name: self.name.clone(),
                    dim: self.dim,
                });
            }
            return Ok(());
        }
        for p in self.pontryagin_numbers.keys() {
            if p.weight() != self.dim / 4 {
                return Err(GenusError::PartitionWeight {
                    name: self.name.clone(),
                    key: p.to_string(),
                    weight: p.weight(),
                    expected: self.dim / 4,
                });
            }
        }
        Ok(())
    }

    /// Number of formal root pairs, `dim/2`.
    pub fn n_roots(&self) -> u32 {
        self.dim / 2
    }

    /// The Pontryagin number of a monomial in the ambient classes; absent entries are zero.
    pub fn number(&self, m: &Monomial) -> Option<i64> {
        let p = Partition::from_monomial(m)?;
        Some(self.pontryagin_numbers.get(&p).copied().unwrap_or(0))
    }

    /// Pairs a class polynomial with the fundamental class.
    pub fn pair<R: Ring>(&self, poly: &ClassPoly<R>) -> R {
        pair(poly, self.n_roots(), |m| self.number(m))
            .expect("ambient monomials always have a value")
    }
}

/// A genus expansion at one cusp.
#[derive(Clone, Debug, PartialEq)]
pub struct GenusExpansion {
    pub cusp: Cusp,
    pub series: QSeries,
}

impl GenusExpansion {
    /// The exponent below which all coefficients are known.
    pub fn achieved_order(&self) -> Option<QExponent> {
        self.series.trunc()
    }

    /// True when every known coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.series.terms().all(|(_, c)| c.is_integer())
    }

    pub fn coeff(&self, e: QExponent) -> Option<Rational> {
        self.series.coeff(e)
    }
}

/// `-(least exponent with nonzero coefficient)`, or vanishing to the known order.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PoleOrder {
    Vanishes { to: Option<QExponent> },
    Order(QExponent),
}

impl PoleOrder {
    /// True when the pole order is strictly below `bound` (vanishing always is).
    pub fn is_below(&self, bound: QExponent) -> bool {
        match self {
            PoleOrder::Vanishes { .. } => true,
            PoleOrder::Order(o) => *o < bound,
        }
    }
}

impl fmt::Display for PoleOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PoleOrder::Vanishes { to: Some(t) } => {
                write!(f, "vanishes (to order q^{{{}}})", fmt_exponent(*t))
            }
            PoleOrder::Vanishes { to: None } => f.write_str("vanishes"),
            PoleOrder::Order(o) => f.write_str(&fmt_exponent(*o)),
        }
    }
}

pub fn pole_order(g: &GenusExpansion) -> PoleOrder {
    series_pole_order(&g.series)
}

pub fn series_pole_order(s: &QSeries) -> PoleOrder {
    match s.valuation() {
        None => PoleOrder::Vanishes { to: s.trunc() },
        Some(v) => PoleOrder::Order(-v),
    }
}

fn leading_exponent(m: &ManifoldDescriptor, cusp: Cusp) -> QExponent {
    match cusp {
        Cusp::Signature => QExponent::from_integer(0),
        Cusp::AHat => QExponent::new(-(m.dim as i64), 8),
    }
}

/// Rounds the result up to its honest precision `lead + q_trunc + 1`.
fn with_precision(s: QSeries, m: &ManifoldDescriptor, cusp: Cusp, q_trunc: i64) -> QSeries {
    let t = leading_exponent(m, cusp) + QExponent::from_integer(q_trunc + 1);
    s.truncate(t)
}

fn kernel_genus(
    m: &ManifoldDescriptor,
    cusp: Cusp,
    q_trunc: i64,
) -> Result<GenusExpansion, GenusError> {
    m.validate()?;
    let zero = QSeries::zero_to(
        8,
        leading_exponent(m, cusp) + QExponent::from_integer(q_trunc + 1),
    );
    if !m.dim.is_multiple_of(4) {
        return Ok(GenusExpansion { cusp, series: zero });
    }
    let n = m.n_roots();
    let kernel = match cusp {
        Cusp::Signature => signature_kernel(q_trunc, n as usize),
        Cusp::AHat => taylor_x_over_f(q_trunc, n as usize),
    }
    .expect("kernel series are even");
    let class = multiplicative_class(&kernel, ClassVar::P, n, n);
    let value = m.pair(&class).series_add(&zero);
    Ok(GenusExpansion {
        cusp,
        series: with_precision(value, m, cusp, q_trunc),
    })
}

/// Witten's series `sign(q, LM) = sign(M) + 2 sign(M, TM) q + ...`, known through `q^{q_trunc}`.
pub fn witten_series(m: &ManifoldDescriptor, q_trunc: i64) -> Result<GenusExpansion, GenusError> {
    kernel_genus(m, Cusp::Signature, q_trunc)
}

/// `Φ_0(M) = q^{-dim/8} (Â(M) - Â(M,TM) q + Â(M, Λ²TM + TM) q² - ...)`, known through `q^{-dim/8 + q_trunc}`.
pub fn ahat_cusp_series(
    m: &ManifoldDescriptor,
    q_trunc: i64,
) -> Result<GenusExpansion, GenusError> {
    kernel_genus(m, Cusp::AHat, q_trunc)
}

/// The rational multiplicative class of a cusp: `Â` or `∏ x_i / tanh(x_i/2)`.
pub fn cusp_class(m: &ManifoldDescriptor, cusp: Cusp) -> ClassPoly<Rational> {
    let n = m.n_roots();
    let q = match cusp {
        Cusp::Signature => signature_constant_series(n as usize),
        Cusp::AHat => ahat_series(n as usize),
    };
    multiplicative_class(&q, ClassVar::P, n, n)
}

/// `⟨ch(E) · class, [M]⟩` as a q-series, for a q-graded bundle `E` known through `q^{q_trunc}`.
pub fn twisted_index_series(
    m: &ManifoldDescriptor,
    expr: &BundleExpression,
    cusp: Cusp,
    q_trunc: i64,
) -> Result<QSeries, GenusError> {
    m.validate()?;
    if !m.dim.is_multiple_of(4) {
        return Ok(QSeries::zero_to(1, QExponent::from_integer(q_trunc + 1)));
    }
    let n = m.n_roots();
    let adams = |k: u32| adams_character(ClassVar::P, n, k, n);
    let ctx = ChernContext {
        adams: &adams,
        bound: n,
        q_trunc,
    };
    let ch = bundle_chern_character(expr, &ctx)?;
    let class = cusp_class(m, cusp).map(QSeries::from_rational);
    Ok(m.pair(&ch.mul(&class)))
}

/// The index `⟨ch(E) · class, [M]⟩` of the `q^0` layer of `E`.
pub fn twisted_index(
    m: &ManifoldDescriptor,
    expr: &BundleExpression,
    cusp: Cusp,
) -> Result<Rational, GenusError> {
    let s = twisted_index_series(m, expr, cusp, 0)?;
    Ok(s.coeff(QExponent::from_integer(0)).expect("q^0 is known"))
}

/// The same expansions computed as twisted indices of the Witten bundles;
/// an independent route used to cross-check the kernel computation.
pub fn genus_via_bundles(
    m: &ManifoldDescriptor,
    cusp: Cusp,
    q_trunc: i64,
) -> Result<GenusExpansion, GenusError> {
    let (expr, shift) = match cusp {
        Cusp::Signature => (
            BundleExpression::witten_signature(q_trunc),
            QExponent::from_integer(0),
        ),
        Cusp::AHat => (
            BundleExpression::witten_dirac(q_trunc),
            leading_exponent(m, cusp),
        ),
    };
    let s = twisted_index_series(m, &expr, cusp, q_trunc)?.shift(shift);
    Ok(GenusExpansion {
        cusp,
        series: with_precision(s, m, cusp, q_trunc),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    fn k3() -> ManifoldDescriptor {
        ManifoldDescriptor::new("K3_type", 4, true, &[("p1", -48)])
    }

    fn hp2() -> ManifoldDescriptor {
        ManifoldDescriptor::new("HP2_type", 8, true, &[("p1.p1", 4), ("p2", 7)])
    }

    fn at(g: &GenusExpansion, n: i64, d: i64) -> Rational {
        g.coeff(QExponent::new(n, d)).unwrap()
    }

    #[test]
    fn k3_values() {
        let w = witten_series(&k3(), 3).unwrap();
        assert_eq!(at(&w, 0, 1), rat(-16, 1));
        let a = ahat_cusp_series(&k3(), 3).unwrap();
        assert_eq!(a.series.valuation(), Some(QExponent::new(-1, 2)));
        assert_eq!(at(&a, -1, 2), rat(2, 1));
        assert_eq!(pole_order(&a), PoleOrder::Order(QExponent::new(1, 2)));
    }

    #[test]
    fn hp2_values() {
        let w = witten_series(&hp2(), 3).unwrap();
        assert_eq!(at(&w, 0, 1), rat(1, 1));
        let a = ahat_cusp_series(&hp2(), 3).unwrap();
        assert_eq!(at(&a, -1, 1), rat(0, 1));
    }

    #[test]
    fn routes_agree() {
        for m in [k3(), hp2()] {
            for cusp in [Cusp::Signature, Cusp::AHat] {
                let a = kernel_genus(&m, cusp, 3).unwrap();
                let b = genus_via_bundles(&m, cusp, 3).unwrap();
                assert_eq!(a, b, "{} {cusp}", m.name);
            }
        }
    }

    #[test]
    fn sphere_vanishes() {
        let s4 = ManifoldDescriptor::new("S4", 4, true, &[]);
        let a = ahat_cusp_series(&s4, 4).unwrap();
        assert!(matches!(pole_order(&a), PoleOrder::Vanishes { .. }));
    }

    #[test]
    fn odd_dimension_is_zero() {
        let m = ManifoldDescriptor::new("S3", 3, true, &[]);
        assert!(witten_series(&m, 2).unwrap().series.is_zero());
    }

    #[test]
    fn bad_weight_rejected() {
        let m = ManifoldDescriptor::new("bad", 8, true, &[("p1", 3)]);
        assert!(matches!(
            witten_series(&m, 2),
            Err(GenusError::PartitionWeight { .. })
        ));
    }
}
