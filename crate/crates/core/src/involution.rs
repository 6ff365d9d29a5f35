//! The involution `σ = -1 ∈ S¹`: twisted-signature local data at the
//! components `F` of `M^σ` and their sum.
//!
//! A component `F` has formal roots `±x_i` (tangent) and `±y_j` (normal).
//! The local datum of a bundle `E` is
//! `a_{F,E} = ⟨∏ Q(x_i) · ∏ Q(y_j)^{-1} · ch(E|F)(σ) · e(ν_F), [F]⟩`
//! with `Q(x) = x (1 + e^{-x}) / (1 - e^{-x})`; `σ` acts by `-1` on `ν_F`, so
//! `ch(ψ^m TM)(σ) = ch(ψ^m TF) + (-1)^m ch(ψ^m ν_F)`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::classes::{
    adams_character, bundle_chern_character, multiplicative_class, pair, signature_constant_series,
    signature_kernel, BundleError, BundleExpression, CharacteristicPowerSeries, ChernContext,
    ClassPoly, ClassVar, Monomial, QSeries,
};
use crate::equivariant::{EquivariantError, FixedComponentDescriptor, S1ManifoldDescriptor};
use crate::ring::{rat, Rational, Ring};
use crate::series::QExponent;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvolutionError {
    #[error("σ-component `{component}`: dim F + rank ν_F = {got}, expected dim M = {expected}")]
    Bookkeeping {
        component: String,
        got: u32,
        expected: u32,
    },
    #[error("σ-component `{component}`: dimension and normal rank must be even")]
    OddRank { component: String },
    #[error("σ-component `{component}`: `{monomial}` is not a top-degree class of this component")]
    BadMonomial { component: String, monomial: String },
    #[error("σ-component `{component}`: characteristic number for `{monomial}` is missing")]
    MissingMonomial { component: String, monomial: String },
    #[error(
        "σ-component `{component}`: euler_class_zero is set but `{monomial}` = {value} is nonzero"
    )]
    EulerInconsistent {
        component: String,
        monomial: String,
        value: i64,
    },
    #[error("σ-component `{component}`: the Euler class of a rank-0 normal bundle is 1, euler_class_zero cannot be set")]
    EulerOfEmptyBundle { component: String },
    #[error("component `{component}` has even rotation numbers; σ-fixed data must be supplied explicitly")]
    Unavailable { component: String },
    #[error(transparent)]
    Equivariant(#[from] EquivariantError),
    #[error(transparent)]
    Bundle(#[from] BundleError),
}

/// A component `F` of the fixed set of the involution.
#[derive(Clone, Debug, PartialEq)]
pub struct SigmaComponentDescriptor {
    pub name: String,
    pub dim: u32,
    /// Real rank of `ν_F`.
    pub normal_rank: u32,
    /// Top-degree numbers in `pF_j`, `pN_j` and the Euler class `e` of `ν_F`.
    pub mixed_char_numbers: BTreeMap<Monomial, i64>,
    pub euler_class_zero: bool,
}

impl SigmaComponentDescriptor {
    /// Builds a descriptor, fixing the degree of the Euler class from the normal rank.
    pub fn new(
        name: &str,
        dim: u32,
        normal_rank: u32,
        numbers: impl IntoIterator<Item = (Monomial, i64)>,
        euler_class_zero: bool,
    ) -> Self {
        let roots = normal_rank / 2;
        let mixed_char_numbers = numbers
            .into_iter()
            .map(|(m, v)| {
                let fixed = Monomial::from_factors(m.factors().iter().map(|&(var, e)| match var {
                    ClassVar::Euler { .. } => (ClassVar::Euler { roots }, e),
                    other => (other, e),
                }));
                (fixed, v)
            })
            .collect();
        Self {
            name: name.to_string(),
            dim,
            normal_rank,
            mixed_char_numbers,
            euler_class_zero,
        }
    }

    pub fn codim(&self) -> u32 {
        self.normal_rank
    }

    fn n_tangent(&self) -> u32 {
        self.dim / 2
    }

    fn n_normal(&self) -> u32 {
        self.normal_rank / 2
    }

    pub fn validate(&self, dim_m: u32) -> Result<(), InvolutionError> {
        let component = self.name.clone();
        if !self.dim.is_multiple_of(2) || !self.normal_rank.is_multiple_of(2) {
            return Err(InvolutionError::OddRank { component });
        }
        if self.dim + self.normal_rank != dim_m {
            return Err(InvolutionError::Bookkeeping {
                component,
                got: self.dim + self.normal_rank,
                expected: dim_m,
            });
        }
        if self.euler_class_zero && self.normal_rank == 0 {
            return Err(InvolutionError::EulerOfEmptyBundle { component });
        }
        for (m, &v) in &self.mixed_char_numbers {
            let ok = m.degree() == self.n_tangent()
                && m.all_vars(|var| match *var {
                    ClassVar::PF(_) => true,
                    ClassVar::PN(j) => j <= self.n_normal(),
                    ClassVar::Euler { .. } => self.normal_rank > 0,
                    _ => false,
                });
            if !ok {
                return Err(InvolutionError::BadMonomial {
                    component,
                    monomial: m.to_string(),
                });
            }
            if self.euler_class_zero && v != 0 && has_euler(m) {
                return Err(InvolutionError::EulerInconsistent {
                    component,
                    monomial: m.to_string(),
                    value: v,
                });
            }
        }
        Ok(())
    }

    fn number(&self, m: &Monomial) -> Option<i64> {
        if m.is_one() {
            return Some(1);
        }
        if self.euler_class_zero && has_euler(m) {
            return Some(self.mixed_char_numbers.get(m).copied().unwrap_or(0));
        }
        self.mixed_char_numbers.get(m).copied()
    }

    fn pair(&self, class: &ClassPoly<QSeries>) -> Result<QSeries, InvolutionError> {
        pair(class, self.n_tangent(), |m| self.number(m)).map_err(|e| {
            InvolutionError::MissingMonomial {
                component: self.name.clone(),
                monomial: e.0,
            }
        })
    }

    fn euler(&self) -> ClassPoly<QSeries> {
        let bound = self.n_tangent();
        if self.normal_rank == 0 {
            ClassPoly::one(bound)
        } else {
            ClassPoly::var(
                ClassVar::Euler {
                    roots: self.n_normal(),
                },
                bound,
            )
        }
    }
}

fn has_euler(m: &Monomial) -> bool {
    m.factors()
        .iter()
        .any(|(v, _)| matches!(v, ClassVar::Euler { .. }))
}

fn lift(p: &ClassPoly<Rational>, q_trunc: i64) -> ClassPoly<QSeries> {
    p.map(|c| QSeries::from_unit_terms(1, [(0, c.clone())], Some(q_trunc + 1)))
}

fn invert_char<R: Ring>(q: &CharacteristicPowerSeries<R>) -> CharacteristicPowerSeries<R> {
    let inv = q.in_u().invert().expect("unit constant term");
    CharacteristicPowerSeries::from_even_coeffs(inv.coeffs().to_vec()).expect("unit constant term")
}

/// `a_{F,E}` for every q-layer of `E` through `q^{q_trunc}`.
pub fn sigma_local_series(
    f: &SigmaComponentDescriptor,
    expr: &BundleExpression,
    q_trunc: i64,
) -> Result<QSeries, InvolutionError> {
    let (nt, nn) = (f.n_tangent(), f.n_normal());
    let bound = nt;
    let q = signature_constant_series(bound as usize);
    let tangent = multiplicative_class(&q, ClassVar::PF, nt, bound);
    let normal = multiplicative_class(&invert_char(&q), ClassVar::PN, nn, bound);
    let adams = |m: u32| {
        let t = adams_character(ClassVar::PF, nt, m, bound);
        let n = adams_character(ClassVar::PN, nn, m, bound);
        if m.is_multiple_of(2) {
            t.add(&n)
        } else {
            t.sub(&n)
        }
    };
    let ctx = ChernContext {
        adams: &adams,
        bound,
        q_trunc,
    };
    let ch = bundle_chern_character(expr, &ctx)?;
    let class = lift(&tangent.mul(&normal), q_trunc)
        .mul(&ch)
        .mul(&f.euler());
    f.pair(&class)
}

/// `a_{F,E}` at a single q-layer of `E`.
pub fn sigma_local_datum(
    f: &SigmaComponentDescriptor,
    expr: &BundleExpression,
    layer: i64,
) -> Result<Rational, InvolutionError> {
    let s = sigma_local_series(f, expr, layer.max(0))?;
    Ok(s.coeff(QExponent::from_integer(layer))
        .unwrap_or_else(|| rat(0, 1)))
}

/// The local datum of the Witten bundle `⊗ S_{q^n} TM ⊗ Λ_{q^n} TM` at `F`.
pub fn witten_local_series(
    f: &SigmaComponentDescriptor,
    q_trunc: i64,
) -> Result<QSeries, InvolutionError> {
    sigma_local_series(f, &BundleExpression::witten_signature(q_trunc), q_trunc)
}

/// The signature-cusp elliptic genus of the self-intersection `F ∘ F`,
/// `⟨∏ Q_W(x_i) · ∏ Q_W(y_j)^{-1} · e(ν_F), [F]⟩` with the full elliptic kernel `Q_W`.
pub fn self_intersection_series(
    f: &SigmaComponentDescriptor,
    q_trunc: i64,
) -> Result<QSeries, InvolutionError> {
    let (nt, nn) = (f.n_tangent(), f.n_normal());
    let q = signature_kernel(q_trunc, nt as usize).expect("kernel is even");
    let tangent = multiplicative_class(&q, ClassVar::PF, nt, nt);
    let normal = multiplicative_class(&invert_char(&q), ClassVar::PN, nn, nt);
    let class = tangent.mul(&normal).mul(&f.euler());
    let s = f.pair(&class)?;
    Ok(s.truncate(QExponent::from_integer(q_trunc + 1)))
}

/// Where the `σ`-fixed data came from.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SigmaSource {
    Supplied,
    /// Derived from circle-fixed components whose rotation numbers are all odd;
    /// covers only `σ`-components meeting `M^{S¹}`.
    Derived,
}

/// Monomials of degree `degree` in the given variables, with `e` to at most the first power.
fn monomials_of_degree(vars: &[ClassVar], degree: u32) -> Vec<Monomial> {
    fn rec(
        vars: &[ClassVar],
        degree: u32,
        acc: &mut Vec<(ClassVar, u32)>,
        out: &mut Vec<Monomial>,
    ) {
        if degree == 0 {
            out.push(Monomial::from_factors(acc.iter().copied()));
            return;
        }
        let Some((&v, rest)) = vars.split_first() else {
            return;
        };
        let d = v.degree();
        let max = if matches!(v, ClassVar::Euler { .. }) {
            1
        } else {
            degree / d.max(1)
        };
        for e in 0..=max {
            if e * d > degree {
                break;
            }
            acc.push((v, e));
            rec(rest, degree - e * d, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(vars, degree, &mut Vec::new(), &mut out);
    out
}

/// `Σ_l pN_l` for `ν = ⊕ ν_w`: `∏_w Σ_l (-1)^l Σ_{a+b=2l} (-1)^b c_a c_b`.
fn normal_pontryagin(y: &FixedComponentDescriptor, bound: u32) -> ClassPoly<Rational> {
    let c = |w: i64, i: u32| {
        if i == 0 {
            ClassPoly::one(bound)
        } else {
            ClassPoly::var(
                ClassVar::C {
                    weight: w,
                    index: i,
                },
                bound,
            )
        }
    };
    let mut total = ClassPoly::one(bound);
    for r in &y.rotation {
        let mut p = ClassPoly::zero(bound);
        for a in 0..=r.multiplicity {
            for b in 0..=r.multiplicity {
                if (a + b) % 2 != 0 {
                    continue;
                }
                let sign = if ((a + b) / 2 + b) % 2 == 0 { 1 } else { -1 };
                p = p.add(&c(r.k, a).mul(&c(r.k, b)).scale_rational(&rat(sign, 1)));
            }
        }
        total = total.mul(&p);
    }
    total
}

/// The `σ`-fixed component through a circle-fixed component all of whose
/// rotation numbers are odd: `F = Y`, `ν_F = ⊕ ν_k`.
pub fn derive_sigma_component(
    y: &FixedComponentDescriptor,
) -> Result<SigmaComponentDescriptor, InvolutionError> {
    if y.rotation.iter().any(|r| r.k % 2 == 0) {
        return Err(InvolutionError::Unavailable {
            component: y.name.clone(),
        });
    }
    let bound = y.dim / 2;
    let normal_rank = y.codim();
    let roots = normal_rank / 2;
    let pn = normal_pontryagin(y, bound);
    let mut euler = ClassPoly::one(bound);
    for r in &y.rotation {
        euler = euler.mul(&ClassPoly::var(
            ClassVar::C {
                weight: r.k,
                index: r.multiplicity,
            },
            bound,
        ));
    }
    let mut vars: Vec<ClassVar> = (1..=bound / 2).map(ClassVar::PF).collect();
    vars.extend((1..=(bound / 2).min(roots)).map(ClassVar::PN));
    if roots > 0 {
        vars.push(ClassVar::Euler { roots });
    }
    let mut numbers = BTreeMap::new();
    for m in monomials_of_degree(&vars, bound) {
        let value = m
            .factors()
            .iter()
            .fold(ClassPoly::one(bound), |acc, &(v, e)| {
                let base = match v {
                    ClassVar::PF(j) => ClassPoly::var(ClassVar::PY(j), bound),
                    ClassVar::PN(l) => pn.homogeneous(2 * l),
                    _ => euler.clone(),
                };
                acc.mul(&base.pow(e))
            });
        let paired = pair(&value, bound, |mm| {
            if mm.is_one() {
                Some(1)
            } else {
                y.mixed_char_numbers.get(mm).copied()
            }
        })
        .map_err(|e| {
            InvolutionError::Equivariant(EquivariantError::MissingMonomial {
                component: y.name.clone(),
                monomial: e.0,
            })
        })?;
        let v = paired * rat(y.orientation_sign, 1);
        assert!(
            v.is_integer(),
            "characteristic numbers of integral classes are integers"
        );
        numbers.insert(
            m,
            v.to_integer()
                .try_into()
                .expect("characteristic number fits in i64"),
        );
    }
    Ok(SigmaComponentDescriptor::new(
        &y.name,
        y.dim,
        normal_rank,
        numbers,
        false,
    ))
}

/// The `σ`-fixed components: supplied data when present, otherwise derived.
pub fn sigma_components(
    m: &S1ManifoldDescriptor,
) -> Result<(Vec<SigmaComponentDescriptor>, SigmaSource), InvolutionError> {
    if let Some(list) = &m.sigma_components {
        for f in list {
            f.validate(m.underlying.dim)?;
        }
        return Ok((list.clone(), SigmaSource::Supplied));
    }
    if m.components.is_empty() {
        return Err(EquivariantError::EmptyComponents.into());
    }
    let list = m
        .components
        .iter()
        .map(derive_sigma_component)
        .collect::<Result<Vec<_>, _>>()?;
    Ok((list, SigmaSource::Derived))
}

/// `Σ_F a_F` for the Witten bundle, known through `q^{q_trunc}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SigmaSum {
    pub series: QSeries,
    pub source: SigmaSource,
    pub per_component: Vec<(String, QSeries)>,
}

pub fn sigma_series_sum(
    m: &S1ManifoldDescriptor,
    q_trunc: i64,
) -> Result<SigmaSum, InvolutionError> {
    let (list, source) = sigma_components(m)?;
    let mut series = QSeries::zero_to(1, QExponent::from_integer(q_trunc + 1));
    let mut per_component = Vec::new();
    for f in &list {
        let a = witten_local_series(f, q_trunc)?;
        series = series.series_add(&a);
        per_component.push((f.name.clone(), a));
    }
    Ok(SigmaSum {
        series,
        source,
        per_component,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genera::{witten_series, ManifoldDescriptor};

    fn whole(m: &ManifoldDescriptor) -> SigmaComponentDescriptor {
        let numbers = m.pontryagin_numbers.iter().map(|(p, v)| {
            (
                Monomial::from_factors(p.parts().iter().map(|&j| (ClassVar::PF(j), 1))),
                *v,
            )
        });
        SigmaComponentDescriptor::new(&m.name, m.dim, 0, numbers, false)
    }

    #[test]
    fn whole_manifold_gives_witten_series() {
        let k3 = ManifoldDescriptor::new("K3", 4, true, &[("p1", -48)]);
        let f = whole(&k3);
        let w = witten_series(&k3, 3).unwrap().series;
        assert_eq!(witten_local_series(&f, 3).unwrap(), w);
        assert_eq!(self_intersection_series(&f, 3).unwrap(), w);
    }

    #[test]
    fn euler_zero_kills_datum() {
        let f = SigmaComponentDescriptor::new("F", 4, 4, [("pF1".parse().unwrap(), 5)], true);
        f.validate(8).unwrap();
        let s = witten_local_series(&f, 3).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn isolated_component_vanishes() {
        let f = SigmaComponentDescriptor::new("pt", 0, 4, [], false);
        assert!(witten_local_series(&f, 3).unwrap().is_zero());
        assert!(self_intersection_series(&f, 3).unwrap().is_zero());
    }

    #[test]
    fn middle_dimensional_component_is_constant() {
        let f = SigmaComponentDescriptor::new("F", 4, 4, [("e".parse().unwrap(), 1)], false);
        let s = witten_local_series(&f, 3).unwrap();
        assert_eq!(s.coeff(QExponent::from_integer(0)), Some(rat(1, 1)));
        assert_eq!(s.valuation(), Some(QExponent::from_integer(0)));
        assert_eq!(s.terms().count(), 1);
    }
}
