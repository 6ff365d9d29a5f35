//! Circle actions: fixed-point data, rotation invariants, Lefschetz local
//! data, the rigidity check and evaluation at torsion points.
//!
//! The character variable is `μ = λ^{1/2}`, `λ = e^{z}`. A fixed component
//! `Y` carries signed rotation weights `w` with multiplicities `d_w`; `ν_w`
//! is the complex normal summand on which the circle acts with weight `w`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::classes::mseq::chern_power_sums;
use crate::classes::{
    multiplicative_class, pair, taylor_x_over_f, CharacteristicPowerSeries, ClassPoly, ClassVar,
    Monomial, Partition, QSeries, XSeries,
};
use crate::cyclotomic::CyclotomicElement;
use crate::genera::{ahat_cusp_series, GenusError, ManifoldDescriptor};
use crate::involution::SigmaComponentDescriptor;
use crate::poly::QPoly;
use crate::ratfn::RationalFunction;
use crate::ring::{inv_factorial, rat, Rational, Ring};
use crate::series::{PuiseuxSeries, QExponent};

/// A q-series whose coefficients are rational functions of `μ`.
pub type MuSeries = PuiseuxSeries<RationalFunction>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EquivariantError {
    #[error("component `{component}`: rotation number 0 is not allowed")]
    ZeroRotation { component: String },
    #[error("component `{component}`: rotation number {k} listed twice")]
    DuplicateRotation { component: String, k: i64 },
    #[error("component `{component}`: multiplicity of rotation number {k} must be positive")]
    ZeroMultiplicity { component: String, k: i64 },
    #[error("component `{component}`: dim Y + 2·Σ d_k = {got}, expected dim M = {expected}")]
    Bookkeeping {
        component: String,
        got: u32,
        expected: u32,
    },
    #[error("component `{component}`: dimension {dim} must be even")]
    OddDimension { component: String, dim: u32 },
    #[error("component `{component}`: orientation sign must be +1 or -1, got {sign}")]
    BadOrientation { component: String, sign: i64 },
    #[error("component `{component}`: mixed characteristic number `{monomial}` is not a top-degree class of this component")]
    BadMonomial { component: String, monomial: String },
    #[error("component `{component}`: mixed characteristic number for `{monomial}` is missing")]
    MissingMonomial { component: String, monomial: String },
    #[error("the circle action has no fixed components")]
    EmptyComponents,
    #[error("order must be at least 2, got {0}")]
    BadOrder(i64),
    #[error(
        "coefficient of q^{exponent} has a pole at μ = ζ_{order}^{power}; sum the local data first"
    )]
    PoleAtTorsion {
        exponent: String,
        order: u64,
        power: i64,
    },
    #[error(transparent)]
    Genus(#[from] GenusError),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct RotationDatum {
    /// Signed rotation weight.
    pub k: i64,
    /// Complex dimension of `ν_k`.
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FixedComponentDescriptor {
    pub name: String,
    pub dim: u32,
    pub rotation: Vec<RotationDatum>,
    /// Top-degree characteristic numbers of `Y` in `pY_j` and `c_i(ν_k)`.
    pub mixed_char_numbers: BTreeMap<Monomial, i64>,
    pub orientation_sign: i64,
}

impl FixedComponentDescriptor {
    pub fn point(name: &str, sign: i64, rotation: &[(i64, u32)]) -> Self {
        Self {
            name: name.to_string(),
            dim: 0,
            rotation: rotation
                .iter()
                .map(|&(k, multiplicity)| RotationDatum { k, multiplicity })
                .collect(),
            mixed_char_numbers: BTreeMap::new(),
            orientation_sign: sign,
        }
    }

    /// Real codimension `2 Σ d_k`.
    pub fn codim(&self) -> u32 {
        2 * self.rotation.iter().map(|r| r.multiplicity).sum::<u32>()
    }

    fn err_bad(&self, m: &Monomial) -> EquivariantError {
        EquivariantError::BadMonomial {
            component: self.name.clone(),
            monomial: m.to_string(),
        }
    }

    pub fn validate(&self, dim_m: u32) -> Result<(), EquivariantError> {
        let component = self.name.clone();
        if self.orientation_sign != 1 && self.orientation_sign != -1 {
            return Err(EquivariantError::BadOrientation {
                component,
                sign: self.orientation_sign,
            });
        }
        if !self.dim.is_multiple_of(2) {
            return Err(EquivariantError::OddDimension {
                component,
                dim: self.dim,
            });
        }
        let mut seen = Vec::new();
        for r in &self.rotation {
            if r.k == 0 {
                return Err(EquivariantError::ZeroRotation { component });
            }
            if r.multiplicity == 0 {
                return Err(EquivariantError::ZeroMultiplicity { component, k: r.k });
            }
            if seen.contains(&r.k) {
                return Err(EquivariantError::DuplicateRotation { component, k: r.k });
            }
            seen.push(r.k);
        }
        let got = self.dim + self.codim();
        if got != dim_m {
            return Err(EquivariantError::Bookkeeping {
                component,
                got,
                expected: dim_m,
            });
        }
        let top = self.dim / 2;
        for m in self.mixed_char_numbers.keys() {
            let ok = m.degree() == top
                && m.all_vars(|v| match *v {
                    ClassVar::PY(j) => 4 * j <= self.dim,
                    ClassVar::C { weight, index } => self
                        .rotation
                        .iter()
                        .any(|r| r.k == weight && index <= r.multiplicity),
                    _ => false,
                });
            if !ok {
                return Err(self.err_bad(m));
            }
        }
        Ok(())
    }

    fn number(&self, m: &Monomial) -> Result<i64, EquivariantError> {
        if m.is_one() {
            return Ok(1);
        }
        self.mixed_char_numbers
            .get(m)
            .copied()
            .ok_or_else(|| EquivariantError::MissingMonomial {
                component: self.name.clone(),
                monomial: m.to_string(),
            })
    }
}

/// A manifold with a circle action described by its fixed-point data.
#[derive(Clone, Debug, PartialEq)]
pub struct S1ManifoldDescriptor {
    pub underlying: ManifoldDescriptor,
    pub lifts_to_spin: bool,
    pub components: Vec<FixedComponentDescriptor>,
    /// Fixed components of the involution `σ = -1 ∈ S¹`, when supplied directly.
    pub sigma_components: Option<Vec<SigmaComponentDescriptor>>,
}

impl S1ManifoldDescriptor {
    pub fn validate(&self) -> Result<(), EquivariantError> {
        self.underlying.validate()?;
        for c in &self.components {
            c.validate(self.underlying.dim)?;
        }
        Ok(())
    }

    /// Spin manifold whose action lifts to the Spin structure.
    pub fn spin_action(&self) -> bool {
        self.underlying.spin && self.lifts_to_spin
    }

    /// True when every fixed component is a point.
    pub fn isolated(&self) -> bool {
        !self.components.is_empty() && self.components.iter().all(|c| c.dim == 0)
    }

    /// The trivial action: a single fixed component equal to `M`.
    pub fn trivial_action(m: &ManifoldDescriptor) -> Self {
        let parts = if m.dim.is_multiple_of(4) {
            Partition::all_of(m.dim / 4)
        } else {
            Vec::new()
        };
        let numbers = parts
            .into_iter()
            .map(|p| {
                let v = m.pontryagin_numbers.get(&p).copied().unwrap_or(0);
                (
                    Monomial::from_factors(p.parts().iter().map(|&j| (ClassVar::PY(j), 1))),
                    v,
                )
            })
            .collect();
        Self {
            underlying: m.clone(),
            lifts_to_spin: true,
            components: vec![FixedComponentDescriptor {
                name: m.name.clone(),
                dim: m.dim,
                rotation: Vec::new(),
                mixed_char_numbers: numbers,
                orientation_sign: 1,
            }],
            sigma_components: None,
        }
    }
}

/// `(α, k̃)` with `α k ≡ k̃ (mod o)` and `0 <= k̃ <= o/2`; ties go to `α = +1`.
pub fn normalize_rotation(k: i64, o: i64) -> (i64, i64) {
    assert!(
        o >= 2 && k != 0,
        "normalize_rotation needs o >= 2 and k != 0"
    );
    let r = k.rem_euclid(o);
    if 2 * r <= o {
        (1, r)
    } else {
        (-1, o - r)
    }
}

fn check_order(o: i64) -> Result<(), EquivariantError> {
    if o < 2 {
        Err(EquivariantError::BadOrder(o))
    } else {
        Ok(())
    }
}

/// `m_o(Y) = (Σ d_k k̃) / o`.
pub fn m_number(y: &FixedComponentDescriptor, o: i64) -> Result<Rational, EquivariantError> {
    check_order(o)?;
    let s: i64 = y
        .rotation
        .iter()
        .map(|r| r.multiplicity as i64 * normalize_rotation(r.k, o).1)
        .sum();
    Ok(rat(s, o))
}

/// `m_o = min_Y m_o(Y)`.
pub fn m_number_global(m: &S1ManifoldDescriptor, o: i64) -> Result<Rational, EquivariantError> {
    let mut best: Option<Rational> = None;
    for y in &m.components {
        let v = m_number(y, o)?;
        best = Some(match best {
            Some(b) if b <= v => b,
            _ => v,
        });
    }
    best.ok_or(EquivariantError::EmptyComponents)
}

/// Codimension of the `σ`-fixed component through `Y`: `2 Σ_{k̃ != 0} d_k`.
pub fn sigma_codim_at(y: &FixedComponentDescriptor, o: i64) -> u32 {
    2 * y
        .rotation
        .iter()
        .filter(|r| normalize_rotation(r.k, o).1 != 0)
        .map(|r| r.multiplicity)
        .sum::<u32>()
}

/// Minimum over fixed components of [`sigma_codim_at`]: an upper bound for
/// `codim M^σ`, valid over the `σ`-fixed components that meet `M^{S¹}`.
pub fn sigma_codim_bound(m: &S1ManifoldDescriptor, o: i64) -> Result<u32, EquivariantError> {
    check_order(o)?;
    m.components
        .iter()
        .map(|y| sigma_codim_at(y, o))
        .min()
        .ok_or(EquivariantError::EmptyComponents)
}

fn mu_series(c: RationalFunction, e: i64, q_trunc: i64) -> MuSeries {
    MuSeries::from_unit_terms(1, [(e, c)], Some(q_trunc + 1))
}

/// `1 - q^n μ^{mu_exp} e^{s x}`.
fn linear_factor(n: i64, mu_exp: i64, s: i64, top: usize, q_trunc: i64) -> XSeries<MuSeries> {
    XSeries::from_fn(top, |i| {
        let c = inv_factorial(i as u32) * num_traits::pow(rat(s, 1), i);
        let mut terms = vec![(n, RationalFunction::mu_power(-c, mu_exp))];
        if i == 0 {
            terms.push((0, RationalFunction::one()));
        }
        MuSeries::from_unit_terms(1, terms, Some(q_trunc + 1))
    })
}

/// `1 / f(q, x + w z)` as a series in `x`, where `e^{z/2} = μ`.
pub fn normal_factor(w: i64, top: usize, q_trunc: i64) -> XSeries<MuSeries> {
    let g = XSeries::<RationalFunction>::from_fn(top, |i| {
        let c = inv_factorial(i as u32) * num_traits::pow(rat(1, 2), i);
        let sign = if i % 2 == 0 { rat(1, 1) } else { rat(-1, 1) };
        RationalFunction::mu_power(c.clone(), w).sub_ref(&RationalFunction::mu_power(c * sign, -w))
    });
    let ginv = g.invert().expect("μ^w - μ^{-w} is a unit");
    let mut acc = ginv.map(|r| mu_series(r.clone(), 0, q_trunc));
    for n in 1..=q_trunc {
        let pair = linear_factor(n, 2 * w, 1, top, q_trunc).mul(&linear_factor(
            n,
            -2 * w,
            -1,
            top,
            q_trunc,
        ));
        let pair = if n % 2 == 1 {
            pair
        } else {
            pair.invert().expect("factor is 1 + O(q)")
        };
        acc = acc.mul(&pair);
    }
    acc.map(|c| c.shift(QExponent::new(-1, 4)))
}

/// `∏_{j=1}^{d} h(x_j)` in the Chern classes of `ν_w`, for a series `h` in one root.
fn normal_class(h: &XSeries<MuSeries>, w: i64, d: u32, bound: u32) -> ClassPoly<MuSeries> {
    let h0 = h.coeff(0).clone();
    let inv = h0.try_inv().expect("unit constant term");
    let logs = h.scale(&inv).log();
    let sums = chern_power_sums(w, d, bound as usize, bound);
    let mut exponent = ClassPoly::zero(bound);
    for i in 1..=bound as usize {
        exponent = exponent.add(
            &sums[i - 1]
                .map(MuSeries::from_rational)
                .scale(logs.coeff(i)),
        );
    }
    exponent.exp().scale(&h0.pow(d))
}

/// The Lefschetz local datum
/// `μ_Y = ε ⟨∏ x_i/f(q,x_i) · ∏_{k,j} 1/f(q, x_{kj} + k z), [Y]⟩`.
pub fn local_datum(
    y: &FixedComponentDescriptor,
    q_trunc: i64,
) -> Result<MuSeries, EquivariantError> {
    for r in &y.rotation {
        if r.k == 0 {
            return Err(EquivariantError::ZeroRotation {
                component: y.name.clone(),
            });
        }
    }
    let n_y = y.dim / 2;
    let kernel = taylor_x_over_f(q_trunc, n_y as usize).expect("kernel is even");
    let kernel: CharacteristicPowerSeries<MuSeries> =
        kernel.map(|s| s.map_coeffs(|c| RationalFunction::constant(c.clone())));
    let mut class = multiplicative_class(&kernel, ClassVar::PY, n_y, n_y);
    for r in &y.rotation {
        let h = normal_factor(r.k, n_y as usize, q_trunc);
        class = class.mul(&normal_class(&h, r.k, r.multiplicity, n_y));
    }
    let mut missing = None;
    let value = pair(&class, n_y, |m| match y.number(m) {
        Ok(v) => Some(v),
        Err(e) => {
            missing.get_or_insert(e);
            None
        }
    });
    let value = match value {
        Ok(v) => v,
        Err(_) => return Err(missing.expect("pairing failure records the monomial")),
    };
    let lead = QExponent::new(-((y.dim + y.codim()) as i64), 8);
    let value = value.truncate(lead + QExponent::from_integer(q_trunc + 1));
    Ok(value.scale(&RationalFunction::from_int(y.orientation_sign)))
}

/// A summed equivariant expansion with a constancy flag per coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivariantExpansion {
    pub series: MuSeries,
    /// `(exponent, Some(c))` when the coefficient is the constant `c`.
    pub constancy: Vec<(QExponent, Option<Rational>)>,
}

impl EquivariantExpansion {
    pub fn new(series: MuSeries) -> Self {
        let constancy = series
            .terms()
            .map(|(e, c)| (e, ratfn_is_constant(c)))
            .collect();
        Self { series, constancy }
    }

    /// The series as rationals when every coefficient is constant.
    pub fn as_constant(&self) -> Option<QSeries> {
        self.series
            .try_map_coeffs(|c| ratfn_is_constant(c).ok_or(()))
            .ok()
    }
}

/// `Some(c)` when the rational function is the constant `c`.
pub fn ratfn_is_constant(r: &RationalFunction) -> Option<Rational> {
    r.as_constant()
}

/// `Σ_Y μ_Y`.
pub fn lefschetz_sum(
    m: &S1ManifoldDescriptor,
    q_trunc: i64,
) -> Result<EquivariantExpansion, EquivariantError> {
    if m.components.is_empty() {
        return Err(EquivariantError::EmptyComponents);
    }
    m.validate()?;
    let mut acc = MuSeries::zero();
    for y in &m.components {
        acc = acc.series_add(&local_datum(y, q_trunc)?);
    }
    Ok(EquivariantExpansion::new(acc))
}

#[derive(Clone, Debug, PartialEq)]
pub enum RigidityOutcome {
    /// Every coefficient is μ-constant.
    Constant {
        series: QSeries,
        expected: QSeries,
        matches: bool,
    },
    /// The first coefficient that depends on μ.
    NonConstant {
        exponent: QExponent,
        coefficient: RationalFunction,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct RigidityReport {
    /// Whether rigidity is asserted (Spin manifold, action lifts).
    pub asserted: bool,
    pub outcome: RigidityOutcome,
    pub expansion: EquivariantExpansion,
}

impl RigidityReport {
    pub fn passed(&self) -> bool {
        matches!(
            self.outcome,
            RigidityOutcome::Constant { matches: true, .. }
        )
    }
}

pub fn rigidity_check(
    m: &S1ManifoldDescriptor,
    q_trunc: i64,
) -> Result<RigidityReport, EquivariantError> {
    let expansion = lefschetz_sum(m, q_trunc)?;
    let outcome = match expansion.constancy.iter().find(|(_, c)| c.is_none()) {
        Some((e, _)) => RigidityOutcome::NonConstant {
            exponent: *e,
            coefficient: expansion.series.coeff(*e).expect("known coefficient"),
        },
        None => {
            let series = expansion.as_constant().expect("all coefficients constant");
            let expected = ahat_cusp_series(&m.underlying, q_trunc)?.series;
            let matches = series == expected;
            RigidityOutcome::Constant {
                series,
                expected,
                matches,
            }
        }
    };
    Ok(RigidityReport {
        asserted: m.spin_action(),
        outcome,
        expansion,
    })
}

/// Evaluates `r` at `μ = ζ_n^power`.
pub fn ratfn_eval_cyclotomic(
    r: &RationalFunction,
    n: u64,
    power: i64,
) -> Option<CyclotomicElement> {
    if let Some(c) = r.as_constant() {
        return Some(CyclotomicElement::rational(c));
    }
    let z = CyclotomicElement::zeta_power(n, power);
    let ev = |p: &QPoly| p.eval(&z);
    let den = ev(r.denominator());
    let inv = den.try_inv()?;
    Some(ev(r.numerator()).mul_ref(&inv))
}

/// Evaluates an equivariant expansion at the element of order `o`:
/// `λ ↦ ζ_o^power`, i.e. `μ ↦ ζ_{2o}^power`.
pub fn evaluate_at_torsion(
    e: &EquivariantExpansion,
    o: u64,
    power: i64,
) -> Result<PuiseuxSeries<CyclotomicElement>, EquivariantError> {
    let n = 2 * o;
    let mut bad = None;
    let out = e
        .series
        .try_map_coeffs(|c| ratfn_eval_cyclotomic(c, n, power).ok_or(()));
    match out {
        Ok(s) => Ok(s),
        Err(()) => {
            for (exp, c) in e.series.terms() {
                if ratfn_eval_cyclotomic(c, n, power).is_none() {
                    bad = Some(exp);
                    break;
                }
            }
            Err(EquivariantError::PoleAtTorsion {
                exponent: crate::series::fmt_exponent(bad.expect("some coefficient has a pole")),
                order: n,
                power,
            })
        }
    }
}

impl fmt::Display for RotationDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={} d={}", self.k, self.multiplicity)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf_leading(s: &MuSeries) -> RationalFunction {
        let v = s.valuation().unwrap();
        s.coeff(v).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize_rotation(5, 3), (-1, 1));
        assert_eq!(normalize_rotation(2, 4), (1, 2));
        assert_eq!(normalize_rotation(6, 3), (1, 0));
    }

    #[test]
    fn isolated_point_leading_terms() {
        let y = FixedComponentDescriptor::point("p", 1, &[(1, 1)]);
        let s = local_datum(&y, 2).unwrap();
        assert_eq!(s.valuation(), Some(QExponent::new(-1, 4)));
        assert_eq!(
            rf_leading(&s),
            RationalFunction::spin_difference(1).try_inv().unwrap()
        );
        let y2 = FixedComponentDescriptor::point("p", 1, &[(2, 1)]);
        let s2 = local_datum(&y2, 2).unwrap();
        assert_eq!(
            rf_leading(&s2),
            RationalFunction::spin_difference(2).try_inv().unwrap()
        );
    }

    #[test]
    fn sphere_rotation_cancels() {
        let m = S1ManifoldDescriptor {
            underlying: ManifoldDescriptor::new("S2", 2, true, &[]),
            lifts_to_spin: true,
            components: vec![
                FixedComponentDescriptor::point("N", 1, &[(1, 1)]),
                FixedComponentDescriptor::point("S", -1, &[(1, 1)]),
            ],
            sigma_components: None,
        };
        let e = lefschetz_sum(&m, 3).unwrap();
        assert!(e.series.is_zero());
    }

    #[test]
    fn trivial_action_matches_genus() {
        let k3 = ManifoldDescriptor::new("K3", 4, true, &[("p1", -48)]);
        let r = rigidity_check(&S1ManifoldDescriptor::trivial_action(&k3), 3).unwrap();
        assert!(r.passed(), "{:?}", r.outcome);
    }

    #[test]
    fn torsion_evaluation() {
        let r = RationalFunction::new(QPoly::from_ints(&[1]), QPoly::from_ints(&[-1, 0, 1]));
        let v = ratfn_eval_cyclotomic(&r, 4, 1).unwrap();
        assert_eq!(v.as_rational(), Some(rat(-1, 2)));
        assert!(ratfn_eval_cyclotomic(&r, 2, 0).is_none());
        let mu2 = RationalFunction::mu_power(rat(1, 1), 2);
        assert_eq!(
            ratfn_eval_cyclotomic(&mu2, 8, 1).unwrap(),
            CyclotomicElement::zeta_power(8, 2)
        );
    }

    #[test]
    fn m_numbers() {
        let y = FixedComponentDescriptor::point("p", 1, &[(1, 1), (2, 1)]);
        assert_eq!(m_number(&y, 4).unwrap(), rat(3, 4));
        let y = FixedComponentDescriptor::point("p", 1, &[(3, 1)]);
        assert_eq!(m_number(&y, 3).unwrap(), rat(0, 1));
    }
}
