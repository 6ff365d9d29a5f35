//! Newton identities, multiplicative sequences and Kronecker pairings.

use thiserror::Error;

use crate::classes::charseries::CharacteristicPowerSeries;
use crate::classes::graded::{ClassPoly, ClassVar, Monomial};
use crate::ring::{rat, Rational, Ring};

/// Power sums `s_1..s_top` from elementary symmetric functions.
///
/// `elementary[j-1]` is `e_j`; missing entries are zero. Uses
/// `s_m = Σ_{i<m} (-1)^{i-1} e_i s_{m-i} + (-1)^{m-1} m e_m`.
pub fn power_sums<R: Ring>(
    elementary: &[ClassPoly<R>],
    top: usize,
    bound: u32,
) -> Vec<ClassPoly<R>> {
    let e = |j: usize| {
        elementary
            .get(j - 1)
            .cloned()
            .unwrap_or_else(|| ClassPoly::zero(bound))
    };
    let sign = |i: usize| if i % 2 == 1 { rat(1, 1) } else { rat(-1, 1) };
    let mut s: Vec<ClassPoly<R>> = Vec::with_capacity(top);
    for m in 1..=top {
        let mut acc = e(m)
            .scale_rational(&(sign(m) * rat(m as i64, 1)))
            .with_bound(bound);
        for i in 1..m {
            acc = acc.add(&e(i).mul(&s[m - i - 1]).scale_rational(&sign(i)));
        }
        s.push(acc);
    }
    s
}

/// Elementary symmetric functions `e_1..e_top` from power sums, the inverse of [`power_sums`].
pub fn elementary_from_power_sums<R: Ring>(
    sums: &[ClassPoly<R>],
    top: usize,
    bound: u32,
) -> Vec<ClassPoly<R>> {
    let mut e: Vec<ClassPoly<R>> = vec![ClassPoly::one(bound)];
    for m in 1..=top {
        let mut acc = ClassPoly::zero(bound);
        for i in 1..=m {
            let s = sums
                .get(i - 1)
                .cloned()
                .unwrap_or_else(|| ClassPoly::zero(bound));
            let term = e[m - i].mul(&s);
            acc = if i % 2 == 1 {
                acc.add(&term)
            } else {
                acc.sub(&term)
            };
        }
        e.push(acc.scale_rational(&rat(1, m as i64)));
    }
    e.remove(0);
    e
}

/// Power sums `Σ x_i^{2m}`, `m = 1..top`, of a real bundle with `n_roots`
/// root pairs `±x_i`, in the Pontryagin classes named by `pvar`.
pub fn squared_power_sums(
    pvar: fn(u32) -> ClassVar,
    n_roots: u32,
    top: usize,
    bound: u32,
) -> Vec<ClassPoly<Rational>> {
    let e: Vec<ClassPoly<Rational>> = (1..=n_roots)
        .map(|j| ClassPoly::var(pvar(j), bound))
        .collect();
    power_sums(&e, top, bound)
}

/// Power sums `Σ x_i^m`, `m = 1..top`, of the Chern roots of `ν_weight` (rank `rank`).
pub fn chern_power_sums(
    weight: i64,
    rank: u32,
    top: usize,
    bound: u32,
) -> Vec<ClassPoly<Rational>> {
    let e: Vec<ClassPoly<Rational>> = (1..=rank)
        .map(|index| ClassPoly::var(ClassVar::C { weight, index }, bound))
        .collect();
    power_sums(&e, top, bound)
}

/// `∏_{i=1}^{n_roots} Q(x_i)` in the Pontryagin classes named by `pvar`,
/// truncated at degree `bound` (in root units).
///
/// Computed as `a_0^n · exp(Σ_m c_m s_m)` where `log(Q/a_0) = Σ c_m u^m`.
pub fn multiplicative_class<R: Ring>(
    q: &CharacteristicPowerSeries<R>,
    pvar: fn(u32) -> ClassVar,
    n_roots: u32,
    bound: u32,
) -> ClassPoly<R> {
    let top = (bound / 2) as usize;
    assert!(
        q.top_weight() >= top,
        "characteristic series known only to x^{}",
        2 * q.top_weight()
    );
    let a0 = q.leading().clone();
    let inv0 = a0.try_inv().expect("unit leading coefficient");
    let normalized = q.in_u().scale(&inv0);
    let normalized =
        crate::classes::xseries::XSeries::from_fn(top, |j| normalized.coeff(j).clone());
    let logs = normalized.log();
    let sums = squared_power_sums(pvar, n_roots, top, bound);
    let mut exponent = ClassPoly::zero(bound);
    for m in 1..=top {
        let c = logs.coeff(m);
        if c.is_zero() {
            continue;
        }
        exponent = exponent.add(&sums[m - 1].map(|r| R::from_rational(r)).scale(c));
    }
    exponent.exp().scale(&a0.pow(n_roots))
}

/// The multiplicative sequence `K_0, K_1, ..., K_top` of `Q/a_0` in the
/// ambient Pontryagin classes; `K_j` has weight `j` (degree `2j`).
pub fn multiplicative_sequence<R: Ring>(
    q: &CharacteristicPowerSeries<R>,
    top_weight: u32,
) -> Vec<ClassPoly<R>> {
    let inv0 = q.leading().try_inv().expect("unit leading coefficient");
    let normalized = CharacteristicPowerSeries::from_even_coeffs(
        q.coeffs().iter().map(|c| c.mul_ref(&inv0)).collect(),
    )
    .expect("normalized series has leading one");
    let total = multiplicative_class(&normalized, ClassVar::P, top_weight, 2 * top_weight);
    (0..=top_weight).map(|j| total.homogeneous(2 * j)).collect()
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("characteristic number for monomial `{0}` is missing")]
pub struct MissingMonomial(pub String);

/// Pairs the degree-`degree` part of `poly` with characteristic numbers.
pub fn pair<R: Ring>(
    poly: &ClassPoly<R>,
    degree: u32,
    mut numbers: impl FnMut(&Monomial) -> Option<i64>,
) -> Result<R, MissingMonomial> {
    let mut acc = R::zero();
    for (m, c) in poly.terms() {
        if m.degree() != degree {
            continue;
        }
        let v = numbers(m).ok_or_else(|| MissingMonomial(m.to_string()))?;
        if v != 0 {
            acc = acc.add_ref(&c.scale(&rat(v, 1)));
        }
    }
    Ok(acc)
}
