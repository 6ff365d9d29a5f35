#![allow(dead_code)]

use ellgen::classes::{
    elementary_from_power_sums, multiplicative_class, pair, power_sums, CharacteristicPowerSeries,
    ClassPoly, ClassVar, QSeries,
};
use ellgen::cyclotomic::CyclotomicElement;
use ellgen::equivariant::ratfn_eval_cyclotomic;
use ellgen::poly::QPoly;
use ellgen::ratfn::RationalFunction;
use ellgen::ring::{rat, Rational, Ring};
use ellgen::series::QExponent;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub const CASES: u32 = 1000;

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    ((1i64..=12), any::<bool>(), 1i64..=5).prop_map(|(n, neg, d)| rat(if neg { -n } else { n }, d))
}

/// Series in `q^{1/denom}` with a few terms, exact or truncated.
pub fn series() -> impl Strategy<Value = QSeries> {
    (
        prop::sample::select(vec![1i64, 2, 4]),
        -3i64..=3,
        prop::collection::vec(small_rational(), 0..5),
        prop::option::of(0i64..4),
    )
        .prop_map(|(denom, lo, coeffs, extra)| {
            let n = coeffs.len() as i64;
            let terms = coeffs
                .into_iter()
                .enumerate()
                .map(|(i, c)| (lo + i as i64, c));
            QSeries::from_unit_terms(denom, terms, extra.map(|x| lo + n + x))
        })
}

/// Truncated series with a nonzero leading coefficient.
pub fn invertible_series() -> impl Strategy<Value = QSeries> {
    (
        prop::sample::select(vec![1i64, 2, 4]),
        -3i64..=3,
        nonzero_rational(),
        prop::collection::vec(small_rational(), 0..4),
        1i64..6,
    )
        .prop_map(|(denom, lo, lead, rest, len)| {
            let terms = std::iter::once((lo, lead)).chain(
                rest.into_iter()
                    .enumerate()
                    .map(|(i, c)| (lo + 1 + i as i64, c)),
            );
            QSeries::from_unit_terms(denom, terms, Some(lo + len))
        })
}

/// Equality up to the common precision of both sides.
pub fn agree(a: &QSeries, b: &QSeries) -> bool {
    let t = match (a.trunc(), b.trunc()) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    };
    match t {
        Some(t) => a.truncate(t).series_sub(&b.truncate(t)).is_zero(),
        None => a.series_sub(b).is_zero(),
    }
}

fn check(ok: bool, what: &str) -> Result<(), TestCaseError> {
    if ok {
        Ok(())
    } else {
        Err(TestCaseError::fail(what.to_string()))
    }
}

pub fn ring_axioms(a: &QSeries, b: &QSeries, c: &QSeries) -> Result<(), TestCaseError> {
    check(
        agree(&a.series_add(b), &b.series_add(a)),
        "addition commutes",
    )?;
    check(
        agree(&a.series_mul(b), &b.series_mul(a)),
        "multiplication commutes",
    )?;
    check(
        agree(
            &a.series_add(b).series_add(c),
            &a.series_add(&b.series_add(c)),
        ),
        "addition associates",
    )?;
    check(
        agree(
            &a.series_mul(b).series_mul(c),
            &a.series_mul(&b.series_mul(c)),
        ),
        "multiplication associates",
    )?;
    check(
        agree(
            &a.series_mul(&b.series_add(c)),
            &a.series_mul(b).series_add(&a.series_mul(c)),
        ),
        "multiplication distributes",
    )?;
    check(a.series_add(&a.series_neg()).is_zero(), "additive inverse")?;
    check(
        agree(&a.series_mul(&QSeries::constant(rat(1, 1))), a),
        "multiplicative identity",
    )?;
    Ok(())
}

pub fn inversion(s: &QSeries) -> Result<(), TestCaseError> {
    let inv = s
        .invert()
        .map_err(|e| TestCaseError::fail(format!("invert failed: {e}")))?;
    let prod = s.series_mul(&inv);
    let one = QSeries::constant(rat(1, 1));
    check(agree(&prod, &one), "s · s⁻¹ = 1")?;
    check(
        prod.trunc().is_some_and(|t| t > QExponent::from_integer(0)),
        "product known beyond q^0",
    )?;
    check(
        agree(&inv.invert().expect("inverse is invertible"), s),
        "double inversion",
    )
}

fn constants(xs: &[Rational], bound: u32) -> Vec<ClassPoly<Rational>> {
    xs.iter()
        .map(|x| ClassPoly::constant(x.clone(), bound))
        .collect()
}

/// Newton identities against numeric roots: `e_j` from `∏(1 + r_i t)`, `s_m = Σ r_i^m`.
pub fn newton_round_trip(roots: &[Rational]) -> Result<(), TestCaseError> {
    let n = roots.len();
    let mut e = vec![rat(1, 1)];
    for r in roots {
        let mut next = e.clone();
        next.push(rat(0, 1));
        for j in 1..next.len() {
            next[j] = &e.get(j).cloned().unwrap_or_else(|| rat(0, 1)) + &(&e[j - 1] * r);
        }
        e = next;
    }
    let top = n + 2;
    let s: Vec<Rational> = (1..=top)
        .map(|m| {
            roots
                .iter()
                .map(|r| Ring::pow(r, m as u32))
                .fold(rat(0, 1), |a, b| a + b)
        })
        .collect();
    let e_polys = constants(&e[1..], 0);
    let sums = power_sums(&e_polys, top, 0);
    for m in 0..top {
        check(
            sums[m].constant_term() == s[m],
            "power sums from elementary",
        )?;
    }
    let back = elementary_from_power_sums(&constants(&s, 0), top, 0);
    for (j, b) in back.iter().enumerate().take(top) {
        let expected = e.get(j + 1).cloned().unwrap_or_else(|| rat(0, 1));
        check(b.constant_term() == expected, "elementary from power sums")?;
    }
    Ok(())
}

/// `∏_i Q(x_i)` against the product of the univariate series at `x_i^2 = t_i`.
pub fn multiplicativity(q: &[Rational], t: &[i64]) -> Result<(), TestCaseError> {
    let top = q.len() - 1;
    let bound = 2 * top as u32;
    let series =
        CharacteristicPowerSeries::from_even_coeffs(q.to_vec()).expect("unit leading coefficient");
    let class = multiplicative_class(&series, ClassVar::P, t.len() as u32, bound);
    let mut e = vec![1i64];
    for &ti in t {
        let mut next = e.clone();
        next.push(0);
        for j in 1..next.len() {
            next[j] = e.get(j).copied().unwrap_or(0) + e[j - 1] * ti;
        }
        e = next;
    }
    let mut product = vec![rat(1, 1)];
    for &ti in t {
        let mut next = vec![rat(0, 1); top + 1];
        for (i, a) in product.iter().enumerate() {
            for (j, b) in q.iter().enumerate() {
                if i + j <= top {
                    next[i + j] += a * b * Ring::pow(&rat(ti, 1), j as u32);
                }
            }
        }
        product = next;
    }
    for (d, expected) in product.iter().enumerate() {
        let value: Rational = pair(&class, 2 * d as u32, |m| {
            let mut v = 1i64;
            for &(var, exp) in m.factors() {
                let ClassVar::P(j) = var else { return None };
                v *= e.get(j as usize).copied().unwrap_or(0).pow(exp);
            }
            Some(v)
        })
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
        check(
            &value == expected,
            "multiplicative class matches the product",
        )?;
    }
    Ok(())
}

pub fn poly() -> impl Strategy<Value = QPoly> {
    prop::collection::vec(small_rational(), 0..4).prop_map(QPoly::new)
}

pub fn ratfn() -> impl Strategy<Value = RationalFunction> {
    (poly(), poly()).prop_map(|(n, d)| {
        let d = if d.is_zero() { QPoly::one() } else { d };
        RationalFunction::new(n, d)
    })
}

/// Evaluation at roots of unity is a ring map where defined.
pub fn cyclotomic_evaluation(
    r: &RationalFunction,
    s: &RationalFunction,
    n: u64,
    k: i64,
) -> Result<(), TestCaseError> {
    let z = |a: i64| CyclotomicElement::zeta_power(n, a);
    check(
        z(n as i64) == CyclotomicElement::rational(rat(1, 1)),
        "ζ^n = 1",
    )?;
    check(z(k).mul_ref(&z(3)) == z(k + 3), "ζ^a ζ^b = ζ^{a+b}")?;
    let ev = |x: &RationalFunction| ratfn_eval_cyclotomic(x, n, k);
    if let (Some(a), Some(b)) = (ev(r), ev(s)) {
        if let Some(sum) = ev(&r.add_ref(s)) {
            check(sum == a.add_ref(&b), "evaluation is additive")?;
        }
        if let Some(prod) = ev(&r.mul_ref(s)) {
            check(prod == a.mul_ref(&b), "evaluation is multiplicative")?;
        }
    }
    let mono = RationalFunction::mu_power(rat(1, 1), k);
    check(ev(&mono) == Some(z(k * k)), "μ^k at ζ^k")?;
    Ok(())
}

/// Rational evaluation agrees with arithmetic.
pub fn rational_evaluation(
    r: &RationalFunction,
    s: &RationalFunction,
    x: &Rational,
) -> Result<(), TestCaseError> {
    if let (Some(a), Some(b)) = (r.eval_rational(x), s.eval_rational(x)) {
        if let Some(p) = r.mul_ref(s).eval_rational(x) {
            check(p == &a * &b, "rational evaluation is multiplicative")?;
        }
        if let Some(p) = r.add_ref(s).eval_rational(x) {
            check(p == &a + &b, "rational evaluation is additive")?;
        }
    }
    Ok(())
}

pub fn runner() -> TestRunner {
    TestRunner::new(Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    })
}

/// Runs every property suite; returns `(name, outcome)` per suite.
pub fn run_all() -> Vec<(&'static str, Result<(), String>)> {
    let mut out = Vec::new();
    let mut go = |name: &'static str, r: Result<(), proptest::test_runner::TestError<String>>| {
        out.push((name, r.map_err(|e| e.to_string())));
    };
    go(
        "series ring axioms",
        runner()
            .run(&(series(), series(), series()), |(a, b, c)| {
                ring_axioms(&a, &b, &c)
            })
            .map_err(stringify),
    );
    go(
        "series inversion",
        runner()
            .run(&invertible_series(), |s| inversion(&s))
            .map_err(stringify),
    );
    go(
        "Newton-identity round trip",
        runner()
            .run(&prop::collection::vec(small_rational(), 0..5), |r| {
                newton_round_trip(&r)
            })
            .map_err(stringify),
    );
    go(
        "multiplicativity of sequences",
        runner()
            .run(
                &(
                    prop::collection::vec(small_rational(), 1..4),
                    prop::collection::vec(-3i64..=3, 1..4),
                ),
                |(mut q, t)| {
                    q.insert(0, rat(1, 1));
                    multiplicativity(&q, &t)
                },
            )
            .map_err(stringify),
    );
    go(
        "cyclotomic evaluation",
        runner()
            .run(
                &(ratfn(), ratfn(), 1u64..=12, -20i64..=20),
                |(r, s, n, k)| cyclotomic_evaluation(&r, &s, n, k),
            )
            .map_err(stringify),
    );
    go(
        "rational-function evaluation",
        runner()
            .run(&(ratfn(), ratfn(), small_rational()), |(r, s, x)| {
                rational_evaluation(&r, &s, &x)
            })
            .map_err(stringify),
    );
    out
}

fn stringify<T: std::fmt::Debug>(
    e: proptest::test_runner::TestError<T>,
) -> proptest::test_runner::TestError<String> {
    match e {
        proptest::test_runner::TestError::Abort(r) => proptest::test_runner::TestError::Abort(r),
        proptest::test_runner::TestError::Fail(r, v) => {
            proptest::test_runner::TestError::Fail(r, format!("{v:?}"))
        }
    }
}
