//! Worked examples for the series kernel, classes, genera, equivariant and
//! involution layers, checked through the public API.

use ellgen::classes::{
    adams_character, ahat_series, bundle_chern_character, l_series, multiplicative_sequence,
    taylor_x_over_f, BundleExpression, CharacteristicPowerSeries, ChernContext, ClassVar, Monomial,
    QSeries,
};
use ellgen::cyclotomic::CyclotomicElement;
use ellgen::equivariant::{
    evaluate_at_torsion, lefschetz_sum, local_datum, m_number, normalize_rotation,
    ratfn_eval_cyclotomic, rigidity_check, sigma_codim_at, EquivariantExpansion,
    FixedComponentDescriptor, MuSeries, RotationDatum, S1ManifoldDescriptor,
};
use ellgen::genera::{
    ahat_cusp_series, series_pole_order, twisted_index, witten_series, Cusp, ManifoldDescriptor,
    PoleOrder,
};
use ellgen::involution::{
    self_intersection_series, sigma_local_series, witten_local_series, SigmaComponentDescriptor,
};
use ellgen::poly::QPoly;
use ellgen::ratfn::RationalFunction;
use ellgen::ring::{rat, Ring};
use ellgen::series::QExponent;

fn qe(n: i64, d: i64) -> QExponent {
    QExponent::new(n, d)
}

fn s(terms: &[(i64, i64, i64)], trunc: Option<(i64, i64)>) -> QSeries {
    QSeries::from_terms(
        4,
        terms.iter().map(|&(n, d, c)| (qe(n, d), rat(c, 1))),
        trunc.map(|(n, d)| qe(n, d)),
    )
}

#[test]
fn series_arithmetic() {
    let a = s(&[(-1, 2, 1), (1, 1, 2)], None);
    assert_eq!(
        a.series_add(&s(&[(1, 1, 3)], None)),
        s(&[(-1, 2, 1), (1, 1, 5)], None)
    );
    assert_eq!(a.series_add(&QSeries::zero()), a);
    let c = s(&[(0, 1, 1), (1, 1, -1)], Some((2, 1))).series_add(&s(&[(1, 1, 1)], None));
    assert_eq!(c.pretty(), "1 + O(q^{2})");
    assert_eq!(
        s(&[(1, 4, 1)], None).series_mul(&s(&[(1, 4, 1)], None)),
        s(&[(1, 2, 1)], None)
    );
    assert_eq!(
        s(&[(0, 1, 1), (1, 1, 1)], None).series_mul(&s(&[(0, 1, 1), (1, 1, -1)], None)),
        s(&[(0, 1, 1), (2, 1, -1)], None)
    );
    assert_eq!(
        s(&[(-1, 1, 1)], None).series_mul(&s(&[(1, 1, 1), (2, 1, 1)], None)),
        s(&[(0, 1, 1), (1, 1, 1)], None)
    );
}

#[test]
fn series_inversion() {
    assert_eq!(
        s(&[(1, 4, 1)], None).invert().unwrap(),
        s(&[(-1, 4, 1)], None)
    );
    let geo = s(&[(0, 1, 1), (1, 1, -1)], Some((3, 1))).invert().unwrap();
    assert_eq!(geo, s(&[(0, 1, 1), (1, 1, 1), (2, 1, 1)], Some((3, 1))));
    // Long division of 1 by 2 + q.
    let inv = QSeries::from_terms(
        1,
        [(qe(0, 1), rat(2, 1)), (qe(1, 1), rat(1, 1))],
        Some(qe(3, 1)),
    )
    .invert()
    .unwrap();
    let expected = QSeries::from_terms(
        1,
        [
            (qe(0, 1), rat(1, 2)),
            (qe(1, 1), rat(-1, 4)),
            (qe(2, 1), rat(1, 8)),
        ],
        Some(qe(3, 1)),
    );
    assert_eq!(inv, expected);
}

fn mu(c: i64, k: i64) -> RationalFunction {
    RationalFunction::mu_power(rat(c, 1), k)
}

#[test]
fn rational_function_constancy() {
    let p = QPoly::from_ints(&[-1, 0, 0, 0, 1]);
    assert_eq!(
        RationalFunction::new(p.clone(), p).as_constant(),
        Some(rat(1, 1))
    );
    assert_eq!(
        RationalFunction::new(QPoly::from_ints(&[0, 1]), QPoly::from_ints(&[1, 0, 1]))
            .as_constant(),
        None
    );
    let d = mu(1, 1).sub_ref(&mu(1, -1));
    let sum = d
        .try_inv()
        .unwrap()
        .add_ref(&d.neg_ref().try_inv().unwrap());
    assert_eq!(sum.as_constant(), Some(rat(0, 1)));
}

#[test]
fn cyclotomic_evaluation() {
    assert_eq!(
        ratfn_eval_cyclotomic(&mu(1, 2), 8, 1),
        Some(CyclotomicElement::zeta_power(8, 2))
    );
    assert_eq!(
        ratfn_eval_cyclotomic(&RationalFunction::from_int(5), 7, 3),
        Some(CyclotomicElement::rational(rat(5, 1)))
    );
    let r = mu(1, 2)
        .sub_ref(&RationalFunction::one())
        .try_inv()
        .unwrap();
    assert_eq!(
        ratfn_eval_cyclotomic(&r, 4, 1).and_then(|c| c.as_rational()),
        Some(rat(-1, 2))
    );
    let e = EquivariantExpansion::new(MuSeries::from_terms(1, [(qe(0, 1), r)], Some(qe(1, 1))));
    let at2 = evaluate_at_torsion(&e, 2, 1).unwrap();
    assert_eq!(
        at2.coeff(qe(0, 1)).and_then(|c| c.as_rational()),
        Some(rat(-1, 2))
    );
    assert!(evaluate_at_torsion(&e, 1, 0).is_err());
    let constant =
        EquivariantExpansion::new(MuSeries::monomial(RationalFunction::from_int(2), qe(-1, 2)));
    let v = evaluate_at_torsion(&constant, 5, 2).unwrap();
    assert_eq!(
        v.coeff(qe(-1, 2)).and_then(|c| c.as_rational()),
        Some(rat(2, 1))
    );
}

#[test]
fn characteristic_series() {
    let t = taylor_x_over_f(3, 4).unwrap();
    let lead = qe(-1, 4);
    assert_eq!(t.coeff(0).coeff(lead), Some(rat(1, 1)));
    assert_eq!(t.coeff(1).coeff(lead), Some(rat(-1, 24)));
    assert_eq!(t.coeff(2).coeff(lead), Some(rat(7, 5760)));
    let k = multiplicative_sequence(&ahat_series(2), 1);
    assert_eq!(k[1].coeff(&"p1".parse().unwrap()), rat(-1, 24));
    let k = multiplicative_sequence(&l_series(2), 1);
    assert_eq!(k[1].coeff(&"p1".parse().unwrap()), rat(1, 3));
    let one =
        CharacteristicPowerSeries::from_even_coeffs(vec![rat(1, 1), rat(0, 1), rat(0, 1)]).unwrap();
    for kj in &multiplicative_sequence(&one, 2)[1..] {
        assert!(kj.is_zero());
    }
}

#[test]
fn bundle_characters() {
    let n = 2;
    let adams = |k: u32| adams_character(ClassVar::P, n, k, n);
    let ctx = ChernContext {
        adams: &adams,
        bound: n,
        q_trunc: 2,
    };
    let tm = bundle_chern_character(&BundleExpression::Tangent, &ctx).unwrap();
    assert_eq!(tm.constant_term().coeff(qe(0, 1)), Some(rat(4, 1)));
    assert_eq!(
        tm.coeff(&"p1".parse().unwrap()).coeff(qe(0, 1)),
        Some(rat(1, 1))
    );
    let w = bundle_chern_character(&BundleExpression::witten_signature(2), &ctx).unwrap();
    assert_eq!(w.constant_term().coeff(qe(0, 1)), Some(rat(1, 1)));
    let lam: BundleExpression = "L^1".parse().unwrap();
    let l1 = bundle_chern_character(&lam, &ctx).unwrap();
    assert_eq!(l1.constant_term().coeff(qe(0, 1)), Some(rat(4, 1)));
}

fn k3() -> ManifoldDescriptor {
    ManifoldDescriptor::new("K3", 4, true, &[("p1", -48)])
}

fn hp2() -> ManifoldDescriptor {
    ManifoldDescriptor::new("HP2", 8, true, &[("p1.p1", 4), ("p2", 7)])
}

#[test]
fn genera() {
    assert_eq!(
        witten_series(&k3(), 2).unwrap().coeff(qe(0, 1)),
        Some(rat(-16, 1))
    );
    assert!(
        witten_series(&ManifoldDescriptor::new("S4", 4, true, &[]), 3)
            .unwrap()
            .series
            .is_zero()
    );
    assert_eq!(
        witten_series(&hp2(), 2).unwrap().coeff(qe(0, 1)),
        Some(rat(1, 1))
    );
    assert_eq!(
        ahat_cusp_series(&k3(), 2).unwrap().coeff(qe(-1, 2)),
        Some(rat(2, 1))
    );
    assert_eq!(
        ahat_cusp_series(&hp2(), 2).unwrap().coeff(qe(-1, 1)),
        Some(rat(0, 1))
    );
    assert_eq!(
        twisted_index(&k3(), &BundleExpression::Trivial, Cusp::AHat).unwrap(),
        rat(2, 1)
    );
    assert_eq!(
        twisted_index(&hp2(), &BundleExpression::Trivial, Cusp::Signature).unwrap(),
        rat(1, 1)
    );
    // ch(TM) = 4 + p1 + ..., Â = 1 - p1/24: ⟨(4 + p1)(1 - p1/24), [K3]⟩ = 4·2 + (-48) = -40.
    assert_eq!(
        twisted_index(&k3(), &BundleExpression::Tangent, Cusp::AHat).unwrap(),
        rat(-40, 1)
    );
}

#[test]
fn pole_orders() {
    assert_eq!(
        series_pole_order(&s(&[(-1, 2, 2), (1, 2, 1)], Some((3, 2)))),
        PoleOrder::Order(qe(1, 2))
    );
    assert!(matches!(
        series_pole_order(&s(&[], Some((2, 1)))),
        PoleOrder::Vanishes { .. }
    ));
    assert_eq!(
        series_pole_order(&s(&[(1, 1, 1), (2, 1, 1)], None)),
        PoleOrder::Order(qe(-1, 1))
    );
}

fn point(sign: i64, rot: &[(i64, u32)]) -> FixedComponentDescriptor {
    FixedComponentDescriptor::point("p", sign, rot)
}

#[test]
fn rotation_data() {
    assert_eq!(normalize_rotation(5, 3), (-1, 1));
    assert_eq!(normalize_rotation(2, 4), (1, 2));
    assert_eq!(normalize_rotation(6, 3), (1, 0));
    assert_eq!(m_number(&point(1, &[(1, 2)]), 2).unwrap(), rat(1, 1));
    assert_eq!(m_number(&point(1, &[(3, 1)]), 3).unwrap(), rat(0, 1));
    assert_eq!(
        m_number(&point(1, &[(1, 1), (2, 1)]), 4).unwrap(),
        rat(3, 4)
    );
    assert_eq!(sigma_codim_at(&point(1, &[(1, 2)]), 2), 4);
    assert_eq!(sigma_codim_at(&point(1, &[(2, 3)]), 2), 0);
}

#[test]
fn local_data() {
    let lead = |k: i64| {
        local_datum(&point(1, &[(k, 1)]), 1)
            .unwrap()
            .coeff(qe(-1, 4))
            .unwrap()
    };
    assert_eq!(lead(1), mu(1, 1).sub_ref(&mu(1, -1)).try_inv().unwrap());
    assert_eq!(lead(2), mu(1, 2).sub_ref(&mu(1, -2)).try_inv().unwrap());
    let s2 = S1ManifoldDescriptor {
        underlying: ManifoldDescriptor::new("S2", 2, true, &[]),
        lifts_to_spin: false,
        components: vec![point(1, &[(1, 1)]), point(-1, &[(1, 1)])],
        sigma_components: None,
    };
    assert!(lefschetz_sum(&s2, 3)
        .unwrap()
        .as_constant()
        .unwrap()
        .is_zero());
    let trivial = S1ManifoldDescriptor::trivial_action(&k3());
    assert_eq!(
        lefschetz_sum(&trivial, 3).unwrap().as_constant().unwrap(),
        ahat_cusp_series(&k3(), 3).unwrap().series
    );
}

#[test]
fn corrupted_rotation_datum_fails_at_order_zero() {
    let bad = S1ManifoldDescriptor {
        underlying: ManifoldDescriptor::new("S4", 4, true, &[]),
        lifts_to_spin: true,
        components: vec![
            point(1, &[(1, 2)]),
            FixedComponentDescriptor {
                rotation: vec![
                    RotationDatum {
                        k: 1,
                        multiplicity: 1,
                    },
                    RotationDatum {
                        k: 3,
                        multiplicity: 1,
                    },
                ],
                ..point(-1, &[])
            },
        ],
        sigma_components: None,
    };
    let rep = rigidity_check(&bad, 2).unwrap();
    assert!(!rep.passed());
    match rep.outcome {
        ellgen::equivariant::RigidityOutcome::NonConstant { exponent, .. } => {
            assert!(exponent <= qe(0, 1))
        }
        other => panic!("expected a non-constant coefficient, got {other:?}"),
    }
}

fn whole(m: &ManifoldDescriptor) -> SigmaComponentDescriptor {
    let numbers = m.pontryagin_numbers.iter().map(|(p, v)| {
        (
            Monomial::from_factors(p.parts().iter().map(|&j| (ClassVar::PF(j), 1))),
            *v,
        )
    });
    SigmaComponentDescriptor::new("M", m.dim, 0, numbers, false)
}

#[test]
fn involution_local_data() {
    let numbers = [
        ("pF1".parse::<Monomial>().unwrap(), 1),
        ("pN1".parse::<Monomial>().unwrap(), 2),
    ];
    let f = SigmaComponentDescriptor::new("F", 4, 4, numbers, true);
    for src in ["1", "TM", "L^2"] {
        assert!(sigma_local_series(&f, &src.parse().unwrap(), 3)
            .unwrap()
            .is_zero());
    }
    let k = whole(&k3());
    let w = witten_series(&k3(), 3).unwrap().series;
    assert_eq!(witten_local_series(&k, 3).unwrap(), w);
    assert_eq!(self_intersection_series(&k, 3).unwrap(), w);
    assert_eq!(
        sigma_local_series(&k, &BundleExpression::Trivial, 0)
            .unwrap()
            .coeff(qe(0, 1)),
        Some(rat(-16, 1))
    );
    // An isolated σ-fixed point of a positive-dimensional manifold contributes nothing.
    let p = SigmaComponentDescriptor::new("pt", 0, 4, std::iter::empty(), false);
    assert!(witten_local_series(&p, 3).unwrap().is_zero());
    assert!(self_intersection_series(&p, 3).unwrap().is_zero());
    // codim F > dim M / 2: the self-intersection is empty.
    let g =
        SigmaComponentDescriptor::new("G", 2, 6, [("e".parse::<Monomial>().unwrap(), 1)], false);
    assert!(self_intersection_series(&g, 3).unwrap().is_zero());
}
