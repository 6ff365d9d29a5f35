//! Vanishing rules for the Â-cusp expansion and their cross-check against
//! computed expansions.
//!
//! Every rule predicts `pole order of Φ_0(M) < dim/8 - r` under its own
//! hypotheses. A report is inconsistent when a rule fires and the computed
//! pole order violates the bound, or a specialization fails.

use std::fmt;

use thiserror::Error;

use crate::equivariant::{
    m_number, m_number_global, normalize_rotation, sigma_codim_at, sigma_codim_bound,
    EquivariantError, S1ManifoldDescriptor,
};
use crate::genera::{
    ahat_cusp_series, pole_order, witten_series, GenusError, GenusExpansion, ManifoldDescriptor,
    PoleOrder,
};
use crate::ring::{rat, Rational};
use crate::series::QExponent;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerdictError {
    #[error(transparent)]
    Genus(#[from] GenusError),
    #[error(transparent)]
    Equivariant(#[from] EquivariantError),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Rule {
    InvolutionCodimension,
    CyclicMNumber,
    CyclicCodimension,
    CohomologyVanishing,
}

impl Rule {
    pub fn tag(&self) -> &'static str {
        match self {
            Rule::InvolutionCodimension => "involution-codimension",
            Rule::CyclicMNumber => "cyclic-m-number",
            Rule::CyclicCodimension => "cyclic-codimension",
            Rule::CohomologyVanishing => "cohomology-vanishing",
        }
    }

    pub fn statement(&self) -> &'static str {
        match self {
            Rule::InvolutionCodimension => {
                "σ of order 2 with codim M^σ > 4r ⇒ the Â-cusp expansion has a pole of order less than dim/8 - r"
            }
            Rule::CyclicMNumber => "m_o > r ⇒ the Â-cusp expansion has a pole of order less than dim/8 - r",
            Rule::CyclicCodimension => {
                "σ of order o with codim M^σ > 2·o·r ⇒ the Â-cusp expansion has a pole of order less than dim/8 - r"
            }
            Rule::CohomologyVanishing => {
                "H^{4i}(M;Q) = 0 for 0 < i <= r and a nontrivial circle action ⇒ the Â-cusp expansion has a pole of order less than dim/8 - r"
            }
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Hypothesis {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Hypothesis {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        }
    }
}

/// One rule applied to the descriptor.
#[derive(Clone, Debug, PartialEq)]
pub struct Route {
    pub rule: Rule,
    pub hypotheses: Vec<Hypothesis>,
    /// `dim/8 - r`, present only when every hypothesis passes.
    pub predicted_bound: Option<Rational>,
    /// `computed < predicted`, present only with a prediction.
    pub consistent: Option<bool>,
}

impl Route {
    fn new(rule: Rule, hypotheses: Vec<Hypothesis>, bound: Rational, computed: &PoleOrder) -> Self {
        let fires = hypotheses.iter().all(|h| h.passed);
        let predicted_bound = fires.then_some(bound);
        let consistent = predicted_bound.as_ref().map(|b| is_below(computed, b));
        Self {
            rule,
            hypotheses,
            predicted_bound,
            consistent,
        }
    }

    pub fn fired(&self) -> bool {
        self.predicted_bound.is_some()
    }
}

/// A named specialization with a concrete claim about the expansions.
#[derive(Clone, Debug, PartialEq)]
pub struct SubVerdict {
    pub tag: String,
    pub claim: String,
    pub applies: bool,
    /// Whether the claim holds on the computed expansions; `None` when it does not apply.
    pub holds: Option<bool>,
}

/// Per-fixed-component data for cyclic rules.
#[derive(Clone, Debug, PartialEq)]
pub struct ComponentDetail {
    pub name: String,
    pub m_o: Rational,
    /// Codimension of the `σ`-fixed component through `Y`.
    pub sigma_codim: u32,
    /// `(k, k̃, 1/4 - k̃/o)` for each rotation number.
    pub factor_bounds: Vec<(i64, i64, Rational)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerdictReport {
    pub manifold: String,
    pub dim: u32,
    pub order: Option<i64>,
    pub r: u32,
    pub routes: Vec<Route>,
    pub sub_verdicts: Vec<SubVerdict>,
    pub components: Vec<ComponentDetail>,
    pub computed_pole_order: PoleOrder,
    pub notes: Vec<String>,
}

impl VerdictReport {
    /// False when a fired rule or an applicable specialization is contradicted.
    pub fn consistent(&self) -> bool {
        self.routes.iter().all(|r| r.consistent != Some(false))
            && self.sub_verdicts.iter().all(|s| s.holds != Some(false))
    }

    pub fn route(&self, rule: Rule) -> Option<&Route> {
        self.routes.iter().find(|r| r.rule == rule)
    }
}

fn is_below(p: &PoleOrder, bound: &Rational) -> bool {
    let b = QExponent::new(
        bound
            .numer()
            .try_into()
            .expect("bound numerator fits in i64"),
        bound
            .denom()
            .try_into()
            .expect("bound denominator fits in i64"),
    );
    p.is_below(b)
}

/// `dim/8 - r`.
pub fn predicted_bound(dim: u32, r: u32) -> Rational {
    rat(dim as i64, 8) - rat(r as i64, 1)
}

fn expansion_for(
    m: &ManifoldDescriptor,
    r: u32,
    q_trunc: i64,
) -> Result<GenusExpansion, GenusError> {
    // Coefficients up to q^{-dim/8 + r} decide the prediction.
    ahat_cusp_series(m, q_trunc.max(r as i64).max(1))
}

fn spin_hypotheses(m: &S1ManifoldDescriptor) -> Vec<Hypothesis> {
    vec![
        Hypothesis::new("spin", m.underlying.spin, "M is Spin"),
        Hypothesis::new(
            "lifts-to-spin",
            m.lifts_to_spin,
            "the action lifts to the Spin structure",
        ),
    ]
}

/// `codim M^σ` for the element of order `o`: from supplied `σ`-data when
/// `o = 2` and present, otherwise the bound over components meeting `M^{S¹}`.
fn sigma_codim(m: &S1ManifoldDescriptor, o: i64) -> Result<(u32, String), EquivariantError> {
    if o == 2 {
        if let Some(list) = m.sigma_components.as_ref().filter(|l| !l.is_empty()) {
            let c = list.iter().map(|f| f.codim()).min().expect("nonempty");
            return Ok((c, "from supplied σ-fixed components".to_string()));
        }
    }
    let c = sigma_codim_bound(m, o)?;
    Ok((
        c,
        "over σ-fixed components meeting the circle-fixed set".to_string(),
    ))
}

fn codim_route(
    rule: Rule,
    m: &S1ManifoldDescriptor,
    o: i64,
    r: u32,
    computed: &PoleOrder,
) -> Result<Route, VerdictError> {
    let mut hyps = spin_hypotheses(m);
    let (codim, source) = sigma_codim(m, o)?;
    let threshold = 2 * o as u32 * r;
    hyps.push(Hypothesis::new(
        "codimension",
        codim > threshold,
        format!("codim M^σ = {codim} ({source}), needs > {threshold}"),
    ));
    Ok(Route::new(
        rule,
        hyps,
        predicted_bound(m.underlying.dim, r),
        computed,
    ))
}

/// The order-2 codimension rule.
pub fn verdict_involution(
    m: &S1ManifoldDescriptor,
    r: u32,
    q_trunc: i64,
) -> Result<VerdictReport, VerdictError> {
    m.validate()?;
    let g = expansion_for(&m.underlying, r, q_trunc)?;
    let computed = pole_order(&g);
    let route = codim_route(Rule::InvolutionCodimension, m, 2, r, &computed)?;
    Ok(VerdictReport {
        manifold: m.underlying.name.clone(),
        dim: m.underlying.dim,
        order: Some(2),
        r,
        routes: vec![route],
        sub_verdicts: Vec::new(),
        components: component_details(m, 2)?,
        computed_pole_order: computed,
        notes: Vec::new(),
    })
}

fn component_details(
    m: &S1ManifoldDescriptor,
    o: i64,
) -> Result<Vec<ComponentDetail>, VerdictError> {
    m.components
        .iter()
        .map(|y| {
            let factor_bounds = y
                .rotation
                .iter()
                .map(|rd| {
                    let kt = normalize_rotation(rd.k, o).1;
                    (rd.k, kt, rat(1, 4) - rat(kt, o))
                })
                .collect();
            Ok(ComponentDetail {
                name: y.name.clone(),
                m_o: m_number(y, o)?,
                sigma_codim: sigma_codim_at(y, o),
                factor_bounds,
            })
        })
        .collect()
}

fn coefficient_zero(g: &GenusExpansion, e: QExponent) -> bool {
    g.coeff(e).is_some_and(|c| num_traits::Zero::is_zero(&c))
}

/// The order-`o` rules: the m-number rule and the codimension rule, plus
/// the specializations for `o = 3`, `o = 4` and `o < dim/2`.
pub fn verdict_cyclic(
    m: &S1ManifoldDescriptor,
    o: i64,
    r: u32,
    q_trunc: i64,
) -> Result<VerdictReport, VerdictError> {
    m.validate()?;
    if o < 2 {
        return Err(EquivariantError::BadOrder(o).into());
    }
    let dim = m.underlying.dim;
    let g = expansion_for(&m.underlying, r.max(1), q_trunc)?;
    let computed = pole_order(&g);

    let mut hyps = spin_hypotheses(m);
    let mo = m_number_global(m, o)?;
    hyps.push(Hypothesis::new(
        "m-number",
        mo > rat(r as i64, 1),
        format!("m_{o} = {mo}, needs > {r}"),
    ));
    let m_route = Route::new(
        Rule::CyclicMNumber,
        hyps,
        predicted_bound(dim, r),
        &computed,
    );
    let c_route = codim_route(Rule::CyclicCodimension, m, o, r, &computed)?;

    let (codim, _) = sigma_codim(m, o)?;
    let spin = m.spin_action();
    let isolated = codim == dim;
    let lead = QExponent::new(-(dim as i64), 8);
    let one = QExponent::from_integer(1);
    let ahat_zero = coefficient_zero(&g, lead);
    let ahat_tm_zero = ahat_zero && coefficient_zero(&g, lead + one);
    let mut subs = Vec::new();
    let mut sub =
        |tag: &str, claim: &str, applies: bool, holds: &dyn Fn() -> Result<bool, VerdictError>| {
            let holds = if applies { Some(holds()?) } else { None };
            subs.push(SubVerdict {
                tag: tag.to_string(),
                claim: claim.to_string(),
                applies,
                holds,
            });
            Ok::<(), VerdictError>(())
        };
    let signature = || -> Result<(GenusExpansion, Rational), VerdictError> {
        let w = witten_series(&m.underlying, q_trunc.max(1))?;
        let s = w.coeff(QExponent::from_integer(0)).expect("q^0 is known");
        Ok((w, s))
    };
    if o == 3 || o == 4 {
        let t = 2 * o as u32;
        sub(
            &format!("order-{o}-codim-positive"),
            "codim M^σ > 0 ⇒ Â(M) = 0",
            spin && codim > 0,
            &|| Ok(ahat_zero),
        )?;
        sub(
            &format!("order-{o}-codim-above-{t}"),
            &format!("codim M^σ > {t} ⇒ Â(M) = Â(M,TM) = 0"),
            spin && codim > t,
            &|| Ok(ahat_tm_zero),
        )?;
    }
    if o == 3 {
        sub(
            "order-3-isolated",
            "σ has isolated fixed points ⇒ Φ(M) vanishes identically",
            spin && isolated,
            &|| {
                let (w, _) = signature()?;
                Ok(g.series.is_zero() && w.series.is_zero())
            },
        )?;
    }
    if o == 4 {
        sub(
            "order-4-isolated",
            "σ has isolated fixed points ⇒ Φ(M) equals the signature of M",
            spin && isolated,
            &|| {
                let (w, s) = signature()?;
                let constant = |x: &GenusExpansion| {
                    x.series
                        .terms()
                        .all(|(e, c)| e == QExponent::from_integer(0) && *c == s)
                };
                Ok(constant(&w) && constant(&g))
            },
        )?;
    }
    if 2 * o < dim as i64 {
        sub(
            "small-order-isolated",
            "o < dim/2 and σ has isolated fixed points ⇒ Â(M) = Â(M,TM) = 0",
            spin && isolated,
            &|| Ok(ahat_tm_zero),
        )?;
    }
    let mut notes = Vec::new();
    if m.sigma_components.is_none() || o != 2 {
        notes.push(
            "codim M^σ is read off the σ-fixed components that meet the circle-fixed set"
                .to_string(),
        );
    }
    Ok(VerdictReport {
        manifold: m.underlying.name.clone(),
        dim,
        order: Some(o),
        r,
        routes: vec![m_route, c_route],
        sub_verdicts: subs,
        components: component_details(m, o)?,
        computed_pole_order: computed,
        notes,
    })
}

/// The cohomology rule against a given expansion.
pub fn verdict_cohomology_for(
    m: &ManifoldDescriptor,
    has_nontrivial_action: bool,
    g: &GenusExpansion,
) -> VerdictReport {
    let computed = pole_order(g);
    let r = m.cohomology_vanishing_r;
    let hyps = vec![
        Hypothesis::new("spin", m.spin, "M is Spin"),
        Hypothesis::new(
            "nontrivial-action",
            has_nontrivial_action,
            "M carries a nontrivial circle action",
        ),
        Hypothesis::new(
            "cohomology",
            r.is_some(),
            match r {
                Some(r) => format!("H^{{4i}}(M;Q) = 0 asserted for 0 < i <= {r}"),
                None => "no cohomology vanishing asserted".to_string(),
            },
        ),
    ];
    let r = r.unwrap_or(0);
    VerdictReport {
        manifold: m.name.clone(),
        dim: m.dim,
        order: None,
        r,
        routes: vec![Route::new(
            Rule::CohomologyVanishing,
            hyps,
            predicted_bound(m.dim, r),
            &computed,
        )],
        sub_verdicts: Vec::new(),
        components: Vec::new(),
        computed_pole_order: computed,
        notes: Vec::new(),
    }
}

/// The cohomology rule, computing the expansion.
pub fn verdict_cohomology(
    m: &ManifoldDescriptor,
    has_nontrivial_action: bool,
    q_trunc: i64,
) -> Result<VerdictReport, VerdictError> {
    let g = expansion_for(m, m.cohomology_vanishing_r.unwrap_or(0), q_trunc)?;
    Ok(verdict_cohomology_for(m, has_nontrivial_action, &g))
}

/// True unless the only fixed component is the whole manifold.
pub fn has_nontrivial_action(m: &S1ManifoldDescriptor) -> bool {
    !(m.components.len() == 1 && m.components[0].dim == m.underlying.dim)
}
