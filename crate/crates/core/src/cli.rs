//! Command-line front end. `run` parses arguments and returns the rendered
//! output with an exit code: 0 success, 2 invalid input, 3 a prediction
//! contradicted by the computation.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::catalog::{catalog, catalog_entry, parse_descriptor, serialize_descriptor, Descriptor};
use crate::classes::{BundleExpression, QSeries};
use crate::equivariant::{
    local_datum, m_number, m_number_global, normalize_rotation, rigidity_check, sigma_codim_at,
    MuSeries, RigidityOutcome,
};
use crate::genera::{
    ahat_cusp_series, genus_via_bundles, pole_order, twisted_index, twisted_index_series,
    witten_series, Cusp, GenusExpansion, ManifoldDescriptor, PoleOrder,
};
use crate::involution::{sigma_components, witten_local_series, SigmaSource};
use crate::ring::Rational;
use crate::series::{fmt_exponent, QExponent};
use crate::theorems::{
    has_nontrivial_action, verdict_cohomology, verdict_cyclic, verdict_involution, VerdictReport,
};

#[derive(Parser, Debug)]
#[command(
    name = "ellgen",
    version,
    about = "Exact elliptic genus expansions, rigidity and vanishing checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cusp expansion of the elliptic genus.
    Genus {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = CuspArg::Sign)]
        cusp: CuspArg,
        #[command(flatten)]
        common: Common,
    },
    /// Expansion as twisted indices of a q-graded bundle (the Witten bundle by default).
    Expand {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = CuspArg::Sign)]
        cusp: CuspArg,
        /// Bundle expression such as `TM`, `L^2 + TM` or `S^2`.
        #[arg(long)]
        bundle: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Lefschetz sum of the circle action and its constancy.
    Rigidity {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        common: Common,
    },
    /// Local data of the circle-fixed components and of the involution.
    LocalData {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        common: Common,
    },
    /// The numbers m_o(Y) and the normalized rotation numbers.
    MNumber {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        order: i64,
        #[command(flatten)]
        common: Common,
    },
    /// Apply the vanishing rules and cross-check against the computed expansion.
    Verdict {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        order: Option<i64>,
        #[arg(long, default_value_t = 0)]
        r: u32,
        #[command(flatten)]
        common: Common,
    },
    /// List the built-in descriptors, or print one in canonical form.
    Catalog {
        #[command(flatten)]
        source: OptionalSource,
        #[command(flatten)]
        common: Common,
    },
    /// Parse and validate a descriptor.
    Validate {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Source {
    /// Descriptor file.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Built-in descriptor name.
    #[arg(long)]
    catalog: Option<String>,
}

#[derive(Args, Debug)]
#[group(required = false, multiple = false)]
struct OptionalSource {
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    catalog: Option<String>,
}

#[derive(Args, Debug)]
struct Common {
    /// Highest q-order computed.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(i64).range(1..))]
    truncate: i64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum CuspArg {
    Sign,
    Ahat,
}

impl From<CuspArg> for Cusp {
    fn from(c: CuspArg) -> Cusp {
        match c {
            CuspArg::Sign => Cusp::Signature,
            CuspArg::Ahat => Cusp::AHat,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

/// Rendered result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn invalid(op: &str, msg: impl std::fmt::Display) -> Self {
        Self {
            code: 2,
            stdout: String::new(),
            stderr: format!("error in {op}: {msg}\n"),
        }
    }
}

struct Rendered {
    text: String,
    json: Value,
    inconsistent: bool,
}

impl Rendered {
    fn new(text: String, json: Value) -> Self {
        Self {
            text,
            json,
            inconsistent: false,
        }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let msg = e.render().to_string();
            return if code == 0 {
                Outcome::ok(msg)
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: msg,
                }
            };
        }
    };
    let format = match &cli.command {
        Command::Genus { common, .. }
        | Command::Expand { common, .. }
        | Command::Rigidity { common, .. }
        | Command::LocalData { common, .. }
        | Command::MNumber { common, .. }
        | Command::Verdict { common, .. }
        | Command::Catalog { common, .. }
        | Command::Validate { common, .. } => common.format,
    };
    let result = match cli.command {
        Command::Genus {
            source,
            cusp,
            common,
        } => load(&source).and_then(|d| genus(&d, cusp.into(), common.truncate)),
        Command::Expand {
            source,
            cusp,
            bundle,
            common,
        } => {
            load(&source).and_then(|d| expand(&d, cusp.into(), bundle.as_deref(), common.truncate))
        }
        Command::Rigidity { source, common } => {
            load(&source).and_then(|d| rigidity(&d, common.truncate))
        }
        Command::LocalData { source, common } => {
            load(&source).and_then(|d| local_data(&d, common.truncate))
        }
        Command::MNumber { source, order, .. } => load(&source).and_then(|d| m_numbers(&d, order)),
        Command::Verdict {
            source,
            order,
            r,
            common,
        } => load(&source).and_then(|d| verdict(&d, order, r, common.truncate)),
        Command::Catalog { source, .. } => match (source.input, source.catalog) {
            (None, None) => Ok(list_catalog()),
            (input, name) => load(&Source {
                input,
                catalog: name,
            })
            .map(|d| {
                let text = serialize_descriptor(&d);
                let json = serde_json::from_str(&text).expect("canonical text is JSON");
                Rendered::new(text, json)
            }),
        },
        Command::Validate { source, .. } => load(&source).map(|d| validate(&d)),
    };
    match result {
        Err(o) => o,
        Ok(r) => {
            let stdout = match format {
                Format::Text => r.text,
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&r.json).expect("values serialize");
                    s.push('\n');
                    s
                }
            };
            Outcome {
                code: if r.inconsistent { 3 } else { 0 },
                stdout,
                stderr: String::new(),
            }
        }
    }
}

fn load(source: &Source) -> Result<Descriptor, Outcome> {
    match (&source.input, &source.catalog) {
        (Some(path), _) => {
            let bytes = std::fs::read(path).map_err(|e| {
                Outcome::invalid("parse_descriptor", format!("{}: {e}", path.display()))
            })?;
            parse_descriptor(&bytes).map_err(|e| Outcome::invalid("parse_descriptor", e))
        }
        (None, Some(name)) => catalog_entry(name)
            .map(|e| e.descriptor())
            .map_err(|e| Outcome::invalid("catalog", e)),
        (None, None) => Err(Outcome::invalid(
            "cli",
            "one of --input or --catalog is required",
        )),
    }
}

fn need_action<'a>(
    d: &'a Descriptor,
    op: &str,
) -> Result<&'a crate::equivariant::S1ManifoldDescriptor, Outcome> {
    d.action()
        .ok_or_else(|| Outcome::invalid(op, format!("descriptor `{}` has no s1_action", d.name())))
}

fn int_json(n: &num_bigint::BigInt) -> Value {
    match i64::try_from(n) {
        Ok(v) => json!(v),
        Err(_) => json!(n.to_string()),
    }
}

pub fn rational_json(r: &Rational) -> Value {
    json!({ "num": int_json(r.numer()), "den": int_json(r.denom()) })
}

fn exponent_json(e: QExponent) -> Value {
    json!({ "num": e.numer(), "den": e.denom() })
}

fn series_json(s: &QSeries) -> Value {
    let terms: Vec<Value> = s
        .terms()
        .map(|(e, c)| json!({ "exponent": exponent_json(e), "coefficient": rational_json(c) }))
        .collect();
    json!({ "terms": terms, "error_term": s.trunc().map(exponent_json) })
}

fn mu_series_json(s: &MuSeries) -> Value {
    let terms: Vec<Value> = s
        .terms()
        .map(|(e, c)| {
            json!({
                "exponent": exponent_json(e),
                "coefficient": c.pretty(),
                "constant": c.as_constant().as_ref().map(rational_json),
            })
        })
        .collect();
    json!({ "terms": terms, "error_term": s.trunc().map(exponent_json) })
}

fn pole_json(p: &PoleOrder) -> Value {
    match p {
        PoleOrder::Vanishes { to } => {
            json!({ "vanishes": true, "order": null, "checked_to": to.map(exponent_json) })
        }
        PoleOrder::Order(o) => {
            json!({ "vanishes": false, "order": exponent_json(*o), "checked_to": null })
        }
    }
}

fn cusp_tag(c: Cusp) -> &'static str {
    match c {
        Cusp::Signature => "sign",
        Cusp::AHat => "ahat",
    }
}

fn expansion(m: &ManifoldDescriptor, cusp: Cusp, t: i64) -> Result<GenusExpansion, Outcome> {
    match cusp {
        Cusp::Signature => witten_series(m, t).map_err(|e| Outcome::invalid("witten_series", e)),
        Cusp::AHat => ahat_cusp_series(m, t).map_err(|e| Outcome::invalid("ahat_cusp_series", e)),
    }
}

fn genus(d: &Descriptor, cusp: Cusp, t: i64) -> Result<Rendered, Outcome> {
    let m = d.manifold();
    let g = expansion(m, cusp, t)?;
    let p = pole_order(&g);
    let text = format!(
        "manifold: {}\ncusp: {}\nseries: {}\npole order: {}\n",
        m.name,
        cusp_tag(cusp),
        g.series.pretty(),
        p
    );
    let json = json!({
        "manifold": m.name,
        "cusp": cusp_tag(cusp),
        "series": series_json(&g.series),
        "pole_order": pole_json(&p),
    });
    Ok(Rendered::new(text, json))
}

fn expand(d: &Descriptor, cusp: Cusp, bundle: Option<&str>, t: i64) -> Result<Rendered, Outcome> {
    let m = d.manifold();
    let mut text = format!("manifold: {}\ncusp: {}\n", m.name, cusp_tag(cusp));
    let mut json = json!({ "manifold": m.name, "cusp": cusp_tag(cusp) });
    if let Some(src) = bundle {
        let expr: BundleExpression = src
            .parse()
            .map_err(|e| Outcome::invalid("bundle_chern_character", e))?;
        let s = twisted_index_series(m, &expr, cusp, t)
            .map_err(|e| Outcome::invalid("twisted_index_series", e))?;
        text.push_str(&format!("bundle: {expr}\nindex series: {}\n", s.pretty()));
        json["bundle"] = json!(expr.to_string());
        json["index_series"] = series_json(&s);
        return Ok(Rendered::new(text, json));
    }
    let via =
        genus_via_bundles(m, cusp, t).map_err(|e| Outcome::invalid("genus_via_bundles", e))?;
    let kernel = expansion(m, cusp, t)?;
    let agree = via.series == kernel.series;
    text.push_str(&format!(
        "bundle route: {}\nkernel route agrees: {}\n",
        via.series.pretty(),
        yes_no(agree)
    ));
    json["bundle_route"] = series_json(&via.series);
    json["kernel_route_agrees"] = json!(agree);
    if cusp == Cusp::Signature {
        let tm = twisted_index(m, &BundleExpression::Tangent, cusp)
            .map_err(|e| Outcome::invalid("twisted_index", e))?;
        let q1 = via.series.coeff(QExponent::from_integer(1));
        text.push_str(&format!(
            "sign(M,TM): {}\nq^1 coefficient = 2·sign(M,TM): {}\n",
            tm,
            yes_no(q1.as_ref() == Some(&(tm.clone() * Rational::from_integer(2.into()))))
        ));
        json["sign_tm"] = rational_json(&tm);
    }
    Ok(Rendered {
        inconsistent: !agree,
        ..Rendered::new(text, json)
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn rigidity(d: &Descriptor, t: i64) -> Result<Rendered, Outcome> {
    let a = need_action(d, "rigidity_check")?;
    let rep = rigidity_check(a, t).map_err(|e| Outcome::invalid("rigidity_check", e))?;
    let mut text = format!(
        "manifold: {}\nrigidity asserted: {}\n",
        a.underlying.name,
        if rep.asserted {
            "yes (spin, action lifts)"
        } else {
            "no (action not asserted to lift to spin)"
        }
    );
    let mut json =
        json!({ "manifold": a.underlying.name, "asserted": rep.asserted, "passed": rep.passed() });
    match &rep.outcome {
        RigidityOutcome::Constant {
            series,
            expected,
            matches,
        } => {
            text.push_str(&format!(
                "constant at all orders; equals {}\n",
                series.pretty()
            ));
            text.push_str(&format!(
                "matches the non-equivariant expansion: {}\n",
                yes_no(*matches)
            ));
            if !matches {
                text.push_str(&format!("expected: {}\n", expected.pretty()));
            }
            json["constant"] = json!(true);
            json["series"] = series_json(series);
            json["expected"] = series_json(expected);
        }
        RigidityOutcome::NonConstant {
            exponent,
            coefficient,
        } => {
            text.push_str(&format!(
                "not constant: coefficient of q^{{{}}} is {}\n",
                fmt_exponent(*exponent),
                coefficient.pretty()
            ));
            json["constant"] = json!(false);
            json["first_nonconstant"] = json!({ "exponent": exponent_json(*exponent), "coefficient": coefficient.pretty() });
        }
    }
    json["lefschetz_sum"] = mu_series_json(&rep.expansion.series);
    Ok(Rendered {
        inconsistent: rep.asserted && !rep.passed(),
        ..Rendered::new(text, json)
    })
}

fn rotation_text(a: &crate::equivariant::FixedComponentDescriptor) -> String {
    a.rotation
        .iter()
        .map(|r| format!("k={} d={}", r.k, r.multiplicity))
        .collect::<Vec<_>>()
        .join(", ")
}

fn local_data(d: &Descriptor, t: i64) -> Result<Rendered, Outcome> {
    let a = need_action(d, "local_datum")?;
    a.validate()
        .map_err(|e| Outcome::invalid("local_datum", e))?;
    let mut text = format!("manifold: {}\n", a.underlying.name);
    let mut comps = Vec::new();
    for y in &a.components {
        let mu = local_datum(y, t).map_err(|e| Outcome::invalid("local_datum", e))?;
        text.push_str(&format!(
            "component {} (dim {}, sign {:+}, rotation {}): {}\n",
            y.name,
            y.dim,
            y.orientation_sign,
            rotation_text(y),
            mu.pretty()
        ));
        comps.push(json!({ "name": y.name, "datum": mu_series_json(&mu) }));
    }
    let mut json = json!({ "manifold": a.underlying.name, "components": comps });
    match sigma_components(a) {
        Ok((list, source)) => {
            let tag = match source {
                SigmaSource::Supplied => "supplied",
                SigmaSource::Derived => "derived",
            };
            text.push_str(&format!("involution fixed data: {tag}\n"));
            let mut sig = Vec::new();
            for f in &list {
                let s = witten_local_series(f, t)
                    .map_err(|e| Outcome::invalid("sigma_local_series", e))?;
                text.push_str(&format!(
                    "sigma component {} (dim {}, normal rank {}): {}\n",
                    f.name,
                    f.dim,
                    f.normal_rank,
                    s.pretty()
                ));
                sig.push(json!({ "name": f.name, "datum": series_json(&s) }));
            }
            json["sigma_source"] = json!(tag);
            json["sigma_components"] = json!(sig);
        }
        Err(e) => {
            text.push_str(&format!("involution fixed data: unavailable ({e})\n"));
            json["sigma_source"] = json!(null);
        }
    }
    Ok(Rendered::new(text, json))
}

fn m_numbers(d: &Descriptor, o: i64) -> Result<Rendered, Outcome> {
    let a = need_action(d, "m_number")?;
    a.validate().map_err(|e| Outcome::invalid("m_number", e))?;
    let mut text = format!("manifold: {}\norder: {o}\n", a.underlying.name);
    let mut comps = Vec::new();
    for y in &a.components {
        let m = m_number(y, o).map_err(|e| Outcome::invalid("m_number", e))?;
        let rots: Vec<String> = y
            .rotation
            .iter()
            .map(|r| {
                let (alpha, kt) = normalize_rotation(r.k, o);
                format!("k={} d={} -> ({:+}, {kt})", r.k, r.multiplicity, alpha)
            })
            .collect();
        text.push_str(&format!(
            "{}: {}; m_{o} = {m}; sigma codim {}\n",
            y.name,
            rots.join(", "),
            sigma_codim_at(y, o)
        ));
        let norm: Vec<Value> = y
            .rotation
            .iter()
            .map(|r| {
                let (alpha, kt) = normalize_rotation(r.k, o);
                json!({ "k": r.k, "multiplicity": r.multiplicity, "alpha": alpha, "k_tilde": kt })
            })
            .collect();
        comps.push(json!({ "name": y.name, "rotation": norm, "m": rational_json(&m), "sigma_codim": sigma_codim_at(y, o) }));
    }
    let g = m_number_global(a, o).map_err(|e| Outcome::invalid("m_number", e))?;
    text.push_str(&format!("m_{o}(M) = {g}\n"));
    Ok(Rendered::new(
        text,
        json!({ "manifold": a.underlying.name, "order": o, "components": comps, "m": rational_json(&g) }),
    ))
}

fn report_text(r: &VerdictReport) -> String {
    let mut s = format!("== {} (dim {}", r.manifold, r.dim);
    if let Some(o) = r.order {
        s.push_str(&format!(", order {o}"));
    }
    s.push_str(&format!(", r = {})\n", r.r));
    for route in &r.routes {
        s.push_str(&format!(
            "rule: {}\n  {}\n",
            route.rule.tag(),
            route.rule.statement()
        ));
        for h in &route.hypotheses {
            s.push_str(&format!(
                "  [{}] {}: {}\n",
                if h.passed { "pass" } else { "fail" },
                h.name,
                h.detail
            ));
        }
        match (&route.predicted_bound, route.consistent) {
            (Some(b), Some(c)) => s.push_str(&format!(
                "  predicted: pole order < {b}\n  computed: {}\n  consistent: {}\n",
                r.computed_pole_order,
                yes_no(c)
            )),
            _ => s.push_str("  no prediction\n"),
        }
    }
    for sv in &r.sub_verdicts {
        let state = match sv.holds {
            None => "n/a",
            Some(true) => "holds",
            Some(false) => "FAILS",
        };
        s.push_str(&format!("[{state}] {}: {}\n", sv.tag, sv.claim));
    }
    for c in &r.components {
        let bounds: Vec<String> = c
            .factor_bounds
            .iter()
            .map(|(k, kt, b)| format!("k={k}: k̃={kt}, 1/4 - k̃/o = {b}"))
            .collect();
        s.push_str(&format!(
            "component {}: m_o = {}, sigma codim {}; {}\n",
            c.name,
            c.m_o,
            c.sigma_codim,
            bounds.join("; ")
        ));
    }
    for n in &r.notes {
        s.push_str(&format!("note: {n}\n"));
    }
    s
}

fn report_json(r: &VerdictReport) -> Value {
    json!({
        "manifold": r.manifold,
        "dim": r.dim,
        "order": r.order,
        "r": r.r,
        "consistent": r.consistent(),
        "computed_pole_order": pole_json(&r.computed_pole_order),
        "routes": r.routes.iter().map(|route| json!({
            "rule": route.rule.tag(),
            "statement": route.rule.statement(),
            "hypotheses": route.hypotheses.iter().map(|h| json!({ "name": h.name, "passed": h.passed, "detail": h.detail })).collect::<Vec<_>>(),
            "predicted_bound": route.predicted_bound.as_ref().map(rational_json),
            "consistent": route.consistent,
        })).collect::<Vec<_>>(),
        "sub_verdicts": r.sub_verdicts.iter().map(|s| json!({ "tag": s.tag, "claim": s.claim, "applies": s.applies, "holds": s.holds })).collect::<Vec<_>>(),
        "components": r.components.iter().map(|c| json!({
            "name": c.name,
            "m_o": rational_json(&c.m_o),
            "sigma_codim": c.sigma_codim,
            "factor_bounds": c.factor_bounds.iter().map(|(k, kt, b)| json!({ "k": k, "k_tilde": kt, "bound": rational_json(b) })).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "notes": r.notes,
    })
}

fn verdict(d: &Descriptor, order: Option<i64>, r: u32, t: i64) -> Result<Rendered, Outcome> {
    let mut reports = Vec::new();
    if let Some(a) = d.action() {
        if order.is_none() || order == Some(2) {
            reports.push(
                verdict_involution(a, r, t)
                    .map_err(|e| Outcome::invalid("verdict_involution", e))?,
            );
        }
        if let Some(o) = order {
            reports.push(
                verdict_cyclic(a, o, r, t).map_err(|e| Outcome::invalid("verdict_cyclic", e))?,
            );
        }
    } else if order.is_some() {
        return Err(Outcome::invalid(
            "verdict_cyclic",
            format!("descriptor `{}` has no s1_action", d.name()),
        ));
    }
    let m = d.manifold();
    if m.cohomology_vanishing_r.is_some() || d.action().is_none() {
        let nontrivial = d.action().is_some_and(has_nontrivial_action);
        reports.push(
            verdict_cohomology(m, nontrivial, t)
                .map_err(|e| Outcome::invalid("verdict_cohomology", e))?,
        );
    }
    let consistent = reports.iter().all(|r| r.consistent());
    let mut text: String = reports
        .iter()
        .map(report_text)
        .collect::<Vec<_>>()
        .join("\n");
    text.push_str(&format!(
        "\noverall: {}\n",
        if consistent {
            "consistent"
        } else {
            "INCONSISTENT"
        }
    ));
    let json = json!({ "reports": reports.iter().map(report_json).collect::<Vec<_>>(), "consistent": consistent });
    Ok(Rendered {
        inconsistent: !consistent,
        ..Rendered::new(text, json)
    })
}

fn list_catalog() -> Rendered {
    let mut text = String::new();
    let mut items = Vec::new();
    for e in catalog() {
        let d = e.descriptor();
        let m = d.manifold();
        let kind = if d.action().is_some() {
            "circle action"
        } else {
            "no action"
        };
        let neg = if e.negative_control {
            ", negative control"
        } else {
            ""
        };
        text.push_str(&format!("{}  dim {}  {kind}{neg}\n", e.name, m.dim));
        items.push(json!({ "name": e.name, "dimension": m.dim, "action": d.action().is_some(), "negative_control": e.negative_control }));
    }
    Rendered::new(text, json!({ "entries": items }))
}

fn validate(d: &Descriptor) -> Rendered {
    let m = d.manifold();
    let (comps, sigma) = match d.action() {
        Some(a) => (
            a.components.len(),
            a.sigma_components.as_ref().map(|l| l.len()),
        ),
        None => (0, None),
    };
    let text = format!(
        "valid: {} (dimension {}, {} fixed components{})\n",
        m.name,
        m.dim,
        comps,
        sigma
            .map(|n| format!(", {n} involution-fixed components"))
            .unwrap_or_default()
    );
    let json = json!({
        "valid": true,
        "name": m.name,
        "dimension": m.dim,
        "fixed_components": comps,
        "sigma_fixed_components": sigma,
    });
    Rendered::new(text, json)
}
