//! Task orchestration and report assembly.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde_json::{json, Value};

use super::config::{AnalysisConfig, Expected, MembershipMethod, MembershipSpec, Task};
use super::CliError;
use crate::covariants::{compare_series, expand_series, hilbert_function, minimal_generators, verify_identity};
use crate::freealg::{Alphabet, Word};
use crate::grading::{hdet, validate_grading, verify_resolution_euler, Grading, GradingError, Hdet};
use crate::ideals::{
    block_suffix_cover, member_via_equivalence, suffix_cover_certificate, Provenance, Segment, TruncatedIdeal,
};
use crate::pertinency::{report_from_ideal, GrowthClass, PertinencyReport};
use crate::rewrite::{Family, Presentation};

/// Degree bound for the resolution check reported with `hdet`.
const EULER_DEGREE: usize = 10;

#[derive(Debug, Clone)]
pub struct Report {
    /// Deterministic: identical for identical configs.
    pub json: Value,
    /// Human-readable summary, including timings.
    pub text: String,
    /// Computed values in the shape of an expected-results block.
    pub summary: Expected,
    pub timings: Vec<(String, Duration)>,
    pub alphabet: Arc<Alphabet>,
}

struct Ctx<'a> {
    cfg: &'a AnalysisConfig,
    pres: Presentation,
    grading: Grading,
    ideal: Option<TruncatedIdeal>,
    hdet: Option<Hdet>,
    certified: BTreeSet<Word>,
    summary: Expected,
    text: String,
}

impl Ctx<'_> {
    fn render(&self, w: &Word) -> String {
        self.pres.alphabet().render(w)
    }

    fn word(&self, at: &str, s: &str) -> Result<Word, CliError> {
        self.pres.word(s).map_err(|e| CliError::config(at, format!("{s}: {e}")))
    }

    fn ideal(&mut self) -> Result<&TruncatedIdeal, CliError> {
        if self.ideal.is_none() {
            let j = TruncatedIdeal::build(&self.pres, &self.grading, self.cfg.truncation)
                .map_err(|e| CliError::computation("ideal", e.to_string()))?;
            self.ideal = Some(j);
        }
        Ok(self.ideal.as_ref().expect("built above"))
    }

    fn in_ideal(&mut self, w: &Word) -> Result<bool, CliError> {
        self.ideal()?;
        let j = self.ideal.as_ref().expect("built");
        j.contains_word(&self.pres, w).map_err(|e| CliError::computation("memberships", e.to_string()))
    }
}

const ORDER: [Task; 7] = [
    Task::Validate,
    Task::Hdet,
    Task::Memberships,
    Task::Covariants,
    Task::Hilbert,
    Task::VerifyIdentities,
    Task::Pertinency,
];

fn task_name(t: Task) -> String {
    serde_json::to_value(t).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default()
}

/// Run every requested task in dependency order.
pub fn run(cfg: &AnalysisConfig) -> Result<Report, CliError> {
    cfg.check()?;
    let pres = cfg.build_presentation()?;
    let group = cfg.build_group()?;
    let grading = Grading::new(pres.alphabet(), &group, &cfg.grading).map_err(|e| CliError::config("grading", e.to_string()))?;
    let mut ctx = Ctx {
        cfg,
        pres,
        grading,
        ideal: None,
        hdet: None,
        certified: BTreeSet::new(),
        summary: Expected::default(),
        text: String::new(),
    };
    let mut tasks = serde_json::Map::new();
    let mut timings = Vec::new();

    let validation = validate_grading(&ctx.pres, &ctx.grading);
    if !validation.is_valid() && cfg.tasks.iter().any(|&t| t != Task::Validate) {
        let v = &validation.violations[0];
        return Err(CliError::config("grading", format!("relation {} is not G-homogeneous", v.relation)));
    }
    for task in ORDER.into_iter().filter(|&t| cfg.has(t)) {
        let start = Instant::now();
        let value = match task {
            Task::Validate => {
                ctx.summary.valid = Some(validation.is_valid());
                json!({
                    "valid": validation.is_valid(),
                    "inner_faithful": validation.inner_faithful,
                    "violations": validation.violations.iter().map(|v| json!({
                        "relation": v.relation,
                        "degrees": v.degrees.iter().map(|(m, d)| json!([m, d])).collect::<Vec<_>>(),
                    })).collect::<Vec<_>>(),
                })
            }
            Task::Hdet => hdet_task(&mut ctx)?,
            Task::Memberships => memberships_task(&mut ctx)?,
            Task::Covariants => covariants_task(&mut ctx)?,
            Task::Hilbert => hilbert_task(&mut ctx)?,
            Task::VerifyIdentities => identities_task(&mut ctx)?,
            Task::Pertinency => pertinency_task(&mut ctx)?,
        };
        tasks.insert(task_name(task), value);
        timings.push((task_name(task), start.elapsed()));
    }

    let json = json!({
        "name": cfg.name,
        "algebra": {
            "family": ctx.pres.family().tag(),
            "generators": ctx.pres.alphabet().names(),
            "rules": ctx.pres.rules().len(),
            "status": ctx.pres.status().to_string(),
        },
        "group": { "order": group.order(), "abelian": group.is_abelian() },
        "grading": cfg.grading,
        "truncation": cfg.truncation,
        "tasks": Value::Object(tasks),
    });
    let mut text = String::new();
    let _ = writeln!(text, "{} ({}, |G| = {}, N = {})", cfg.name.as_deref().unwrap_or("analysis"), ctx.pres.family().tag(), group.order(), cfg.truncation);
    text.push_str(&ctx.text);
    for (t, d) in &timings {
        let _ = writeln!(text, "  time {t}: {:.3} s", d.as_secs_f64());
    }
    Ok(Report { json, text, summary: ctx.summary, timings, alphabet: ctx.pres.alphabet().clone() })
}

fn hdet_task(ctx: &mut Ctx) -> Result<Value, CliError> {
    let h = match hdet(&ctx.pres, &ctx.grading) {
        Ok(h) => h,
        Err(GradingError::UnsupportedFamily(f)) => {
            let _ = writeln!(ctx.text, "  hdet: no closed form for family {f}");
            return Ok(json!({ "supported": false, "family": f }));
        }
        Err(e) => return Err(CliError::computation("hdet", e.to_string())),
    };
    ctx.summary.hdet_trivial = Some(h.trivial);
    let name = ctx.grading.name(h.element).to_string();
    let _ = writeln!(ctx.text, "  hdet = {} = {name} ({})", h.formula, if h.trivial { "trivial" } else { "nontrivial" });
    let mut v = json!({ "supported": true, "element": name, "trivial": h.trivial, "formula": h.formula });
    if matches!(ctx.pres.family(), Family::DownUp { .. }) {
        let n = EULER_DEGREE.min(ctx.cfg.truncation);
        let e = verify_resolution_euler(&ctx.pres, &ctx.grading, n).map_err(|e| CliError::computation("hdet", e.to_string()))?;
        v["euler_check"] = json!({
            "through_degree": n,
            "ok": e.ok,
            "failure": e.failure.map(|(d, g, s)| json!({ "degree": d, "element": g, "sum": s })),
        });
    }
    ctx.hdet = Some(h);
    Ok(v)
}

fn provenance_json(ctx: &Ctx, p: &Provenance) -> Value {
    let letter = |l: &u8| ctx.pres.alphabet().names()[*l as usize].clone();
    match p {
        Provenance::Intersection => json!({ "source": "intersection" }),
        Provenance::Left { letter: l, pivot } => json!({ "source": "left", "letter": letter(l), "of": ctx.render(pivot) }),
        Provenance::Right { pivot, letter: l } => json!({ "source": "right", "letter": letter(l), "of": ctx.render(pivot) }),
    }
}

fn segments(ctx: &Ctx, at: &str, m: &MembershipSpec) -> Result<Option<Vec<Segment>>, CliError> {
    let Some(specs) = &m.segments else {
        return Ok(None);
    };
    let mut out = Vec::with_capacity(specs.len());
    for s in specs {
        out.push(match s {
            super::config::SegmentSpec::Literal(w) => Segment::Literal(ctx.word(at, w)?),
            super::config::SegmentSpec::Commuting(fs) => {
                Segment::Commuting(fs.iter().map(|(f, e)| Ok((ctx.word(at, f)?, *e))).collect::<Result<_, CliError>>()?)
            }
        });
    }
    Ok(Some(out))
}

/// Decide one membership; `Ok((holds, certificate))`.
fn membership(ctx: &mut Ctx, at: &str, m: &MembershipSpec, w: &Word) -> Result<(bool, Value), CliError> {
    let via = |ctx: &Ctx| -> Result<Option<Word>, CliError> {
        let v = m.via.as_deref().ok_or_else(|| CliError::config(at, "this method needs `via`"))?;
        let v = ctx.word(at, v)?;
        Ok(ctx.certified.contains(&v).then_some(v))
    };
    let not_certified = json!({ "reason": "via is not a certified member" });
    Ok(match m.method {
        MembershipMethod::Linear => {
            if w.len() > ctx.cfg.truncation {
                (false, json!({ "reason": "beyond truncation" }))
            } else {
                let holds = ctx.in_ideal(w)?;
                let j = ctx.ideal.as_ref().expect("built");
                let prov = j.provenance(w.len()).get(w).map(|p| provenance_json(ctx, p));
                (holds, json!({ "truncation": ctx.cfg.truncation, "pivot_provenance": prov }))
            }
        }
        MembershipMethod::SuffixCover => match segments(ctx, at, m)? {
            None => match suffix_cover_certificate(&ctx.grading, w) {
                Some(c) => (
                    true,
                    json!({ "suffix_degrees": c.witnesses.iter().map(|(g, k)| json!({ "element": ctx.grading.name(*g), "suffix": k })).collect::<Vec<_>>() }),
                ),
                None => (false, json!({ "reason": "suffix degrees do not exhaust G" })),
            },
            Some(segs) => {
                let joined = segs.iter().fold(Word::empty(), |acc, s| acc.concat(&s.word()));
                if &joined != w {
                    return Err(CliError::config(at, "segments do not multiply out to the word"));
                }
                match block_suffix_cover(&ctx.pres, &ctx.grading, &segs).map_err(|e| CliError::computation("memberships", e.to_string()))? {
                    Some(c) => (
                        true,
                        json!({ "commuting_blocks": c.witnesses.iter().map(|b| json!({
                            "element": ctx.grading.name(b.element),
                            "segment": b.segment,
                            "exponents": b.exponents,
                            "order": b.order,
                            "suffix": b.suffix,
                        })).collect::<Vec<_>>() }),
                    ),
                    None => (false, json!({ "reason": "right factors do not exhaust G" })),
                }
            }
        },
        MembershipMethod::Multiple => match via(ctx)? {
            None => (false, not_certified),
            Some(v) => match w.find(&v) {
                Some(pos) => (true, json!({ "via": ctx.render(&v), "position": pos })),
                None => (false, json!({ "reason": "via is not a subword" })),
            },
        },
        MembershipMethod::Equivalence => match via(ctx)? {
            None => (false, not_certified),
            Some(v) => match member_via_equivalence(&ctx.pres, w, &v).map_err(|e| CliError::computation("memberships", e.to_string()))? {
                Some(lambda) => (true, json!({ "via": ctx.render(&v), "lambda": lambda.to_string() })),
                None => (false, json!({ "reason": "normal forms are not proportional" })),
            },
        },
    })
}

fn memberships_task(ctx: &mut Ctx) -> Result<Value, CliError> {
    let mut out = Vec::new();
    let mut all = true;
    for (i, m) in ctx.cfg.memberships.iter().enumerate() {
        let at = format!("memberships[{i}]");
        let w = ctx.word(&at, &m.word)?;
        let (holds, certificate) = membership(ctx, &at, m, &w)?;
        let linear_check = if holds && m.method != MembershipMethod::Linear && w.len() <= ctx.cfg.truncation {
            let ok = ctx.in_ideal(&w)?;
            if !ok {
                return Err(CliError::computation("memberships", format!("certificate for {} contradicts linear algebra", m.word)));
            }
            Some(ok)
        } else {
            None
        };
        if holds {
            ctx.certified.insert(w.clone());
        }
        all &= holds;
        let _ = writeln!(ctx.text, "  member {} [{}]: {}", m.label.as_deref().unwrap_or(&m.word), method_name(m.method), holds);
        out.push(json!({
            "word": m.word,
            "label": m.label,
            "degree": w.len(),
            "method": method_name(m.method),
            "holds": holds,
            "certificate": certificate,
            "linear_check": linear_check,
        }));
    }
    ctx.summary.memberships_hold = Some(all);
    Ok(json!({ "all_hold": all, "results": out }))
}

fn method_name(m: MembershipMethod) -> String {
    serde_json::to_value(m).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default()
}

fn covariants_task(ctx: &mut Ctx) -> Result<Value, CliError> {
    let n = ctx.cfg.truncation;
    let cov = minimal_generators(&ctx.pres, &ctx.grading, n).map_err(|e| CliError::computation("covariants", e.to_string()))?;
    let gens: Vec<String> = cov.generators.iter().map(|w| ctx.render(w)).collect();
    let generated = cov.is_generated(&ctx.pres);
    if !generated {
        return Err(CliError::computation("covariants", "identity component not spanned by generator products"));
    }
    let _ = writeln!(ctx.text, "  covariant generators (minimal through degree {n}): {}", gens.join(", "));
    ctx.summary.generators = Some(gens.clone());
    ctx.summary.hilbert.get_or_insert_with(|| cov.hilbert());
    Ok(json!({
        "generators": gens,
        "degrees": cov.generators.iter().map(Word::len).collect::<Vec<_>>(),
        "minimal_through_degree": n,
        "generated_check": generated,
        "hilbert": cov.hilbert(),
    }))
}

fn hilbert_task(ctx: &mut Ctx) -> Result<Value, CliError> {
    let n = ctx.cfg.truncation;
    let values = hilbert_function(&ctx.pres, &ctx.grading, n).map_err(|e| CliError::computation("hilbert", e.to_string()))?;
    let _ = writeln!(ctx.text, "  dim (A^coG)_n, n <= {n}: {values:?}");
    ctx.summary.hilbert = Some(values.clone());
    let mut v = json!({ "values": values, "through_degree": n });
    if let Some(series) = &ctx.cfg.series {
        let err = |e: crate::covariants::CovariantError| CliError::config("series", e.to_string());
        let matches = compare_series(&values, &series.numerator, &series.denominator).map_err(err)?;
        let expansion = expand_series(&series.numerator, &series.denominator, values.len()).map_err(err)?;
        let _ = writeln!(ctx.text, "  series match: {matches}");
        ctx.summary.series_match = Some(matches);
        v["series"] = json!({
            "numerator": series.numerator,
            "denominator": series.denominator,
            "expansion": expansion.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "matches": matches,
        });
    }
    Ok(v)
}

fn identities_task(ctx: &mut Ctx) -> Result<Value, CliError> {
    let mut out = Vec::new();
    let mut all = true;
    for (i, id) in ctx.cfg.identities.iter().enumerate() {
        let at = format!("identities[{i}]");
        let parse = |s: &str| ctx.pres.parse(s).map_err(|e| CliError::config(&at, format!("{s}: {e}")));
        let (lhs, rhs) = (parse(&id.lhs)?, parse(&id.rhs)?);
        let holds = verify_identity(&ctx.pres, &lhs, &rhs).map_err(|e| CliError::computation("verify-identities", e.to_string()))?;
        all &= holds;
        let _ = writeln!(ctx.text, "  identity {}: {holds}", id.label.as_deref().unwrap_or(&id.lhs));
        out.push(json!({ "label": id.label, "lhs": id.lhs, "rhs": id.rhs, "holds": holds }));
    }
    ctx.summary.identities_hold = Some(all);
    Ok(json!({ "all_hold": all, "results": out }))
}

fn growth_json(class: &GrowthClass) -> Value {
    match class {
        GrowthClass::EventuallyZero { from } => json!({ "class": "eventually-zero", "from": from }),
        GrowthClass::BoundedBy { bound, window } => json!({ "class": "bounded", "bound": bound, "window": [window.0, window.1] }),
        GrowthClass::UnboundedEvidence { window } => json!({ "class": "unbounded-evidence", "window": [window.0, window.1] }),
    }
}

fn pertinency_json(ctx: &Ctx, r: &PertinencyReport) -> Value {
    let certificate = r.certificate.as_ref().map(|c| {
        json!({
            "kind": c.kind.name(),
            "words": c.words.iter().map(|w| ctx.render(w)).collect::<Vec<_>>(),
            "gk_bound": c.gk_bound,
            "statement": c.kind.statement(),
        })
    });
    json!({
        "gk_dim": r.gk_dim,
        "truncation": r.truncation,
        "dims": r.growth.dims,
        "ambient_dims": r.growth.ambient_dims,
        "growth": growth_json(&r.growth.class),
        "certificate": certificate,
        "obstruction_graph": { "obstructions": r.graph.obstructions, "states": r.graph.states, "chain": r.graph.chain },
        "pty": {
            "lower_bound": r.lower_bound.map(|(b, _)| b),
            "status": r.lower_bound.map_or("none", |(_, s)| s.as_str()),
            "ge_2": r.pty_ge_2.as_str(),
            "eq_3": r.pty_eq_3.as_str(),
        },
        "isolated_singularity": r.isolated_singularity,
        "statements": r.statements,
        "hdet": r.hdet.as_ref().map(|h| json!({ "element": ctx.grading.name(h.element), "trivial": h.trivial })),
        "window_agrees": r.window_agrees,
    })
}

fn pertinency_task(ctx: &mut Ctx) -> Result<Value, CliError> {
    let gk = match (ctx.cfg.algebra.gk_dim, ctx.pres.family()) {
        (Some(d), _) => d,
        (None, Family::Custom) => return Err(CliError::config("algebra.gk_dim", "custom algebras need gk_dim for pertinency")),
        (None, _) => 3,
    };
    if ctx.hdet.is_none() {
        ctx.hdet = hdet(&ctx.pres, &ctx.grading).ok();
    }
    ctx.ideal()?;
    let certified: Vec<Word> = ctx.certified.iter().cloned().collect();
    let j = ctx.ideal.as_ref().expect("built");
    let r = report_from_ideal(&ctx.pres, j, ctx.grading.group().order(), gk, ctx.hdet.clone(), &certified);
    if !r.window_agrees {
        return Err(CliError::computation("pertinency", "pattern certificate contradicts the dimension window"));
    }
    let v = pertinency_json(ctx, &r);
    let _ = writeln!(
        ctx.text,
        "  dim (A/J)_n: {:?}\n  Pty >= {} ({}), certificate: {}",
        r.growth.dims,
        r.lower_bound.map_or(0, |(b, _)| b),
        r.lower_bound.map_or("none", |(_, s)| s.as_str()),
        r.certificate.as_ref().map_or("none", |c| c.kind.name()),
    );
    ctx.summary.dims = Some(r.growth.dims.clone());
    ctx.summary.pty_lower_bound = r.lower_bound.map(|(b, _)| b);
    ctx.summary.pty_status = r.lower_bound.map(|(_, s)| s.as_str().to_string());
    ctx.summary.certificate_kind = r.certificate.as_ref().map(|c| c.kind.name().to_string());
    ctx.summary.isolated_singularity = Some(r.isolated_singularity);
    Ok(v)
}
