//! Verification tasks with machine-readable reports. Each task returns an [`Outcome`]
//! whose `passed` flag is the conjunction of all its checks.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::engine::{parse_word, tensor_json, GeneratorMap, Kind, Mono, Presentation};
use crate::lifting::{
    assemble_lifting, cleft_relations, compare, generic_relations, lifting_relation, parse_reference, reference_element, LiftContext,
    LiftError, LiftingPresentation, ReferenceRelation, Relation, ALL_MU,
};
use crate::presentations::{
    build, build_certified, check_local_confluence, compare_tables, derive_table, hilbert_series, nichols_series_formula,
    presentation_json, reference_table, BuildError, DeriveError,
};
use crate::rootdata::{BraidingConfig, ConfigError, Root, ROOTS};
use crate::scalars::Param;
use crate::structure::{
    check_support, closed_forms, coproduct_diff, extract_table, fit_constants, parse_coproducts, power_coproducts, psi_tensor, r_from_lie,
    twist_coproduct, Case, PowerCoproduct, ScalarTable, StructureError, TwistData,
};

/// Reference data shipped with the crate.
pub mod data {
    pub const ROOT_COPRODUCTS: &str = include_str!("../../../data/reference/root_coproducts.json");
    pub const GENERIC_N5: &str = include_str!("../../../data/reference/generic_n5.json");
    pub const GENERIC_N7: &str = include_str!("../../../data/reference/generic_n7.json");
    pub const GENERIC_N9: &str = include_str!("../../../data/reference/generic_n9.json");
    pub const CLEFT_N7: &str = include_str!("../../../data/reference/cleft_n7.json");
    pub const LIFT_N7: &str = include_str!("../../../data/reference/lift_n7.json");

    /// The generic-case relation list for order `n`, if one is shipped.
    pub fn generic(n: u16) -> Option<&'static str> {
        match n {
            5 => Some(GENERIC_N5),
            7 => Some(GENERIC_N7),
            9 => Some(GENERIC_N9),
            _ => None,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Derive(#[from] DeriveError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Lift(#[from] LiftError),
    #[error(transparent)]
    Engine(#[from] crate::engine::EngineError),
    #[error("bad reference data: {0}")]
    Reference(#[from] serde_json::Error),
}

impl VerifyError {
    /// Errors caused by the request rather than by the computation.
    pub fn is_usage(&self) -> bool {
        matches!(self, VerifyError::Config(_) | VerifyError::Usage(_) | VerifyError::Build(BuildError::Config(_)))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub passed: bool,
    pub report: Value,
}

impl Outcome {
    fn new(passed: bool, report: Value) -> Self {
        Outcome { passed, report }
    }
}

/// Derives the bracket table of `kind` from its seed relations and compares it with
/// the reference table entry by entry.
pub fn brackets(kind: Kind, config: BraidingConfig, params: &[Param]) -> Result<Outcome, VerifyError> {
    config.check_params(params)?;
    if kind.has_powers() {
        return Err(VerifyError::Usage(format!("bracket tables are defined for kinds without power rules, not {}", kind.name())));
    }
    let reference = reference_table(kind, config, params)?;
    let d = derive_table(kind, config, params, &reference)?;
    let mismatches = compare_tables(&reference, &d.table, kind.letter());
    Ok(Outcome::new(
        d.certified && mismatches.is_empty(),
        json!({ "kind": kind.name(), "derivation": d, "mismatches": mismatches }),
    ))
}

/// Images of the four non-simple root vectors under the coproduct against the reference.
pub fn coproducts(config: BraidingConfig) -> Result<Outcome, VerifyError> {
    let p = Arc::new(build(Kind::PreNichols, config, &[], None)?);
    let map = GeneratorMap::coproduct(p);
    let mut passed = true;
    let mut roots = Vec::new();
    for r in parse_coproducts(data::ROOT_COPRODUCTS)? {
        let diffs = coproduct_diff(&map, &r)?;
        passed &= diffs.is_empty();
        roots.push(json!({ "root": r.root, "terms": r.terms.len(), "diffs": diffs }));
    }
    Ok(Outcome::new(passed, json!({ "roots": roots })))
}

/// The scalar table read off the power coproducts against the closed forms.
pub fn scalars(config: BraidingConfig) -> Result<Outcome, VerifyError> {
    let pcs = power_coproducts(config)?;
    let table = extract_table(config, &pcs)?;
    let expected = closed_forms(config)?;
    let mut o = scalar_outcome(&table, &expected);
    o.report["M"] = json!(config.m());
    Ok(o)
}

fn scalar_outcome(table: &ScalarTable, expected: &ScalarTable) -> Outcome {
    let diffs: Vec<Value> = (1..=table.values.len())
        .filter(|i| table.get(*i) != expected.get(*i))
        .map(|i| json!({ "scalar": table.case.label(i), "extracted": table.get(i).to_string(), "closed_form": expected.get(i).to_string() }))
        .collect();
    Outcome::new(diffs.is_empty(), json!({ "table": table.to_json(), "diffs": diffs }))
}

/// Supports of `Delta(x_alpha)` and `Delta(x_alpha^(N_alpha))` for every root.
pub fn support(config: BraidingConfig) -> Result<Outcome, VerifyError> {
    let p = Arc::new(build(Kind::PreNichols, config, &[], None)?);
    let map = GeneratorMap::coproduct(p);
    let pcs = power_coproducts(config)?;
    let mut items: Vec<(Root, u16, &crate::engine::Tensor)> = ROOTS.iter().map(|r| (*r, 1, map.letter_image(*r))).collect();
    for pc in &pcs {
        items.push((pc.root, pc.exponent, &pc.tensor));
    }
    let rep = check_support(items);
    Ok(Outcome::new(rep.passed(), serde_json::to_value(&rep)?))
}

/// Twist transport of every power coproduct from `source` to `target`.
pub fn twist(source: BraidingConfig, target: BraidingConfig) -> Result<Outcome, VerifyError> {
    let data = TwistData::new(source, target)?;
    let ps = power_coproducts(source)?;
    let pt = power_coproducts(target)?;
    let mut passed = true;
    let mut roots = Vec::new();
    for (a, b) in ps.iter().zip(pt.iter()) {
        let top = Mono::power(a.root, a.exponent as u8);
        let lhs = b.tensor.map_coeffs(|c| c.scale(&data.f(&top)));
        let rhs = psi_tensor(&twist_coproduct(&a.tensor, &data), &data);
        let ok = lhs == rhs;
        passed &= ok;
        roots.push(json!({ "root": a.root.name(), "exponent": a.exponent, "terms": a.tensor.len(), "holds": ok }));
    }
    Ok(Outcome::new(passed, json!({ "sigma": data.sigma, "roots": roots })))
}

/// Predicts every coefficient of every power coproduct from fitted structure
/// constants; in the coprime case also checks `a_2 a_1 = 2 a_3`.
pub fn lie(config: BraidingConfig) -> Result<Outcome, VerifyError> {
    let pcs = power_coproducts(config)?;
    let k = match fit_constants(config, &pcs) {
        Ok(k) => k,
        Err(e @ StructureError::HypothesisViolation(..)) => {
            return Ok(Outcome::new(false, json!({ "hypothesis": false, "reason": e.to_string() })));
        }
        Err(e) => return Err(e.into()),
    };
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for pc in &pcs {
        for ((l, r), c) in pc.tensor.sorted() {
            let predicted = r_from_lie(pc.root, &l, &r, &k)?;
            let found = c.as_cyclo().ok_or_else(|| StructureError::NotScalar(format!("{l} (x) {r}")))?;
            checked += 1;
            if found != predicted {
                mismatches.push(json!({ "root": pc.root.name(), "left": l.to_string(), "right": r.to_string(),
                    "coefficient": found.to_string(), "predicted": predicted.to_string() }));
            }
        }
    }
    let mut relation = Value::Null;
    let mut passed = mismatches.is_empty();
    if Case::of(config) == Case::Coprime {
        let t = extract_table(config, &pcs)?;
        let ok = &t.get(2).clone() * t.get(1) == t.get(3).scale_int(2);
        passed &= ok;
        relation = json!({ "a2*a1 == 2*a3": ok });
    }
    let constants: BTreeMap<String, String> =
        k.c.iter().map(|((b, a), v)| (format!("[{},{}]", b.name(), a.name()), v.to_string())).collect();
    Ok(Outcome::new(
        passed,
        json!({ "hypothesis": true, "constants": constants, "checked": checked, "mismatches": mismatches, "scalar_relation": relation }),
    ))
}

/// Overlap ambiguities of an unbounded or Nichols presentation.
pub fn confluence(kind: Kind, config: BraidingConfig, params: &[Param]) -> Result<Outcome, VerifyError> {
    let p = plain(kind, config, params)?;
    let rep = check_local_confluence(&p);
    let unresolved: Vec<_> = rep.ambiguities.iter().filter(|a| !a.resolved).collect();
    Ok(Outcome::new(
        rep.all_resolved,
        json!({ "kind": kind.name(), "ambiguities": rep.ambiguities.len(), "unresolved": unresolved }),
    ))
}

fn plain(kind: Kind, config: BraidingConfig, params: &[Param]) -> Result<Presentation, VerifyError> {
    if matches!(kind, Kind::CleftLambdaMu | Kind::LiftLambdaMu) {
        return Err(VerifyError::Usage(format!("{} needs its power relations; use the cleft or lift task", kind.name())));
    }
    Ok(build(kind, config, params, None)?)
}

/// Dimensions of the graded pieces up to `bound`. For the Nichols algebra they are
/// compared with the product formula.
pub fn hilbert(kind: Kind, config: BraidingConfig, params: &[Param], bound: [i64; 2]) -> Result<Outcome, VerifyError> {
    let p = plain(kind, config, params)?;
    let h = hilbert_series(&p, bound);
    let mut passed = true;
    if kind == Kind::Nichols {
        passed = h.dims == nichols_series_formula(&config, bound);
    }
    let dims: Vec<Value> = h.dims.iter().map(|(d, v)| json!({ "degree": d, "dim": v })).collect();
    Ok(Outcome::new(passed, json!({ "kind": kind.name(), "bound": bound, "total": h.total(), "dims": dims })))
}

/// The rewrite system of `kind`, certified by overlap resolution.
pub fn emit_presentation(kind: Kind, config: BraidingConfig, params: &[Param]) -> Result<Outcome, VerifyError> {
    plain(kind, config, params)?;
    let (p, rep) = build_certified(kind, config, params, None)?;
    Ok(Outcome::new(rep.all_resolved, json!({ "certified": rep.all_resolved, "presentation": presentation_json(&p) })))
}

/// The admissible `mu_alpha` at `config`.
pub fn admissible_mu(config: BraidingConfig) -> Vec<Param> {
    ALL_MU.iter().copied().filter(|p| config.admissible(*p)).collect()
}

/// The active `lambda` parameters at `config`.
pub fn admissible_lambda(config: BraidingConfig) -> Vec<Param> {
    [Param::L1, Param::L2].into_iter().filter(|p| config.admissible(*p)).collect()
}

/// Sections and cleft relations, compared with `reference` when given.
pub fn cleft(ctx: &LiftContext, reference: Option<&[ReferenceRelation]>) -> Result<(Outcome, LiftingPresentation), VerifyError> {
    let (table, sections) = ctx.sections()?;
    let rels = cleft_relations(ctx, &table)?;
    let certified = sections.iter().all(|s| s.certified);
    let mut passed = certified;
    let mut comparison = Value::Null;
    if let Some(r) = reference {
        let rep = compare(&rels, r, &ctx.cleft, None, None)?;
        passed &= rep.passed();
        comparison = serde_json::to_value(&rep)?;
    }
    let sec: Vec<Value> = sections
        .iter()
        .map(|s| json!({ "root": s.root.name(), "certified": s.certified, "peeled": s.peeled, "terms": s.element.len() }))
        .collect();
    Ok((Outcome::new(passed, json!({ "sections": sec, "relations": rels.to_json(), "comparison": comparison })), rels))
}

/// Generic-case relations read off the power coproducts, compared with `reference`.
pub fn generic(config: BraidingConfig, reference: Option<&[ReferenceRelation]>) -> Result<(Outcome, LiftingPresentation), VerifyError> {
    let pcs: Vec<PowerCoproduct> = power_coproducts(config)?;
    let table = extract_table(config, &pcs)?;
    let mu = admissible_mu(config);
    let rels = generic_relations(config, &pcs, &mu)?;
    let mut passed = true;
    let mut comparison = Value::Null;
    if let Some(r) = reference {
        let p = build(Kind::PreNichols, config, &[], None)?;
        let rep = compare(&rels, r, &p, Some(&table), None)?;
        passed = rep.passed();
        comparison = serde_json::to_value(&rep)?;
    }
    Ok((Outcome::new(passed, json!({ "relations": rels.to_json(), "comparison": comparison })), rels))
}

/// Parses a reference relation list.
pub fn load_reference(text: &str) -> Result<Vec<ReferenceRelation>, VerifyError> {
    Ok(parse_reference(text)?)
}

/// `coefficient (x) term` listing of a power coproduct, for reports.
pub fn power_coproduct_json(pc: &PowerCoproduct) -> Value {
    json!({ "root": pc.root.name(), "exponent": pc.exponent, "terms": tensor_json(&pc.tensor) })
}

/// How much of the lifted `beta` relation is compared: the named terms only, or all.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    Spot,
    Full,
}

/// Number of leading reference terms checked by the spot check, besides the last one.
pub const SPOT_TERMS: usize = 10;

/// Computes the lifted relations for `roots` and compares them with `reference`.
///
/// `restore` may supply relations computed earlier; `save` sees every newly computed
/// one. The `beta` relation is compared in `u(lambda, mu)`, which needs all six
/// relations; with [`Scope::Spot`] only its first [`SPOT_TERMS`] and its last
/// reference terms are compared.
pub fn lift(
    ctx: &LiftContext,
    roots: &[Root],
    reference: Option<&[ReferenceRelation]>,
    scope: Scope,
    mut restore: impl FnMut(Root) -> Option<Relation>,
    mut save: impl FnMut(&Relation),
) -> Result<(Outcome, LiftingPresentation), VerifyError> {
    let mu = admissible_mu(ctx.config);
    let (table, sections) = ctx.sections()?;
    let cleft = cleft_relations(ctx, &table)?;
    let cm = ctx.cleft_mu(&cleft, &mu)?;
    let wants_beta = reference.is_some_and(|r| r.iter().any(|x| Root::from_name(&x.root) == Some(Root::Beta)));
    let needed: Vec<Root> = if wants_beta { ROOTS.to_vec() } else { roots.to_vec() };
    let mut relations = Vec::new();
    let mut restored = Vec::new();
    for r in ROOTS.iter().copied().filter(|r| needed.contains(r)) {
        let rel = match restore(r) {
            Some(rel) => {
                restored.push(r.name());
                rel
            }
            None => {
                let rel = lifting_relation(r, ctx, &table, &cm)?;
                save(&rel);
                rel
            }
        };
        relations.push(rel);
    }
    let full = assemble_lifting(ctx, relations);
    let mut passed = sections.iter().all(|s| s.certified);
    let mut comparison = Value::Null;
    if let Some(reference) = reference {
        let selected: Vec<ReferenceRelation> =
            reference.iter().filter(|x| Root::from_name(&x.root).is_some_and(|r| roots.contains(&r))).cloned().collect();
        let (plain, beta): (Vec<_>, Vec<_>) = selected.into_iter().partition(|x| Root::from_name(&x.root) != Some(Root::Beta));
        let rep = compare(&full, &plain, &ctx.lift, None, None)?;
        passed &= rep.passed();
        let mut out = json!({ "direct": rep });
        if let Some(b) = beta.first() {
            let lm = ctx.lift_mu(&full, &mu)?;
            match scope {
                Scope::Full => {
                    let rep = compare(&full, std::slice::from_ref(b), &ctx.lift, None, Some(&lm))?;
                    passed &= rep.passed();
                    out["beta"] = json!({ "scope": scope, "report": rep });
                }
                Scope::Spot => {
                    let spot = spot_check(&full, b, ctx, &lm)?;
                    passed &= spot.iter().all(|s| s["match"] == json!(true));
                    out["beta"] = json!({ "scope": scope, "terms": spot });
                }
            }
        }
        comparison = out;
    }
    let shown = LiftingPresentation { relations: full.relations.iter().filter(|r| roots.contains(&r.root)).cloned().collect(), ..full.clone() };
    let report = json!({ "restored": restored, "relations": shown.to_json(), "comparison": comparison });
    Ok((Outcome::new(passed, report), full))
}

fn spot_check(full: &LiftingPresentation, b: &ReferenceRelation, ctx: &LiftContext, lm: &Presentation) -> Result<Vec<Value>, VerifyError> {
    let mine = lm.reduce(&full.relation(Root::Beta).ok_or(LiftError::MissingSection(Root::Beta))?.rhs)?;
    let theirs = reference_element(b, &ctx.lift, None, &full.params)?;
    let n = ctx.config.n;
    let zero = crate::scalars::ParamScalar::zero(n);
    let mut picks: Vec<usize> = (0..b.terms.len().min(SPOT_TERMS)).collect();
    if b.terms.len() > SPOT_TERMS {
        picks.push(b.terms.len() - 1);
    }
    let mut out = Vec::new();
    for i in picks {
        let t = &b.terms[i];
        let w = ctx.lift.try_normal_form_word(&parse_word(&t.word)?)?;
        for m in w.sorted().into_iter().map(|(m, _)| m) {
            let c = mine.coeff(&m).unwrap_or(&zero);
            let e = theirs.coeff(&m).unwrap_or(&zero);
            out.push(json!({ "index": i, "word": t.word, "mono": m.fmt_with('a'), "computed": c.to_string(), "reference": e.to_string(), "match": c == e }));
        }
    }
    Ok(out)
}
