//! Rewrite systems for the algebras of the tower, their derivation from the
//! defining relations, confluence certificates and Hilbert series.

mod confluence;
mod derive;
mod hilbert;
mod tables;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

pub use confluence::{check_local_confluence, corrupt_rule, Ambiguity, AmbiguityKind, OverlapReport};
pub use derive::{compare_tables, derive_table, DeriveError, Derivation, TableMismatch};
pub use hilbert::{hilbert_series, nichols_series_formula, HilbertSeries};
pub use tables::{
    empty_table, ordered_mono, pairs, parse_table_into, parse_tensor_terms, parse_terms, BracketTable, TableError, CLEFT_LAMBDA,
    DEFINITIONS, LIFT_LAMBDA, PRE_NICHOLS,
};

use crate::engine::{Element, Kind, Presentation};
use crate::rootdata::{BraidingConfig, ConfigError, Root, ROOTS};
use crate::scalars::Param;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BuildError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Derive(#[from] DeriveError),
    #[error("bracket table could not be derived and certified")]
    Underived,
    #[error("kind {0} needs a power tail for every root")]
    MissingPowers(&'static str),
}

/// Power tails of a bounded presentation, indexed by rank.
pub type PowerTails = [Option<Element>; 6];

/// The reference bracket table of `kind` at `config`, with inactive parameters removed.
pub fn reference_table(kind: Kind, config: BraidingConfig, params: &[Param]) -> Result<BracketTable, BuildError> {
    let mut t = empty_table();
    parse_table_into(DEFINITIONS, config.n, config.a, &mut t)?;
    let body = match kind {
        Kind::CleftLambda | Kind::CleftLambdaMu if config.is_degenerate() => CLEFT_LAMBDA,
        Kind::LiftLambda | Kind::LiftLambdaMu if config.is_degenerate() => LIFT_LAMBDA,
        _ => PRE_NICHOLS,
    };
    parse_table_into(body, config.n, config.a, &mut t)?;
    let dead: Vec<Param> = [Param::L1, Param::L2].into_iter().filter(|p| !params.contains(p)).collect();
    for row in t.iter_mut() {
        for e in row.iter_mut().flatten() {
            *e = e.map_coeffs(|c| c.kill(&dead));
        }
    }
    Ok(t)
}

/// The bracket table used by [`build`]: derived from the seed entries of the
/// reference table and certified by overlap resolution. Cached per configuration.
pub fn certified_table(kind: Kind, config: BraidingConfig, params: &[Param]) -> Result<BracketTable, BuildError> {
    type Key = (Kind, BraidingConfig, Vec<Param>);
    static CACHE: OnceLock<Mutex<HashMap<Key, BracketTable>>> = OnceLock::new();
    let base = match kind {
        Kind::Nichols => Kind::PreNichols,
        Kind::CleftLambdaMu => Kind::CleftLambda,
        Kind::LiftLambdaMu => Kind::LiftLambda,
        k => k,
    };
    let mut ps = params.to_vec();
    ps.retain(|p| matches!(p, Param::L1 | Param::L2));
    ps.sort();
    let key = (base, config, ps.clone());
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().expect("table cache").get(&key) {
        return Ok(t.clone());
    }
    let reference = reference_table(base, config, &ps)?;
    let d = derive_table(base, config, &ps, &reference)?;
    if !d.certified {
        return Err(BuildError::Underived);
    }
    cache.lock().expect("table cache").insert(key, d.table.clone());
    Ok(d.table)
}

/// Builds the presentation of `kind`. Bounded kinds take their power tails from
/// `powers`; for the Nichols kind the tails are zero and `powers` is ignored.
pub fn build(
    kind: Kind,
    config: BraidingConfig,
    params: &[Param],
    powers: Option<&PowerTails>,
) -> Result<Presentation, BuildError> {
    config.check_params(params)?;
    let table = certified_table(kind, config, params)?;
    build_from_table(kind, config, params, &table, powers)
}

/// Builds a presentation from an explicit bracket table.
pub fn build_from_table(
    kind: Kind,
    config: BraidingConfig,
    params: &[Param],
    table: &BracketTable,
    powers: Option<&PowerTails>,
) -> Result<Presentation, BuildError> {
    let zero: PowerTails = std::array::from_fn(|_| Some(Element::zero()));
    let none: PowerTails = Default::default();
    let pw = match kind {
        Kind::PreNichols | Kind::CleftLambda | Kind::LiftLambda => &none,
        Kind::Nichols => &zero,
        Kind::CleftLambdaMu | Kind::LiftLambdaMu => {
            let p = powers.ok_or(BuildError::MissingPowers(kind.name()))?;
            if p.iter().any(|t| t.is_none()) {
                return Err(BuildError::MissingPowers(kind.name()));
            }
            p
        }
    };
    Ok(Presentation::new(kind, config, params.to_vec(), table, pw))
}

/// Builds and certifies: the presentation is marked certified only if every overlap
/// ambiguity resolves.
pub fn build_certified(
    kind: Kind,
    config: BraidingConfig,
    params: &[Param],
    powers: Option<&PowerTails>,
) -> Result<(Arc<Presentation>, OverlapReport), BuildError> {
    let p = Arc::new(build(kind, config, params, powers)?);
    let report = check_local_confluence(&p);
    p.mark_certified(report.all_resolved);
    Ok((p, report))
}

/// JSON export of a presentation: bracket rules and power rules with right-hand sides
/// in engine serialization.
pub fn presentation_json(p: &Presentation) -> serde_json::Value {
    let mut rules = Vec::new();
    for (l, r) in pairs() {
        if let Some(t) = p.rule_tail(l, r) {
            rules.push(serde_json::json!({
                "left": l.name(),
                "right": r.name(),
                "q_exp": p.config.bichar_exp(l.degree(), r.degree()),
                "rhs": crate::engine::element_json(&t),
            }));
        }
    }
    let mut powers = Vec::new();
    for r in ROOTS {
        if let Some(t) = p.power_tail(r) {
            powers.push(serde_json::json!({
                "root": r.name(),
                "bound": p.config.n_alpha(r),
                "rhs": crate::engine::element_json(&t),
            }));
        }
    }
    serde_json::json!({
        "kind": p.kind.name(),
        "config": p.config,
        "params": p.params.iter().map(|x| x.token()).collect::<Vec<_>>(),
        "rules": rules,
        "powers": powers,
    })
}

/// Letter `x_root` as an element.
pub fn letter(p: &Presentation, r: Root) -> Element {
    Element::from_term(crate::engine::Mono::letter(r), crate::scalars::ParamScalar::one(p.n()))
}
