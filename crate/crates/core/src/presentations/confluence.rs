use rayon::prelude::*;
use serde::Serialize;

use super::tables::{pairs, BracketTable};
use crate::engine::{Element, EngineError, Mono, Presentation};
use crate::rootdata::{Root, ROOTS};
use crate::scalars::ParamScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AmbiguityKind {
    /// `x_c x_d x_e` with `c < d < e`.
    Triple,
    /// `x_c^N x_d` with `c < d`.
    PowerLeft,
    /// `x_c x_d^N` with `c < d`.
    PowerRight,
    /// `x_c^(N+1)`.
    PowerSelf,
    /// Conjugation by `g_1`, `g_2` preserves each rule.
    Character,
}

#[derive(Clone, Debug, Serialize)]
pub struct Ambiguity {
    pub kind: AmbiguityKind,
    pub word: String,
    pub first: String,
    pub second: String,
    pub resolved: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OverlapReport {
    pub ambiguities: Vec<Ambiguity>,
    pub all_resolved: bool,
}

impl OverlapReport {
    pub fn unresolved(&self) -> usize {
        self.ambiguities.iter().filter(|a| !a.resolved).count()
    }
}

fn x(p: &Presentation, r: Root) -> Element {
    Element::from_term(Mono::letter(r), ParamScalar::one(p.n()))
}

fn xpow(p: &Presentation, r: Root, k: u8) -> Element {
    Element::from_term(Mono::power(r, k), ParamScalar::one(p.n()))
}

/// `x_l x_r` rewritten once by its rule.
fn rewritten(p: &Presentation, l: Root, r: Root) -> Result<Element, EngineError> {
    let ru = p.rule(l, r).ok_or(EngineError::MissingRule(l, r))?;
    let mut e = Element::from_terms(ru.tail.iter().cloned());
    let mut m = Mono::letter(r);
    m.e[l.rank()] += 1;
    e.add_term_owned(m, ParamScalar::qpow(p.n(), ru.exp));
    Ok(e)
}

fn outcome(
    p: &Presentation,
    kind: AmbiguityKind,
    word: String,
    first: Result<Element, EngineError>,
    second: Result<Element, EngineError>,
) -> Ambiguity {
    let c = p.letter();
    let show = |r: &Result<Element, EngineError>| match r {
        Ok(e) => e.format(c),
        Err(e) => format!("error: {e}"),
    };
    let resolved = matches!((&first, &second), (Ok(a), Ok(b)) if a == b);
    Ambiguity { kind, word, first: show(&first), second: show(&second), resolved }
}

fn triple(p: &Presentation, c: Root, d: Root, e: Root) -> Ambiguity {
    let first = rewritten(p, c, d).and_then(|cd| p.try_mul(&cd, &x(p, e)));
    let second = rewritten(p, d, e).and_then(|de| p.try_mul(&x(p, c), &de));
    let l = p.letter();
    outcome(p, AmbiguityKind::Triple, format!("{l}{c} {l}{d} {l}{e}"), first, second)
}

fn power_left(p: &Presentation, c: Root, d: Root) -> Option<Ambiguity> {
    let pr = p.power_rule(c)?;
    let tail = Element::from_terms(pr.tail.iter().cloned());
    let first = p.try_mul(&tail, &x(p, d));
    let second = rewritten(p, c, d).and_then(|cd| p.try_mul(&xpow(p, c, pr.bound - 1), &cd));
    let l = p.letter();
    Some(outcome(p, AmbiguityKind::PowerLeft, format!("{l}{c}^{} {l}{d}", pr.bound), first, second))
}

fn power_right(p: &Presentation, c: Root, d: Root) -> Option<Ambiguity> {
    let pr = p.power_rule(d)?;
    let tail = Element::from_terms(pr.tail.iter().cloned());
    let first = rewritten(p, c, d).and_then(|cd| p.try_mul(&cd, &xpow(p, d, pr.bound - 1)));
    let second = p.try_mul(&x(p, c), &tail);
    let l = p.letter();
    Some(outcome(p, AmbiguityKind::PowerRight, format!("{l}{c} {l}{d}^{}", pr.bound), first, second))
}

fn power_self(p: &Presentation, c: Root) -> Option<Ambiguity> {
    let pr = p.power_rule(c)?;
    let tail = Element::from_terms(pr.tail.iter().cloned());
    let first = p.try_mul(&tail, &x(p, c));
    let second = p.try_mul(&x(p, c), &tail);
    let l = p.letter();
    Some(outcome(p, AmbiguityKind::PowerSelf, format!("{l}{c}^{}", pr.bound + 1), first, second))
}

/// Each rule must be homogeneous for the characters: every tail term carries the same
/// `chi(g_1), chi(g_2)` as the left-hand side.
fn character(p: &Presentation, label: String, lhs_deg: [i64; 2], tail: &Element) -> Ambiguity {
    let cfg = &p.config;
    let bad: Vec<String> = tail
        .sorted()
        .into_iter()
        .filter(|(m, _)| {
            let d = m.letter_degree();
            (0..2).any(|i| {
                let mut g = [0, 0];
                g[i] = 1;
                cfg.bichar_exp(g, d) != cfg.bichar_exp(g, lhs_deg)
            })
        })
        .map(|(m, _)| m.fmt_with(p.letter()))
        .collect();
    Ambiguity {
        kind: AmbiguityKind::Character,
        word: label,
        first: "homogeneous".into(),
        second: if bad.is_empty() { "homogeneous".into() } else { bad.join(", ") },
        resolved: bad.is_empty(),
    }
}

/// Enumerates every overlap ambiguity of the rewriting system and reduces both sides.
/// Tasks run on the rayon pool; the report order is fixed.
pub fn check_local_confluence(p: &Presentation) -> OverlapReport {
    let mut tasks: Vec<Box<dyn Fn() -> Option<Ambiguity> + Send + Sync + '_>> = Vec::new();
    for i in 0..6 {
        for j in (i + 1)..6 {
            for k in (j + 1)..6 {
                tasks.push(Box::new(move || Some(triple(p, ROOTS[i], ROOTS[j], ROOTS[k]))));
            }
        }
    }
    for (c, d) in pairs() {
        tasks.push(Box::new(move || power_left(p, c, d)));
        tasks.push(Box::new(move || power_right(p, c, d)));
    }
    for r in ROOTS {
        tasks.push(Box::new(move || power_self(p, r)));
    }
    let mut ambiguities: Vec<Ambiguity> = tasks.par_iter().filter_map(|t| t()).collect();
    let l = p.letter();
    for (c, d) in pairs() {
        if let Some(t) = p.rule_tail(c, d) {
            let deg = crate::rootdata::deg_add(c.degree(), d.degree());
            ambiguities.push(character(p, format!("[{l}{c}, {l}{d}]"), deg, &t));
        }
    }
    for r in ROOTS {
        if let (Some(t), Some(b)) = (p.power_tail(r), p.bound(r)) {
            let deg = crate::rootdata::deg_scale(r.degree(), b as i64);
            ambiguities.push(character(p, format!("{l}{r}^{b}"), deg, &t));
        }
    }
    let all_resolved = ambiguities.iter().all(|a| a.resolved);
    OverlapReport { ambiguities, all_resolved }
}

/// Copy of a table with one coefficient of one rule perturbed (multiplied by 2, or a
/// unit term added if the rule is zero). Used as a negative control.
pub fn corrupt_rule(table: &BracketTable, l: Root, r: Root, n: u16) -> BracketTable {
    let mut t = table.clone();
    let cell = t[l.rank()][r.rank()].get_or_insert_with(Element::zero);
    match cell.sorted().into_iter().next() {
        Some((m, c)) => cell.add_term_owned(m, c),
        None => cell.add_term_owned(Mono::ONE, ParamScalar::one(n)),
    }
    t
}
