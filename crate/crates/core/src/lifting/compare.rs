use serde::{Deserialize, Serialize};

use super::{LiftError, LiftingPresentation};
use crate::engine::{parse_word, Element, Presentation};
use crate::rootdata::Root;
use crate::scalars::{parse_scalar, Param, ParamScalar};
use crate::structure::ScalarTable;

/// One term `coef * label * word` of a reference relation. `label` names an entry
/// `a_i`/`b_i` of the scalar table.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ReferenceTerm {
    pub coef: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub word: String,
}

/// A reference power relation `letter_root^exponent = sum of terms`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ReferenceRelation {
    pub root: String,
    pub exponent: u16,
    pub terms: Vec<ReferenceTerm>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TermDiff {
    pub mono: String,
    pub computed: String,
    pub reference: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationDiff {
    pub root: String,
    pub exponent: u16,
    pub terms: usize,
    pub diffs: Vec<TermDiff>,
}

impl RelationDiff {
    pub fn matched(&self) -> bool {
        self.diffs.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ComparisonReport {
    pub relations: Vec<RelationDiff>,
    pub missing: Vec<String>,
}

impl ComparisonReport {
    pub fn passed(&self) -> bool {
        self.missing.is_empty() && self.relations.iter().all(|r| r.matched())
    }

    pub fn mismatches(&self) -> usize {
        self.missing.len() + self.relations.iter().map(|r| r.diffs.len()).sum::<usize>()
    }
}

/// Reads a JSON list of reference relations.
pub fn parse_reference(text: &str) -> Result<Vec<ReferenceRelation>, serde_json::Error> {
    serde_json::from_str(text)
}

fn label_value(label: &str, table: Option<&ScalarTable>) -> Result<ParamScalar, LiftError> {
    let bad = || LiftError::BadReference(format!("unknown label {label}"));
    let table = table.ok_or_else(bad)?;
    let i = (1..=table.values.len()).find(|i| table.case.label(*i) == label).ok_or_else(bad)?;
    Ok(ParamScalar::from_cyclo(table.get(i).clone()))
}

/// Evaluates a reference relation's right-hand side in `p`, with every parameter outside
/// `active` set to zero.
pub fn reference_element(
    rel: &ReferenceRelation,
    p: &Presentation,
    table: Option<&ScalarTable>,
    active: &[Param],
) -> Result<Element, LiftError> {
    let inactive: Vec<Param> = Param::ALL.iter().copied().filter(|q| !active.contains(q)).collect();
    let n = p.n();
    let a = p.config.a;
    let mut out = Element::zero();
    for t in &rel.terms {
        let mut c = parse_scalar(&t.coef, n, a).map_err(|e| LiftError::BadReference(format!("{}: {e}", t.coef)))?;
        if let Some(l) = &t.label {
            c = &c * &label_value(l, table)?;
        }
        let w = p.try_normal_form_word(&parse_word(&t.word)?)?;
        out.add_scaled(&w, &c.kill(&inactive));
    }
    Ok(out)
}

/// Compares computed relations against reference relations term by term. With `modulo`,
/// both sides are first reduced by that presentation's rules, so relations agreeing up
/// to the other power relations compare equal.
pub fn compare(
    computed: &LiftingPresentation,
    reference: &[ReferenceRelation],
    p: &Presentation,
    table: Option<&ScalarTable>,
    modulo: Option<&Presentation>,
) -> Result<ComparisonReport, LiftError> {
    let letter = computed.kind.letter();
    let mut relations = Vec::new();
    let mut missing = Vec::new();
    for rel in reference {
        let root = Root::from_name(&rel.root).ok_or_else(|| LiftError::BadReference(format!("unknown root {}", rel.root)))?;
        let Some(mine) = computed.relation(root).filter(|r| r.exponent == rel.exponent) else {
            missing.push(format!("{letter}{}^{}", rel.root, rel.exponent));
            continue;
        };
        let (mine, theirs) = match modulo {
            Some(m) => (m.reduce(&mine.rhs)?, m.reduce(&reference_element(rel, p, table, &computed.params)?)?),
            None => (mine.rhs.clone(), reference_element(rel, p, table, &computed.params)?),
        };
        let diff = mine.difference(&theirs);
        let zero = ParamScalar::zero(p.n());
        let mut diffs: Vec<TermDiff> = diff
            .sorted()
            .into_iter()
            .map(|(m, _)| TermDiff {
                mono: m.fmt_with(letter),
                computed: mine.coeff(&m).unwrap_or(&zero).to_string(),
                reference: theirs.coeff(&m).unwrap_or(&zero).to_string(),
            })
            .collect();
        diffs.sort_by(|a, b| a.mono.cmp(&b.mono));
        relations.push(RelationDiff { root: rel.root.clone(), exponent: rel.exponent, terms: mine.len(), diffs });
    }
    Ok(ComparisonReport { relations, missing })
}
