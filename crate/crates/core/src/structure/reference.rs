use serde::{Deserialize, Serialize};

use super::StructureError;
use crate::engine::{parse_word, GeneratorMap, Presentation, Tensor};
use crate::rootdata::Root;
use crate::scalars::{parse_scalar, ParamScalar};

/// One term `coef * left (x) right` of a reference coproduct.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ReferenceTensorTerm {
    pub coef: String,
    pub left: String,
    pub right: String,
}

/// A reference value of `Delta(x_root)`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ReferenceCoproduct {
    pub root: String,
    pub terms: Vec<ReferenceTensorTerm>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TensorDiff {
    pub left: String,
    pub right: String,
    pub computed: String,
    pub reference: String,
}

pub fn parse_coproducts(text: &str) -> Result<Vec<ReferenceCoproduct>, serde_json::Error> {
    serde_json::from_str(text)
}

fn word(p: &Presentation, w: &str) -> Result<crate::engine::Element, StructureError> {
    Ok(p.try_normal_form_word(&parse_word(w)?)?)
}

/// Evaluates a reference coproduct in `p (x) p`.
pub fn reference_tensor(r: &ReferenceCoproduct, p: &Presentation) -> Result<Tensor, StructureError> {
    let mut out = Tensor::zero();
    for t in &r.terms {
        let c = parse_scalar(&t.coef, p.n(), p.config.a)?;
        let l = word(p, &t.left)?;
        let rt = word(p, &t.right)?;
        for (ml, cl) in l.iter() {
            for (mr, cr) in rt.iter() {
                out.add_term_owned(*ml, *mr, &(&c * cl) * cr);
            }
        }
    }
    Ok(out)
}

/// Term-by-term differences between the computed `Delta(x_root)` and a reference.
pub fn coproduct_diff(map: &GeneratorMap, r: &ReferenceCoproduct) -> Result<Vec<TensorDiff>, StructureError> {
    let root = Root::from_name(&r.root).ok_or_else(|| StructureError::NotScalar(format!("unknown root {}", r.root)))?;
    let p = &map.source;
    let theirs = reference_tensor(r, p)?;
    let mine = map.letter_image(root);
    let zero = ParamScalar::zero(p.n());
    let c = p.letter();
    Ok(mine
        .difference(&theirs)
        .sorted()
        .into_iter()
        .map(|((l, rr), _)| TensorDiff {
            left: l.fmt_with(c),
            right: rr.fmt_with(c),
            computed: mine.coeff(&l, &rr).unwrap_or(&zero).to_string(),
            reference: theirs.coeff(&l, &rr).unwrap_or(&zero).to_string(),
        })
        .collect())
}
