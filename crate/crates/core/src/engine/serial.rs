use serde::{Deserialize, Serialize};

use super::element::Element;
use super::mono::Mono;
use super::tensor::Tensor;
use crate::scalars::{parse_scalar, ScalarError};

/// One serialized term: letter exponents by convex rank, group exponents, coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exps: [u8; 6],
    pub grp: [i16; 2],
    pub coef: String,
}

pub fn element_json(e: &Element) -> serde_json::Value {
    let terms: Vec<TermJson> =
        e.sorted().into_iter().map(|(m, c)| TermJson { exps: m.e, grp: m.g, coef: c.to_string() }).collect();
    serde_json::to_value(terms).expect("serializable")
}

pub fn element_from_terms(terms: &[TermJson], n: u16, a: i64) -> Result<Element, ScalarError> {
    let mut e = Element::zero();
    for t in terms {
        e.add_term_owned(Mono { e: t.exps, g: t.grp }, parse_scalar(&t.coef, n, a)?);
    }
    Ok(e)
}

pub fn tensor_json(t: &Tensor) -> serde_json::Value {
    let terms: Vec<serde_json::Value> = t
        .sorted()
        .into_iter()
        .map(|((l, r), c)| {
            serde_json::json!({
                "left": {"exps": l.e, "grp": l.g},
                "right": {"exps": r.e, "grp": r.g},
                "coef": c.to_string(),
            })
        })
        .collect();
    serde_json::Value::Array(terms)
}
