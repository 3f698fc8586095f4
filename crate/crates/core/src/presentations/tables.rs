//! Reference bracket tables in text form.
//!
//! Each line is `l,r: coef | word; coef | word; ...` giving `[x_l, x_r]_c` for a
//! convex-ordered pair `l < r`. Words are PBW-ordered root letters followed by group
//! elements; `1` is the empty word.

use crate::engine::{Element, Mono, WordItem};
use crate::rootdata::{Root, ROOTS};
use crate::scalars::{parse_scalar, ScalarError};

/// Brackets that hold by definition of the non-simple root letters.
pub const DEFINITIONS: &str = "
1,2: 1 | x12
1,12: 1 | x112
1,112: 1 | x1112
112,12: 1 | xb
";

/// Brackets in the distinguished pre-Nichols algebra, for any braiding of the family.
pub const PRE_NICHOLS: &str = "
12,2: 0 | 1
b,12: 0 | 1
112,b: 0 | 1
1112,112: 0 | 1
1,1112: 0 | 1
b,2: q_12^2*q^3*(q^2-1)*(q-1) | x12^3
112,2: q_12*q*(q^2-1) | x12^2
1112,12: q_12*q*(q^3-1)/(q+1) | x112^2
1,b: q_12*q*(q^3-1)/(q+1) | x112^2
1112,b: q^3*q_12^2*(q-1)*(q^3-1)/(q+1) | x112^3
1112,2: q_12*q*(q^2-q-1) | xb; q_12^2*q^2*(q^3-1) | x12 x112
";

/// Brackets in the cleft algebra with deformed quantum Serre relations.
pub const CLEFT_LAMBDA: &str = "
12,2: l2 | 1
b,12: (q^3-1)^2*l1 | y2^2
112,b: (-3q-2q^2-2q^3-q^4+q^6)*l1*l2 | 1; q^5*(q+1)*(q-1)^2*l1 | y2 y12
1112,112: (1-q^4)*l1 | y12
1,1112: l1 | 1
b,2: q^2*(q+1)*(q-1)^2 | y12^3
112,2: q^4*(q^2-1) | y12^2
1112,12: (q^2+1)*(1-q) | y112^2; q^4*(1-q)*(1+q^2+q^4)*l1 | y2
1,b: (q^2+1)*(1-q) | y112^2; q^4*(1-q)*(1+q^2+q^4)*l1 | y2
1112,b: (q-1)*(1-q^3)*(1+q^3+q^5) | y112^3; (q^4-q^3)^2*l1 | y12^2; -q^4*(q-1)^2*(q^2+1)*l1 | y2 y112
1112,2: q^4*(q^2-q-1) | yb; q*(q^3-1) | y12 y112
";

/// Brackets in the Hopf algebra with deformed quantum Serre relations.
pub const LIFT_LAMBDA: &str = "
12,2: l2 | 1; -l2 | g1 g2^2
1,1112: l1 | 1; -l1 | g1^4 g2
b,12: (q^4-1)*l2 | a1112 g1 g2^2; (q^3-1)^2*l1 | a2^2; (q^4-q)^2*l2 | a112 a1 g1 g2^2
112,b: (-2q-3q^2-4q^3-3q^4-2q^5)*l2 | a1112 a1 g1 g2^2; (2q+q^2+q^3+q^4+2q^5)*l1 | a2 a12; (2q+2q^2+q^3+3q^4+4q^5+2q^6)*l2*l1 | g1^5 g2^3; (q+q^3-2q^4-4q^5-3q^6)*l2*l1 | g1 g2^2; (-3q-2q^2-2q^3-q^4+q^6)*l2*l1 | 1
1112,112: (1-q^4)*l1 | a12; (-1+3q^2+q^3+q^4+3q^5)*l2 | a1^4 g1 g2^2
b,2: q^2*(q^2-1)*(q-1) | a12^3; (q-q^4)*l2 | a112 g1 g2^2; q^4*(q^4-1)^2*l2 | a12 a1 g1 g2^2
112,2: q^4*(q^2-1) | a12^2; (q^3-1)*l2 | a1 g1 g2^2
1112,12: (q^2+1)*(1-q) | a112^2; l1*q^4*(1-q)*(1+q^2+q^4) | a2; (2q-2q^2-q^4+q^6)*l2 | a1^3 g1 g2^2
1,b: (q^2+1)*(1-q) | a112^2; l1*q^4*(1-q)*(1+q^2+q^4) | a2; (2q-2q^2-q^4+q^6)*l2 | a1^3 g1 g2^2
1112,b: (q-1)*(1-q^3)*(1+q^3+q^5) | a112^3; -l1*q^4*(q-1)^2*(q^2+1) | a2 a112; l1*(q^4-q^3)^2 | a12^2; (-2q^2+5q^4+5q^5+6q^6)*l2 | a1112 a1^2 g1 g2^2; (-3q-5q^3-4q^4-4q^5-5q^6)*l2 | a112 a1^3 g1 g2^2; (1+4q+3q^2-q^3)*l2*l1 | a1 g1^5 g2^3; (4q-3q^2-4q^3-5q^4-7q^5+q^6)*l2*l1 | a1 g1 g2^2
1112,2: q^4*(q^2-q-1) | ab; q*(q^3-1) | a12 a112; l2*q^4*(q^3-1) | a1^2 g1 g2^2
";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TableError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Scalar { line: usize, source: ScalarError },
}

/// Builds a monomial from a PBW-ordered word; `None` if the word is out of order.
pub fn ordered_mono(items: &[WordItem]) -> Option<Mono> {
    let mut m = Mono::ONE;
    let mut last: Option<usize> = None;
    let mut in_group = false;
    for it in items {
        match it {
            WordItem::Letter(r, k) => {
                if in_group {
                    return None;
                }
                if let Some(l) = last {
                    if r.rank() >= l {
                        return None;
                    }
                }
                last = Some(r.rank());
                m.e[r.rank()] = *k;
            }
            WordItem::Group(g) => {
                in_group = true;
                m.g[0] += g[0];
                m.g[1] += g[1];
            }
        }
    }
    Some(m)
}

/// Parses `coef | word; ...` into an element.
pub fn parse_terms(text: &str, n: u16, a: i64, line: usize) -> Result<Element, TableError> {
    let mut el = Element::zero();
    for part in text.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (c, w) = part
            .split_once('|')
            .ok_or(TableError::Syntax { line, msg: format!("missing '|' in '{part}'") })?;
        let coef = parse_scalar(c.trim(), n, a).map_err(|source| TableError::Scalar { line, source })?;
        let w = w.trim();
        let items = if w == "1" {
            Vec::new()
        } else {
            crate::engine::parse_word(w).map_err(|e| TableError::Syntax { line, msg: e.to_string() })?
        };
        let m = ordered_mono(&items).ok_or(TableError::Syntax { line, msg: format!("word '{w}' not in PBW order") })?;
        el.add_term_owned(m, coef);
    }
    Ok(el)
}

/// A table of brackets `[x_l, x_r]_c`, indexed by rank with `l < r`.
pub type BracketTable = [[Option<Element>; 6]; 6];

pub fn empty_table() -> BracketTable {
    Default::default()
}

/// Parses table text into `table`, overwriting entries that appear.
pub fn parse_table_into(text: &str, n: u16, a: i64, table: &mut BracketTable) -> Result<(), TableError> {
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let (pair, body) = line.split_once(':').ok_or(TableError::Syntax { line: i, msg: "missing ':'".into() })?;
        let (l, r) = pair.split_once(',').ok_or(TableError::Syntax { line: i, msg: "missing ','".into() })?;
        let l = Root::from_name(l.trim()).ok_or(TableError::Syntax { line: i, msg: format!("root '{l}'") })?;
        let r = Root::from_name(r.trim()).ok_or(TableError::Syntax { line: i, msg: format!("root '{r}'") })?;
        if l.rank() >= r.rank() {
            return Err(TableError::Syntax { line: i, msg: format!("pair ({l},{r}) not convex-ordered") });
        }
        table[l.rank()][r.rank()] = Some(parse_terms(body, n, a, i)?);
    }
    Ok(())
}

/// All fifteen convex-ordered pairs.
pub fn pairs() -> impl Iterator<Item = (Root, Root)> {
    (0..6).flat_map(|l| ((l + 1)..6).map(move |r| (ROOTS[l], ROOTS[r])))
}

/// Parses `coef | left word | right word; ...` into a tensor.
pub fn parse_tensor_terms(text: &str, n: u16, a: i64) -> Result<crate::engine::Tensor, TableError> {
    let mut t = crate::engine::Tensor::zero();
    for (i, part) in text.split(';').enumerate() {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let fields: Vec<&str> = part.split('|').map(str::trim).collect();
        let [c, l, r] = fields[..] else {
            return Err(TableError::Syntax { line: i, msg: format!("expected 'coef | left | right' in '{part}'") });
        };
        let coef = parse_scalar(c, n, a).map_err(|source| TableError::Scalar { line: i, source })?;
        let word = |w: &str| -> Result<Mono, TableError> {
            let items = if w == "1" {
                Vec::new()
            } else {
                crate::engine::parse_word(w).map_err(|e| TableError::Syntax { line: i, msg: e.to_string() })?
            };
            ordered_mono(&items).ok_or(TableError::Syntax { line: i, msg: format!("word '{w}' not in PBW order") })
        };
        t.add_term_owned(word(l)?, word(r)?, coef);
    }
    Ok(t)
}
