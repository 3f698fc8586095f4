use serde::Serialize;

use super::{letters_mono, PowerCoproduct, StructureError};
use crate::engine::Mono;
use crate::rootdata::{BraidingConfig, Root};
use crate::scalars::Cyclo;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    Coprime,
    Divisible,
}

impl Case {
    pub fn of(config: BraidingConfig) -> Case {
        if config.n.is_multiple_of(3) {
            Case::Divisible
        } else {
            Case::Coprime
        }
    }

    /// Name of the `i`-th scalar (1-based).
    pub fn label(self, i: usize) -> String {
        match self {
            Case::Coprime => format!("a{i}"),
            Case::Divisible => format!("b{i}"),
        }
    }
}

/// Where a table scalar sits: the coefficient of `left (x) right` in `Delta(x_root^(N_root))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Position {
    pub root: Root,
    pub left: Mono,
    pub right: Mono,
}

fn pos(root: Root, left: &[(Root, u16)], right: &[(Root, u16)]) -> Position {
    let right = letters_mono(right);
    let d = right.letter_degree();
    let left = letters_mono(left).with_group([d[0] as i16, d[1] as i16]);
    Position { root, left, right }
}

/// The twelve positions of the scalar table, in index order.
pub fn positions(config: BraidingConfig) -> Vec<Position> {
    use Root::*;
    let n = config.n;
    let m = config.m();
    match Case::of(config) {
        Case::Coprime => vec![
            pos(R12, &[(R1, n)], &[(R2, n)]),
            pos(R112, &[(R1, n)], &[(R12, n)]),
            pos(R112, &[(R1, 2 * n)], &[(R2, n)]),
            pos(R1112, &[(R1, n)], &[(R112, n)]),
            pos(R1112, &[(R1, 2 * n)], &[(R12, n)]),
            pos(R1112, &[(R1, 3 * n)], &[(R2, n)]),
            pos(Beta, &[(R112, n)], &[(R12, n)]),
            pos(Beta, &[(R1112, n)], &[(R2, n)]),
            pos(Beta, &[(R1, n)], &[(R12, 2 * n)]),
            pos(Beta, &[(R1, 2 * n)], &[(R2, n), (R12, n)]),
            pos(Beta, &[(R112, n), (R1, n)], &[(R2, n)]),
            pos(Beta, &[(R1, 3 * n)], &[(R2, 2 * n)]),
        ],
        Case::Divisible => vec![
            pos(R12, &[(Beta, m)], &[(R2, m)]),
            pos(R12, &[(R1112, m)], &[(R2, 2 * m)]),
            pos(R12, &[(R1, n)], &[(R2, n)]),
            pos(R112, &[(R1, n)], &[(R12, n)]),
            pos(R112, &[(R1112, m)], &[(Beta, m)]),
            pos(R112, &[(R1, 2 * n)], &[(R2, n)]),
            pos(R112, &[(R1112, 2 * m)], &[(R2, m)]),
            pos(R112, &[(R1112, m), (R1, n)], &[(R2, 2 * m)]),
            pos(R112, &[(R1, n)], &[(R2, m), (Beta, m)]),
            pos(R1112, &[(R1, n)], &[(R2, m)]),
            pos(Beta, &[(R1, n)], &[(R2, 2 * m)]),
            pos(Beta, &[(R1112, m)], &[(R2, m)]),
        ],
    }
}

/// The scalars `a_1..a_12` (coprime case) or `b_1..b_12` (divisible case).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarTable {
    pub config: BraidingConfig,
    pub case: Case,
    pub values: Vec<Cyclo>,
}

impl ScalarTable {
    /// Value of the `i`-th scalar (1-based).
    pub fn get(&self, i: usize) -> &Cyclo {
        &self.values[i - 1]
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: serde_json::Map<String, serde_json::Value> = self
            .values
            .iter()
            .enumerate()
            .map(|(i, v)| (self.case.label(i + 1), serde_json::Value::String(v.to_string())))
            .collect();
        serde_json::json!({ "case": self.case, "values": entries })
    }
}

/// Reads the table off the six power coproducts. Every term must be one of the two
/// primitive-like terms or sit at a table position; anything else is reported.
pub fn extract_table(config: BraidingConfig, coproducts: &[PowerCoproduct]) -> Result<ScalarTable, StructureError> {
    let n = config.n;
    let case = Case::of(config);
    let ps = positions(config);
    let mut values = vec![Cyclo::zero(n); ps.len()];
    for pc in coproducts {
        let root = pc.root;
        let k = pc.exponent;
        let top = letters_mono(&[(root, k)]);
        let d = top.letter_degree();
        let gk = Mono::group([d[0] as i16, d[1] as i16]);
        for ((l, r), c) in pc.tensor.iter() {
            let trivial = (*l == top && r.is_one()) || (*l == gk && *r == top);
            if trivial {
                continue;
            }
            let idx = ps.iter().position(|p| p.root == root && p.left == *l && p.right == *r);
            match idx {
                Some(i) => {
                    values[i] = c.as_cyclo().ok_or_else(|| StructureError::NotScalar(format!("{l} (x) {r}")))?;
                }
                None => return Err(StructureError::SupportViolation { root, left: *l, right: *r }),
            }
        }
    }
    for p in &ps {
        if !coproducts.iter().any(|c| c.root == p.root) {
            return Err(StructureError::MissingCoproduct(p.root));
        }
    }
    Ok(ScalarTable { config, case, values })
}

/// Closed forms of the table in terms of `f_k = 1 - q^(-k)` and `q_21 = q^(-3-a)`.
pub fn closed_forms(config: BraidingConfig) -> Result<ScalarTable, StructureError> {
    let n = config.n;
    let nn = n as i64;
    let mm = config.m() as i64;
    let one = Cyclo::one(n);
    let f = |k: i64| &one - &Cyclo::qpow(n, -k);
    let (f1, f2, f3) = (f(1), f(2), f(3));
    let q21 = Cyclo::qpow(n, config.q_exp(2, 1));
    // product of scalar * f3^i * f2^j * f1^k * q21^e
    let term = |s: i64, i: i64, j: i64, k: i64, e: i64| -> Result<Cyclo, StructureError> {
        let v = Cyclo::from_int(n, s);
        let v = &v * &f3.pow(i)?;
        let v = &v * &f2.pow(j)?;
        let v = &v * &f1.pow(k)?;
        Ok(&v * &q21.pow(e)?)
    };
    let tri = nn * (nn - 1) / 2;
    let (case, values) = match Case::of(config) {
        Case::Coprime => (
            Case::Coprime,
            vec![
                term(1, nn, 0, 0, tri)?,
                term(2, 0, nn, 0, tri)?,
                term(1, nn, nn, 0, 2 * tri)?,
                term(3, 0, 0, nn, tri)?,
                term(3, 0, nn, nn, 2 * tri)?,
                term(1, nn, nn, nn, 3 * tri)?,
                term(3, 0, 0, nn, tri)?,
                term(-1, nn, 0, 0, nn * (3 * nn - 1) / 2)?,
                term(3, 0, nn, nn, 2 * tri)?,
                term(3, nn, nn, nn, 3 * tri)?,
                term(3, nn, 0, nn, 2 * tri)?,
                term(1, 2 * nn, nn, nn, nn * (3 * nn - 2))?,
            ],
        ),
        Case::Divisible => (
            Case::Divisible,
            vec![
                term(3, mm, -mm, -mm, mm * (nn + 1) / 2)?,
                term(3, 2 * mm, -mm, -mm, nn * mm)?,
                term(1, nn, 0, 0, tri)?,
                term(-1, 0, nn, nn, tri)?,
                term(3, 0, -mm, mm, mm * (nn + 1) / 2)?,
                term(1, nn, nn, 0, 2 * tri)?,
                term(3, mm, mm, mm, nn * mm)?,
                term(3, 2 * mm, 2 * mm, 2 * mm, tri)?,
                term(3, mm, 2 * mm, 2 * mm, mm * (nn - 1))?,
                term(1, mm, mm, mm, nn * (mm - 1) / 2)?,
                term(1, 2 * mm, mm, mm, mm * (nn - 2))?,
                term(2, mm, 0, 0, mm * (nn - 1) / 2)?,
            ],
        ),
    };
    Ok(ScalarTable { config, case, values })
}
