//! Derivation of the full bracket table from the four definitional brackets and the
//! two defining relations.
//!
//! Every other bracket `[x_l, x_r]_c` is given an ansatz: an unknown linear
//! combination of all PBW monomials (times parameter monomials and, for the Hopf
//! algebra, the matching group elements) of the right degree and character. The
//! unknowns are fixed by requiring every triple overlap `x_c x_d x_e` to resolve.
//! Conditions are collected from the affine expansion of each overlap in the unknowns
//! and solved exactly; the solution is then certified by resolving all overlaps again
//! with the solved table. Any confluent solution is the true table, since its ideal
//! contains the defining relations and has the same normal monomials.

use std::collections::BTreeMap;

use serde::Serialize;

use super::tables::{empty_table, pairs, BracketTable};
use crate::engine::{Element, EngineError, Kind, Mono, Presentation};
use crate::rootdata::{BraidingConfig, Root, ROOTS};
use crate::scalars::{Cyclo, Param, ParamKey, ParamScalar};

/// An unknown: the coefficient of `key * mono` in the tail of `[x_l, x_r]_c`.
#[derive(Clone, Copy, Debug)]
struct Unknown {
    l: Root,
    r: Root,
    mono: Mono,
    key: ParamKey,
}

#[derive(Clone, Debug, Serialize)]
pub struct Derivation {
    #[serde(skip)]
    pub table: BracketTable,
    pub derived_pairs: Vec<(Root, Root)>,
    pub unknowns: usize,
    pub equations: usize,
    pub rank: usize,
    /// Every triple overlap resolves with the solved table.
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DeriveError {
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("the overlap conditions are inconsistent")]
    Inconsistent,
}

fn letter_monos(d: [i64; 2]) -> Vec<[u8; 6]> {
    let mut out = Vec::new();
    fn rec(i: usize, rest: [i64; 2], cur: &mut [u8; 6], out: &mut Vec<[u8; 6]>) {
        if i == 6 {
            if rest == [0, 0] {
                out.push(*cur);
            }
            return;
        }
        let rd = ROOTS[i].degree();
        let mut k = 0i64;
        loop {
            let left = [rest[0] - k * rd[0], rest[1] - k * rd[1]];
            if left[0] < 0 || left[1] < 0 {
                break;
            }
            cur[i] = k as u8;
            rec(i + 1, left, cur, out);
            k += 1;
        }
        cur[i] = 0;
    }
    rec(0, d, &mut [0; 6], &mut out);
    out
}

fn ansatz(p: &Presentation, l: Root, r: Root) -> Vec<Unknown> {
    let cfg = &p.config;
    let d = [l.degree()[0] + r.degree()[0], l.degree()[1] + r.degree()[1]];
    let has = |x: Param| p.params.contains(&x);
    let same_character =
        |e: [i64; 2]| (0..2).all(|i| cfg.bichar_exp(if i == 0 { [1, 0] } else { [0, 1] }, e) == cfg.bichar_exp(if i == 0 { [1, 0] } else { [0, 1] }, d));
    let with_groups = matches!(p.kind, Kind::LiftLambda | Kind::LiftLambdaMu);
    let mut out = Vec::new();
    for i in 0..=4u8 {
        if i > 0 && !has(Param::L1) {
            break;
        }
        for j in 0..=4u8 {
            if j > 0 && !has(Param::L2) {
                break;
            }
            let mut ex = [0u8; 8];
            ex[Param::L1.index()] = i;
            ex[Param::L2.index()] = j;
            let key = ParamKey::from_exps(ex);
            let pd = p.param_degree(key);
            let rest = [d[0] - pd[0], d[1] - pd[1]];
            if rest[0] < 0 || rest[1] < 0 {
                continue;
            }
            for e in letter_monos(rest) {
                if !same_character(crate::engine::letters_degree(&e)) {
                    continue;
                }
                let groups: Vec<[i16; 2]> = if with_groups {
                    let mut gs = Vec::new();
                    for a in 0..=i as i16 {
                        for b in 0..=j as i16 {
                            gs.push([4 * a + b, a + 2 * b]);
                        }
                    }
                    gs
                } else {
                    vec![[0, 0]]
                };
                for g in groups {
                    out.push(Unknown { l, r, mono: Mono { e, g }, key });
                }
            }
        }
    }
    out
}

fn triples() -> Vec<(Root, Root, Root)> {
    let mut v = Vec::new();
    for i in 0..6 {
        for j in (i + 1)..6 {
            for k in (j + 1)..6 {
                v.push((ROOTS[i], ROOTS[j], ROOTS[k]));
            }
        }
    }
    v
}

fn rewritten(p: &Presentation, l: Root, r: Root) -> Result<Element, EngineError> {
    let ru = p.rule(l, r).ok_or(EngineError::MissingRule(l, r))?;
    let mut e = Element::from_terms(ru.tail.iter().cloned());
    let mut m = Mono::letter(r);
    m.e[l.rank()] += 1;
    e.add_term_owned(m, ParamScalar::qpow(p.n(), ru.exp));
    Ok(e)
}

fn x(n: u16, r: Root) -> Element {
    Element::from_term(Mono::letter(r), ParamScalar::one(n))
}

/// `first - second` for every triple overlap; `None` where a needed rule is absent.
fn defects(p: &Presentation) -> Vec<Option<Element>> {
    let n = p.n();
    triples()
        .into_iter()
        .map(|(c, d, e)| {
            let first = p.try_mul(&rewritten(p, c, d).ok()?, &x(n, e)).ok()?;
            let second = p.try_mul(&x(n, c), &rewritten(p, d, e).ok()?).ok()?;
            Some(first.difference(&second))
        })
        .collect()
}

fn table_with(base: &BracketTable, unknowns: &[Unknown], values: &[(usize, Cyclo)], n: u16) -> BracketTable {
    let mut t = base.clone();
    for u in unknowns {
        t[u.l.rank()][u.r.rank()].get_or_insert_with(Element::zero);
    }
    for (j, v) in values {
        let u = &unknowns[*j];
        let cell = t[u.l.rank()][u.r.rank()].as_mut().expect("initialized");
        cell.add_term_owned(u.mono, ParamScalar::monomial(v.clone(), u.key));
        let _ = n;
    }
    t
}

/// Incremental sparse row reduction over `Q(q)`. Rows are `sum_j a_j c_j = b`.
struct Echelon {
    n: u16,
    pivots: BTreeMap<usize, (BTreeMap<usize, Cyclo>, Cyclo)>,
    inconsistent: bool,
}

impl Echelon {
    fn reduce(&self, mut row: BTreeMap<usize, Cyclo>, mut rhs: Cyclo) -> (BTreeMap<usize, Cyclo>, Cyclo) {
        loop {
            let hit = row.keys().copied().find(|k| self.pivots.contains_key(k));
            let Some(k) = hit else { break };
            let f = row.remove(&k).expect("present");
            let (prow, prhs) = &self.pivots[&k];
            for (j, v) in prow {
                if *j == k {
                    continue;
                }
                let e = row.entry(*j).or_insert_with(|| Cyclo::zero(self.n));
                *e -= &(&f * v);
                if e.is_zero() {
                    row.remove(j);
                }
            }
            rhs -= &(&f * prhs);
        }
        (row, rhs)
    }

    fn push(&mut self, row: BTreeMap<usize, Cyclo>, rhs: Cyclo) {
        let (row, rhs) = self.reduce(row, rhs);
        let Some((&k, lead)) = row.iter().next() else {
            if !rhs.is_zero() {
                self.inconsistent = true;
            }
            return;
        };
        let inv = lead.inv().expect("nonzero pivot");
        let row: BTreeMap<usize, Cyclo> = row.iter().map(|(j, v)| (*j, v * &inv)).collect();
        let rhs = &rhs * &inv;
        // keep existing pivot rows reduced against the new pivot
        for (prow, prhs) in self.pivots.values_mut() {
            if let Some(f) = prow.remove(&k) {
                for (j, v) in &row {
                    if *j == k {
                        continue;
                    }
                    let e = prow.entry(*j).or_insert_with(|| Cyclo::zero(self.n));
                    *e -= &(&f * v);
                    if e.is_zero() {
                        prow.remove(j);
                    }
                }
                *prhs -= &(&f * &rhs);
            }
        }
        self.pivots.insert(k, (row, rhs));
    }

    /// Solution with free unknowns set to zero.
    fn solve(&self) -> Vec<(usize, Cyclo)> {
        self.pivots
            .iter()
            .filter(|(_, (_, rhs))| !rhs.is_zero())
            .map(|(k, (row, rhs))| {
                debug_assert!(row.keys().all(|j| j == k || !self.pivots.contains_key(j)));
                (*k, rhs.clone())
            })
            .collect()
    }
}

/// Derives the bracket table of `kind` from the definitional and defining entries of
/// `reference`; no other entry of `reference` is read.
///
/// Unknown brackets are solved level by level in the total degree of the pair, so that
/// at each level the overlap conditions are affine in the current unknowns; overlaps
/// that need a bracket of a higher level are skipped until that level.
pub fn derive_table(
    kind: Kind,
    config: BraidingConfig,
    params: &[Param],
    reference: &BracketTable,
) -> Result<Derivation, DeriveError> {
    use Root::*;
    let n = config.n;
    let mut base = empty_table();
    let fixed = [(R1, R2), (R1, R12), (R1, R112), (R112, R12), (R12, R2), (R1, R1112)];
    for (l, r) in fixed {
        base[l.rank()][r.rank()] = reference[l.rank()][r.rank()].clone();
    }
    let shell = Presentation::new(kind, config, params.to_vec(), &base, &Default::default());
    let derived_pairs: Vec<(Root, Root)> = pairs().filter(|pr| !fixed.contains(pr)).collect();
    let level = |(l, r): (Root, Root)| l.degree()[0] + l.degree()[1] + r.degree()[0] + r.degree()[1];
    let mut levels: Vec<i64> = derived_pairs.iter().map(|pr| level(*pr)).collect();
    levels.sort();
    levels.dedup();

    let (mut total_unknowns, mut equations, mut rank) = (0, 0, 0);
    for lv in levels {
        let unknowns: Vec<Unknown> = derived_pairs
            .iter()
            .filter(|pr| level(**pr) == lv)
            .flat_map(|(l, r)| ansatz(&shell, *l, *r))
            .collect();
        total_unknowns += unknowns.len();
        let build = |values: &[(usize, Cyclo)]| {
            let t = table_with(&base, &unknowns, values, n);
            Presentation::new(kind, config, params.to_vec(), &t, &Default::default())
        };
        let d0 = defects(&build(&[]));
        let cols: Vec<Vec<Option<Element>>> = (0..unknowns.len())
            .map(|j| {
                let dj = defects(&build(&[(j, Cyclo::one(n))]));
                dj.into_iter().zip(&d0).map(|(a, b)| Some(a?.difference(b.as_ref()?))).collect()
            })
            .collect();
        let mut ech = Echelon { n, pivots: BTreeMap::new(), inconsistent: false };
        for t in 0..d0.len() {
            let Some(d0t) = &d0[t] else { continue };
            if cols.iter().any(|c| c[t].is_none()) {
                continue;
            }
            let mut rows: BTreeMap<(Mono, ParamKey), (BTreeMap<usize, Cyclo>, Cyclo)> = BTreeMap::new();
            for (m, c) in d0t.iter() {
                for (k, v) in c.terms() {
                    rows.entry((*m, *k)).or_insert_with(|| (BTreeMap::new(), Cyclo::zero(n))).1 = -v.clone();
                }
            }
            for (j, col) in cols.iter().enumerate() {
                for (m, c) in col[t].as_ref().expect("checked").iter() {
                    for (k, v) in c.terms() {
                        rows.entry((*m, *k))
                            .or_insert_with(|| (BTreeMap::new(), Cyclo::zero(n)))
                            .0
                            .insert(j, v.clone());
                    }
                }
            }
            for (_, (row, rhs)) in rows {
                equations += 1;
                ech.push(row, rhs);
            }
        }
        if ech.inconsistent {
            return Err(DeriveError::Inconsistent);
        }
        rank += ech.pivots.len();
        base = table_with(&base, &unknowns, &ech.solve(), n);
    }
    let check = Presentation::new(kind, config, params.to_vec(), &base, &Default::default());
    let certified = defects(&check).iter().all(|d| d.as_ref().is_some_and(|d| d.is_zero()));
    Ok(Derivation { table: base, derived_pairs, unknowns: total_unknowns, equations, rank, certified })
}

#[derive(Clone, Debug, Serialize)]
pub struct TableMismatch {
    pub left: &'static str,
    pub right: &'static str,
    pub expected: String,
    pub computed: String,
}

/// Pairs on which two tables differ, with both sides printed.
pub fn compare_tables(expected: &BracketTable, computed: &BracketTable, letter: char) -> Vec<TableMismatch> {
    let mut out = Vec::new();
    for (l, r) in pairs() {
        let e = expected[l.rank()][r.rank()].clone().unwrap_or_default();
        let c = computed[l.rank()][r.rank()].clone().unwrap_or_default();
        if e != c {
            out.push(TableMismatch { left: l.name(), right: r.name(), expected: e.format(letter), computed: c.format(letter) });
        }
    }
    out
}
