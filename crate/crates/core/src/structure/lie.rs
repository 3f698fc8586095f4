use std::collections::BTreeMap;

use super::{PowerCoproduct, StructureError};
use crate::engine::Mono;
use crate::rootdata::{BraidingConfig, Root, ROOTS};
use crate::scalars::Cyclo;

/// A word in the generators `xi_r` of `U(n)`, one entry per factor, leftmost first.
pub type LieWord = Vec<Root>;

/// A linear combination of words; PBW words have non-decreasing convex rank.
pub type LieElement = BTreeMap<Vec<Root>, Cyclo>;

/// Structure constants `[xi_b, xi_a] = c(b, a) xi_eta` for `a < b` in the convex order,
/// where `N_eta eta = N_a a + N_b b`.
#[derive(Clone, Debug)]
pub struct LieConstants {
    pub config: BraidingConfig,
    pub c: BTreeMap<(Root, Root), Cyclo>,
}

fn weight(config: BraidingConfig, r: Root) -> [i64; 2] {
    let d = r.degree();
    let k = config.n_alpha(r) as i64;
    [d[0] * k, d[1] * k]
}

fn word_weight(config: BraidingConfig, w: &[Root]) -> [i64; 2] {
    w.iter().fold([0, 0], |acc, r| {
        let d = weight(config, *r);
        [acc[0] + d[0], acc[1] + d[1]]
    })
}

/// The root `eta` whose generator has weight `w(a) + w(b)`, if any.
pub fn bracket_root(config: BraidingConfig, a: Root, b: Root) -> Option<Root> {
    let (wa, wb) = (weight(config, a), weight(config, b));
    let w = [wa[0] + wb[0], wa[1] + wb[1]];
    ROOTS.iter().copied().find(|r| weight(config, *r) == w)
}

impl LieConstants {
    /// `[xi_x, xi_y]` as `(eta, coefficient)`; `None` when the bracket vanishes by weight.
    fn bracket(&self, x: Root, y: Root) -> Result<Option<(Root, Cyclo)>, StructureError> {
        let Some(eta) = bracket_root(self.config, x, y) else {
            return Ok(None);
        };
        let (hi, lo, sign) = if x > y { (x, y, false) } else { (y, x, true) };
        let c = self.c.get(&(hi, lo)).ok_or(StructureError::MissingConstant(hi, lo))?;
        Ok(Some((eta, if sign { -c } else { c.clone() })))
    }
}

/// Rewrites a word into PBW order using `xi_b xi_a = xi_a xi_b + [xi_b, xi_a]`. Returns
/// the PBW expansion and the coefficient of the single generator `xi_alpha`.
pub fn lie_straighten(word: &[Root], alpha: Root, constants: &LieConstants) -> Result<(LieElement, Cyclo), StructureError> {
    let config = constants.config;
    let n = config.n;
    let found = word_weight(config, word);
    let expected = weight(config, alpha);
    if found != expected {
        return Err(StructureError::WeightMismatch { found, expected });
    }
    let mut out: LieElement = BTreeMap::new();
    let mut stack: Vec<(Vec<Root>, Cyclo)> = vec![(word.to_vec(), Cyclo::one(n))];
    while let Some((w, c)) = stack.pop() {
        let Some(k) = (0..w.len().saturating_sub(1)).find(|&k| w[k] > w[k + 1]) else {
            let e = out.entry(w).or_insert_with(|| Cyclo::zero(n));
            *e += &c;
            continue;
        };
        let mut swapped = w.clone();
        swapped.swap(k, k + 1);
        if let Some((eta, b)) = constants.bracket(w[k], w[k + 1])? {
            let mut merged = w[..k].to_vec();
            merged.push(eta);
            merged.extend_from_slice(&w[k + 2..]);
            stack.push((merged, &c * &b));
        }
        stack.push((swapped, c));
    }
    out.retain(|_, v| !v.is_zero());
    let top = out.get(&vec![alpha]).cloned().unwrap_or_else(|| Cyclo::zero(n));
    Ok((out, top))
}

/// The word attached to a coproduct term `x^n g (x) x^m`: the right leg's generators,
/// then the left leg's, each leg in ascending convex order (the order of `U(n)` PBW
/// words, dual to the descending order of `x^n`), together with `prod n_i! prod m_j!`.
pub fn ruling_word(config: BraidingConfig, left: &Mono, right: &Mono) -> Result<(LieWord, u64), StructureError> {
    let mut word = Vec::new();
    let mut fact = 1u64;
    for leg in [right, left] {
        for r in ROOTS.iter() {
            let e = leg.e[r.rank()] as u16;
            let k = config.n_alpha(*r);
            if !e.is_multiple_of(k) {
                return Err(StructureError::NotScalar(format!("{leg} is not a product of root powers")));
            }
            for i in 1..=(e / k) {
                word.push(*r);
                fact *= i as u64;
            }
        }
    }
    Ok((word, fact))
}

/// `r_{n,m}(alpha) = c(alpha) / (prod n_i! prod m_j!)`.
pub fn r_from_lie(alpha: Root, left: &Mono, right: &Mono, constants: &LieConstants) -> Result<Cyclo, StructureError> {
    let config = constants.config;
    let (word, fact) = ruling_word(config, left, right)?;
    let (_, c) = lie_straighten(&word, alpha, constants)?;
    Ok(c.div(&Cyclo::from_int(config.n, fact as i64))?)
}

/// Checks `q_(alpha,beta)^(N_beta) = 1` for all pairs of roots.
pub fn check_hypothesis(config: BraidingConfig) -> Result<(), StructureError> {
    for a in ROOTS {
        for b in ROOTS {
            if config.bichar_exp(a.degree(), weight(config, b)) != 0 {
                return Err(StructureError::HypothesisViolation(a, b));
            }
        }
    }
    Ok(())
}

/// Fits each `c(b, a)` to the coefficient of `x_a^(N_a) g (x) x_b^(N_b)` in the power
/// coproduct of the root it brackets into.
pub fn fit_constants(config: BraidingConfig, coproducts: &[PowerCoproduct]) -> Result<LieConstants, StructureError> {
    check_hypothesis(config)?;
    let mut c = BTreeMap::new();
    for (i, a) in ROOTS.iter().enumerate() {
        for b in ROOTS.iter().skip(i + 1) {
            let Some(eta) = bracket_root(config, *a, *b) else {
                continue;
            };
            let pc = coproducts.iter().find(|p| p.root == eta).ok_or(StructureError::MissingCoproduct(eta))?;
            let right = Mono::power(*b, config.n_alpha(*b) as u8);
            let d = right.letter_degree();
            let left = Mono::power(*a, config.n_alpha(*a) as u8).with_group([d[0] as i16, d[1] as i16]);
            let v = match pc.tensor.coeff(&left, &right) {
                Some(s) => s.as_cyclo().ok_or_else(|| StructureError::NotScalar(format!("{left} (x) {right}")))?,
                None => Cyclo::zero(config.n),
            };
            c.insert((*b, *a), v);
        }
    }
    Ok(LieConstants { config, c })
}
