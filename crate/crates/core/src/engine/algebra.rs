use std::hash::BuildHasherDefault;
use std::sync::Arc;

use dashmap::DashMap;
use rustc_hash::{FxHashMap, FxHasher};
use serde::{Deserialize, Serialize};

use super::element::Element;
use super::mono::{highest, letters_degree, lowest, Letters, Mono};
use crate::rootdata::{BraidingConfig, Root, ROOTS};
use crate::scalars::{Param, ParamKey, ParamScalar};

pub type Terms = Vec<(Mono, ParamScalar)>;
type Cache<K> = DashMap<K, Arc<Terms>, BuildHasherDefault<FxHasher>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    PreNichols,
    Nichols,
    CleftLambda,
    CleftLambdaMu,
    LiftLambda,
    LiftLambdaMu,
}

impl Kind {
    pub fn letter(self) -> char {
        match self {
            Kind::PreNichols | Kind::Nichols => 'x',
            Kind::CleftLambda | Kind::CleftLambdaMu => 'y',
            Kind::LiftLambda | Kind::LiftLambdaMu => 'a',
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Kind::PreNichols => "pre-nichols",
            Kind::Nichols => "nichols",
            Kind::CleftLambda => "cleft-lambda",
            Kind::CleftLambdaMu => "cleft-lambda-mu",
            Kind::LiftLambda => "lift-lambda",
            Kind::LiftLambdaMu => "lift-lambda-mu",
        }
    }

    pub fn from_name(s: &str) -> Option<Kind> {
        [Kind::PreNichols, Kind::Nichols, Kind::CleftLambda, Kind::CleftLambdaMu, Kind::LiftLambda, Kind::LiftLambdaMu]
            .into_iter()
            .find(|k| k.name() == s)
    }

    pub fn has_powers(self) -> bool {
        matches!(self, Kind::Nichols | Kind::CleftLambdaMu | Kind::LiftLambdaMu)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error("no rewrite rule for the pair ({0}, {1})")]
    MissingRule(Root, Root),
    #[error("bracket of inhomogeneous elements")]
    InhomogeneousBracket,
    #[error("unknown token '{0}'")]
    BadToken(String),
    #[error("presentation is not certified confluent")]
    Uncertified,
}

/// `x_l x_r -> q^exp x_r x_l + tail` for a convex-ordered pair `l < r`.
#[derive(Clone, Debug)]
pub struct Rule {
    pub exp: i64,
    pub tail: Arc<Terms>,
}

/// `x_root^bound -> tail`.
#[derive(Clone, Debug)]
pub struct PowerRule {
    pub bound: u8,
    pub tail: Arc<Terms>,
}

/// A rewriting system on root letters and group elements, together with the memo
/// caches of its normal-form products.
///
/// Rules are immutable after construction, so one presentation can serve many
/// workers concurrently; the caches are sharded maps filled on demand.
pub struct Presentation {
    pub kind: Kind,
    pub config: BraidingConfig,
    pub params: Vec<Param>,
    rules: Vec<Option<Rule>>,
    powers: Vec<Option<PowerRule>>,
    certified: std::sync::atomic::AtomicBool,
    insert_cache: Cache<(Letters, u8)>,
    mul_cache: Cache<(Letters, Letters)>,
}

impl std::fmt::Debug for Presentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Presentation").field("kind", &self.kind).field("config", &self.config).finish()
    }
}

fn terms_of(e: &Element) -> Arc<Terms> {
    Arc::new(e.sorted())
}

impl Presentation {
    /// Creates a presentation from a full or partial rule table. `rules[l][r]` is the
    /// tail of `[x_l, x_r]_c` for `l < r`; `None` marks a rule that is not known yet.
    pub fn new(
        kind: Kind,
        config: BraidingConfig,
        params: Vec<Param>,
        rules: &[[Option<Element>; 6]; 6],
        powers: &[Option<Element>; 6],
    ) -> Self {
        let mut rv = vec![None; 36];
        for l in 0..6 {
            for r in (l + 1)..6 {
                if let Some(t) = &rules[l][r] {
                    let exp = config.bichar_exp(ROOTS[l].degree(), ROOTS[r].degree());
                    rv[l * 6 + r] = Some(Rule { exp, tail: terms_of(t) });
                }
            }
        }
        let pv = (0..6)
            .map(|i| {
                powers[i].as_ref().map(|t| PowerRule { bound: config.n_alpha(ROOTS[i]) as u8, tail: terms_of(t) })
            })
            .collect();
        Presentation {
            kind,
            config,
            params,
            rules: rv,
            powers: pv,
            certified: std::sync::atomic::AtomicBool::new(false),
            insert_cache: Cache::default(),
            mul_cache: Cache::default(),
        }
    }

    pub fn n(&self) -> u16 {
        self.config.n
    }

    pub fn letter(&self) -> char {
        self.kind.letter()
    }

    pub fn rule(&self, l: Root, r: Root) -> Option<&Rule> {
        self.rules[l.rank() * 6 + r.rank()].as_ref()
    }

    /// Tail of `[x_l, x_r]_c` for `l < r` as an element.
    pub fn rule_tail(&self, l: Root, r: Root) -> Option<Element> {
        self.rule(l, r).map(|ru| Element::from_terms(ru.tail.iter().cloned()))
    }

    pub fn power_rule(&self, r: Root) -> Option<&PowerRule> {
        self.powers[r.rank()].as_ref()
    }

    pub fn power_tail(&self, r: Root) -> Option<Element> {
        self.power_rule(r).map(|p| Element::from_terms(p.tail.iter().cloned()))
    }

    pub fn mark_certified(&self, ok: bool) {
        self.certified.store(ok, std::sync::atomic::Ordering::SeqCst);
    }

    pub fn is_certified(&self) -> bool {
        self.certified.load(std::sync::atomic::Ordering::SeqCst)
    }

    /// Refuses to hand out an uncertified deformed presentation.
    pub fn require_certified(&self) -> Result<(), EngineError> {
        let deformed = !matches!(self.kind, Kind::PreNichols | Kind::Nichols);
        if deformed && !self.is_certified() {
            return Err(EngineError::Uncertified);
        }
        Ok(())
    }

    pub fn cache_len(&self) -> (usize, usize) {
        (self.insert_cache.len(), self.mul_cache.len())
    }

    pub fn clear_cache(&self) {
        self.insert_cache.clear();
        self.mul_cache.clear();
    }

    fn within_bounds(&self, v: &Letters) -> bool {
        self.powers.iter().zip(v.iter()).all(|(p, e)| p.as_ref().is_none_or(|p| *e < p.bound))
    }

    /// Exponent bound of a root letter in normal forms, if any.
    pub fn bound(&self, r: Root) -> Option<u8> {
        self.power_rule(r).map(|p| p.bound)
    }

    fn one(&self) -> ParamScalar {
        ParamScalar::one(self.n())
    }

    fn group_scalar_exp(&self, g: [i16; 2], d: [i64; 2]) -> i64 {
        self.config.bichar_exp([g[0] as i64, g[1] as i64], d)
    }

    /// Normal form of `u * x_d` for a letter word `u` already in normal form.
    pub fn insert(&self, u: &Letters, d: usize) -> Result<Arc<Terms>, EngineError> {
        let key = (*u, d as u8);
        if let Some(hit) = self.insert_cache.get(&key) {
            return Ok(hit.value().clone());
        }
        let res = Arc::new(self.insert_uncached(u, d)?);
        self.insert_cache.insert(key, res.clone());
        Ok(res)
    }

    fn insert_uncached(&self, u: &Letters, d: usize) -> Result<Terms, EngineError> {
        let low = lowest(u);
        match low {
            None => {
                let mut e = [0u8; 6];
                e[d] = 1;
                Ok(vec![(Mono::letters(e), self.one())])
            }
            Some(g) if d < g => {
                let mut e = *u;
                e[d] = 1;
                Ok(vec![(Mono::letters(e), self.one())])
            }
            Some(g) if d == g => {
                let mut e = *u;
                e[d] = e[d].checked_add(1).expect("letter exponent overflow");
                if let Some(p) = &self.powers[d] {
                    if e[d] >= p.bound {
                        // u may carry an over-bound power when a tail is not normal
                        e[d] -= p.bound;
                        return self.mul_letters_terms(&e, &p.tail);
                    }
                }
                Ok(vec![(Mono::letters(e), self.one())])
            }
            Some(g) => {
                let rule = self.rules[g * 6 + d].as_ref().ok_or(EngineError::MissingRule(ROOTS[g], ROOTS[d]))?;
                let mut p = *u;
                p[g] -= 1;
                let mut acc: FxHashMap<Mono, ParamScalar> = FxHashMap::default();
                let gdeg = ROOTS[g].degree();
                for (m, c) in self.insert(&p, d)?.iter() {
                    let s = c.mul_qpow(rule.exp + self.group_scalar_exp(m.g, gdeg));
                    for (m2, c2) in self.insert(&m.e, g)?.iter() {
                        let mm = m2.times_group(m.g);
                        accumulate(&mut acc, mm, &s, c2);
                    }
                }
                for (m, c) in self.mul_letters_terms(&p, &rule.tail)? {
                    add_into(&mut acc, m, c);
                }
                Ok(finish(acc))
            }
        }
    }

    /// `u * t` for a letter word `u` and an element given by terms.
    fn mul_letters_terms(&self, u: &Letters, t: &Terms) -> Result<Terms, EngineError> {
        let mut acc: FxHashMap<Mono, ParamScalar> = FxHashMap::default();
        for (m, c) in t.iter() {
            for (m2, c2) in self.mul_letters(u, &m.e)?.iter() {
                accumulate(&mut acc, m2.times_group(m.g), c, c2);
            }
        }
        Ok(finish(acc))
    }

    /// Normal form of the product of two normal letter words.
    pub fn mul_letters(&self, u: &Letters, v: &Letters) -> Result<Arc<Terms>, EngineError> {
        let Some(top) = highest(v) else {
            return Ok(Arc::new(vec![(Mono::letters(*u), self.one())]));
        };
        if lowest(u).is_none() && self.within_bounds(v) {
            return Ok(Arc::new(vec![(Mono::letters(*v), self.one())]));
        }
        let key = (*u, *v);
        if let Some(hit) = self.mul_cache.get(&key) {
            return Ok(hit.value().clone());
        }
        let mut rest = *v;
        rest[top] -= 1;
        let res = if lowest(&rest).is_none() {
            self.insert(u, top)?
        } else {
            let rdeg = letters_degree(&rest);
            let mut acc: FxHashMap<Mono, ParamScalar> = FxHashMap::default();
            for (m, c) in self.insert(u, top)?.iter() {
                let s = c.mul_qpow(self.group_scalar_exp(m.g, rdeg));
                for (m2, c2) in self.mul_letters(&m.e, &rest)?.iter() {
                    accumulate(&mut acc, m2.times_group(m.g), &s, c2);
                }
            }
            Arc::new(finish(acc))
        };
        self.mul_cache.insert(key, res.clone());
        Ok(res)
    }

    /// Normal form of the product of two monomials.
    pub fn mul_mono(&self, a: &Mono, b: &Mono) -> Result<Arc<Terms>, EngineError> {
        let shift = self.group_scalar_exp(a.g, letters_degree(&b.e));
        let g = [a.g[0] + b.g[0], a.g[1] + b.g[1]];
        let base = self.mul_letters(&a.e, &b.e)?;
        if shift == 0 && g == [0, 0] {
            return Ok(base);
        }
        Ok(Arc::new(base.iter().map(|(m, c)| (m.times_group(g), c.mul_qpow(shift))).collect()))
    }

    pub fn try_mul(&self, a: &Element, b: &Element) -> Result<Element, EngineError> {
        let mut acc = Element::zero();
        for (ma, ca) in a.iter() {
            for (mb, cb) in b.iter() {
                let s = ca * cb;
                for (m, c) in self.mul_mono(ma, mb)?.iter() {
                    acc.add_term_owned(*m, c * &s);
                }
            }
        }
        Ok(acc)
    }

    /// Normal form of a PBW-ordered monomial whose exponents may exceed the power
    /// bounds of this presentation.
    pub fn reduce_mono(&self, m: &Mono) -> Result<Element, EngineError> {
        let mut acc: FxHashMap<Mono, ParamScalar> = FxHashMap::default();
        acc.insert(Mono::ONE, self.one());
        for r in ROOTS.iter().rev() {
            for _ in 0..m.e[r.rank()] {
                let mut next: FxHashMap<Mono, ParamScalar> = FxHashMap::default();
                for (u, c) in acc {
                    let s = c.mul_qpow(self.group_scalar_exp(u.g, r.degree()));
                    for (m2, c2) in self.insert(&u.e, r.rank())?.iter() {
                        accumulate(&mut next, m2.times_group(u.g), &s, c2);
                    }
                }
                acc = next;
            }
        }
        Ok(Element::from_terms(finish(acc).into_iter().map(|(u, c)| (u.times_group(m.g), c))))
    }

    pub fn reduce(&self, e: &Element) -> Result<Element, EngineError> {
        let mut out = Element::zero();
        for (m, c) in e.iter() {
            out.add_scaled(&self.reduce_mono(m)?, c);
        }
        Ok(out)
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        self.try_mul(a, b).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn pow(&self, a: &Element, k: u32) -> Element {
        let mut acc = Element::one(self.n());
        for _ in 0..k {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Normal form of an arbitrary product of root letters and group elements,
    /// given left to right.
    pub fn try_normal_form_word(&self, word: &[WordItem]) -> Result<Element, EngineError> {
        let mut acc = Element::one(self.n());
        for w in word {
            match w {
                WordItem::Letter(r, k) => {
                    let x = Element::from_term(Mono::letter(*r), self.one());
                    for _ in 0..*k {
                        acc = self.try_mul(&acc, &x)?;
                    }
                }
                WordItem::Group(g) => acc = acc.times_group(*g),
            }
        }
        Ok(acc)
    }

    pub fn normal_form_word(&self, word: &[WordItem]) -> Element {
        self.try_normal_form_word(word).unwrap_or_else(|e| panic!("{e}"))
    }

    /// Formal degree used by the braided commutator: the letter degree plus the degree
    /// carried by each parameter (`l1 ~ 4a1+a2`, `l2 ~ a1+2a2`, `mu_alpha ~ N_alpha alpha`).
    /// Returns `Some(None)` for zero and `None` if the element is inhomogeneous.
    pub fn homogeneous_degree(&self, a: &Element) -> Option<Option<[i64; 2]>> {
        let mut d: Option<[i64; 2]> = None;
        for (m, c) in a.iter() {
            for (k, _) in c.terms() {
                let md = m.letter_degree();
                let pd = self.param_degree(*k);
                let t = [md[0] + pd[0], md[1] + pd[1]];
                match d {
                    None => d = Some(t),
                    Some(x) if x != t => return None,
                    _ => {}
                }
            }
        }
        Some(d)
    }

    pub fn param_degree(&self, k: ParamKey) -> [i64; 2] {
        let mut d = [
            4 * k.exp(Param::L1) as i64 + k.exp(Param::L2) as i64,
            k.exp(Param::L1) as i64 + 2 * k.exp(Param::L2) as i64,
        ];
        for r in ROOTS {
            let e = k.exp(r.mu()) as i64;
            if e > 0 {
                let rd = r.degree();
                let na = self.config.n_alpha(r) as i64;
                d[0] += e * na * rd[0];
                d[1] += e * na * rd[1];
            }
        }
        d
    }

    /// `[a, b]_c = ab - b(deg a, deg b) ba` for homogeneous elements.
    pub fn try_qbracket(&self, a: &Element, b: &Element) -> Result<Element, EngineError> {
        let da = self.homogeneous_degree(a).ok_or(EngineError::InhomogeneousBracket)?;
        let db = self.homogeneous_degree(b).ok_or(EngineError::InhomogeneousBracket)?;
        let (Some(da), Some(db)) = (da, db) else {
            return Ok(Element::zero());
        };
        let mut ab = self.try_mul(a, b)?;
        let ba = self.try_mul(b, a)?;
        let s = ParamScalar::qpow(self.n(), self.config.bichar_exp(da, db));
        ab.add_scaled(&ba, &s.neg());
        Ok(ab)
    }

    pub fn qbracket(&self, a: &Element, b: &Element) -> Element {
        self.try_qbracket(a, b).unwrap_or_else(|e| panic!("{e}"))
    }

    /// Multiplies by a group element on the left.
    pub fn group_times(&self, g: [i16; 2], a: &Element) -> Element {
        let mut out = Element::zero();
        for (m, c) in a.iter() {
            let s = c.mul_qpow(self.group_scalar_exp(g, m.letter_degree()));
            out.add_term_owned(m.times_group(g), s);
        }
        out
    }
}

/// An item of a raw word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordItem {
    Letter(Root, u8),
    Group([i16; 2]),
}

#[inline]
fn accumulate(acc: &mut FxHashMap<Mono, ParamScalar>, m: Mono, a: &ParamScalar, b: &ParamScalar) {
    match acc.entry(m) {
        std::collections::hash_map::Entry::Occupied(mut o) => {
            o.get_mut().add_mul(a, b);
        }
        std::collections::hash_map::Entry::Vacant(v) => {
            v.insert(a * b);
        }
    }
}

#[inline]
fn add_into(acc: &mut FxHashMap<Mono, ParamScalar>, m: Mono, c: ParamScalar) {
    match acc.entry(m) {
        std::collections::hash_map::Entry::Occupied(mut o) => {
            *o.get_mut() += &c;
        }
        std::collections::hash_map::Entry::Vacant(v) => {
            v.insert(c);
        }
    }
}

fn finish(acc: FxHashMap<Mono, ParamScalar>) -> Terms {
    let mut v: Terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    v.sort_by_key(|a| a.0);
    v
}
