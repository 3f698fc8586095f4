use rustc_hash::FxHashMap;

use super::mono::Mono;
use crate::scalars::{Cyclo, ParamScalar};

/// A sparse linear combination of PBW monomials.
#[derive(Clone, Debug, Default)]
pub struct Element {
    terms: FxHashMap<Mono, ParamScalar>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for Element {}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn from_term(m: Mono, c: ParamScalar) -> Self {
        let mut e = Element::zero();
        e.add_term(m, &c);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, ParamScalar)>>(it: I) -> Self {
        let mut e = Element::zero();
        for (m, c) in it {
            e.add_term(m, &c);
        }
        e
    }

    pub fn one(n: u16) -> Self {
        Self::from_term(Mono::ONE, ParamScalar::one(n))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Mono, c: &ParamScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add_term_owned(&mut self, m: Mono, c: ParamScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::hash_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn coeff(&self, m: &Mono) -> Option<&ParamScalar> {
        self.terms.get(m)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Mono, &ParamScalar)> {
        self.terms.iter()
    }

    /// Terms in canonical (sorted) order.
    pub fn sorted(&self) -> Vec<(Mono, ParamScalar)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        v.sort_by_key(|a| a.0);
        v
    }

    pub fn add(&mut self, other: &Element) {
        for (m, c) in &other.terms {
            self.add_term(*m, c);
        }
    }

    pub fn sub(&mut self, other: &Element) {
        for (m, c) in &other.terms {
            self.add_term(*m, &c.neg());
        }
    }

    pub fn add_scaled(&mut self, other: &Element, s: &ParamScalar) {
        for (m, c) in &other.terms {
            self.add_term_owned(*m, c * s);
        }
    }

    pub fn scaled(&self, s: &ParamScalar) -> Element {
        let mut out = Element::zero();
        out.add_scaled(self, s);
        out
    }

    pub fn scaled_cyclo(&self, s: &Cyclo) -> Element {
        Element::from_terms(self.terms.iter().map(|(m, c)| (*m, c.scale(s))))
    }

    pub fn negated(&self) -> Element {
        Element::from_terms(self.terms.iter().map(|(m, c)| (*m, c.neg())))
    }

    pub fn difference(&self, other: &Element) -> Element {
        let mut d = self.clone();
        d.sub(other);
        d
    }

    /// Applies a map to every coefficient, dropping zeros.
    pub fn map_coeffs(&self, f: impl Fn(&ParamScalar) -> ParamScalar) -> Element {
        Element::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    /// Multiplies every monomial on the right by a group element.
    pub fn times_group(&self, g: [i16; 2]) -> Element {
        Element::from_terms(self.terms.iter().map(|(m, c)| (m.times_group(g), c.clone())))
    }

    pub fn into_terms(self) -> FxHashMap<Mono, ParamScalar> {
        self.terms
    }

    pub fn format(&self, letter: char) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.sorted()
            .iter()
            .map(|(m, c)| format!("({c})*{}", m.fmt_with(letter)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}
