use std::sync::Arc;

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::algebra::{EngineError, Presentation};
use super::element::Element;
use super::mono::Mono;
use crate::scalars::ParamScalar;

/// A sparse element of an ordinary tensor product `L (x) R`.
#[derive(Clone, Debug, Default)]
pub struct Tensor {
    terms: FxHashMap<(Mono, Mono), ParamScalar>,
}

impl PartialEq for Tensor {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for Tensor {}

impl Tensor {
    pub fn zero() -> Self {
        Tensor::default()
    }

    pub fn from_term(l: Mono, r: Mono, c: ParamScalar) -> Self {
        let mut t = Tensor::zero();
        t.add_term_owned(l, r, c);
        t
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Mono, Mono), &ParamScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, l: &Mono, r: &Mono) -> Option<&ParamScalar> {
        self.terms.get(&(*l, *r))
    }

    pub fn add_term_owned(&mut self, l: Mono, r: Mono, c: ParamScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((l, r)) {
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

    pub fn add(&mut self, other: &Tensor) {
        for ((l, r), c) in &other.terms {
            self.add_term_owned(*l, *r, c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &Tensor, s: &ParamScalar) {
        for ((l, r), c) in &other.terms {
            self.add_term_owned(*l, *r, c * s);
        }
    }

    pub fn sub(&mut self, other: &Tensor) {
        for ((l, r), c) in &other.terms {
            self.add_term_owned(*l, *r, c.neg());
        }
    }

    pub fn difference(&self, other: &Tensor) -> Tensor {
        let mut d = self.clone();
        d.sub(other);
        d
    }

    pub fn map_coeffs(&self, f: impl Fn(&ParamScalar) -> ParamScalar) -> Tensor {
        let mut out = Tensor::zero();
        for ((l, r), c) in &self.terms {
            out.add_term_owned(*l, *r, f(c));
        }
        out
    }

    pub fn map_terms(&self, f: impl Fn(&Mono, &Mono, &ParamScalar) -> ParamScalar) -> Tensor {
        let mut out = Tensor::zero();
        for ((l, r), c) in &self.terms {
            out.add_term_owned(*l, *r, f(l, r, c));
        }
        out
    }

    /// `sum_i a_i (x) b` for an element `a` and a monomial `b`.
    pub fn from_element_left(a: &Element, r: Mono) -> Tensor {
        let mut t = Tensor::zero();
        for (m, c) in a.iter() {
            t.add_term_owned(*m, r, c.clone());
        }
        t
    }

    pub fn from_element_right(l: Mono, b: &Element) -> Tensor {
        let mut t = Tensor::zero();
        for (m, c) in b.iter() {
            t.add_term_owned(l, *m, c.clone());
        }
        t
    }

    /// Terms in canonical order.
    pub fn sorted(&self) -> Vec<((Mono, Mono), ParamScalar)> {
        let mut v: Vec<_> = self.terms.iter().map(|(k, c)| (*k, c.clone())).collect();
        v.sort_by_key(|a| a.0);
        v
    }

    /// Groups the terms by right leg: `sum_r (sum_l c l) (x) r`.
    pub fn by_right(&self) -> FxHashMap<Mono, Element> {
        let mut out: FxHashMap<Mono, Element> = FxHashMap::default();
        for ((l, r), c) in &self.terms {
            out.entry(*r).or_default().add_term(*l, c);
        }
        out
    }

    pub fn by_left(&self) -> FxHashMap<Mono, Element> {
        let mut out: FxHashMap<Mono, Element> = FxHashMap::default();
        for ((l, r), c) in &self.terms {
            out.entry(*l).or_default().add_term(*r, c);
        }
        out
    }

    pub fn into_terms(self) -> FxHashMap<(Mono, Mono), ParamScalar> {
        self.terms
    }

    pub fn format(&self, left: char, right: char) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.sorted()
            .iter()
            .map(|((l, r), c)| format!("({c})*{} (x) {}", l.fmt_with(left), r.fmt_with(right)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// The tensor product of two presentations, with componentwise multiplication.
#[derive(Clone, Debug)]
pub struct TensorAlgebra {
    pub left: Arc<Presentation>,
    pub right: Arc<Presentation>,
}

const PAR_THRESHOLD: usize = 64;

impl TensorAlgebra {
    pub fn new(left: Arc<Presentation>, right: Arc<Presentation>) -> Self {
        TensorAlgebra { left, right }
    }

    pub fn n(&self) -> u16 {
        self.left.n()
    }

    pub fn one(&self) -> Tensor {
        Tensor::from_term(Mono::ONE, Mono::ONE, ParamScalar::one(self.n()))
    }

    fn mul_chunk(&self, a: &[((Mono, Mono), ParamScalar)], b: &Tensor) -> Result<Tensor, EngineError> {
        let mut out: FxHashMap<(Mono, Mono), ParamScalar> = FxHashMap::default();
        for ((a1, a2), ca) in a {
            for ((b1, b2), cb) in b.iter() {
                let lt = self.left.mul_mono(a1, b1)?;
                if lt.is_empty() {
                    continue;
                }
                let rt = self.right.mul_mono(a2, b2)?;
                if rt.is_empty() {
                    continue;
                }
                let s = ca * cb;
                for (l, cl) in lt.iter() {
                    let sl = &s * cl;
                    for (r, cr) in rt.iter() {
                        match out.entry((*l, *r)) {
                            std::collections::hash_map::Entry::Occupied(mut o) => o.get_mut().add_mul(&sl, cr),
                            std::collections::hash_map::Entry::Vacant(v) => {
                                v.insert(&sl * cr);
                            }
                        }
                    }
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(Tensor { terms: out })
    }

    /// Componentwise product. Work is split over the terms of `a`; the partial sums
    /// are merged by exact addition, so the result does not depend on the split.
    pub fn try_mul(&self, a: &Tensor, b: &Tensor) -> Result<Tensor, EngineError> {
        let av: Vec<((Mono, Mono), ParamScalar)> = a.terms.iter().map(|(k, c)| (*k, c.clone())).collect();
        if av.len() < PAR_THRESHOLD || rayon::current_num_threads() == 1 {
            return self.mul_chunk(&av, b);
        }
        let chunk = av.len().div_ceil(rayon::current_num_threads() * 4).max(1);
        let parts: Vec<Result<Tensor, EngineError>> = av.par_chunks(chunk).map(|c| self.mul_chunk(c, b)).collect();
        let mut acc = Tensor::zero();
        for p in parts {
            let p = p?;
            if acc.is_empty() {
                acc = p;
            } else {
                acc.add(&p);
            }
        }
        Ok(acc)
    }

    pub fn mul(&self, a: &Tensor, b: &Tensor) -> Tensor {
        self.try_mul(a, b).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn pow(&self, a: &Tensor, k: u32) -> Tensor {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// `[a, b]_c` with the braiding scalar for the given formal degrees.
    pub fn qbracket(&self, a: &Tensor, b: &Tensor, da: [i64; 2], db: [i64; 2]) -> Tensor {
        let mut ab = self.mul(a, b);
        let ba = self.mul(b, a);
        let s = ParamScalar::qpow(self.n(), self.left.config.bichar_exp(da, db));
        ab.add_scaled(&ba, &s.neg());
        ab
    }

    /// `(x (x) y) * t` for monomial/element factors on the left.
    pub fn mul_left_element(&self, a: &Element, t: &Tensor) -> Tensor {
        self.mul(&Tensor::from_element_left(a, Mono::ONE), t)
    }
}
