use std::sync::Arc;

use dashmap::DashMap;
use rustc_hash::FxHashMap;

use super::algebra::{EngineError, Presentation};
use super::element::Element;
use super::mono::Mono;
use super::tensor::{Tensor, TensorAlgebra};
use crate::rootdata::{Root, ROOTS};
use crate::scalars::ParamScalar;

/// An algebra map from a bosonization into a tensor product of two bosonizations,
/// fixed by `x_i -> l_i (x) 1 + g_i (x) r_i` on simple letters and `g -> g (x) g`.
///
/// With both legs equal to the source this is the coproduct; with legs `(E, H')` it is
/// the coaction `rho`, with legs `(u, E)` the coaction `delta`. Images of root letters
/// follow from their Shirshov brackets. Images of letter powers are cached.
pub struct GeneratorMap {
    pub source: Arc<Presentation>,
    pub target: TensorAlgebra,
    letters: Vec<Tensor>,
    powers: DashMap<(usize, u8), Arc<Tensor>>,
}

impl std::fmt::Debug for GeneratorMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GeneratorMap").field("source", &self.source.kind).finish()
    }
}

impl GeneratorMap {
    pub fn new(source: Arc<Presentation>, left: Arc<Presentation>, right: Arc<Presentation>) -> Self {
        let n = source.n();
        let target = TensorAlgebra::new(left, right);
        let mut letters: Vec<Option<Tensor>> = vec![None; 6];
        for r in [Root::R1, Root::R2] {
            let d = r.degree();
            let g = Mono::group([d[0] as i16, d[1] as i16]);
            let mut t = Tensor::from_term(Mono::letter(r), Mono::ONE, ParamScalar::one(n));
            t.add_term_owned(g, Mono::letter(r), ParamScalar::one(n));
            letters[r.rank()] = Some(t);
        }
        // Shirshov order: each root's factors come earlier in this list
        for r in [Root::R12, Root::R112, Root::R1112, Root::Beta] {
            let (a, b) = r.shirshov().expect("non-simple root");
            let ta = letters[a.rank()].as_ref().expect("factor image");
            let tb = letters[b.rank()].as_ref().expect("factor image");
            letters[r.rank()] = Some(target.qbracket(ta, tb, a.degree(), b.degree()));
        }
        GeneratorMap {
            source,
            target,
            letters: letters.into_iter().map(|t| t.expect("all roots")).collect(),
            powers: DashMap::new(),
        }
    }

    /// The coproduct of a bosonization.
    pub fn coproduct(p: Arc<Presentation>) -> Self {
        Self::new(p.clone(), p.clone(), p)
    }

    pub fn letter_image(&self, r: Root) -> &Tensor {
        &self.letters[r.rank()]
    }

    pub fn group_image(&self, g: [i16; 2]) -> Tensor {
        Tensor::from_term(Mono::group(g), Mono::group(g), ParamScalar::one(self.source.n()))
    }

    /// Image of `x_r^k`.
    pub fn power_image(&self, r: Root, k: u8) -> Result<Arc<Tensor>, EngineError> {
        if k == 0 {
            return Ok(Arc::new(self.target.one()));
        }
        if let Some(hit) = self.powers.get(&(r.rank(), k)) {
            return Ok(hit.value().clone());
        }
        let prev = self.power_image(r, k - 1)?;
        let t = Arc::new(self.target.try_mul(&prev, self.letter_image(r))?);
        self.powers.insert((r.rank(), k), t.clone());
        Ok(t)
    }

    pub fn apply_mono(&self, m: &Mono) -> Result<Tensor, EngineError> {
        let mut acc: Option<Tensor> = None;
        for r in ROOTS.iter().rev() {
            let k = m.e[r.rank()];
            if k == 0 {
                continue;
            }
            let img = self.power_image(*r, k)?;
            acc = Some(match acc {
                None => (*img).clone(),
                Some(a) => self.target.try_mul(&a, &img)?,
            });
        }
        let acc = acc.unwrap_or_else(|| self.target.one());
        if m.g == [0, 0] {
            return Ok(acc);
        }
        Ok(self.right_group(&acc, m.g))
    }

    /// `t * (g (x) g)`; group elements sit rightmost, so this only shifts exponents.
    fn right_group(&self, t: &Tensor, g: [i16; 2]) -> Tensor {
        let mut out = Tensor::zero();
        for ((l, r), c) in t.iter() {
            out.add_term_owned(l.times_group(g), r.times_group(g), c.clone());
        }
        out
    }

    pub fn try_apply(&self, e: &Element) -> Result<Tensor, EngineError> {
        let mut out = Tensor::zero();
        for (m, c) in e.sorted() {
            let img = self.apply_mono(&m)?;
            out.add_scaled(&img, &c);
        }
        Ok(out)
    }

    pub fn apply(&self, e: &Element) -> Tensor {
        self.try_apply(e).unwrap_or_else(|e| panic!("{e}"))
    }
}

/// Counit of a bosonization: kills letters, sends group elements to 1.
pub fn counit(e: &Element, n: u16) -> ParamScalar {
    let mut s = ParamScalar::zero(n);
    for (m, c) in e.iter() {
        if !m.has_letters() {
            s += c;
        }
    }
    s
}

/// `(eps (x) id) t`.
pub fn counit_left(t: &Tensor) -> Element {
    let mut out = Element::zero();
    for ((l, r), c) in t.iter() {
        if !l.has_letters() {
            out.add_term(*r, c);
        }
    }
    out
}

/// `(id (x) eps) t`.
pub fn counit_right(t: &Tensor) -> Element {
    let mut out = Element::zero();
    for ((l, r), c) in t.iter() {
        if !r.has_letters() {
            out.add_term(*l, c);
        }
    }
    out
}

/// A sparse element of a triple tensor product.
pub type Tensor3 = FxHashMap<(Mono, Mono, Mono), ParamScalar>;

fn add3(out: &mut Tensor3, k: (Mono, Mono, Mono), c: ParamScalar) {
    match out.entry(k) {
        std::collections::hash_map::Entry::Occupied(mut o) => {
            *o.get_mut() += &c;
            if o.get().is_zero() {
                o.remove();
            }
        }
        std::collections::hash_map::Entry::Vacant(v) => {
            if !c.is_zero() {
                v.insert(c);
            }
        }
    }
}

/// `(f (x) id) t`.
pub fn apply_left(f: &GeneratorMap, t: &Tensor) -> Result<Tensor3, EngineError> {
    let mut out = Tensor3::default();
    let mut by_left: FxHashMap<Mono, Vec<(Mono, ParamScalar)>> = FxHashMap::default();
    for ((l, r), c) in t.iter() {
        by_left.entry(*l).or_default().push((*r, c.clone()));
    }
    for (l, rs) in by_left {
        let img = f.apply_mono(&l)?;
        for ((a, b), c1) in img.iter() {
            for (r, c2) in &rs {
                add3(&mut out, (*a, *b, *r), c1 * c2);
            }
        }
    }
    Ok(out)
}

/// `(id (x) f) t`.
pub fn apply_right(f: &GeneratorMap, t: &Tensor) -> Result<Tensor3, EngineError> {
    let mut out = Tensor3::default();
    let mut by_right: FxHashMap<Mono, Vec<(Mono, ParamScalar)>> = FxHashMap::default();
    for ((l, r), c) in t.iter() {
        by_right.entry(*r).or_default().push((*l, c.clone()));
    }
    for (r, ls) in by_right {
        let img = f.apply_mono(&r)?;
        for ((a, b), c1) in img.iter() {
            for (l, c2) in &ls {
                add3(&mut out, (*l, *a, *b), c1 * c2);
            }
        }
    }
    Ok(out)
}
