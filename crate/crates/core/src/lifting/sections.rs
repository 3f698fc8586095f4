use std::sync::Arc;

use super::LiftError;
use crate::engine::{Element, GeneratorMap, Mono, Presentation, Tensor};
use crate::rootdata::Root;
use crate::scalars::ParamScalar;

/// Order in which sections are solved: each root's power coproduct has left legs
/// built from the powers of earlier roots only.
pub const SECTION_ORDER: [Root; 6] = [Root::R1, Root::R2, Root::R12, Root::R1112, Root::R112, Root::Beta];

/// `gamma(x_root^(N_root))` for the roots solved so far.
#[derive(Clone, Debug, Default)]
pub struct SectionTable {
    pub sections: [Option<Element>; 6],
}

impl SectionTable {
    pub fn get(&self, r: Root) -> Option<&Element> {
        self.sections[r.rank()].as_ref()
    }

    /// The multiplicative extension to a left leg `x^n g` whose letter exponents are
    /// multiples of the power bounds: factors in PBW order, group part rightmost.
    pub fn extend(&self, cleft: &Presentation, leg: &Mono) -> Result<Element, LiftError> {
        let n = cleft.n();
        let mut acc = Element::one(n);
        for r in crate::rootdata::ROOTS.iter().rev() {
            let e = leg.e[r.rank()] as u16;
            if e == 0 {
                continue;
            }
            let k = cleft.config.n_alpha(*r);
            if !e.is_multiple_of(k) {
                return Err(LiftError::NotRootPower(leg.to_string()));
            }
            let s = self.get(*r).ok_or(LiftError::MissingSection(*r))?;
            for _ in 0..(e / k) {
                acc = cleft.try_mul(&acc, s)?;
            }
        }
        Ok(acc.times_group(leg.g))
    }
}

/// Result of solving for one section.
#[derive(Clone, Debug)]
pub struct Section {
    pub root: Root,
    pub element: Element,
    /// `rho(section) = (gamma (x) id) Delta(x_root^N)` re-verified on the final element.
    pub certified: bool,
    pub peeled: usize,
}

fn sub_tensor(a: &mut Tensor, b: &Tensor) {
    a.sub(b);
}

/// Solves `rho(gamma) = (gamma (x) id) Delta(x_root^N)` for `gamma = y_root^N + c`.
///
/// Starting from the residual of `y_root^N`, the term with the largest right leg `x^m`
/// must have a pure group-like left leg `s g^(deg m)`; it is cancelled by adding
/// `-s y^m` to `c`, which removes exactly that term at top right-degree. Repeats until
/// the residual vanishes, then re-checks the defining equation.
pub fn section_gamma(
    root: Root,
    rho: &GeneratorMap,
    delta_power: &Tensor,
    known: &SectionTable,
) -> Result<Section, LiftError> {
    let cleft: &Arc<Presentation> = &rho.target.left;
    let n = cleft.n();
    let k = cleft.config.n_alpha(root);
    let top = Mono::power(root, k as u8);
    // (gamma-hat (x) id) over the terms with nontrivial right leg
    let mut target = Tensor::zero();
    for ((l, r), c) in delta_power.sorted() {
        if r.is_one() && l == top {
            continue;
        }
        let gl = known.extend(cleft, &l)?;
        for (m, d) in gl.iter() {
            target.add_term_owned(*m, r, d * &c);
        }
    }
    let lead = Element::from_term(top, ParamScalar::one(n));
    let mut gamma = lead.clone();
    let mut residual = rho.try_apply(&lead)?;
    residual.sub(&Tensor::from_element_left(&lead, Mono::ONE));
    sub_tensor(&mut residual, &target);
    let mut peeled = 0usize;
    while !residual.is_empty() {
        let ((l, r), s) = pick(&residual).ok_or(LiftError::SectionSolveFailure(root, "residual has right leg 1".into()))?;
        let d = r.letter_degree();
        let pure = !l.has_letters() && l.g == [d[0] as i16, d[1] as i16] && r.g == [0, 0];
        if !pure {
            return Err(LiftError::SectionSolveFailure(root, format!("top residual term {l} (x) {r}")));
        }
        let corr = Element::from_term(Mono::letters(r.e), s.neg());
        let mut img = rho.try_apply(&corr)?;
        img.sub(&Tensor::from_element_left(&corr, Mono::ONE));
        residual.add(&img);
        gamma.add(&corr);
        peeled += 1;
        if peeled > 10_000 {
            return Err(LiftError::SectionSolveFailure(root, "no convergence".into()));
        }
    }
    // post-hoc check of the defining equation
    let mut lhs = rho.try_apply(&gamma)?;
    lhs.sub(&Tensor::from_element_left(&gamma, Mono::ONE));
    let certified = lhs == target;
    Ok(Section { root, element: gamma, certified, peeled })
}

/// The residual term with the largest right leg (total degree, then monomial order).
fn pick(t: &Tensor) -> Option<((Mono, Mono), ParamScalar)> {
    let key = |r: &Mono| {
        let d = r.letter_degree();
        (d[0] + d[1], *r)
    };
    let best = t.iter().filter(|((_, r), _)| r.has_letters()).map(|((_, r), _)| key(r)).max()?;
    let mut cands: Vec<_> = t.iter().filter(|((_, r), _)| key(r) == best).collect();
    cands.sort_by(|a, b| a.0.cmp(b.0));
    if cands.len() > 1 {
        // several left legs at the top right leg: report the first non-pure one
        if let Some(bad) = cands.iter().find(|((l, _), _)| l.has_letters()) {
            return Some((*bad.0, bad.1.clone()));
        }
    }
    let ((l, r), c) = cands[0];
    Some(((*l, *r), c.clone()))
}
