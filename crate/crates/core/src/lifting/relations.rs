use rustc_hash::FxHashMap;
use serde_json::json;

use super::{LiftContext, LiftError, SectionTable};
use crate::engine::{element_json, Element, Kind, Mono, Presentation, Tensor};
use crate::rootdata::{BraidingConfig, Root, ROOTS};
use crate::scalars::{Param, ParamScalar};
use crate::structure::PowerCoproduct;

/// `letter_root^exponent = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub root: Root,
    pub exponent: u16,
    pub rhs: Element,
}

/// The power relations of a deformed algebra, in convex order, together with the
/// right-hand sides of its two deformed Serre relations `x_11112 = ...` and
/// `[x_12, x_2]_c = ...`.
#[derive(Clone, Debug)]
pub struct LiftingPresentation {
    pub kind: Kind,
    pub config: BraidingConfig,
    /// Parameters allowed to be nonzero; all others are zero.
    pub params: Vec<Param>,
    pub serre: [Element; 2],
    pub relations: Vec<Relation>,
}

impl LiftingPresentation {
    pub fn relation(&self, r: Root) -> Option<&Relation> {
        self.relations.iter().find(|x| x.root == r)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let letter = self.kind.letter();
        json!({
            "kind": self.kind.name(),
            "config": self.config,
            "params": self.params.iter().map(|p| p.token()).collect::<Vec<_>>(),
            "serre": {
                format!("{letter}11112"): element_json(&self.serre[0]),
                format!("[{letter}12,{letter}2]_c"): element_json(&self.serre[1]),
            },
            "relations": self.relations.iter().map(|r| json!({
                "root": r.root.name(),
                "exponent": r.exponent,
                "rhs": element_json(&r.rhs),
            })).collect::<Vec<_>>(),
        })
    }

    /// Human-readable form, one relation per line.
    pub fn display(&self) -> String {
        let c = self.kind.letter();
        let mut out = format!("{c}11112 = {}\n[{c}12,{c}2]_c = {}\n", self.serre[0].format(c), self.serre[1].format(c));
        for r in &self.relations {
            out.push_str(&format!("{c}{}^{} = {}\n", r.root.name(), r.exponent, r.rhs.format(c)));
        }
        out
    }
}

fn param(n: u16, p: Param) -> ParamScalar {
    ParamScalar::param(n, p)
}

fn scalar(c: ParamScalar) -> Element {
    Element::from_term(Mono::ONE, c)
}

fn serre(n: u16, lambda: &[Param], group: bool) -> [Element; 2] {
    let one = |p: Param, g: [i16; 2]| {
        if !lambda.contains(&p) {
            return Element::zero();
        }
        let mut e = scalar(param(n, p));
        if group {
            e.add_term_owned(Mono::group(g), param(n, p).neg());
        }
        e
    };
    [one(Param::L1, [4, 1]), one(Param::L2, [1, 2])]
}

fn group_power(r: Root, k: u16) -> Mono {
    let d = r.degree();
    Mono::group([(d[0] * k as i64) as i16, (d[1] * k as i64) as i16])
}

/// `mu_alpha (1 - g_alpha^(N_alpha))`.
fn mu_term(config: BraidingConfig, r: Root) -> Element {
    let n = config.n;
    let mu = param(n, r.mu());
    let mut e = scalar(mu.clone());
    e.add_term_owned(group_power(r, config.n_alpha(r)), mu.neg());
    e
}

/// `y_alpha^N = mu_alpha - (gamma(x_alpha^N) - y_alpha^N)` for each root.
pub fn cleft_relations(ctx: &LiftContext, sections: &SectionTable) -> Result<LiftingPresentation, LiftError> {
    let config = ctx.config;
    let n = config.n;
    let mut relations = Vec::new();
    for r in ROOTS {
        let k = config.n_alpha(r);
        let g = sections.get(r).ok_or(LiftError::MissingSection(r))?;
        let mut rhs = scalar(param(n, r.mu()));
        rhs.sub(g);
        rhs.add_term_owned(Mono::power(r, k as u8), ParamScalar::one(n));
        relations.push(Relation { root: r, exponent: k, rhs });
    }
    Ok(LiftingPresentation { kind: Kind::CleftLambdaMu, config, params: ctx.params(), serre: serre(n, &ctx.lambda, false), relations })
}

/// Applies a presentation's normal form to every right leg.
pub fn reduce_right(t: &Tensor, p: &Presentation) -> Result<Tensor, LiftError> {
    let mut cache: FxHashMap<Mono, Element> = FxHashMap::default();
    let mut out = Tensor::zero();
    for ((l, r), c) in t.sorted() {
        if let std::collections::hash_map::Entry::Vacant(e) = cache.entry(r) {
            e.insert(p.reduce_mono(&r)?);
        }
        for (m, d) in cache[&r].iter() {
            out.add_term_owned(l, *m, &c * d);
        }
    }
    Ok(out)
}

/// Solves `r~ (x) 1 = (id (x) tau) delta(gamma) - g^N (x) tau(gamma)` and returns the
/// relation `a_root^N = mu_root (1 - g^N) - (r~ - a_root^N)`.
pub fn lifting_relation(
    root: Root,
    ctx: &LiftContext,
    sections: &SectionTable,
    cleft_mu: &Presentation,
) -> Result<Relation, LiftError> {
    let config = ctx.config;
    let n = config.n;
    let k = config.n_alpha(root);
    let gamma = sections.get(root).ok_or(LiftError::MissingSection(root))?;
    let image = ctx.delta.try_apply(gamma)?;
    let mut reduced = reduce_right(&image, cleft_mu)?;
    let tau = cleft_mu.reduce(gamma)?;
    reduced.sub(&Tensor::from_element_right(group_power(root, k), &tau));
    let mut tilde = Element::zero();
    for ((l, r), c) in reduced.sorted() {
        if !r.is_one() {
            return Err(LiftError::LiftSolveFailure(root, format!("right leg {r} survives")));
        }
        tilde.add_term_owned(l, c);
    }
    let top = Mono::power(root, k as u8);
    if tilde.coeff(&top).map(|c| c.is_one()) != Some(true) {
        return Err(LiftError::LiftSolveFailure(root, "leading coefficient is not 1".into()));
    }
    let mut rhs = mu_term(config, root);
    rhs.sub(&tilde);
    rhs.add_term_owned(top, ParamScalar::one(n));
    Ok(Relation { root, exponent: k, rhs })
}

/// The full lifted presentation from all six sections.
pub fn lifting_presentation(
    ctx: &LiftContext,
    sections: &SectionTable,
    cleft_mu: &Presentation,
) -> Result<LiftingPresentation, LiftError> {
    let relations = ROOTS.iter().map(|r| lifting_relation(*r, ctx, sections, cleft_mu)).collect::<Result<Vec<_>, _>>()?;
    Ok(assemble_lifting(ctx, relations))
}

/// Wraps already computed lifted relations (e.g. restored from a checkpoint).
pub fn assemble_lifting(ctx: &LiftContext, relations: Vec<Relation>) -> LiftingPresentation {
    LiftingPresentation { kind: Kind::LiftLambdaMu, config: ctx.config, params: ctx.params(), serre: serre(ctx.config.n, &ctx.lambda, true), relations }
}

/// The relations `a_alpha^N = mu_alpha (1 - g^N) - sum mu(m) r_{n,m} a^n g^m` read off the
/// power coproducts, with `mu(m)` the product of `mu_beta` over the root powers of `x^m`.
pub fn generic_relations(config: BraidingConfig, coproducts: &[PowerCoproduct], mu: &[Param]) -> Result<LiftingPresentation, LiftError> {
    config.check_params(mu).map_err(crate::presentations::BuildError::from)?;
    let n = config.n;
    let mut relations = Vec::new();
    for pc in coproducts {
        let root = pc.root;
        let k = pc.exponent;
        let top = Mono::power(root, k as u8);
        let gk = group_power(root, k);
        let mut rhs = if mu.contains(&root.mu()) { mu_term(config, root) } else { Element::zero() };
        for ((l, r), c) in pc.tensor.sorted() {
            if (l == top && r.is_one()) || (l == gk && r == top) {
                continue;
            }
            let mut coef = c.neg();
            for b in ROOTS {
                let e = r.e[b.rank()] as u16;
                let kb = config.n_alpha(b);
                if !e.is_multiple_of(kb) {
                    return Err(LiftError::NotRootPower(r.to_string()));
                }
                if e > 0 {
                    coef = if mu.contains(&b.mu()) { &coef * &param(n, b.mu()).pow((e / kb) as u32) } else { ParamScalar::zero(n) };
                }
            }
            rhs.add_term_owned(l, coef);
        }
        relations.push(Relation { root, exponent: k, rhs });
    }
    Ok(LiftingPresentation { kind: Kind::LiftLambdaMu, config, params: mu.to_vec(), serre: [Element::zero(), Element::zero()], relations })
}
