#![allow(dead_code)]

use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use proptest::test_runner::{Config, FileFailurePersistence, RngAlgorithm, RngSeed, TestRunner};

use g2lift::engine::{apply_left, apply_right, counit_left, counit_right, Element, GeneratorMap, Mono, Presentation, WordItem};
use g2lift::lifting::LiftContext;
use g2lift::presentations::build;
use g2lift::rootdata::{BraidingConfig, Root};
use g2lift::scalars::{Param, ParamScalar};

/// Algebras and maps shared by the property checks.
pub struct Fixture {
    pub pre5: Arc<Presentation>,
    pub delta5: GeneratorMap,
    pub ctx: LiftContext,
    pub delta_u: GeneratorMap,
}

pub fn fixture() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| {
        let pre5 = Arc::new(build(g2lift::engine::Kind::PreNichols, BraidingConfig::new(5, 0).unwrap(), &[], None).unwrap());
        let ctx = LiftContext::new(BraidingConfig::new(7, 3).unwrap(), &[Param::L1, Param::L2]).unwrap();
        Fixture { delta5: GeneratorMap::coproduct(pre5.clone()), pre5, delta_u: GeneratorMap::coproduct(ctx.lift.clone()), ctx }
    })
}

pub fn runner_config(cases: u32, seed: u64) -> Config {
    Config {
        cases,
        rng_algorithm: RngAlgorithm::ChaCha,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: Some(Box::new(FileFailurePersistence::Off)),
        ..Config::default()
    }
}

pub fn runner(cases: u32, seed: u64) -> TestRunner {
    TestRunner::new(runner_config(cases, seed))
}

/// A PBW monomial with at most `max_len` letters and a small group part.
pub fn mono(max_len: u32) -> impl Strategy<Value = Mono> {
    (proptest::collection::vec(0u8..3, 6), -2i16..=2, -2i16..=2).prop_map(move |(mut e, g1, g2)| {
        let mut left = max_len;
        for x in e.iter_mut() {
            *x = (*x as u32).min(left) as u8;
            left -= *x as u32;
        }
        Mono { e: [e[0], e[1], e[2], e[3], e[4], e[5]], g: [g1, g2] }
    })
}

/// A sum of up to three monomials with small integer coefficients.
pub fn element(n: u16, max_len: u32) -> impl Strategy<Value = Element> {
    proptest::collection::vec((mono(max_len), -3i64..=3), 1..=3)
        .prop_map(move |ts| Element::from_terms(ts.into_iter().map(|(m, c)| (m, ParamScalar::from_int(n, c)))))
}

/// A raw word of letters and group elements in arbitrary order.
pub fn word(len: usize) -> impl Strategy<Value = Vec<WordItem>> {
    proptest::collection::vec(
        prop_oneof![
            4 => (0usize..6, 1u8..=2).prop_map(|(r, k)| WordItem::Letter(Root::from_rank(r), k)),
            1 => (-1i16..=1, -1i16..=1).prop_map(|(a, b)| WordItem::Group([a, b])),
        ],
        0..=len,
    )
}

pub fn word_degree(w: &[WordItem]) -> [i64; 2] {
    w.iter().fold([0, 0], |d, it| match it {
        WordItem::Letter(r, k) => [d[0] + r.degree()[0] * *k as i64, d[1] + r.degree()[1] * *k as i64],
        WordItem::Group(_) => d,
    })
}

fn ensure(ok: bool, what: &str) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

/// `(on_left (x) id) f(x) = (id (x) on_right) f(x)`.
pub fn coassociative(f: &GeneratorMap, on_left: &GeneratorMap, on_right: &GeneratorMap, x: &Element) -> Result<(), String> {
    let t = f.try_apply(x).map_err(|e| e.to_string())?;
    let a = apply_left(on_left, &t).map_err(|e| e.to_string())?;
    let b = apply_right(on_right, &t).map_err(|e| e.to_string())?;
    ensure(a == b, "coassociativity")
}

pub fn counit_left_holds(f: &GeneratorMap, x: &Element) -> Result<(), String> {
    let t = f.try_apply(x).map_err(|e| e.to_string())?;
    ensure(counit_left(&t) == *x, "left counit")
}

pub fn counit_right_holds(f: &GeneratorMap, x: &Element) -> Result<(), String> {
    let t = f.try_apply(x).map_err(|e| e.to_string())?;
    ensure(counit_right(&t) == *x, "right counit")
}

/// `f(xy) = f(x) f(y)`.
pub fn multiplicative(f: &GeneratorMap, x: &Element, y: &Element) -> Result<(), String> {
    let xy = f.source.try_mul(x, y).map_err(|e| e.to_string())?;
    let lhs = f.try_apply(&xy).map_err(|e| e.to_string())?;
    let fx = f.try_apply(x).map_err(|e| e.to_string())?;
    let fy = f.try_apply(y).map_err(|e| e.to_string())?;
    let rhs = f.target.try_mul(&fx, &fy).map_err(|e| e.to_string())?;
    ensure(lhs == rhs, "multiplicativity")
}

/// Normal forms are fixed by reduction and products associate.
pub fn normal_form_stable(p: &Presentation, w: &[WordItem], x: &Element, y: &Element) -> Result<(), String> {
    let nf = p.try_normal_form_word(w).map_err(|e| e.to_string())?;
    ensure(p.reduce(&nf).map_err(|e| e.to_string())? == nf, "normal form of a word is not reduced")?;
    let a = p.try_mul(&p.try_mul(x, y).map_err(|e| e.to_string())?, &nf).map_err(|e| e.to_string())?;
    let b = p.try_mul(x, &p.try_mul(y, &nf).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure(a == b, "associativity")?;
    ensure(p.reduce(&a).map_err(|e| e.to_string())? == a, "product is not reduced")
}

/// Every term of the normal form of `w` has the formal degree of `w`.
pub fn graded(p: &Presentation, w: &[WordItem]) -> Result<(), String> {
    let nf = p.try_normal_form_word(w).map_err(|e| e.to_string())?;
    match p.homogeneous_degree(&nf) {
        Some(None) => Ok(()),
        Some(Some(d)) => ensure(d == word_degree(w), "degree changed"),
        None => Err("inhomogeneous normal form".into()),
    }
}

/// Kills every formal parameter.
pub fn kill_all(e: &Element) -> Element {
    e.map_coeffs(|c| c.kill(&Param::ALL))
}
