use std::sync::Arc;

use g2lift::engine::{parse_word, Element, GeneratorMap, Kind, Mono, Presentation, Tensor, WordItem};
use g2lift::presentations::{build, hilbert_series, nichols_series_formula};
use g2lift::rootdata::{BraidingConfig, Root, ROOTS};
use g2lift::scalars::{Param, ParamScalar};

fn pre(n: i64, a: i64) -> Presentation {
    build(Kind::PreNichols, BraidingConfig::new(n, a).unwrap(), &[], None).unwrap()
}

fn nf(p: &Presentation, w: &str) -> Element {
    p.normal_form_word(&parse_word(w).unwrap())
}

fn term(n: u16, w: &[(Root, u8)], g: [i16; 2], q: i64) -> Element {
    let mut e = [0u8; 6];
    for (r, k) in w {
        e[r.rank()] += k;
    }
    Element::from_term(Mono { e, g }, ParamScalar::qpow(n, q))
}

fn sum(parts: &[Element]) -> Element {
    let mut out = Element::zero();
    for p in parts {
        out.add(p);
    }
    out
}

#[test]
fn words_parse() {
    assert_eq!(parse_word("x1 x12^2 G2").unwrap(), vec![WordItem::Letter(Root::R1, 1), WordItem::Letter(Root::R12, 2), WordItem::Group([0, -1])]);
    assert_eq!(parse_word("a11212 y1112").unwrap(), vec![WordItem::Letter(Root::Beta, 1), WordItem::Letter(Root::R1112, 1)]);
    assert!(parse_word("z1").is_err());
    assert!(parse_word("g3").is_err());
}

#[test]
fn descending_words_are_normal() {
    let p = pre(7, 2);
    let w = "x2 x12^2 xb x112 x1112 x1^3 g1 g2^-1";
    let e = nf(&p, w);
    assert_eq!(e.len(), 1);
    let (m, c) = e.sorted().pop().unwrap();
    assert!(c.is_one());
    assert_eq!(m.e, [3, 1, 1, 1, 2, 1]);
    assert_eq!(m.g, [1, -1]);
}

#[test]
fn root_vectors_are_braided_commutators() {
    for (n, a) in [(5i64, 0i64), (7, 3), (9, 1)] {
        let p = pre(n, a);
        let nn = n as u16;
        // x1 x2 = x12 + q12 x2 x1
        let expect = sum(&[term(nn, &[(Root::R12, 1)], [0, 0], 0), term(nn, &[(Root::R2, 1), (Root::R1, 1)], [0, 0], a)]);
        assert_eq!(nf(&p, "x1 x2"), expect);
        // x1 x12 = x112 + q11 q12 x12 x1
        let expect = sum(&[term(nn, &[(Root::R112, 1)], [0, 0], 0), term(nn, &[(Root::R12, 1), (Root::R1, 1)], [0, 0], 1 + a)]);
        assert_eq!(nf(&p, "x1 x12"), expect);
        // x1 x112 = x1112 + q11^2 q12 x112 x1
        let expect = sum(&[term(nn, &[(Root::R1112, 1)], [0, 0], 0), term(nn, &[(Root::R112, 1), (Root::R1, 1)], [0, 0], 2 + a)]);
        assert_eq!(nf(&p, "x1 x112"), expect);
    }
}

#[test]
fn serre_relations_hold() {
    for (n, a) in [(5i64, 0i64), (7, 3), (9, 4)] {
        let p = pre(n, a);
        let nn = n as u16;
        // [x1, x1112]_c = 0
        assert_eq!(nf(&p, "x1 x1112"), term(nn, &[(Root::R1112, 1), (Root::R1, 1)], [0, 0], 3 + a));
        // [x12, x2]_c = 0
        assert_eq!(nf(&p, "x12 x2"), term(nn, &[(Root::R2, 1), (Root::R12, 1)], [0, 0], a + 3));
    }
}

#[test]
fn group_elements_move_right_with_characters() {
    let p = pre(7, 3);
    // g1 x1 = q11 x1 g1, g2 x1 = q21 x1 g2, g1 x2 = q12 x2 g1
    assert_eq!(nf(&p, "g1 x1"), term(7, &[(Root::R1, 1)], [1, 0], 1));
    assert_eq!(nf(&p, "g2 x1"), term(7, &[(Root::R1, 1)], [0, 1], -6));
    assert_eq!(nf(&p, "G1 x2 g1"), term(7, &[(Root::R2, 1)], [0, 0], -3));
}

#[test]
fn deformed_serre_relations() {
    let cfg = BraidingConfig::new(7, 3).unwrap();
    let lambda = [Param::L1, Param::L2];
    let e = build(Kind::CleftLambda, cfg, &lambda, None).unwrap();
    let u = build(Kind::LiftLambda, cfg, &lambda, None).unwrap();
    let l1 = ParamScalar::param(7, Param::L1);
    let l2 = ParamScalar::param(7, Param::L2);
    let mut expect = term(7, &[(Root::R1112, 1), (Root::R1, 1)], [0, 0], 6);
    expect.add_term_owned(Mono::ONE, l1.clone());
    assert_eq!(nf(&e, "y1 y1112"), expect);
    let mut expect = term(7, &[(Root::R2, 1), (Root::R12, 1)], [0, 0], 6);
    expect.add_term_owned(Mono::ONE, l2.clone());
    assert_eq!(nf(&e, "y12 y2"), expect);
    let mut expect = term(7, &[(Root::R1112, 1), (Root::R1, 1)], [0, 0], 6);
    expect.add_term_owned(Mono::ONE, l1.clone());
    expect.add_term_owned(Mono::group([4, 1]), l1.neg());
    assert_eq!(nf(&u, "a1 a1112"), expect);
    let mut expect = term(7, &[(Root::R2, 1), (Root::R12, 1)], [0, 0], 6);
    expect.add_term_owned(Mono::ONE, l2.clone());
    expect.add_term_owned(Mono::group([1, 2]), l2.neg());
    assert_eq!(nf(&u, "a12 a2"), expect);
}

#[test]
fn nichols_powers_vanish() {
    for (n, a) in [(5i64, 1i64), (9, 0)] {
        let cfg = BraidingConfig::new(n, a).unwrap();
        let p = build(Kind::Nichols, cfg, &[], None).unwrap();
        for r in ROOTS {
            let k = cfg.n_alpha(r);
            let e = p.normal_form_word(&[WordItem::Letter(r, k as u8)]);
            assert!(e.is_zero(), "x_{}^{k}", r.name());
            let e = p.normal_form_word(&[WordItem::Letter(r, k as u8 - 1)]);
            assert_eq!(e.len(), 1);
        }
        let top: [i64; 2] = ROOTS.iter().fold([0, 0], |d, r| {
            let k = cfg.n_alpha(*r) as i64 - 1;
            [d[0] + k * r.degree()[0], d[1] + k * r.degree()[1]]
        });
        let h = hilbert_series(&p, top);
        let m = cfg.m() as u64;
        assert_eq!(h.total(), (n as u64).pow(3) * m.pow(3));
        assert_eq!(h.dims, nichols_series_formula(&cfg, top));
        assert_eq!(h.dims[&top], 1);
    }
}

#[test]
fn coproduct_of_the_first_commutator() {
    // Delta(x12) = x12 (x) 1 + (1 - q12 q21) x1 g2 (x) x2 + g1 g2 (x) x12, with q12 q21 = q^-3
    for (n, a) in [(5i64, 2i64), (7, 3)] {
        let nn = n as u16;
        let p = Arc::new(pre(n, a));
        let d = GeneratorMap::coproduct(p);
        let mut expect = Tensor::from_term(Mono::letter(Root::R12), Mono::ONE, ParamScalar::one(nn));
        let c = &ParamScalar::one(nn) - &ParamScalar::qpow(nn, -3);
        expect.add_term_owned(Mono::letter(Root::R1).with_group([0, 1]), Mono::letter(Root::R2), c);
        expect.add_term_owned(Mono::group([1, 1]), Mono::letter(Root::R12), ParamScalar::one(nn));
        assert_eq!(*d.letter_image(Root::R12), expect);
    }
}

#[test]
fn element_serialization_round_trips() {
    let p = pre(7, 3);
    let e = nf(&p, "x2 x1 x2 x1 x1");
    let v = g2lift::engine::element_json(&e);
    let terms: Vec<g2lift::engine::TermJson> = serde_json::from_value(v).unwrap();
    assert_eq!(g2lift::engine::element_from_terms(&terms, 7, 3).unwrap(), e);
}
