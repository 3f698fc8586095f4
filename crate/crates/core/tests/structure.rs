use std::sync::Arc;

use g2lift::engine::{GeneratorMap, Kind, Mono};
use g2lift::presentations::build;
use g2lift::rootdata::{BraidingConfig, Root, ROOTS};
use g2lift::scalars::Cyclo;
use g2lift::structure::*;
use g2lift::verify;

fn cfg(n: i64, a: i64) -> BraidingConfig {
    BraidingConfig::new(n, a).unwrap()
}

#[test]
fn root_vector_coproducts_match_the_reference() {
    let refs = parse_coproducts(verify::data::ROOT_COPRODUCTS).unwrap();
    assert_eq!(refs.len(), 4);
    for (n, a) in [(5, 0), (5, 4), (7, 3), (9, 0), (9, 3)] {
        let p = Arc::new(build(Kind::PreNichols, cfg(n, a), &[], None).unwrap());
        let map = GeneratorMap::coproduct(p);
        for r in &refs {
            assert!(coproduct_diff(&map, r).unwrap().is_empty(), "N={n} a={a} root {}", r.root);
        }
    }
}

#[test]
fn simple_root_powers_are_primitive_like() {
    // q-binomial coefficients [N choose k]_q vanish for 0 < k < N
    for (n, a) in [(5, 0), (9, 1)] {
        let c = cfg(n, a);
        let pcs = power_coproducts(c).unwrap();
        for r in [Root::R1, Root::R2] {
            let pc = pcs.iter().find(|p| p.root == r).unwrap();
            let k = c.n_alpha(r);
            assert_eq!(pc.exponent, k);
            assert_eq!(pc.tensor.len(), 2, "N={n} root {}", r.name());
            let top = Mono::power(r, k as u8);
            let d = top.letter_degree();
            assert!(pc.tensor.coeff(&top, &Mono::ONE).unwrap().is_one());
            assert!(pc.tensor.coeff(&Mono::group([d[0] as i16, d[1] as i16]), &top).unwrap().is_one());
        }
    }
}

#[test]
fn coprime_scalar_tables_match_closed_forms() {
    for (n, a) in [(5, 0), (5, 1), (5, 3), (7, 0), (7, 1)] {
        let c = cfg(n, a);
        let t = extract_table(c, &power_coproducts(c).unwrap()).unwrap();
        assert_eq!(t.case, Case::Coprime);
        assert_eq!(t, closed_forms(c).unwrap(), "N={n} a={a}");
    }
}

/// Values of the divisible-case scalars that sit in the coproduct of `x_112^N`, as
/// obtained by fitting the extracted values over all braidings of order 9.
fn divisible_fit(c: BraidingConfig) -> [(usize, Cyclo); 5] {
    let n = c.n;
    let nn = n as i64;
    let mm = c.m() as i64;
    let f = |k: i64| &Cyclo::one(n) - &Cyclo::qpow(n, -k);
    let q21 = |e: i64| Cyclo::qpow(n, c.q_exp(2, 1) * e);
    let pw = |x: Cyclo, e: i64| x.pow(e).unwrap();
    let three = Cyclo::from_int(n, 3);
    [
        (4, -&(&pw(f(2), nn) * &q21(nn * (nn - 1) / 2))),
        (5, &(&(&three * &pw(f(2), mm)) * &pw(f(1), -2 * mm)) * &q21(mm * (nn + 1) / 2)),
        (7, &(&(&(&three * &pw(f(3), mm)) * &pw(f(2), mm)) * &pw(f(1), -2 * mm)) * &q21(nn * mm)),
        (8, &(&(&Cyclo::from_int(n, -81) * &pw(f(2), 2 * mm)) * &pw(f(1), -mm)) * &q21(nn * (nn - 1) / 2)),
        (9, &(&(&(&three * &pw(f(3), mm)) * &pw(f(2), 2 * mm)) * &pw(f(1), -mm)) * &q21(mm * (nn - 1))),
    ]
}

#[test]
fn divisible_scalar_table() {
    for a in 0..9 {
        let c = cfg(9, a);
        let t = extract_table(c, &power_coproducts(c).unwrap()).unwrap();
        let cf = closed_forms(c).unwrap();
        assert_eq!(t.case, Case::Divisible);
        for (i, v) in divisible_fit(c) {
            assert_eq!(t.get(i), &v, "a={a} b{i}");
            assert_ne!(t.get(i), cf.get(i), "a={a} b{i}");
        }
        for i in [1, 2, 3, 6, 10, 11, 12] {
            assert_eq!(t.get(i), cf.get(i), "a={a} b{i}");
        }
    }
}

#[test]
fn supports_lie_in_the_predicted_sets() {
    for (n, a) in [(5, 0), (7, 3), (9, 1)] {
        let o = verify::support(cfg(n, a)).unwrap();
        assert!(o.passed, "N={n} a={a}");
        assert_eq!(o.report["checked"], 12);
        assert!(o.report["violations"].as_array().unwrap().is_empty());
    }
}

#[test]
fn twist_transports_power_coproducts() {
    for (s, t) in [(0, 1), (1, 0), (0, 3)] {
        let o = verify::twist(cfg(5, s), cfg(5, t)).unwrap();
        assert!(o.passed, "{s} -> {t}");
        assert_eq!(o.report["roots"].as_array().unwrap().len(), 6);
    }
    assert!(TwistData::new(cfg(5, 0), cfg(7, 0)).is_err());
}

#[test]
fn lie_route_predicts_power_coproducts() {
    let o = verify::lie(cfg(5, 0)).unwrap();
    assert!(o.passed);
    assert_eq!(o.report["scalar_relation"]["a2*a1 == 2*a3"], true);
    let k = fit_constants(cfg(5, 0), &power_coproducts(cfg(5, 0)).unwrap()).unwrap();
    // one constant per pair of roots whose weights add up to a root weight
    for (b, a) in k.c.keys() {
        assert!(b > a);
        assert!(bracket_root(k.config, *a, *b).is_some());
    }
    assert!(check_hypothesis(cfg(9, 0)).is_ok());
    assert!(matches!(check_hypothesis(cfg(9, 1)), Err(StructureError::HypothesisViolation(..))));
    assert!(!verify::lie(cfg(9, 1)).unwrap().passed);
}

#[test]
fn braided_form_strips_group_parts() {
    let c = cfg(7, 2);
    let pcs = power_coproducts(c).unwrap();
    for pc in &pcs {
        let b = braided(&pc.tensor).unwrap();
        assert_eq!(b.len(), pc.tensor.len());
        assert!(b.iter().all(|((l, _), _)| l.g == [0, 0]));
    }
    assert_eq!(pcs.iter().map(|p| p.root).collect::<Vec<_>>(), ROOTS.to_vec());
}
