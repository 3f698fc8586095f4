mod common;

use g2lift::engine::Kind;
use g2lift::lifting::*;
use g2lift::rootdata::{BraidingConfig, Root, ROOTS};
use g2lift::scalars::Param;
use g2lift::structure::power_coproducts;
use g2lift::verify::{self, data, Scope};

use common::{fixture, kill_all};

fn cfg(n: i64, a: i64) -> BraidingConfig {
    BraidingConfig::new(n, a).unwrap()
}

#[test]
fn cleft_relations_match_reference() {
    let refs = verify::load_reference(data::CLEFT_N7).unwrap();
    assert_eq!(refs.len(), 6);
    let (o, cleft) = verify::cleft(&fixture().ctx, Some(&refs)).unwrap();
    assert!(o.passed, "{}", o.report);
    assert_eq!(cleft.kind, Kind::CleftLambdaMu);
    assert_eq!(cleft.relations.len(), 6);
}

#[test]
fn generic_relations_match_reference() {
    for (n, a) in [(5, 0), (5, 1), (7, 3), (9, 0), (9, 1)] {
        let refs = verify::load_reference(data::generic(n as u16).unwrap()).unwrap();
        let (o, g) = verify::generic(cfg(n, a), Some(&refs)).unwrap();
        assert!(o.passed, "N={n} a={a}: {}", o.report);
        assert!(g.serre.iter().all(|s| s.is_zero()));
    }
}

#[test]
fn lifted_relations_match_reference() {
    let ctx = &fixture().ctx;
    let refs = verify::load_reference(data::LIFT_N7).unwrap();
    let mut saved = Vec::new();
    let (o, full) = verify::lift(ctx, &ROOTS, Some(&refs), Scope::Spot, |_| None, |r| saved.push(r.root)).unwrap();
    assert!(o.passed, "{}", o.report["comparison"]);
    assert_eq!(saved, ROOTS.to_vec());
    let spot = o.report["comparison"]["beta"]["terms"].as_array().unwrap();
    assert_eq!(spot.len(), verify::SPOT_TERMS + 1);

    // restoring every relation skips the computation and gives the same report
    let (o2, _) = verify::lift(ctx, &ROOTS, Some(&refs), Scope::Spot, |r| full.relation(r).cloned(), |_| panic!("recomputed")).unwrap();
    assert_eq!(o2.report["relations"], o.report["relations"]);
    assert_eq!(o2.report["comparison"], o.report["comparison"]);
    assert_eq!(o2.report["restored"].as_array().unwrap().len(), 6);
}

#[test]
fn zero_lambda_lifting_is_generic() {
    for a in [0, 1, 3] {
        let c = cfg(7, a);
        let ctx = LiftContext::new(c, &[]).unwrap();
        let (table, sections) = ctx.sections().unwrap();
        assert!(sections.iter().all(|s| s.certified));
        let mu = verify::admissible_mu(c);
        let cleft = cleft_relations(&ctx, &table).unwrap();
        let cm = ctx.cleft_mu(&cleft, &mu).unwrap();
        let lift = lifting_presentation(&ctx, &table, &cm).unwrap();
        let generic = generic_relations(c, &power_coproducts(c).unwrap(), &mu).unwrap();
        for r in ROOTS {
            assert_eq!(lift.relation(r).unwrap().rhs, generic.relation(r).unwrap().rhs, "a={a} root {}", r.name());
        }
    }
}

#[test]
fn zero_parameters_give_the_nichols_algebra() {
    let f = fixture();
    let ctx = &f.ctx;
    let (table, _) = ctx.sections().unwrap();
    let cleft = cleft_relations(ctx, &table).unwrap();
    for rel in &cleft.relations {
        assert!(kill_all(&rel.rhs).is_zero(), "cleft {}", rel.root.name());
    }
    let cm = ctx.cleft_mu(&cleft, &verify::admissible_mu(ctx.config)).unwrap();
    let lift = lifting_presentation(ctx, &table, &cm).unwrap();
    for rel in &lift.relations {
        assert!(kill_all(&rel.rhs).is_zero(), "lift {}", rel.root.name());
    }
    for s in lift.serre.iter().chain(cleft.serre.iter()) {
        assert!(kill_all(s).is_zero());
    }
    for p in [&ctx.cleft, &ctx.lift] {
        for (i, l) in ROOTS.iter().enumerate() {
            for r in &ROOTS[i + 1..] {
                let deformed = p.rule_tail(*l, *r).map(|t| kill_all(&t));
                assert_eq!(deformed, ctx.pre.rule_tail(*l, *r), "{:?} [{}, {}]", p.kind, l.name(), r.name());
            }
        }
    }
}

#[test]
fn relations_are_character_homogeneous() {
    let ctx = &fixture().ctx;
    let c = ctx.config;
    let (table, _) = ctx.sections().unwrap();
    let cleft = cleft_relations(ctx, &table).unwrap();
    let cm = ctx.cleft_mu(&cleft, &verify::admissible_mu(c)).unwrap();
    let lift = lifting_presentation(ctx, &table, &cm).unwrap();
    let homogeneous = |root: Root, e: &g2lift::engine::Element| {
        let d = root.degree();
        let k = c.n_alpha(root) as i64;
        e.sorted().into_iter().all(|(m, _)| {
            let l = m.letter_degree();
            c.character_trivial([l[0] - d[0] * k, l[1] - d[1] * k])
        })
    };
    for r in ROOTS {
        assert!(homogeneous(r, table.get(r).unwrap()), "section {}", r.name());
        assert!(homogeneous(r, &cleft.relation(r).unwrap().rhs), "cleft {}", r.name());
        assert!(homogeneous(r, &lift.relation(r).unwrap().rhs), "lift {}", r.name());
    }
}

#[test]
fn inadmissible_parameters_are_dropped() {
    let c = cfg(7, 3);
    let mu = verify::admissible_mu(c);
    assert!(mu.iter().all(|p| c.admissible(*p)));
    assert!(mu.len() <= 6);
    let ctx = LiftContext::new(c, &[Param::L1, Param::L2, Param::M1]).unwrap();
    assert_eq!(ctx.lambda, vec![Param::L1, Param::L2]);
}
