//! One PASS/FAIL line per acceptance criterion.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use proptest::test_runner::TestCaseError;

use g2lift::engine::Kind;
use g2lift::lifting::*;
use g2lift::rootdata::{BraidingConfig, ROOTS};
use g2lift::scalars::Param;
use g2lift::structure::power_coproducts;
use g2lift::verify::{self, data, Outcome, Scope};

use common::*;

/// Criteria whose failure is a known disagreement between the computation and the
/// displayed closed forms.
const KNOWN_FAILURES: &[usize] = &[4];

type Check = Result<bool, String>;

fn cfg(n: i64, a: i64) -> BraidingConfig {
    BraidingConfig::new(n, a).unwrap()
}

fn all(outcomes: impl IntoIterator<Item = Result<Outcome, verify::VerifyError>>) -> Check {
    let mut ok = true;
    for o in outcomes {
        ok &= o.map_err(|e| e.to_string())?.passed;
    }
    Ok(ok)
}

fn bracket_tables() -> Check {
    all([5, 7, 9].into_iter().flat_map(|n| [0, 3].map(|a| verify::brackets(Kind::PreNichols, cfg(n, a), &[]))))
}

fn root_coproducts() -> Check {
    all([5, 7, 9].into_iter().flat_map(|n| [0, 1, 3].map(|a| verify::coproducts(cfg(n, a)))))
}

fn coprime_scalars() -> Check {
    all([5, 7].into_iter().flat_map(|n| [0, 1, 3].map(|a| verify::scalars(cfg(n, a)))))
}

fn divisible_scalars() -> Check {
    all([0, 1].map(|a| verify::scalars(cfg(9, a))))
}

fn supports() -> Check {
    all([(5, 0), (7, 3), (9, 1)].map(|(n, a)| verify::support(cfg(n, a))))
}

fn twist_transport() -> Check {
    all([verify::twist(cfg(5, 0), cfg(5, 1)), verify::twist(cfg(5, 1), cfg(5, 0))])
}

fn lie_route() -> Check {
    let o = verify::lie(cfg(5, 0)).map_err(|e| e.to_string())?;
    Ok(o.passed && o.report["scalar_relation"]["a2*a1 == 2*a3"] == true)
}

fn cleft_confluence() -> Check {
    all([verify::confluence(Kind::CleftLambda, cfg(7, 3), &[Param::L1, Param::L2])])
}

fn cleft_relations_n7() -> Check {
    let refs = verify::load_reference(data::CLEFT_N7).map_err(|e| e.to_string())?;
    let (o, rels) = verify::cleft(&fixture().ctx, Some(&refs)).map_err(|e| e.to_string())?;
    Ok(o.passed && rels.relations.len() == 6)
}

fn generic_presentations() -> Check {
    all([(5, 0), (5, 1), (9, 0), (9, 1)].map(|(n, a)| {
        let refs = verify::load_reference(data::generic(n as u16).unwrap())?;
        verify::generic(cfg(n, a), Some(&refs)).map(|x| x.0)
    }))
}

fn lifted(scope: Scope) -> Check {
    let refs = verify::load_reference(data::LIFT_N7).map_err(|e| e.to_string())?;
    let (o, _) = verify::lift(&fixture().ctx, &ROOTS, Some(&refs), scope, |_| None, |_| {}).map_err(|e| e.to_string())?;
    Ok(o.passed)
}

fn properties() -> Check {
    let f = fixture();
    let mut ok = true;
    let mut run = |strategy, check: &dyn Fn((g2lift::engine::Element, g2lift::engine::Element)) -> Result<(), String>| {
        let r = runner(16, 0x6732).run(&strategy, |xy| check(xy).map_err(TestCaseError::fail));
        ok &= r.is_ok();
    };
    run((element(5, 4), element(5, 3)), &|(x, y)| {
        coassociative(&f.delta5, &f.delta5, &f.delta5, &x)?;
        counit_left_holds(&f.delta5, &x)?;
        counit_right_holds(&f.delta5, &x)?;
        multiplicative(&f.delta5, &x, &y)
    });
    run((element(7, 3), element(7, 2)), &|(x, y)| {
        coassociative(&f.delta_u, &f.delta_u, &f.delta_u, &x)?;
        multiplicative(&f.delta_u, &x, &y)?;
        coassociative(&f.ctx.rho, &f.ctx.rho, &f.ctx.coproduct, &x)?;
        counit_right_holds(&f.ctx.rho, &x)?;
        multiplicative(&f.ctx.rho, &x, &y)?;
        coassociative(&f.ctx.delta, &f.delta_u, &f.ctx.delta, &x)?;
        counit_left_holds(&f.ctx.delta, &x)?;
        multiplicative(&f.ctx.delta, &x, &y)
    });
    let r = runner(16, 0x6732).run(&(word(4), element(7, 2), element(7, 1)), |(w, x, y)| {
        for p in [&f.ctx.pre, &f.ctx.cleft, &f.ctx.lift] {
            normal_form_stable(p, &w, &x, &y).map_err(TestCaseError::fail)?;
            graded(p, &w).map_err(TestCaseError::fail)?;
        }
        Ok(())
    });
    Ok(ok && r.is_ok())
}

fn specialization() -> Check {
    let e = |e: LiftError| e.to_string();
    let mut ok = true;
    for a in [0, 1, 3] {
        let c = cfg(7, a);
        let mu = verify::admissible_mu(c);
        let ctx = LiftContext::new(c, &[]).map_err(e)?;
        let (table, _) = ctx.sections().map_err(e)?;
        let cleft = cleft_relations(&ctx, &table).map_err(e)?;
        let cm = ctx.cleft_mu(&cleft, &mu).map_err(e)?;
        let lift = lifting_presentation(&ctx, &table, &cm).map_err(e)?;
        let generic = generic_relations(c, &power_coproducts(c).map_err(|x| x.to_string())?, &mu).map_err(e)?;
        ok &= ROOTS.iter().all(|r| lift.relation(*r).map(|x| &x.rhs) == generic.relation(*r).map(|x| &x.rhs));
    }
    let ctx = &fixture().ctx;
    let (table, _) = ctx.sections().map_err(e)?;
    let cleft = cleft_relations(ctx, &table).map_err(e)?;
    let cm = ctx.cleft_mu(&cleft, &verify::admissible_mu(ctx.config)).map_err(e)?;
    let lift = lifting_presentation(ctx, &table, &cm).map_err(e)?;
    for p in [&cleft, &lift] {
        ok &= p.relations.iter().all(|r| kill_all(&r.rhs).is_zero());
        ok &= p.serre.iter().all(|s| kill_all(s).is_zero());
    }
    for p in [&ctx.cleft, &ctx.lift] {
        for (i, l) in ROOTS.iter().enumerate() {
            for r in &ROOTS[i + 1..] {
                ok &= p.rule_tail(*l, *r).map(|t| kill_all(&t)) == ctx.pre.rule_tail(*l, *r);
            }
        }
    }
    Ok(ok)
}

fn main() -> ExitCode {
    let criteria: [fn() -> Check; 14] = [
        bracket_tables,
        root_coproducts,
        coprime_scalars,
        divisible_scalars,
        supports,
        twist_transport,
        lie_route,
        cleft_confluence,
        cleft_relations_n7,
        generic_presentations,
        || lifted(Scope::Spot),
        || lifted(Scope::Full),
        properties,
        specialization,
    ];
    let mut unexpected = 0;
    for (i, check) in criteria.iter().enumerate() {
        let k = i + 1;
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        let passed = matches!(result, Ok(true));
        let known = KNOWN_FAILURES.contains(&k);
        let note = match (&result, known) {
            (Err(e), _) => format!(" error: {e}"),
            (Ok(false), true) => " (known)".to_string(),
            (Ok(true), true) => " (listed as known failure)".to_string(),
            _ => String::new(),
        };
        println!("criterion {k}: {} ({secs:.2}s){note}", if passed { "PASS" } else { "FAIL" });
        if passed == known {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
