use std::collections::BTreeMap;

use g2lift::engine::{Kind, Presentation};
use g2lift::presentations::*;
use g2lift::rootdata::{BraidingConfig, Root, ROOTS};
use g2lift::scalars::Param;

const LAMBDA: [Param; 2] = [Param::L1, Param::L2];

#[test]
fn derived_pre_nichols_tables_equal_the_reference() {
    for (n, a) in [(5, 0), (5, 3), (7, 0), (7, 3), (9, 0), (9, 3)] {
        let cfg = BraidingConfig::new(n, a).unwrap();
        let reference = reference_table(Kind::PreNichols, cfg, &[]).unwrap();
        let d = derive_table(Kind::PreNichols, cfg, &[], &reference).unwrap();
        assert!(d.certified, "N={n} a={a}");
        assert_eq!(d.rank, d.unknowns, "N={n} a={a}: every unknown is determined");
        assert!(compare_tables(&reference, &d.table, 'x').is_empty(), "N={n} a={a}");
    }
}

#[test]
fn deformed_cleft_table_equals_the_reference_and_resolves() {
    let cfg = BraidingConfig::new(7, 3).unwrap();
    let reference = reference_table(Kind::CleftLambda, cfg, &LAMBDA).unwrap();
    let d = derive_table(Kind::CleftLambda, cfg, &LAMBDA, &reference).unwrap();
    assert!(d.certified);
    assert!(compare_tables(&reference, &d.table, 'y').is_empty());
    let (_, rep) = build_certified(Kind::CleftLambda, cfg, &LAMBDA, None).unwrap();
    assert!(rep.all_resolved);
    assert!(rep.ambiguities.len() >= 20);
}

#[test]
fn lifted_table_differs_from_the_reference_in_one_entry() {
    let cfg = BraidingConfig::new(7, 3).unwrap();
    let reference = reference_table(Kind::LiftLambda, cfg, &LAMBDA).unwrap();
    let d = derive_table(Kind::LiftLambda, cfg, &LAMBDA, &reference).unwrap();
    assert!(d.certified);
    let m = compare_tables(&reference, &d.table, 'a');
    assert_eq!(m.len(), 1);
    assert_eq!((m[0].left, m[0].right), (Root::R1112.name(), Root::R2.name()));
    let verbatim = build_from_table(Kind::LiftLambda, cfg, &LAMBDA, &reference, None).unwrap();
    assert!(!check_local_confluence(&verbatim).all_resolved);
    let derived = build_from_table(Kind::LiftLambda, cfg, &LAMBDA, &d.table, None).unwrap();
    assert!(check_local_confluence(&derived).all_resolved);
}

#[test]
fn corrupted_rules_are_detected() {
    let cfg = BraidingConfig::new(5, 1).unwrap();
    let good = certified_table(Kind::PreNichols, cfg, &[]).unwrap();
    for (l, r) in [(Root::R1, Root::R2), (Root::R112, Root::R12), (Root::R1, Root::Beta)] {
        let bad = corrupt_rule(&good, l, r, 5);
        let p = build_from_table(Kind::PreNichols, cfg, &[], &bad, None).unwrap();
        assert!(!check_local_confluence(&p).all_resolved, "({l}, {r})");
    }
}

#[test]
fn inadmissible_parameters_are_rejected() {
    let cfg = BraidingConfig::new(5, 0).unwrap();
    assert!(matches!(build(Kind::CleftLambda, cfg, &[Param::L1], None), Err(BuildError::Config(_))));
    assert!(BraidingConfig::new(3, 0).is_err());
}

/// Number of ways to write each degree as a sum of root degrees, by dynamic programming.
fn partitions(bound: [i64; 2], caps: &[(Root, i64)]) -> BTreeMap<[i64; 2], u64> {
    let mut table = BTreeMap::from([([0i64, 0i64], 1u64)]);
    for (r, cap) in caps {
        let d = r.degree();
        let mut next = BTreeMap::new();
        for (deg, c) in &table {
            let mut k = 0;
            while k < *cap {
                let e = [deg[0] + k * d[0], deg[1] + k * d[1]];
                if e[0] > bound[0] || e[1] > bound[1] {
                    break;
                }
                *next.entry(e).or_insert(0) += c;
                k += 1;
            }
        }
        table = next;
    }
    table
}

#[test]
fn hilbert_series_count_pbw_monomials() {
    let cfg = BraidingConfig::new(7, 3).unwrap();
    let bound = [9, 6];
    let pre = build(Kind::PreNichols, cfg, &[], None).unwrap();
    let caps: Vec<(Root, i64)> = ROOTS.iter().map(|r| (*r, i64::MAX)).collect();
    assert_eq!(hilbert_series(&pre, bound).dims, partitions(bound, &caps));
    let nichols = build(Kind::Nichols, cfg, &[], None).unwrap();
    let caps: Vec<(Root, i64)> = ROOTS.iter().map(|r| (*r, cfg.n_alpha(*r) as i64)).collect();
    assert_eq!(hilbert_series(&nichols, [40, 30]).dims, partitions([40, 30], &caps));
}

#[test]
fn exported_presentation_lists_every_pair() {
    let cfg = BraidingConfig::new(9, 2).unwrap();
    let p: Presentation = build(Kind::Nichols, cfg, &[], None).unwrap();
    let v = presentation_json(&p);
    assert_eq!(v["kind"], "nichols");
    assert_eq!(v["rules"].as_array().unwrap().len(), 15);
    let powers = v["powers"].as_array().unwrap();
    assert_eq!(powers.len(), 6);
    let bounds: Vec<u64> = powers.iter().map(|x| x["bound"].as_u64().unwrap()).collect();
    assert_eq!(bounds.iter().filter(|b| **b == 3).count(), 3);
    assert_eq!(serde_json::to_string(&v).unwrap(), serde_json::to_string(&presentation_json(&p)).unwrap());
}
