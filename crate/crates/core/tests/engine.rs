mod common;

use gowers_core::engine::{hunt_ladders, run_hunt, run_threshold_table, Campaign, Engine, Verdict};
use gowers_core::oracle::StructureKind;

#[test]
fn hunt_certificates_validate_and_are_monotone() {
    for kind in [StructureKind::SumProductPair, StructureKind::SumFpPair] {
        let mut c = Campaign::new(kind);
        c.rs = vec![1, 2];
        c.n_max = 34;
        c.engine = Engine::Both;
        c.solver_command = Some(common::solver_command());
        c.jobs = 2;
        let res = run_hunt(&c).unwrap();
        for cert in &res.certificates {
            cert.validate().unwrap();
            assert_eq!(cert.agreement, Some(true));
        }
        for r in [1, 2] {
            let row: Vec<&Verdict> = res
                .certificates
                .iter()
                .filter(|cert| cert.fingerprint.r == r)
                .map(|cert| &cert.verdict)
                .collect();
            let first = row
                .iter()
                .position(|v| **v == Verdict::Unavoidable)
                .unwrap();
            assert!(
                row[first..].iter().all(|v| **v == Verdict::Unavoidable),
                "{kind} r={r}"
            );
            assert!(
                row[..first].iter().all(|v| **v == Verdict::Avoiding),
                "{kind} r={r}"
            );
        }
        let ladders = hunt_ladders(&res);
        assert_eq!(ladders.len(), 2);
        assert_eq!(ladders[1].least_unavoidable, Some(32), "{kind}");
        assert_eq!(ladders[1].largest_avoiding, Some(31), "{kind}");
    }
}

#[test]
fn two_dimensional_entry_is_bounded() {
    let mut c = Campaign::new(StructureKind::GowersSum);
    c.ks = vec![2];
    c.n_max = 8;
    c.node_budget = Some(200_000);
    let res = run_threshold_table(&c).unwrap();
    let cert = &res.certificates[0];
    cert.validate().unwrap();
    match cert.verdict {
        Verdict::Threshold { value } => assert!(value > 1),
        Verdict::Unresolved { lower, .. } => assert!(lower > 1),
        ref v => panic!("{v:?}"),
    }
}

#[test]
fn single_color_table_entries() {
    let mut c = Campaign::new(StructureKind::GowersSum);
    c.rs = vec![1];
    c.engine = Engine::Both;
    c.solver_command = Some(common::solver_command());
    let repeats = run_threshold_table(&c).unwrap();
    assert_eq!(
        repeats.certificates[0].verdict,
        Verdict::Threshold { value: 2 }
    );
    c.distinct_values = true;
    let distinct = run_threshold_table(&c).unwrap();
    assert_eq!(
        distinct.certificates[0].verdict,
        Verdict::Threshold { value: 3 }
    );
}

#[test]
fn positive_sum_generators_never_lower_the_threshold() {
    let mut c = Campaign::new(StructureKind::SumFpPair);
    c.ks = vec![2];
    c.n_max = 3;
    c.jobs = 2;
    let open = run_threshold_table(&c).unwrap();
    c.sum_generators_positive = true;
    let positive = run_threshold_table(&c).unwrap();
    let bound = |v: &Verdict| match *v {
        Verdict::Threshold { value } => value,
        Verdict::Unresolved { lower, .. } => lower,
        _ => unreachable!(),
    };
    assert!(bound(&positive.certificates[0].verdict) >= bound(&open.certificates[0].verdict));
    positive.certificates[0].validate().unwrap();
}
