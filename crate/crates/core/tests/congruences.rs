use bireg_core::congruences::{
    family, family_readings, induction_checks, verify_family, verify_three_term, Params, Progression, TableSet,
};
use bireg_core::oracle::{bipartition_counts, TableKind};
use bireg_core::report::Status;
use bireg_core::series::CoeffRing;

fn run(key: &str, n_max: u64) -> bireg_core::congruences::VerifyReport {
    let f = family(key).unwrap();
    let mut t = TableSet::new();
    t.prepare([(&f, f.params.as_slice(), n_max)], None).unwrap();
    verify_family(&f, &f.params, n_max, &t)
}

#[test]
fn small_families_pass() {
    for (key, n) in [("x1", 200), ("s8", 100), ("7.22", 200), ("dou", 500), ("w.11", 500), ("kp0", 20), ("7.14", 3)] {
        let r = run(key, n);
        assert_eq!(r.status, Status::Pass, "{key}: {:?}", r.violations.first());
        assert!(r.violations.is_empty());
    }
}

#[test]
fn zeroth_instances_are_tautologies() {
    for key in ["ak1", "0a1", "12", "14", "s14", "kp0", "1.1a", "2.1", "7.14"] {
        let f = family(key).unwrap();
        assert_eq!(f.index.at(Params::m(0)).unwrap(), Progression::IDENTITY, "{key}");
        let mut t = TableSet::new();
        t.prepare([(&f, &[Params::m(0)][..], 50)], None).unwrap();
        assert_eq!(verify_family(&f, &[Params::m(0)], 50, &t).status, Status::Pass, "{key}");
    }
}

#[test]
fn three_term_relation_at_zero_from_exact_counts() {
    let exact = bipartition_counts(5, 11, 364, CoeffRing::EXACT).unwrap();
    let lhs = exact.get(364);
    let rhs = exact.get(14) + 7 * exact.get(0);
    assert_eq!((lhs - rhs) % 11, 0.into());

    let mut t = TableSet::new();
    t.ensure(TableKind::Bipartite { l: 5, m: 11 }, 11, 625 * 100 + 364, None).unwrap();
    let maps = [Progression::new(625, 364), Progression::new(25, 14), Progression::IDENTITY];
    let r = verify_three_term("1.x", 11, TableKind::Bipartite { l: 5, m: 11 }, maps, [1, 7], 100, &t);
    assert_eq!(r.status, Status::Pass);
    let r = verify_three_term("1.x/swapped", 11, TableKind::Bipartite { l: 5, m: 11 }, maps, [7, 1], 100, &t);
    assert_eq!(r.status, Status::Fail);
}

#[test]
fn printed_readings_are_flagged() {
    let readings = family_readings("s13");
    assert_eq!(readings.len(), 2);
    let r = run("s13/printed", 5);
    assert_eq!(r.status, Status::ErratumCandidate);
    let v = &r.violations[0];
    assert_eq!((v.params.m, v.n, v.got, v.expected), (0, 0, 1, 0));
}

#[test]
fn oversized_instances_are_skipped_with_reason() {
    let r = run("13", 10);
    assert_eq!(r.status, Status::Skipped);
    for i in &r.instances {
        assert!(i.reason.as_ref().unwrap().contains("desk scale"), "{:?}", i.reason);
    }
}

#[test]
fn induction_structure_is_consistent() {
    let checks = induction_checks();
    let bad: Vec<_> = checks.iter().filter(|c| c.status == Status::Fail && c.family != "s13/printed").collect();
    assert!(bad.is_empty(), "{bad:?}");
    for lemma in ["kp0", "1.1a", "2.1", "7.14"] {
        let n = checks.iter().filter(|c| c.family == lemma && c.status == Status::Pass).count();
        assert_eq!(n, 9, "{lemma}");
    }
}
