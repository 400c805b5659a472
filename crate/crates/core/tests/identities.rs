use bireg_core::identities::{parse_identities, replay, verify, Mode, Registry, ReplayOptions, VerifyOptions};
use bireg_core::report::Status;

#[test]
fn exact_identities_survive_reduction() {
    let reg = Registry::builtin();
    let opts = VerifyOptions { order: Some(150), ..VerifyOptions::default() };
    for case in reg.identities.iter().filter(|c| c.mode == Mode::Exact) {
        for p in [2u64, 3, 5, 7, 11, 13, 17, 1_000_003] {
            let reduced = bireg_core::identities::IdentityCase { mode: Mode::Mod(p), ..case.clone() };
            let r = verify(&reduced, &opts);
            assert_eq!(r.status, Status::Pass, "{} mod {p}", case.id);
        }
    }
}

#[test]
fn prime_field_route_agrees_past_the_exact_limit() {
    let reg = Registry::builtin();
    for id in ["0.2", "e2", "kp"] {
        let case = reg.identity(id).unwrap();
        let r = verify(case, &VerifyOptions { order: Some(800), ..VerifyOptions::default() });
        assert_eq!(r.status, Status::Pass, "{id}");
        assert_eq!(r.rings.len(), 3);
        assert!(r.rings.iter().all(|z| z.starts_with("Z/")));
    }
}

#[test]
fn modular_claims_are_not_exact() {
    let reg = Registry::builtin();
    for p in [3u64, 7, 11, 13, 17] {
        let case = reg.identity(&format!("k1.p{p}")).unwrap();
        let exact = bireg_core::identities::IdentityCase { mode: Mode::Exact, ..case.clone() };
        let r = verify(&exact, &VerifyOptions { order: Some(100), ..VerifyOptions::default() });
        assert_eq!(r.status, Status::Mismatch, "k1.p{p}");
    }
}

#[test]
fn file_cases_join_the_registry() {
    let src = "# Euler\n\
               euler-odd extra exact 200 (* (f 2) (^ (f 1) -1)) (^ (* (poch 1 2)) -1)\n\
               !bad extra mod:5 50 (f 1) (f 5)\n";
    let cases = parse_identities(src).unwrap();
    let mut reg = Registry::builtin();
    let before = reg.identities.len();
    reg.extend(cases.clone()).unwrap();
    assert_eq!(reg.identities.len(), before + 2);
    assert!(reg.extend(cases).is_err());
    let opts = VerifyOptions::default();
    assert_eq!(verify(reg.identity("euler-odd").unwrap(), &opts).status, Status::Pass);
    let bad = verify(reg.identity("bad").unwrap(), &opts);
    assert_eq!(bad.status, Status::ErratumCandidate);
    assert_eq!(bad.first_mismatch.unwrap().index, 1);
}

#[test]
fn replays_are_reproducible() {
    let reg = Registry::builtin();
    let chain = reg.chain("w.18").unwrap();
    let opts = ReplayOptions::default();
    let a = replay(&reg, chain, &opts);
    let b = replay(&reg, chain, &opts);
    assert_eq!(a.status, Status::Pass);
    let strip = |mut r: bireg_core::identities::ChainReport| {
        r.runtime_ms = 0;
        r
    };
    assert_eq!(strip(a), strip(b));
}
