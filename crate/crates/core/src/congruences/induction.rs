//! Residue-level consistency of the inductive structure behind the
//! families: index maps compose as claimed and coefficients propagate
//! through the base relations.

use serde::Serialize;

use super::catalog::family;
use super::index::{Params, Progression};
use super::{CongruenceFamily, Coefficient, Relation};
use crate::report::Status;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConsistencyCheck {
    pub id: String,
    pub family: String,
    pub m: u32,
    pub status: Status,
    pub detail: String,
}

/// Largest `m` used when comparing compositions.
const M_MAX: u32 = 3;

fn check(id: &str, fam: &str, m: u32, ok: bool, detail: String) -> ConsistencyCheck {
    let status = if ok { Status::Pass } else { Status::Fail };
    ConsistencyCheck { id: id.into(), family: fam.into(), m, status, detail }
}

fn skipped(id: &str, fam: &str, m: u32, detail: String) -> ConsistencyCheck {
    ConsistencyCheck { id: id.into(), family: fam.into(), m, status: Status::Skipped, detail }
}

fn get(key: &str) -> CongruenceFamily {
    family(key).unwrap_or_else(|| panic!("built-in family {key}"))
}

fn terms(f: &CongruenceFamily) -> Vec<(Coefficient, Progression)> {
    match &f.relation {
        Relation::Zero => Vec::new(),
        Relation::Linear(ts) => ts.iter().map(|t| (t.coeff, t.index.at(Params::default()).expect("fixed reference map"))).collect(),
    }
}

/// `(X_m, x_m)` coefficients of a two-term lemma at `m`.
fn lemma_coeffs(f: &CongruenceFamily, m: u32) -> (u64, u64) {
    let ts = terms(f);
    let p = Params::m(m);
    (ts[0].0.at(p, f.modulus), ts[1].0.at(p, f.modulus))
}

/// Base coefficients `(α, β)` in `B(T n) ≡ α B(R n) + β B(n)`.
fn base_coeffs(base: &CongruenceFamily, r: Progression) -> (u64, u64) {
    let ts = terms(base);
    let pick = |want: Progression| {
        ts.iter().find(|(_, g)| *g == want).map(|(c, _)| c.at(Params::default(), base.modulus)).expect("base term")
    };
    (pick(r), pick(Progression::IDENTITY))
}

/// `P_m ∘ R = P_{m+1}` and `(X_{m+1}, x_{m+1}) = (α X_m + x_m, β X_m)`.
fn lemma_checks(lemma: &str, base: Option<&str>, out: &mut Vec<ConsistencyCheck>) {
    let f = get(lemma);
    let p = f.modulus;
    let r = terms(&f)[0].1;
    let (alpha, beta) = match base {
        Some(b) => base_coeffs(&get(b), r),
        None => lemma_coeffs(&f, 2),
    };
    let at = |m: u32| f.index.at(Params::m(m)).expect("lemma index");
    let base_map = match base {
        Some(b) => get(b).index.at(Params::default()).expect("base index"),
        None => at(2),
    };
    out.push(check(
        "base-map",
        lemma,
        2,
        at(2) == base_map,
        format!("P_2 = {}, base = {base_map}", at(2)),
    ));
    for m in 0..=M_MAX {
        let composed = at(m).after(&r).expect("small");
        out.push(check("compose", lemma, m, composed == at(m + 1), format!("P_{m} o ({r}) = {composed}, P_{} = {}", m + 1, at(m + 1))));
        let (x, y) = lemma_coeffs(&f, m);
        let next = lemma_coeffs(&f, m + 1);
        let step = ((alpha * x + y) % p, beta * x % p);
        out.push(check(
            "propagate",
            lemma,
            m,
            step == next,
            format!("({alpha},{beta}) applied to ({x},{y}) gives {step:?}, sequence gives {next:?} mod {p}"),
        ));
    }
}

/// The lemma at `at_m` specializes to the theorem's first instance.
fn specialization(lemma: &str, at_m: u32, theorem: &str, out: &mut Vec<ConsistencyCheck>) {
    let f = get(lemma);
    let t = get(theorem);
    let lm = f.index.at(Params::m(at_m)).expect("lemma index");
    let tm = t.index.at(Params::m(1)).expect("theorem index");
    let (x, y) = lemma_coeffs(&f, at_m);
    let c = terms(&t)[0].0.at(Params::m(1), t.modulus);
    out.push(check(
        "specialize",
        theorem,
        1,
        lm == tm && x == 0 && y == c,
        format!("{lemma} at m={at_m}: {lm} with ({x},{y}); {theorem} at m=1: {tm} with (0,{c})"),
    ));
}

/// Instance `m` equals the `m`-fold composition of instance 1, with
/// constant `c^m`.
fn power_checks(theorem: &str, out: &mut Vec<ConsistencyCheck>) {
    let t = get(theorem);
    let one = t.index.at(Params::m(1)).expect("first instance");
    let c1 = terms(&t)[0].0.at(Params::m(1), t.modulus);
    let mut composed = Some(Progression::IDENTITY);
    let mut c = 1 % t.modulus;
    for m in 0..=M_MAX {
        match (t.index.at(Params::m(m)), composed) {
            (Ok(direct), Some(comp)) => {
                let cm = terms(&t)[0].0.at(Params::m(m), t.modulus);
                out.push(check(
                    "iterate",
                    theorem,
                    m,
                    direct == comp && cm == c,
                    format!("direct {direct} with {cm}; composed {comp} with {c}"),
                ));
            }
            _ => out.push(skipped("iterate", theorem, m, "index exceeds 64 bits".into())),
        }
        composed = composed.and_then(|g| one.after(&g));
        c = c * c1 % t.modulus;
    }
}

/// `zero(m) = step(m - shift) ∘ zero(first)` for each `k` in use.
fn zero_checks(zero: &str, step: &str, first: u32, out: &mut Vec<ConsistencyCheck>) {
    let z = get(zero);
    let s = get(step);
    let mut ks: Vec<u32> = z.params.iter().map(|p| p.k).collect();
    ks.sort_unstable();
    ks.dedup();
    for k in ks {
        let Ok(start) = z.index.at(Params::mk(first, k)) else { continue };
        for m in first..=first + M_MAX - 1 {
            let direct = z.index.at(Params::mk(m, k));
            let outer = s.index.at(Params::m(m - first));
            match (direct, outer) {
                (Ok(direct), Ok(outer)) => match outer.after(&start) {
                    Some(comp) => out.push(check(
                        "descend",
                        &z.key(),
                        m,
                        direct == comp,
                        format!("k={k}: direct {direct}; {step} at m={} after m={first} gives {comp}", m - first),
                    )),
                    None => out.push(skipped("descend", &z.key(), m, format!("k={k}: index exceeds 64 bits"))),
                },
                _ => out.push(skipped("descend", &z.key(), m, format!("k={k}: index exceeds 64 bits"))),
            }
        }
    }
}

/// Every consistency check, in a fixed order.
pub fn induction_checks() -> Vec<ConsistencyCheck> {
    let mut out = Vec::new();
    lemma_checks("kp0", Some("w.11"), &mut out);
    lemma_checks("1.1a", Some("1.x"), &mut out);
    lemma_checks("2.1", Some("2.x"), &mut out);
    lemma_checks("7.14", None, &mut out);
    specialization("kp0", 7, "ak1", &mut out);
    specialization("1.1a", 6, "12", &mut out);
    specialization("2.1", 3, "14", &mut out);
    specialization("7.14", 9, "s14", &mut out);
    for t in ["ak1", "0a1", "12", "14", "s14"] {
        power_checks(t, &mut out);
    }
    zero_checks("ak2", "ak1", 0, &mut out);
    zero_checks("0a2", "0a1", 0, &mut out);
    zero_checks("13", "12", 0, &mut out);
    zero_checks("15", "14", 0, &mut out);
    zero_checks("s13/iterated", "s14", 1, &mut out);
    zero_checks("s13/printed", "s14", 1, &mut out);
    out
}
