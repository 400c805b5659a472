//! Step-by-step replay of proof chains.
//!
//! A chain runs independently in each of its rings ("lanes"). Every lane
//! carries the stage at full order; asserted and substituted identities are
//! compared through `min(order, assert_cap)`. After a failed assertion the
//! lane continues from the asserted expression, so later stages are judged
//! against the claimed intermediate result.

use std::collections::HashMap;
use std::time::Instant;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{check_rings, modular, Mode, MismatchReport, ProofChain, ProofStep, Registry, VerifyOptions};
use crate::qexpr::{Evaluator, QExpr};
use crate::report::Status;
use crate::series::{compress, dilate, eq_to_order, extract, reduce_mod, stride, sum_scaled, CoeffRing, Mismatch, Series};

#[derive(Clone, Debug)]
pub struct ReplayOptions {
    /// Overrides the chain's default order.
    pub order: Option<usize>,
    /// Highest exponent compared by assertions and substitutions.
    pub assert_cap: usize,
    /// An extraction leaving fewer coefficients than this is an error.
    pub min_surviving: usize,
    pub primes: usize,
    pub seed: u64,
    pub exact_limit: usize,
}

impl Default for ReplayOptions {
    fn default() -> Self {
        let v = VerifyOptions::default();
        ReplayOptions {
            order: None,
            assert_cap: 5000,
            min_surviving: 32,
            primes: v.primes,
            seed: v.seed,
            exact_limit: v.exact_limit,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageReport {
    pub index: usize,
    pub kind: String,
    pub label: String,
    pub status: Status,
    /// Order of the stage after this step.
    pub order: usize,
    pub checked_through: Option<usize>,
    pub rings: Vec<String>,
    pub first_mismatch: Option<MismatchReport>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub id: String,
    pub section: String,
    pub mode: String,
    pub order: usize,
    pub status: Status,
    pub rings: Vec<String>,
    pub stages: Vec<StageReport>,
    pub error: Option<String>,
    pub runtime_ms: u64,
}

#[derive(Clone, Debug)]
struct Outcome {
    status: Status,
    order: usize,
    checked_through: Option<usize>,
    mismatch: Option<Mismatch>,
    error: Option<String>,
}

impl Outcome {
    fn pass(order: usize, checked_through: Option<usize>) -> Self {
        Outcome { status: Status::Pass, order, checked_through, mismatch: None, error: None }
    }

    fn error(order: usize, msg: String) -> Self {
        Outcome { status: Status::Error, order, checked_through: None, mismatch: None, error: Some(msg) }
    }
}

/// Result of one lane: per-step outcomes (`None` once the lane has left the
/// chain's ring) and the stored stage values.
struct LaneRun {
    outcomes: Vec<Option<Outcome>>,
    #[cfg_attr(not(test), allow(dead_code))]
    values: HashMap<String, Series>,
}

struct Lane<'a> {
    reg: &'a Registry,
    opts: &'a ReplayOptions,
    ev: Evaluator,
    cur: Series,
    values: HashMap<String, Series>,
}

impl Lane<'_> {
    fn ring(&self) -> CoeffRing {
        self.ev.ring()
    }

    fn cap(&self) -> usize {
        self.cur.order().min(self.opts.assert_cap)
    }

    fn step(&mut self, step: &ProofStep) -> Result<Option<Outcome>, String> {
        match step {
            ProofStep::Substitute(id) => {
                let case = self.reg.identity(id).ok_or_else(|| format!("unknown identity `{id}`"))?;
                if let Mode::Mod(m) = case.mode {
                    if self.ring().is_exact() || self.ring().modulus() % m != 0 {
                        return Err(format!("identity `{id}` holds only mod {m}, stage is over {}", self.ring()));
                    }
                }
                let k = self.cap();
                let a = self.ev.eval(&case.lhs, k).map_err(|e| e.to_string())?;
                let b = self.ev.eval(&case.rhs, k).map_err(|e| e.to_string())?;
                let agree = eq_to_order(&a, &b, k).map_err(|e| e.to_string())?;
                Ok(Some(Outcome {
                    status: if agree.mismatch.is_some() { Status::Mismatch } else { Status::Pass },
                    order: self.cur.order(),
                    checked_through: Some(agree.checked_through),
                    mismatch: agree.mismatch,
                    error: None,
                }))
            }
            ProofStep::Extract { r, s } => {
                let part = extract(&self.cur, *r, *s).map_err(|e| e.to_string())?;
                if part.order() + 1 < self.opts.min_surviving {
                    return Err(format!(
                        "precision exhausted: {} coefficients survive extraction from order {}",
                        part.order() + 1,
                        self.cur.order()
                    ));
                }
                self.cur = dilate(&part, *s).map_err(|e| e.to_string())?;
                Ok(Some(Outcome::pass(self.cur.order(), None)))
            }
            ProofStep::DilateBack(s) => {
                let g = stride(&self.cur);
                if g != 0 && g % s != 0 {
                    let bad = (1..=self.cur.order()).find(|n| n % s != 0 && !self.cur.is_zero_at(*n)).unwrap_or(0);
                    return Err(format!("stage is not a series in q^{s}: coefficient of q^{bad} is nonzero"));
                }
                self.cur = compress(&self.cur, *s).map_err(|e| e.to_string())?;
                Ok(Some(Outcome::pass(self.cur.order(), None)))
            }
            ProofStep::ReduceMod(m) => {
                let ring = self.ring();
                if !ring.is_exact() && ring.modulus() % m != 0 {
                    return Ok(None);
                }
                if ring.modulus() != *m {
                    let reduce = |s: &Series| reduce_mod(s, *m).expect("reduction checked");
                    self.cur = reduce(&self.cur);
                    self.values = self.values.iter().map(|(k, v)| (k.clone(), reduce(v))).collect();
                    self.ev = Evaluator::new(modular(*m));
                }
                Ok(Some(Outcome::pass(self.cur.order(), None)))
            }
            ProofStep::Assert { label, expr, .. } => {
                let k = self.cap();
                let claimed = self.ev.eval(expr, k).map_err(|e| e.to_string())?;
                let agree = eq_to_order(&self.cur, &claimed, k).map_err(|e| e.to_string())?;
                if agree.mismatch.is_some() {
                    let order = self.cur.order();
                    self.cur = self.ev.eval(expr, order).map_err(|e| e.to_string())?;
                }
                self.values.insert(label.clone(), self.cur.clone());
                Ok(Some(Outcome {
                    status: if agree.mismatch.is_some() { Status::Mismatch } else { Status::Pass },
                    order: self.cur.order(),
                    checked_through: Some(agree.checked_through),
                    mismatch: agree.mismatch,
                    error: None,
                }))
            }
            ProofStep::Combine(terms) => {
                let mut parts: Vec<(BigInt, &Series)> = Vec::with_capacity(terms.len());
                for (c, label) in terms {
                    let v = self.values.get(label).ok_or_else(|| format!("no stored stage `{label}`"))?;
                    parts.push((BigInt::from(*c), v));
                }
                let order = parts.iter().map(|(_, s)| s.order()).min().unwrap_or(self.cur.order());
                self.cur = sum_scaled(self.ring(), &parts, order).map_err(|e| e.to_string())?;
                Ok(Some(Outcome::pass(self.cur.order(), None)))
            }
        }
    }
}

fn run_lane(
    reg: &Registry,
    ring: CoeffRing,
    start: &QExpr,
    order: usize,
    steps: &[ProofStep],
    seed_values: HashMap<String, Series>,
    opts: &ReplayOptions,
) -> Result<LaneRun, String> {
    let mut ev = Evaluator::new(ring);
    let cur = ev.eval(start, order).map_err(|e| e.to_string())?;
    let mut lane = Lane { reg, opts, ev, cur, values: seed_values };
    let mut outcomes = Vec::with_capacity(steps.len());
    let mut halted = false;
    let mut active = true;
    for step in steps {
        if halted {
            outcomes.push(Some(Outcome {
                status: Status::Skipped,
                order: lane.cur.order(),
                checked_through: None,
                mismatch: None,
                error: None,
            }));
            continue;
        }
        if !active {
            outcomes.push(None);
            continue;
        }
        match lane.step(step) {
            Ok(Some(o)) => outcomes.push(Some(o)),
            Ok(None) => {
                active = false;
                outcomes.push(None);
            }
            Err(msg) => {
                halted = true;
                outcomes.push(Some(Outcome::error(lane.cur.order(), msg)));
            }
        }
    }
    Ok(LaneRun { outcomes, values: lane.values })
}

/// Rings for a chain: the chain's check rings, plus `Z/M` for a reduction
/// step when no lane would otherwise reach it.
fn chain_rings(chain: &ProofChain, order: usize, opts: &ReplayOptions) -> Vec<CoeffRing> {
    let vopts = VerifyOptions { order: None, primes: opts.primes, seed: opts.seed, exact_limit: opts.exact_limit };
    let mut rings = check_rings(chain.mode, order, &vopts);
    for step in &chain.steps {
        if let ProofStep::ReduceMod(m) = step {
            let reached = rings.iter().any(|r| r.is_exact() || r.modulus() % m == 0);
            if !reached {
                rings.push(modular(*m));
            }
        }
    }
    rings
}

fn merge(index: usize, step: &ProofStep, lanes: &[(CoeffRing, &Option<Outcome>)]) -> StageReport {
    let present: Vec<(CoeffRing, &Outcome)> = lanes.iter().filter_map(|(r, o)| o.as_ref().map(|o| (*r, o))).collect();
    let suspect = matches!(step, ProofStep::Assert { suspect: true, .. });
    let mut status = if present.iter().all(|(_, o)| o.status == Status::Skipped) { Status::Skipped } else { Status::Pass };
    let mut first_mismatch = None;
    let mut error = None;
    for (ring, o) in &present {
        match o.status {
            Status::Error => {
                status = Status::Error;
                error = error.or_else(|| o.error.clone());
            }
            Status::Mismatch if status != Status::Error => {
                status = if suspect { Status::ErratumCandidate } else { Status::Mismatch };
                if first_mismatch.is_none() {
                    first_mismatch = o.mismatch.as_ref().map(|m| MismatchReport::new(m, *ring));
                }
            }
            _ => {}
        }
    }
    StageReport {
        index,
        kind: step.kind().into(),
        label: step.label(),
        status,
        order: present.first().map(|(_, o)| o.order).unwrap_or(0),
        checked_through: present.iter().filter_map(|(_, o)| o.checked_through).min(),
        rings: present.iter().map(|(r, _)| r.to_string()).collect(),
        first_mismatch,
        error,
    }
}

fn chain_status(stages: &[StageReport]) -> Status {
    let has = |s: Status| stages.iter().any(|st| st.status == s);
    if has(Status::Error) {
        Status::Error
    } else if has(Status::Mismatch) {
        Status::Mismatch
    } else if has(Status::ErratumCandidate) {
        Status::ErratumCandidate
    } else {
        Status::Pass
    }
}

pub fn replay(reg: &Registry, chain: &ProofChain, opts: &ReplayOptions) -> ChainReport {
    let t0 = Instant::now();
    let order = opts.order.unwrap_or(chain.default_order);
    let rings = chain_rings(chain, order, opts);
    let mut report = ChainReport {
        id: chain.id.clone(),
        section: chain.section.clone(),
        mode: chain.mode.to_string(),
        order,
        status: Status::Pass,
        rings: rings.iter().map(|r| r.to_string()).collect(),
        stages: Vec::new(),
        error: None,
        runtime_ms: 0,
    };
    let mut runs = Vec::with_capacity(rings.len());
    for &ring in &rings {
        match run_lane(reg, ring, &chain.start, order, &chain.steps, HashMap::new(), opts) {
            Ok(run) => runs.push((ring, run)),
            Err(msg) => {
                report.status = Status::Error;
                report.error = Some(format!("start over {ring}: {msg}"));
                report.runtime_ms = t0.elapsed().as_millis() as u64;
                return report;
            }
        }
    }
    for (i, step) in chain.steps.iter().enumerate() {
        let lanes: Vec<(CoeffRing, &Option<Outcome>)> = runs.iter().map(|(r, run)| (*r, &run.outcomes[i])).collect();
        report.stages.push(merge(i, step, &lanes));
    }
    report.status = chain_status(&report.stages);
    report.runtime_ms = t0.elapsed().as_millis() as u64;
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qexpr::parse;

    fn small(order: usize) -> ReplayOptions {
        ReplayOptions { order: Some(order), ..Default::default() }
    }

    fn chain(start: &str, mode: Mode, steps: Vec<ProofStep>) -> ProofChain {
        ProofChain {
            id: "t".into(),
            section: "test".into(),
            start: parse(start).unwrap(),
            mode,
            default_order: 200,
            steps,
        }
    }

    fn assert_step(label: &str, src: &str) -> ProofStep {
        ProofStep::Assert { label: label.into(), expr: parse(src).unwrap(), suspect: false }
    }

    #[test]
    fn empty_chain_with_one_assert() {
        let reg = Registry::builtin();
        let c = chain("(^ (f 1) 2)", Mode::Exact, vec![assert_step("a", "(* (f 1) (f 1))")]);
        let rep = replay(&reg, &c, &small(150));
        assert_eq!(rep.status, Status::Pass);
        assert_eq!(rep.stages[0].checked_through, Some(150));
        let c = chain("(f 1)", Mode::Exact, vec![assert_step("a", "(f 2)")]);
        let rep = replay(&reg, &c, &small(150));
        assert_eq!(rep.status, Status::Mismatch);
        assert_eq!(rep.stages[0].first_mismatch.as_ref().unwrap().index, 1);
    }

    #[test]
    fn euler_dissection_chain() {
        // the odd part of 1/f_1^2 gives 2 f_4^2 f_16^2 / (f_2^5 f_8) after q^2 -> q and a shift
        let reg = Registry::builtin();
        let c = chain(
            "(^ (f 1) -2)",
            Mode::Mod(5),
            vec![
                ProofStep::Substitute("a.inv-f1sq".into()),
                ProofStep::Extract { r: 1, s: 2 },
                ProofStep::DilateBack(2),
                assert_step("odd", "(+ (2 (* (^ (f 2) 2) (^ (f 8) 2) (^ (f 1) -5) (^ (f 4) -1))))"),
            ],
        );
        let rep = replay(&reg, &c, &small(400));
        assert_eq!(rep.status, Status::Pass, "{rep:?}");
        assert_eq!(rep.stages[2].order, 199);
    }

    #[test]
    fn dilate_back_rejects_stray_terms() {
        let reg = Registry::builtin();
        let c = chain("(f 1)", Mode::Exact, vec![ProofStep::DilateBack(2), assert_step("x", "(f 1)")]);
        let rep = replay(&reg, &c, &small(100));
        assert_eq!(rep.status, Status::Error);
        assert_eq!(rep.stages[1].status, Status::Skipped);
        assert!(rep.stages[0].error.as_ref().unwrap().contains("q^1"));
    }

    #[test]
    fn extraction_precision_is_checked() {
        let reg = Registry::builtin();
        let c = chain("(f 1)", Mode::Exact, vec![ProofStep::Extract { r: 0, s: 5 }; 3]);
        let rep = replay(&reg, &c, &small(400));
        assert_eq!(rep.stages[0].status, Status::Pass);
        // spread form keeps the order, so repeated extraction stays precise
        assert_eq!(rep.status, Status::Pass);
        let c = chain(
            "(f 1)",
            Mode::Exact,
            [ProofStep::Extract { r: 0, s: 5 }, ProofStep::DilateBack(5)].iter().cycle().take(6).cloned().collect(),
        );
        let rep = replay(&reg, &c, &small(400));
        assert_eq!(rep.stages[2].status, Status::Error);
        assert!(rep.stages[2].error.as_ref().unwrap().contains("precision"));
        assert_eq!(rep.stages[4].status, Status::Skipped);
    }

    #[test]
    fn suspect_assert_is_an_erratum_candidate() {
        let reg = Registry::builtin();
        let mut c = chain("(f 1)", Mode::Exact, vec![]);
        c.steps.push(ProofStep::Assert { label: "x".into(), expr: parse("(f 2)").unwrap(), suspect: true });
        c.steps.push(assert_step("y", "(f 2)"));
        let rep = replay(&reg, &c, &small(100));
        assert_eq!(rep.stages[0].status, Status::ErratumCandidate);
        // replay continues from the asserted value
        assert_eq!(rep.stages[1].status, Status::Pass);
        assert_eq!(rep.status, Status::ErratumCandidate);
    }

    #[test]
    fn assert_cap_limits_comparison() {
        let reg = Registry::builtin();
        let c = chain("(f 1)", Mode::Mod(7), vec![assert_step("a", "(f 1)")]);
        let rep = replay(&reg, &c, &ReplayOptions { assert_cap: 80, ..small(300) });
        assert_eq!(rep.stages[0].checked_through, Some(80));
        assert_eq!(rep.stages[0].order, 300);
    }

    #[test]
    fn combine_and_reduce_lanes() {
        let reg = Registry::builtin();
        let c = chain(
            "(f 1)",
            Mode::Exact,
            vec![
                assert_step("a", "(f 1)"),
                ProofStep::Combine(vec![(3, "a".into()), (4, "a".into())]),
                ProofStep::ReduceMod(7),
                assert_step("zero", "0"),
            ],
        );
        let rep = replay(&reg, &c, &small(700));
        assert_eq!(rep.status, Status::Pass, "{rep:?}");
        assert_eq!(rep.rings.len(), 4);
        assert_eq!(rep.stages[0].rings.len(), 4);
        assert_eq!(rep.stages[3].rings, vec!["Z/7".to_string()]);
    }

    #[test]
    fn replay_is_deterministic() {
        let reg = Registry::builtin();
        let c = reg.chain("x1").unwrap();
        let opts = small(700);
        let mut a = replay(&reg, c, &opts);
        let mut b = replay(&reg, c, &opts);
        a.runtime_ms = 0;
        b.runtime_ms = 0;
        assert_eq!(a, b);
    }

    #[test]
    fn stage_independence() {
        let reg = Registry::builtin();
        let c = reg.chain("w.18").unwrap();
        let opts = small(900);
        let ring = modular(7);
        let full = run_lane(&reg, ring, &c.start, 900, &c.steps, HashMap::new(), &opts).unwrap();
        for (k, step) in c.steps.iter().enumerate() {
            let ProofStep::Assert { expr, .. } = step else { continue };
            let order = full.outcomes[k].as_ref().unwrap().order;
            let earlier: HashMap<String, Series> = c.steps[..=k]
                .iter()
                .filter_map(|s| match s {
                    ProofStep::Assert { label, .. } => Some((label.clone(), full.values[label].clone())),
                    _ => None,
                })
                .collect();
            let rest = run_lane(&reg, ring, expr, order, &c.steps[k + 1..], earlier, &opts).unwrap();
            for (j, s) in c.steps[k + 1..].iter().enumerate() {
                let a = full.outcomes[k + 1 + j].as_ref().unwrap();
                let b = rest.outcomes[j].as_ref().unwrap();
                assert_eq!((a.status, a.order), (b.status, b.order), "cut {k}, step {j}");
                if let ProofStep::Assert { label, .. } = s {
                    assert_eq!(full.values[label], rest.values[label]);
                }
            }
        }
    }
}
