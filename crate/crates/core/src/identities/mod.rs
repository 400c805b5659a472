//! Registry of q-series identities and proof chains, and their verification.
//!
//! Exact claims at high order are checked in several random 62-bit prime
//! fields instead of over `Z`; a false identity then survives with
//! probability about `order / p` per prime.

mod catalog;
mod file;
mod replay;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_prime::nt_funcs::is_prime64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::qexpr::{QExpr, QExprError};
use crate::report::Status;
use crate::series::{eq_to_order, CoeffRing, Mismatch};

pub use file::{load_identities, parse_identities};
pub use replay::{replay, ChainReport, ReplayOptions, StageReport};

/// Ring in which a claim is asserted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Exact,
    Mod(u64),
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exact => f.write_str("exact"),
            Mode::Mod(m) => write!(f, "mod:{m}"),
        }
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "exact" {
            return Ok(Mode::Exact);
        }
        let m = s
            .strip_prefix("mod:")
            .and_then(|m| m.parse::<u64>().ok())
            .ok_or_else(|| format!("expected `exact` or `mod:M`, got `{s}`"))?;
        if m < 2 {
            return Err(format!("modulus must be at least 2, got {m}"));
        }
        Ok(Mode::Mod(m))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCase {
    pub id: String,
    pub section: String,
    pub lhs: QExpr,
    pub rhs: QExpr,
    pub mode: Mode,
    pub default_order: usize,
    /// A mismatch is reported as an erratum candidate rather than a failure.
    pub suspect: bool,
}

impl IdentityCase {
    /// Hex SHA-256 of the mode and both sides in canonical text form.
    pub fn content_hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(format!("{}|{}|{}", self.mode, self.lhs, self.rhs));
        hex::encode(h.finalize())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProofStep {
    /// Checks a registry identity in the current ring; the stage is unchanged.
    Substitute(String),
    /// Keeps the exponents `≡ r (mod s)`, shifted down by `r`.
    Extract { r: usize, s: usize },
    /// Replaces `q^s` by `q`; every other exponent must already be absent.
    DilateBack(usize),
    ReduceMod(u64),
    /// Checks that the current stage equals `expr` and stores it under `label`.
    Assert { label: String, expr: QExpr, suspect: bool },
    /// Replaces the stage by a linear combination of stored stages.
    Combine(Vec<(i64, String)>),
}

impl ProofStep {
    pub fn kind(&self) -> &'static str {
        match self {
            ProofStep::Substitute(_) => "substitute",
            ProofStep::Extract { .. } => "extract",
            ProofStep::DilateBack(_) => "dilate-back",
            ProofStep::ReduceMod(_) => "reduce-mod",
            ProofStep::Assert { .. } => "assert",
            ProofStep::Combine(_) => "combine",
        }
    }

    pub fn label(&self) -> String {
        match self {
            ProofStep::Substitute(id) => id.clone(),
            ProofStep::Extract { r, s } => format!("{r} mod {s}"),
            ProofStep::DilateBack(s) => format!("q^{s} -> q"),
            ProofStep::ReduceMod(m) => format!("mod {m}"),
            ProofStep::Assert { label, .. } => label.clone(),
            ProofStep::Combine(terms) => terms
                .iter()
                .map(|(c, l)| format!("{c}*[{l}]"))
                .collect::<Vec<_>>()
                .join(" + "),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofChain {
    pub id: String,
    pub section: String,
    pub start: QExpr,
    pub mode: Mode,
    pub default_order: usize,
    pub steps: Vec<ProofStep>,
}

#[derive(Debug, Error)]
pub enum RegistryError {
    #[error("duplicate identity id `{0}`")]
    DuplicateId(String),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Debug)]
pub struct Registry {
    pub identities: Vec<IdentityCase>,
    pub chains: Vec<ProofChain>,
}

impl Registry {
    pub fn builtin() -> Self {
        catalog::builtin()
    }

    pub fn identity(&self, id: &str) -> Option<&IdentityCase> {
        self.identities.iter().find(|c| c.id == id)
    }

    pub fn chain(&self, id: &str) -> Option<&ProofChain> {
        self.chains.iter().find(|c| c.id == id)
    }

    /// Adds cases, rejecting ids already present.
    pub fn extend(&mut self, cases: Vec<IdentityCase>) -> Result<(), RegistryError> {
        let mut seen: HashSet<String> = self.identities.iter().map(|c| c.id.clone()).collect();
        for c in &cases {
            if !seen.insert(c.id.clone()) {
                return Err(RegistryError::DuplicateId(c.id.clone()));
            }
        }
        self.identities.extend(cases);
        Ok(())
    }
}

/// Above this order exact claims are checked in prime fields.
pub const EXACT_ORDER_LIMIT: usize = 600;

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Overrides the case's default order.
    pub order: Option<usize>,
    pub primes: usize,
    pub seed: u64,
    pub exact_limit: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { order: None, primes: 3, seed: 0x6269_7265_67, exact_limit: EXACT_ORDER_LIMIT }
    }
}

/// `count` distinct primes in `[2^61, 2^62)` drawn from a seeded stream.
pub fn random_primes(count: usize, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<u64> = Vec::with_capacity(count);
    while out.len() < count {
        let mut p = rng.gen_range(1u64 << 61..1u64 << 62) | 1;
        while !is_prime64(p) {
            p += 2;
        }
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// Rings used to check a claim in `mode` through `order`.
pub fn check_rings(mode: Mode, order: usize, opts: &VerifyOptions) -> Vec<CoeffRing> {
    match mode {
        Mode::Mod(m) => vec![modular(m)],
        Mode::Exact if order <= opts.exact_limit => vec![CoeffRing::EXACT],
        Mode::Exact => random_primes(opts.primes, opts.seed).into_iter().map(modular).collect(),
    }
}

pub(crate) fn modular(m: u64) -> CoeffRing {
    CoeffRing::modular(m).expect("modulus at least 2")
}

/// First disagreement, with coefficients as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MismatchReport {
    pub index: usize,
    pub left: String,
    pub right: String,
    pub ring: String,
}

impl MismatchReport {
    pub(crate) fn new(m: &Mismatch, ring: CoeffRing) -> Self {
        MismatchReport { index: m.index, left: m.left.to_string(), right: m.right.to_string(), ring: ring.to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseReport {
    pub id: String,
    pub section: String,
    pub mode: String,
    pub order: usize,
    pub status: Status,
    pub rings: Vec<String>,
    pub first_mismatch: Option<MismatchReport>,
    pub error: Option<String>,
    pub runtime_ms: u64,
    pub hash: String,
}

/// Evaluates both sides in `ring` through `order` and compares them.
pub(crate) fn compare_in(
    lhs: &QExpr,
    rhs: &QExpr,
    ring: CoeffRing,
    order: usize,
) -> Result<Option<Mismatch>, QExprError> {
    let mut ev = crate::qexpr::Evaluator::new(ring);
    let a = ev.eval(lhs, order)?;
    let b = ev.eval(rhs, order)?;
    Ok(eq_to_order(&a, &b, order)?.mismatch)
}

pub fn verify(case: &IdentityCase, opts: &VerifyOptions) -> CaseReport {
    let t0 = Instant::now();
    let order = opts.order.unwrap_or(case.default_order);
    let rings = check_rings(case.mode, order, opts);
    let mut status = Status::Pass;
    let mut first_mismatch = None;
    let mut error = None;
    for &ring in &rings {
        match compare_in(&case.lhs, &case.rhs, ring, order) {
            Ok(None) => {}
            Ok(Some(m)) => {
                status = if case.suspect { Status::ErratumCandidate } else { Status::Mismatch };
                first_mismatch = Some(MismatchReport::new(&m, ring));
                break;
            }
            Err(e) => {
                status = Status::Error;
                error = Some(e.to_string());
                break;
            }
        }
    }
    CaseReport {
        id: case.id.clone(),
        section: case.section.clone(),
        mode: case.mode.to_string(),
        order,
        status,
        rings: rings.iter().map(|r| r.to_string()).collect(),
        first_mismatch,
        error,
        runtime_ms: t0.elapsed().as_millis() as u64,
        hash: case.content_hash(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qexpr::parse;

    fn reg() -> Registry {
        Registry::builtin()
    }

    #[test]
    fn registry_ids_unique() {
        let r = reg();
        let mut ids = HashSet::new();
        for c in &r.identities {
            assert!(ids.insert(c.id.clone()), "duplicate {}", c.id);
            c.lhs.validate().unwrap();
            c.rhs.validate().unwrap();
        }
        let mut cids = HashSet::new();
        for c in &r.chains {
            assert!(cids.insert(c.id.clone()));
        }
        assert!(r.identities.len() >= 20);
        assert_eq!(r.chains.len(), 7);
    }

    #[test]
    fn lookup_by_paper_label() {
        let r = reg();
        let c = r.identity("0.2").unwrap();
        assert_eq!(c.mode, Mode::Exact);
        assert_eq!(c.lhs, QExpr::f(1));
        assert!(r.identity("nope").is_none());
        assert!(r.chain("w.18").is_some());
    }

    #[test]
    fn substitutions_refer_to_known_ids() {
        let r = reg();
        for chain in &r.chains {
            for step in &chain.steps {
                if let ProofStep::Substitute(id) = step {
                    assert!(r.identity(id).is_some(), "{} references {id}", chain.id);
                }
            }
        }
    }

    #[test]
    fn every_case_passes_at_small_order() {
        let opts = VerifyOptions { order: Some(120), ..Default::default() };
        for c in &reg().identities {
            let rep = verify(c, &opts);
            assert_eq!(rep.status, Status::Pass, "{} {:?}", c.id, rep.first_mismatch);
        }
    }

    #[test]
    fn reflexive_cases_pass() {
        let e = parse("(* (^ (f 1) -3) (f 7) (S))").unwrap();
        for mode in [Mode::Exact, Mode::Mod(7), Mode::Mod(10)] {
            let c = IdentityCase {
                id: "r".into(),
                section: "s".into(),
                lhs: e.clone(),
                rhs: e.clone(),
                mode,
                default_order: 200,
                suspect: false,
            };
            assert_eq!(verify(&c, &VerifyOptions::default()).status, Status::Pass);
        }
    }

    #[test]
    fn false_case_reports_first_mismatch() {
        let c = IdentityCase {
            id: "bad".into(),
            section: "s".into(),
            lhs: QExpr::f(1),
            rhs: QExpr::sum([(1, QExpr::Const(1)), (-1, QExpr::q(1)), (-1, QExpr::q(2)), (1, QExpr::q(6))]),
            mode: Mode::Exact,
            default_order: 50,
            suspect: false,
        };
        let rep = verify(&c, &VerifyOptions::default());
        assert_eq!(rep.status, Status::Mismatch);
        let m = rep.first_mismatch.unwrap();
        assert_eq!((m.index, m.left.as_str(), m.right.as_str()), (5, "1", "0"));
        let suspect = IdentityCase { suspect: true, ..c };
        assert_eq!(verify(&suspect, &VerifyOptions::default()).status, Status::ErratumCandidate);
    }

    #[test]
    fn mod_mode_is_weaker_than_exact() {
        // f_7 = f_1^7 holds mod 7 but not over Z
        let c = reg().identity("k1.p7").unwrap().clone();
        assert_eq!(verify(&c, &VerifyOptions::default()).status, Status::Pass);
        let exact = IdentityCase { mode: Mode::Exact, ..c };
        assert_eq!(verify(&exact, &VerifyOptions::default()).status, Status::Mismatch);
    }

    #[test]
    fn high_order_exact_uses_prime_fields() {
        let opts = VerifyOptions { order: Some(700), ..Default::default() };
        let rep = verify(reg().identity("psi").unwrap(), &opts);
        assert_eq!(rep.rings.len(), 3);
        assert_eq!(rep.status, Status::Pass);
        let primes = random_primes(3, 1);
        assert_eq!(primes, random_primes(3, 1));
        assert!(primes.iter().all(|&p| p >> 61 == 1 && is_prime64(p)));
    }

    #[test]
    fn hash_is_stable_and_content_sensitive() {
        let r = reg();
        let a = r.identity("0.2").unwrap();
        assert_eq!(a.content_hash(), a.clone().content_hash());
        assert_eq!(a.content_hash().len(), 64);
        let b = IdentityCase { mode: Mode::Mod(5), ..a.clone() };
        assert_ne!(a.content_hash(), b.content_hash());
    }

    #[test]
    fn mode_text() {
        assert_eq!("mod:17".parse::<Mode>().unwrap(), Mode::Mod(17));
        assert_eq!("exact".parse::<Mode>().unwrap(), Mode::Exact);
        assert!("mod:1".parse::<Mode>().is_err());
        assert_eq!(Mode::Mod(3).to_string(), "mod:3");
    }
}
