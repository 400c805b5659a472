//! Runs the identity, chain and family suites and turns their reports into
//! rows.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use bireg_core::congruences::{self, induction_checks, verify_family, CongruenceFamily, TableSet, VerifyReport};
use bireg_core::identities::{
    self, load_identities, replay, ChainReport, CaseReport, Mode, Registry, ReplayOptions, VerifyOptions,
};
use bireg_core::report::Status;
use serde_json::{json, to_value};

use crate::report::{CaseRow, SuiteReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Identities,
    Chains,
    Families,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Chains => "chains",
            Suite::Families => "families",
            Suite::All => "all",
        }
    }

    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub cases: Vec<String>,
    pub chains: Vec<String>,
    pub families: Vec<String>,
    pub order: Option<usize>,
    pub n_max: Option<u64>,
    pub modulus: Option<u64>,
    pub jobs: usize,
    pub cache_dir: Option<PathBuf>,
    pub file: Option<PathBuf>,
}

impl SuiteConfig {
    pub fn new(suite: Suite) -> Self {
        SuiteConfig {
            suite,
            cases: Vec::new(),
            chains: Vec::new(),
            families: Vec::new(),
            order: None,
            n_max: None,
            modulus: None,
            jobs: 1,
            cache_dir: None,
            file: None,
        }
    }
}

/// `f` over `items` on up to `jobs` threads, results in input order.
pub fn par_map<T: Sync, R: Send>(items: &[T], jobs: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let jobs = jobs.clamp(1, items.len().max(1));
    if jobs == 1 {
        return items.iter().map(f).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<R>>> = items.iter().map(|_| Mutex::new(None)).collect();
    thread::scope(|s| {
        for _ in 0..jobs {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(item) = items.get(i) else { break };
                let r = f(item);
                *slots[i].lock().expect("slot lock") = Some(r);
            });
        }
    });
    slots.into_iter().map(|m| m.into_inner().expect("slot lock").expect("every slot filled")).collect()
}

pub fn registry(file: Option<&PathBuf>) -> Result<Registry> {
    let mut reg = Registry::builtin();
    if let Some(path) = file {
        let cases = load_identities(path).with_context(|| format!("reading {}", path.display()))?;
        reg.extend(cases)?;
    }
    Ok(reg)
}

pub fn run(cfg: &SuiteConfig) -> Result<SuiteReport> {
    if cfg.order == Some(0) {
        bail!("order must be positive");
    }
    if cfg.modulus.is_some_and(|m| m < 2) {
        bail!("modulus must be at least 2");
    }
    let reg = registry(cfg.file.as_ref())?;
    let mut rows = Vec::new();
    if cfg.suite.includes(Suite::Identities) {
        rows.extend(identity_rows(&reg, cfg)?);
    }
    if cfg.suite.includes(Suite::Chains) {
        rows.extend(chain_rows(&reg, cfg)?);
    }
    if cfg.suite.includes(Suite::Families) {
        rows.extend(family_rows(cfg)?);
    }
    Ok(SuiteReport::new(cfg.suite.name(), rows))
}

fn identity_rows(reg: &Registry, cfg: &SuiteConfig) -> Result<Vec<CaseRow>> {
    let mut cases = Vec::new();
    if cfg.cases.is_empty() {
        cases.extend(reg.identities.iter().cloned());
    } else {
        for id in &cfg.cases {
            cases.push(reg.identity(id).with_context(|| format!("unknown identity `{id}`"))?.clone());
        }
    }
    if let Some(m) = cfg.modulus {
        for c in &mut cases {
            c.mode = Mode::Mod(m);
        }
    }
    let opts = VerifyOptions { order: cfg.order, ..VerifyOptions::default() };
    Ok(par_map(&cases, cfg.jobs, |c| identity_row(identities::verify(c, &opts))))
}

fn identity_row(r: CaseReport) -> CaseRow {
    let mismatch = r.first_mismatch.as_ref().map(|m| to_value(m).expect("plain data"));
    let first_mismatch = mismatch.or_else(|| r.error.as_ref().map(|e| json!(e)));
    CaseRow {
        suite: "identities".into(),
        id: r.id.clone(),
        status: r.status,
        scope: format!("order {} in {}", r.order, r.rings.join(", ")),
        first_mismatch,
        params: None,
        runtime_ms: r.runtime_ms,
        note: None,
        detail: Some(to_value(&r).expect("plain data")),
        lines: Vec::new(),
    }
}

fn chain_rows(reg: &Registry, cfg: &SuiteConfig) -> Result<Vec<CaseRow>> {
    let mut chains = Vec::new();
    if cfg.chains.is_empty() {
        chains.extend(reg.chains.iter());
    } else {
        for id in &cfg.chains {
            chains.push(reg.chain(id).with_context(|| format!("unknown chain `{id}`"))?);
        }
    }
    let opts = ReplayOptions { order: cfg.order, ..ReplayOptions::default() };
    Ok(par_map(&chains, cfg.jobs, |c| chain_row(replay(reg, c, &opts))))
}

fn chain_row(r: ChainReport) -> CaseRow {
    let bad = r.stages.iter().find(|s| s.status != Status::Pass && s.status != Status::Skipped);
    let first_mismatch = bad.map(|s| {
        json!({
            "stage": s.index,
            "label": s.label,
            "status": s.status,
            "mismatch": s.first_mismatch,
            "error": s.error,
        })
    });
    let lines = r
        .stages
        .iter()
        .map(|s| {
            let through = s.checked_through.map_or(String::new(), |t| format!(" through q^{t}"));
            let extra = match (&s.first_mismatch, &s.error) {
                (Some(m), _) => format!(" at q^{}: {} vs {} in {}", m.index, m.left, m.right, m.ring),
                (None, Some(e)) => format!(": {e}"),
                (None, None) => String::new(),
            };
            format!("[{:>2}] {:<11} {:<22} {}{through}{extra}", s.index, s.kind, s.label, s.status)
        })
        .collect();
    CaseRow {
        suite: "chains".into(),
        id: r.id.clone(),
        status: r.status,
        scope: format!("order {} in {}", r.order, r.rings.join(", ")),
        first_mismatch: first_mismatch.or_else(|| r.error.as_ref().map(|e| json!(e))),
        params: None,
        runtime_ms: r.runtime_ms,
        note: None,
        detail: Some(to_value(&r).expect("plain data")),
        lines,
    }
}

fn selected_families(keys: &[String]) -> Result<Vec<CongruenceFamily>> {
    if keys.is_empty() {
        return Ok(congruences::families());
    }
    let mut out = Vec::new();
    for key in keys {
        let found = if key.contains('/') {
            congruences::family(key).into_iter().collect()
        } else {
            congruences::family_readings(key)
        };
        if found.is_empty() {
            bail!("unknown family `{key}`");
        }
        out.extend(found);
    }
    Ok(out)
}

fn family_rows(cfg: &SuiteConfig) -> Result<Vec<CaseRow>> {
    let fams = selected_families(&cfg.families)?;
    let n_max = |f: &CongruenceFamily| cfg.n_max.unwrap_or(f.n_max);
    let mut tables = TableSet::new();
    tables
        .prepare(fams.iter().map(|f| (f, f.params.as_slice(), n_max(f))), cfg.cache_dir.as_deref())
        .context("building oracle tables")?;
    let mut rows = par_map(&fams, cfg.jobs, |f| family_row(verify_family(f, &f.params, n_max(f), &tables)));
    if cfg.families.is_empty() {
        rows.extend(consistency_rows());
    }
    Ok(rows)
}

fn family_row(r: VerifyReport) -> CaseRow {
    let first_mismatch = r.violations.first().map(|v| to_value(v).expect("plain data"));
    let mut lines = vec![r.statement.clone()];
    for i in &r.instances {
        let mut l = format!("{} {} {}", i.params, i.index, i.status);
        if let Some(reason) = &i.reason {
            l += &format!(": {reason}");
        }
        if i.violations > 0 {
            l += &format!(": {} violations", i.violations);
        }
        lines.push(l);
    }
    CaseRow {
        suite: "families".into(),
        id: r.key(),
        status: r.status,
        scope: format!("n in {}..={} mod {} on {}", r.n_range.0, r.n_range.1, r.modulus, r.source),
        first_mismatch,
        params: Some(r.instances.iter().map(|i| i.params.to_string()).collect()),
        runtime_ms: r.runtime_ms,
        note: r.note.clone(),
        detail: Some(to_value(&r).expect("plain data")),
        lines,
    }
}

/// One row per family, aggregating its composition checks.
fn consistency_rows() -> Vec<CaseRow> {
    let t0 = Instant::now();
    let mut groups: BTreeMap<String, Vec<_>> = BTreeMap::new();
    let mut order = Vec::new();
    for c in induction_checks() {
        if !groups.contains_key(&c.family) {
            order.push(c.family.clone());
        }
        groups.entry(c.family.clone()).or_default().push(c);
    }
    let ms = t0.elapsed().as_millis() as u64;
    order
        .into_iter()
        .map(|fam| {
            let checks = &groups[&fam];
            let suspect = congruences::family(&fam).is_some_and(|f| f.suspect);
            let failed = checks.iter().find(|c| c.status == Status::Fail);
            let status = match failed {
                Some(_) if suspect => Status::ErratumCandidate,
                Some(_) => Status::Fail,
                None if checks.iter().all(|c| c.status == Status::Skipped) => Status::Skipped,
                None => Status::Pass,
            };
            CaseRow {
                suite: "families".into(),
                id: format!("induction:{fam}"),
                status,
                scope: format!("{} composition checks, m <= 3", checks.len()),
                first_mismatch: failed.map(|c| json!(format!("{} m={}: {}", c.id, c.m, c.detail))),
                params: None,
                runtime_ms: ms,
                note: None,
                detail: Some(to_value(checks).expect("plain data")),
                lines: checks.iter().map(|c| format!("{} m={} {}: {}", c.id, c.m, c.status, c.detail)).collect(),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn par_map_keeps_order() {
        let items: Vec<u64> = (0..50).collect();
        assert_eq!(par_map(&items, 4, |x| x * x), items.iter().map(|x| x * x).collect::<Vec<_>>());
        assert_eq!(par_map(&items, 1, |x| x + 1)[49], 50);
        assert!(par_map(&Vec::<u8>::new(), 3, |x| *x).is_empty());
    }

    #[test]
    fn unknown_names_are_errors() {
        let mut cfg = SuiteConfig::new(Suite::Chains);
        cfg.chains = vec!["nope".into()];
        assert!(run(&cfg).unwrap_err().to_string().contains("unknown chain"));
        assert!(selected_families(&["nope".into()]).is_err());
        assert_eq!(selected_families(&["s13".into()]).unwrap().len(), 2);
    }

    #[test]
    fn modulus_override_applies_to_identities() {
        let mut cfg = SuiteConfig::new(Suite::Identities);
        cfg.cases = vec!["0.2".into()];
        cfg.modulus = Some(7);
        cfg.order = Some(100);
        let r = run(&cfg).unwrap();
        assert_eq!(r.cases.len(), 1);
        assert_eq!(r.cases[0].status, Status::Pass);
        assert!(r.cases[0].scope.contains("Z/7"));
    }

    #[test]
    fn consistency_rows_flag_only_the_printed_reading() {
        let rows = consistency_rows();
        for r in &rows {
            assert!(!r.status.is_failure(), "{}", r.id);
        }
        let printed = rows.iter().find(|r| r.id == "induction:s13/printed").unwrap();
        assert_eq!(printed.status, Status::ErratumCandidate);
    }
}
