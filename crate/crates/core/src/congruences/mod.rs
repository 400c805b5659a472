//! Arithmetic-progression congruences for bipartition and regular partition
//! counts, checked against oracle tables.

mod catalog;
mod index;
mod induction;
mod recurrence;

use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::oracle::{coeff_fast_cached, CountTable, OracleError, TableKind};
use crate::report::Status;

pub use catalog::{families, family, family_readings};
pub use index::{add, div, int, lin_k, lin_m, mul, pow, Affine, IExpr, IndexError, Params, Progression};
pub use induction::{induction_checks, ConsistencyCheck};
pub use recurrence::{seq_eval, sequence, RecurrenceSeq, SEQUENCES};

/// Largest index attempted; larger instances are reported as skipped.
pub const DESK_LIMIT: u64 = 30_000_000;

/// Violations kept verbatim in a report; the total is always counted.
pub const MAX_LISTED_VIOLATIONS: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficient {
    Const(u64),
    /// `c^m`.
    Power(u64),
    /// The `m`-th term of a recurrence.
    Seq(RecurrenceSeq),
}

impl Coefficient {
    pub fn at(&self, p: Params, modulus: u64) -> u64 {
        match self {
            Coefficient::Const(c) => c % modulus,
            Coefficient::Power(c) => {
                let mut acc = 1 % modulus;
                for _ in 0..p.m {
                    acc = acc * (c % modulus) % modulus;
                }
                acc
            }
            Coefficient::Seq(s) => s.eval_mod(p.m as u64, modulus),
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Const(c) => write!(f, "{c}"),
            Coefficient::Power(c) => write!(f, "{c}^m"),
            Coefficient::Seq(s) => write!(f, "{}_m", s.name),
        }
    }
}

/// `coeff · source[index(n)]`; `source` defaults to the family's own.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: Coefficient,
    pub index: Affine,
    pub source: Option<TableKind>,
}

impl Term {
    pub fn new(coeff: Coefficient, index: Affine) -> Self {
        Term { coeff, index, source: None }
    }

    pub fn from_source(coeff: Coefficient, index: Affine, source: TableKind) -> Self {
        Term { coeff, index, source: Some(source) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Relation {
    Zero,
    Linear(Vec<Term>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceFamily {
    pub id: String,
    /// Distinguishes alternative readings of one printed statement.
    pub reading: Option<String>,
    pub section: String,
    pub source: TableKind,
    pub modulus: u64,
    pub params: Vec<Params>,
    pub index: Affine,
    pub relation: Relation,
    pub n_max: u64,
    pub note: Option<String>,
    /// Violations are reported as erratum candidates rather than failures.
    pub suspect: bool,
}

impl CongruenceFamily {
    pub fn key(&self) -> String {
        match &self.reading {
            Some(r) => format!("{}/{r}", self.id),
            None => self.id.clone(),
        }
    }

    pub fn statement(&self) -> String {
        let lhs = format!("{}({})", source_name(self.source), self.index);
        let rhs = match &self.relation {
            Relation::Zero => "0".to_string(),
            Relation::Linear(terms) => terms
                .iter()
                .map(|t| {
                    let c = match t.coeff {
                        Coefficient::Const(1) => String::new(),
                        c => format!("{c}*"),
                    };
                    format!("{c}{}({})", source_name(t.source.unwrap_or(self.source)), t.index)
                })
                .collect::<Vec<_>>()
                .join(" + "),
        };
        format!("{lhs} = {rhs} mod {}", self.modulus)
    }
}

pub fn source_name(kind: TableKind) -> String {
    match kind {
        TableKind::Regular { l } => format!("b_{l}"),
        TableKind::Bipartite { l, m } => format!("B_{{{l},{m}}}"),
    }
}

/// Oracle tables keyed by source and modulus.
#[derive(Default)]
pub struct TableSet {
    tables: HashMap<(TableKind, u64), CountTable>,
}

impl TableSet {
    pub fn new() -> Self {
        TableSet::default()
    }

    pub fn insert(&mut self, p: u64, table: CountTable) {
        self.tables.insert((table.kind, p), table);
    }

    pub fn get(&self, kind: TableKind, p: u64) -> Option<&CountTable> {
        self.tables.get(&(kind, p))
    }

    /// Makes the table for `kind` mod `p` reach index `n`.
    pub fn ensure(&mut self, kind: TableKind, p: u64, n: u64, cache: Option<&Path>) -> Result<(), OracleError> {
        if self.get(kind, p).is_some_and(|t| t.max_index() as u64 >= n) {
            return Ok(());
        }
        let n = usize::try_from(n).map_err(|_| OracleError::InvalidParameter(format!("index {n}")))?;
        let table = match kind {
            TableKind::Bipartite { l, m } => coeff_fast_cached(cache, l, Some(m), n, p)?,
            TableKind::Regular { l } => coeff_fast_cached(cache, l, None, n, p)?,
        };
        self.insert(p, table);
        Ok(())
    }

    /// Builds every table the given families need within the desk limit.
    pub fn prepare<'a>(
        &mut self,
        families: impl IntoIterator<Item = (&'a CongruenceFamily, &'a [Params], u64)>,
        cache: Option<&Path>,
    ) -> Result<(), OracleError> {
        let mut need: HashMap<(TableKind, u64), u64> = HashMap::new();
        for (f, params, n_max) in families {
            for (kind, idx) in required_indices(f, params, n_max) {
                if idx <= DESK_LIMIT {
                    let e = need.entry((kind, f.modulus)).or_insert(0);
                    *e = (*e).max(idx);
                }
            }
        }
        let mut keys: Vec<_> = need.into_iter().collect();
        keys.sort_by_key(|((k, p), _)| (format!("{k:?}"), *p));
        for ((kind, p), n) in keys {
            self.ensure(kind, p, n, cache)?;
        }
        Ok(())
    }
}

/// Largest index read from each source, per instance that is well formed.
fn required_indices(f: &CongruenceFamily, params: &[Params], n_max: u64) -> Vec<(TableKind, u64)> {
    let mut out = Vec::new();
    for &p in params {
        if let Ok(plan) = plan_instance(f, p, n_max) {
            out.extend(plan.reads);
        }
    }
    out
}

struct InstancePlan {
    lhs: Progression,
    terms: Vec<(u64, Progression, TableKind)>,
    reads: Vec<(TableKind, u64)>,
}

fn plan_instance(f: &CongruenceFamily, p: Params, n_max: u64) -> Result<InstancePlan, String> {
    let lhs = f.index.at(p).map_err(|e| format!("index map: {e}"))?;
    let mut terms = Vec::new();
    if let Relation::Linear(ts) = &f.relation {
        for t in ts {
            let prog = t.index.at(p).map_err(|e| format!("reference map: {e}"))?;
            terms.push((t.coeff.at(p, f.modulus), prog, t.source.unwrap_or(f.source)));
        }
    }
    let top = |g: &Progression| g.at(n_max).unwrap_or(u64::MAX);
    let mut reads = vec![(f.source, top(&lhs))];
    reads.extend(terms.iter().map(|(_, g, k)| (*k, top(g))));
    Ok(InstancePlan { lhs, terms, reads })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub params: Params,
    pub n: u64,
    pub index: u64,
    pub got: u64,
    pub expected: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceReport {
    pub params: Params,
    pub index: String,
    pub max_index: Option<u64>,
    pub status: Status,
    pub reason: Option<String>,
    pub violations: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub id: String,
    pub reading: Option<String>,
    pub statement: String,
    pub modulus: u64,
    pub source: String,
    pub n_range: (u64, u64),
    pub instances: Vec<InstanceReport>,
    pub violations: Vec<Violation>,
    pub violation_count: usize,
    pub status: Status,
    pub note: Option<String>,
    pub runtime_ms: u64,
}

impl VerifyReport {
    pub fn key(&self) -> String {
        match &self.reading {
            Some(r) => format!("{}/{r}", self.id),
            None => self.id.clone(),
        }
    }
}

fn residue_at(table: &CountTable, idx: u64, p: u64) -> u64 {
    table.residue(idx as usize, p).expect("table ring is compatible with the family modulus")
}

/// Checks every `(params, n)` with `n <= n_max`.
pub fn verify_family(f: &CongruenceFamily, params: &[Params], n_max: u64, tables: &TableSet) -> VerifyReport {
    let t0 = Instant::now();
    let p = f.modulus;
    let mut instances = Vec::new();
    let mut violations = Vec::new();
    let mut count = 0usize;
    for &prm in params {
        let mut inst = InstanceReport {
            params: prm,
            index: String::new(),
            max_index: None,
            status: Status::Pass,
            reason: None,
            violations: 0,
        };
        let plan = match plan_instance(f, prm, n_max) {
            Ok(plan) => plan,
            Err(reason) => {
                inst.status = Status::Skipped;
                inst.reason = Some(reason);
                instances.push(inst);
                continue;
            }
        };
        inst.index = plan.lhs.to_string();
        let max = plan.reads.iter().map(|(_, i)| *i).max().unwrap_or(0);
        inst.max_index = Some(max);
        if max > DESK_LIMIT {
            inst.status = Status::Skipped;
            inst.reason = Some(format!("index exceeds desk scale: needs {max} > {DESK_LIMIT}"));
            instances.push(inst);
            continue;
        }
        let uncovered = plan
            .reads
            .iter()
            .filter(|(k, i)| tables.get(*k, p).is_none_or(|t| (t.max_index() as u64) < *i))
            .map(|(k, _)| (source_name(*k), tables.get(*k, p).map_or(0, |t| t.max_index() as u64 + 1)))
            .min_by_key(|(_, i)| *i);
        if let Some((name, first)) = uncovered {
            inst.status = Status::Skipped;
            inst.reason = Some(format!("{name} table mod {p} does not cover index {first}"));
            instances.push(inst);
            continue;
        }
        let lhs_table = tables.get(f.source, p).expect("coverage checked");
        for n in 0..=n_max {
            let idx = plan.lhs.at(n).expect("bounded by max index");
            let got = residue_at(lhs_table, idx, p);
            let expected = plan.terms.iter().fold(0u64, |acc, (c, g, k)| {
                let v = residue_at(tables.get(*k, p).expect("coverage checked"), g.at(n).expect("bounded"), p);
                (acc + c * v) % p
            });
            if got != expected {
                inst.violations += 1;
                count += 1;
                if violations.len() < MAX_LISTED_VIOLATIONS {
                    violations.push(Violation { params: prm, n, index: idx, got, expected });
                }
            }
        }
        if inst.violations > 0 {
            inst.status = Status::Fail;
        }
        instances.push(inst);
    }
    let status = if count > 0 && f.suspect {
        Status::ErratumCandidate
    } else if count > 0 {
        Status::Fail
    } else if instances.iter().all(|i| i.status == Status::Skipped) {
        Status::Skipped
    } else {
        Status::Pass
    };
    VerifyReport {
        id: f.id.clone(),
        reading: f.reading.clone(),
        statement: f.statement(),
        modulus: p,
        source: source_name(f.source),
        n_range: (0, n_max),
        instances,
        violations,
        violation_count: count,
        status,
        note: f.note.clone(),
        runtime_ms: t0.elapsed().as_millis() as u64,
    }
}

/// `source(lhs(n)) ≡ c_1 source(ref_1(n)) + c_2 source(ref_2(n)) (mod p)`.
pub fn verify_three_term(
    id: &str,
    p: u64,
    source: TableKind,
    maps: [Progression; 3],
    coeffs: [u64; 2],
    n_max: u64,
    tables: &TableSet,
) -> VerifyReport {
    let fixed = |g: Progression| Affine::fixed(g.scale as i128, g.offset as i128);
    let f = CongruenceFamily {
        id: id.into(),
        reading: None,
        section: "base-relation".into(),
        source,
        modulus: p,
        params: vec![Params::default()],
        index: fixed(maps[0]),
        relation: Relation::Linear(vec![
            Term::new(Coefficient::Const(coeffs[0]), fixed(maps[1])),
            Term::new(Coefficient::Const(coeffs[1]), fixed(maps[2])),
        ]),
        n_max,
        note: None,
        suspect: false,
    };
    verify_family(&f, &f.params, n_max, tables)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::bipartition_counts;
    use crate::series::CoeffRing;

    const B37: TableKind = TableKind::Bipartite { l: 3, m: 7 };

    fn tables_b37(n: usize) -> TableSet {
        let mut t = TableSet::new();
        t.insert(7, bipartition_counts(3, 7, n, CoeffRing::modular(7).unwrap()).unwrap());
        t
    }

    fn fam(index: Affine, relation: Relation, params: Vec<Params>) -> CongruenceFamily {
        CongruenceFamily {
            id: "t".into(),
            reading: None,
            section: "test".into(),
            source: B37,
            modulus: 7,
            params,
            index,
            relation,
            n_max: 50,
            note: None,
            suspect: false,
        }
    }

    #[test]
    fn tautology_passes() {
        let f = fam(Affine::identity(), Relation::Linear(vec![Term::new(Coefficient::Power(3), Affine::identity())]), vec![Params::m(0)]);
        let r = verify_family(&f, &f.params, 50, &tables_b37(100));
        assert_eq!(r.status, Status::Pass);
        assert!(r.violations.is_empty());
    }

    #[test]
    fn false_relation_lists_violations() {
        let f = fam(Affine::identity(), Relation::Zero, vec![Params::m(0)]);
        let t = tables_b37(100);
        let r = verify_family(&f, &f.params, 10, &t);
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.violations[0], Violation { params: Params::m(0), n: 0, index: 0, got: 1, expected: 0 });
        assert_eq!(r.violation_count, r.instances[0].violations);
        let f = CongruenceFamily { suspect: true, ..f };
        assert_eq!(verify_family(&f, &f.params, 10, &t).status, Status::ErratumCandidate);
    }

    #[test]
    fn uncovered_and_oversized_instances_skip() {
        let f = fam(Affine::new(pow(4, IExpr::M), int(0)), Relation::Zero, vec![Params::m(20), Params::m(30)]);
        let r = verify_family(&f, &f.params, 10, &tables_b37(100));
        assert_eq!(r.status, Status::Skipped);
        assert!(r.instances[0].reason.as_ref().unwrap().contains("desk scale"));
        let f = fam(Affine::fixed(16, 5), Relation::Zero, vec![Params::m(0)]);
        let r = verify_family(&f, &f.params, 10, &tables_b37(100));
        assert!(r.instances[0].reason.as_ref().unwrap().contains("does not cover index 101"), "{:?}", r.instances[0]);
    }

    #[test]
    fn ill_formed_offsets_skip() {
        let f = fam(Affine::new(int(1), div(int(1), 2)), Relation::Zero, vec![Params::m(0)]);
        let r = verify_family(&f, &f.params, 10, &tables_b37(100));
        assert_eq!(r.status, Status::Skipped);
        assert!(r.instances[0].reason.as_ref().unwrap().contains("not divisible"));
    }

    #[test]
    fn three_term_base_relation() {
        // B_{3,7}(16n+5) ≡ 5 B_{3,7}(n) + 6 B_{3,7}(4n+1) mod 7
        let t = tables_b37(16 * 300 + 5);
        let r = verify_three_term(
            "w.11",
            7,
            B37,
            [Progression::new(16, 5), Progression::new(1, 0), Progression::new(4, 1)],
            [5, 6],
            300,
            &t,
        );
        assert_eq!(r.status, Status::Pass, "{:?}", r.violations);
        let r = verify_three_term(
            "w.11-wrong",
            7,
            B37,
            [Progression::new(16, 5), Progression::new(1, 0), Progression::new(4, 1)],
            [6, 5],
            300,
            &t,
        );
        assert_eq!(r.status, Status::Fail);
    }

    #[test]
    fn coefficient_rules() {
        assert_eq!(Coefficient::Power(3).at(Params::m(4), 7), 81 % 7);
        assert_eq!(Coefficient::Seq(recurrence::E).at(Params::m(6), 7), 2);
        assert_eq!(Coefficient::Const(20).at(Params::m(1), 7), 6);
    }

    #[test]
    fn table_set_grows() {
        let mut t = TableSet::new();
        t.ensure(B37, 7, 100, None).unwrap();
        assert_eq!(t.get(B37, 7).unwrap().max_index(), 100);
        t.ensure(B37, 7, 50, None).unwrap();
        assert_eq!(t.get(B37, 7).unwrap().max_index(), 100);
        t.ensure(B37, 7, 300, None).unwrap();
        assert_eq!(t.get(B37, 7).unwrap().max_index(), 300);
    }
}
