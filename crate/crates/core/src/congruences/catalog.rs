//! Built-in congruence families.

use super::index::{add, div, int, lin_k, lin_m, mul, pow, Affine, IExpr, Params};
use super::recurrence::{A, A_LOWER, C, C_LOWER, D, D_LOWER, E, E_LOWER};
use super::{CongruenceFamily, Coefficient, Relation, Term};
use crate::oracle::TableKind;

const B37: TableKind = TableKind::Bipartite { l: 3, m: 7 };
const B95: TableKind = TableKind::Bipartite { l: 9, m: 5 };
const B511: TableKind = TableKind::Bipartite { l: 5, m: 11 };
const B513: TableKind = TableKind::Bipartite { l: 5, m: 13 };
const B8117: TableKind = TableKind::Bipartite { l: 81, m: 17 };
const B28: TableKind = TableKind::Bipartite { l: 2, m: 8 };
const B311: TableKind = TableKind::Bipartite { l: 3, m: 11 };
const R17: TableKind = TableKind::Regular { l: 17 };

/// `(c·b^e + d)/q`.
fn frac(c: IExpr, b: i128, e: IExpr, d: i128, q: i128) -> IExpr {
    let lead = if c == int(1) { pow(b, e) } else { mul([c, pow(b, e)]) };
    div(add([lead, int(d)]), q)
}

fn ms(range: std::ops::RangeInclusive<u32>) -> Vec<Params> {
    range.map(Params::m).collect()
}

fn mks(m: &[u32], k: &[u32]) -> Vec<Params> {
    m.iter().flat_map(|&m| k.iter().map(move |&k| Params::mk(m, k))).collect()
}

fn ident() -> Affine {
    Affine::identity()
}

fn lin(terms: Vec<(Coefficient, Affine)>) -> Relation {
    Relation::Linear(terms.into_iter().map(|(c, a)| Term::new(c, a)).collect())
}

struct Builder {
    section: &'static str,
    source: TableKind,
    modulus: u64,
}

impl Builder {
    fn fam(&self, id: &str, index: Affine, relation: Relation, params: Vec<Params>, n_max: u64) -> CongruenceFamily {
        CongruenceFamily {
            id: id.into(),
            reading: None,
            section: self.section.into(),
            source: self.source,
            modulus: self.modulus,
            params,
            index,
            relation,
            n_max,
            note: None,
            suspect: false,
        }
    }
}

fn with_reading(mut f: CongruenceFamily, reading: &str, note: &str) -> CongruenceFamily {
    f.reading = Some(reading.into());
    f.note = Some(note.into());
    f
}

fn suspect(mut f: CongruenceFamily) -> CongruenceFamily {
    f.suspect = true;
    f
}

fn with_note(mut f: CongruenceFamily, note: &str) -> CongruenceFamily {
    f.note = Some(note.into());
    f
}

fn b37() -> Vec<CongruenceFamily> {
    let b = Builder { section: "bipartitions-3-7", source: B37, modulus: 7 };
    let m7 = || lin_m(7, 0);
    vec![
        b.fam(
            "ak1",
            Affine::new(pow(4, m7()), frac(int(1), 4, m7(), -1, 3)),
            lin(vec![(Coefficient::Power(3), ident())]),
            ms(0..=1),
            100,
        ),
        b.fam(
            "ak2",
            Affine::new(pow(4, lin_m(7, 7)), frac(int(10), 4, lin_m(7, 6), -1, 3)),
            Relation::Zero,
            ms(0..=1),
            100,
        ),
        b.fam(
            "kp0",
            Affine::new(pow(4, IExpr::M), frac(int(1), 4, IExpr::M, -1, 3)),
            lin(vec![(Coefficient::Seq(E), Affine::fixed(4, 1)), (Coefficient::Seq(E_LOWER), ident())]),
            ms(0..=6),
            200,
        ),
        b.fam(
            "w.11",
            Affine::fixed(16, 5),
            lin(vec![(Coefficient::Const(5), ident()), (Coefficient::Const(6), Affine::fixed(4, 1))]),
            vec![Params::default()],
            5000,
        ),
    ]
}

fn b95() -> Vec<CongruenceFamily> {
    let b = Builder { section: "bipartitions-9-5", source: B95, modulus: 3 };
    let m4 = || lin_m(4, 0);
    vec![
        b.fam(
            "0a1",
            Affine::new(pow(5, m4()), frac(int(1), 5, m4(), -1, 2)),
            lin(vec![(Coefficient::Power(2), ident())]),
            ms(0..=1),
            2000,
        ),
        b.fam(
            "0a2",
            Affine::new(pow(5, lin_m(4, 4)), frac(lin_k(2, 1), 5, lin_m(4, 3), -1, 2)),
            Relation::Zero,
            mks(&[0, 1], &[4, 5]),
            100,
        ),
        b.fam("s2", Affine::fixed(625, 312), lin(vec![(Coefficient::Const(2), ident())]), vec![Params::default()], 2000),
        b.fam(
            "s3",
            Affine::new(int(625), frac(lin_k(2, 1), 5, int(3), -1, 2)),
            Relation::Zero,
            mks(&[0], &[4, 5]),
            2000,
        ),
    ]
}

fn b511() -> Vec<CongruenceFamily> {
    let b = Builder { section: "bipartitions-5-11", source: B511, modulus: 11 };
    let m2 = || lin_m(2, 0);
    let m12 = || lin_m(12, 0);
    vec![
        b.fam(
            "1.1a",
            Affine::new(pow(5, m2()), frac(int(7), 5, m2(), -7, 12)),
            lin(vec![(Coefficient::Seq(A), Affine::fixed(25, 14)), (Coefficient::Seq(A_LOWER), ident())]),
            ms(0..=3),
            100,
        ),
        b.fam(
            "1.x",
            Affine::fixed(625, 364),
            lin(vec![(Coefficient::Const(1), Affine::fixed(25, 14)), (Coefficient::Const(7), ident())]),
            vec![Params::default()],
            2000,
        ),
        b.fam(
            "12",
            Affine::new(pow(5, m12()), frac(int(7), 5, m12(), -7, 12)),
            lin(vec![(Coefficient::Power(2), ident())]),
            ms(0..=1),
            100,
        ),
        with_note(
            b.fam(
                "13",
                Affine::new(pow(5, lin_m(12, 12)), frac(lin_k(12, 11), 5, lin_m(12, 11), -7, 12)),
                Relation::Zero,
                mks(&[0], &[4, 5]),
                100,
            ),
            "printed statement has no n; read as 5^(12m+12)*n + ...",
        ),
    ]
}

fn b513() -> Vec<CongruenceFamily> {
    let b = Builder { section: "bipartitions-5-13", source: B513, modulus: 13 };
    let m2 = || lin_m(2, 0);
    let m6 = || lin_m(6, 0);
    vec![
        b.fam(
            "2.1",
            Affine::new(pow(5, m2()), frac(int(2), 5, m2(), -2, 3)),
            lin(vec![(Coefficient::Seq(C), Affine::fixed(25, 16)), (Coefficient::Seq(C_LOWER), ident())]),
            ms(0..=3),
            100,
        ),
        b.fam(
            "2.x",
            Affine::fixed(625, 416),
            lin(vec![(Coefficient::Const(8), Affine::fixed(25, 16)), (Coefficient::Const(1), ident())]),
            vec![Params::default()],
            2000,
        ),
        b.fam(
            "14",
            Affine::new(pow(5, m6()), frac(int(2), 5, m6(), -2, 3)),
            lin(vec![(Coefficient::Power(8), ident())]),
            ms(0..=1),
            100,
        ),
        b.fam(
            "15",
            Affine::new(pow(5, lin_m(6, 6)), frac(lin_k(3, 1), 5, lin_m(6, 5), -2, 3)),
            Relation::Zero,
            mks(&[0, 1], &[1, 5]),
            100,
        ),
    ]
}

fn b8117() -> Vec<CongruenceFamily> {
    let b = Builder { section: "bipartitions-81-17", source: B8117, modulus: 17 };
    let r = Builder { section: "bipartitions-81-17", source: R17, modulus: 17 };
    let m9 = || lin_m(9, 0);
    let m8 = || lin_m(8, 0);
    let via = "checked on b_17 through B_{81,17}(81N+50) = 5 b_17(N); N is the index shown";
    vec![
        b.fam("s8", Affine::new(int(81), lin_k(27, 23)), Relation::Zero, mks(&[0], &[2, 3]), 300),
        CongruenceFamily {
            relation: Relation::Linear(vec![Term::from_source(Coefficient::Const(5), ident(), R17)]),
            ..b.fam("7.22", Affine::fixed(81, 50), Relation::Zero, vec![Params::default()], 500)
        },
        r.fam(
            "7.14",
            Affine::new(pow(4, IExpr::M), frac(int(2), 4, IExpr::M, -2, 3)),
            lin(vec![(Coefficient::Seq(D), Affine::fixed(4, 2)), (Coefficient::Seq(D_LOWER), ident())]),
            ms(0..=8),
            20,
        ),
        r.fam("s10", Affine::new(pow(4, int(9)), frac(int(2), 4, int(8), -2, 3)), Relation::Zero, vec![Params::default()], 10),
        r.fam(
            "s11",
            Affine::new(pow(4, int(9)), frac(int(2), 4, int(9), -2, 3)),
            lin(vec![(Coefficient::Const(8), ident())]),
            vec![Params::default()],
            10,
        ),
        with_note(
            r.fam(
                "s12",
                Affine::new(mul([int(2), pow(4, int(8))]), frac(int(5), 4, int(8), -2, 3)),
                lin(vec![(Coefficient::Const(1), Affine::fixed(2, 1))]),
                vec![Params::default()],
                20,
            ),
            "printed statement has no n; read as 2*4^8*n + ...",
        ),
        suspect(with_reading(
            r.fam("s13", Affine::new(pow(4, m9()), frac(int(2), 4, m8(), -2, 3)), Relation::Zero, ms(0..=1), 10),
            "printed",
            via,
        )),
        with_reading(
            r.fam("s13", Affine::new(pow(4, m9()), frac(int(2), 4, lin_m(9, -1), -2, 3)), Relation::Zero, ms(1..=2), 10),
            "iterated",
            via,
        ),
        with_note(
            r.fam(
                "s14",
                Affine::new(pow(4, m9()), frac(int(2), 4, m9(), -2, 3)),
                lin(vec![(Coefficient::Power(8), ident())]),
                ms(0..=1),
                10,
            ),
            via,
        ),
        suspect(with_reading(
            r.fam(
                "s15",
                Affine::new(mul([int(2), pow(4, m8())]), frac(int(5), 4, m8(), -2, 3)),
                lin(vec![(Coefficient::Power(5), Affine::fixed(2, 1))]),
                ms(0..=1),
                20,
            ),
            "printed",
            via,
        )),
        with_reading(
            r.fam(
                "s15",
                Affine::new(mul([int(2), pow(4, m8())]), frac(int(5), 4, m8(), -2, 3)),
                lin(vec![(Coefficient::Const(1), Affine::fixed(2, 1))]),
                ms(0..=1),
                20,
            ),
            "unit",
            via,
        ),
    ]
}

fn others() -> Vec<CongruenceFamily> {
    let b = Builder { section: "bipartitions-2-8", source: B28, modulus: 11 };
    let d = Builder { section: "bipartitions-3-11", source: B311, modulus: 11 };
    vec![
        b.fam("x1", Affine::new(int(88), lin_k(8, 7)), Relation::Zero, mks(&[0], &(1..=10).collect::<Vec<_>>()), 500),
        with_note(
            d.fam(
                "dou",
                Affine::new(pow(3, IExpr::M), frac(int(5), 3, lin_m(1, -1), -1, 2)),
                Relation::Zero,
                ms(2..=4),
                3000,
            ),
            "m plays the role of alpha >= 2",
        ),
    ]
}

/// Every built-in family in a fixed order; readings of one statement share
/// an id.
pub fn families() -> Vec<CongruenceFamily> {
    [b37(), b95(), b511(), b513(), b8117(), others()].concat()
}

/// Looks up `id` or `id/reading`; a bare id returns its first reading.
pub fn family(key: &str) -> Option<CongruenceFamily> {
    families().into_iter().find(|f| f.key() == key || f.id == key)
}

pub fn family_readings(id: &str) -> Vec<CongruenceFamily> {
    families().into_iter().filter(|f| f.id == id).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn keys_are_unique() {
        let mut seen = HashSet::new();
        for f in families() {
            assert!(seen.insert(f.key()), "{}", f.key());
        }
        assert_eq!(family_readings("s13").len(), 2);
        assert_eq!(family("s15/unit").unwrap().reading.as_deref(), Some("unit"));
    }

    #[test]
    fn offsets_are_integral_where_defined() {
        for f in families() {
            for &p in &f.params {
                match f.index.at(p) {
                    Ok(_) => {}
                    Err(e) => panic!("{} {p}: {e}", f.key()),
                }
            }
        }
    }

    #[test]
    fn printed_indices() {
        let at = |key: &str, p: Params| family(key).unwrap().index.at(p).unwrap();
        assert_eq!(at("ak1", Params::m(1)).offset, 5461);
        assert_eq!(at("ak2", Params::m(0)).offset, 13653);
        assert_eq!(at("s3", Params::mk(0, 4)).offset, 562);
        assert_eq!(at("1.1a", Params::m(1)).offset, 14);
        assert_eq!(at("2.1", Params::m(2)).offset, 416);
        assert_eq!(at("15", Params::mk(0, 1)).offset, 4166);
        assert_eq!(at("s12", Params::default()).offset, 109_226);
        assert_eq!(at("dou", Params::m(2)), super::super::Progression::new(9, 7));
        assert_eq!(at("x1", Params::mk(0, 3)).offset, 31);
    }
}
