//! Built-in identities and proof chains.

use super::{IdentityCase, Mode, ProofChain, ProofStep, Registry};
use crate::qexpr::{QExpr, Sign};

fn eta(f: &[(usize, i64)]) -> QExpr {
    QExpr::eta_quotient(f)
}

/// `q^e * x`.
fn qx(e: usize, x: QExpr) -> QExpr {
    if e == 0 {
        x
    } else {
        QExpr::product([QExpr::q(e), x])
    }
}

fn lin(terms: Vec<(i64, QExpr)>) -> QExpr {
    QExpr::sum(terms)
}

fn prod(factors: Vec<QExpr>) -> QExpr {
    QExpr::product(factors)
}

/// `sum c q^a S^b` over `(c, a, b)`.
fn s_poly(terms: &[(i64, usize, i64)]) -> QExpr {
    lin(terms
        .iter()
        .map(|&(c, a, b)| {
            let s = match b {
                0 => QExpr::Const(1),
                1 => QExpr::s(),
                _ => QExpr::s().pow(b),
            };
            (c, if b == 0 { QExpr::q(a) } else { qx(a, s) })
        })
        .collect())
}

/// `1/S - q - q^2 S`.
fn bracket() -> QExpr {
    s_poly(&[(1, 0, -1), (-1, 1, 0), (-1, 2, 1)])
}

fn bracket_pow(k: i64) -> QExpr {
    if k == 1 {
        bracket()
    } else {
        bracket().pow(k)
    }
}

/// `1/S_1 - q^13 - q^26 S_1`.
fn bracket13() -> QExpr {
    lin(vec![(1, QExpr::s1().pow(-1)), (-1, QExpr::q(13)), (-1, qx(26, QExpr::s1()))])
}

/// `1/S^5 - 11 q^5 - q^10 S^5`.
fn d5() -> QExpr {
    s_poly(&[(1, 0, -5), (-11, 5, 0), (-1, 10, 5)])
}

/// `f_5^6 / f_25^6`.
fn x56() -> QExpr {
    eta(&[(5, 6), (25, -6)])
}

/// The nine-term polynomial in `q` and `S` multiplying `f_25^5/f_5^6` in the
/// expansion of `1/f_1`.
fn inv_f1_poly() -> QExpr {
    s_poly(&[
        (1, 8, 4),
        (-1, 7, 3),
        (2, 6, 2),
        (-3, 5, 1),
        (5, 4, 0),
        (3, 3, -1),
        (2, 2, -2),
        (1, 1, -3),
        (1, 0, -4),
    ])
}

/// `(1/S - q - q^2 S)^7` reduced mod 3.
fn bracket7_mod3() -> QExpr {
    s_poly(&[
        (1, 0, -7),
        (2, 1, -6),
        (2, 2, -5),
        (1, 3, -4),
        (2, 4, -3),
        (2, 5, -2),
        (2, 6, -1),
        (1, 7, 0),
        (1, 8, 1),
        (2, 9, 2),
        (1, 10, 3),
        (1, 11, 4),
        (1, 12, 5),
        (2, 13, 6),
        (2, 14, 7),
    ])
}

fn u_pow(k: i64) -> QExpr {
    match k {
        0 => QExpr::Const(1),
        1 => QExpr::u(),
        _ => QExpr::u().pow(k),
    }
}

fn v_pow(k: i64) -> QExpr {
    match k {
        0 => QExpr::Const(1),
        1 => QExpr::v(),
        _ => QExpr::v().pow(k),
    }
}

/// `sum c q^a w^b` over `(c, a, b)` for `w` one of `u`, `v`.
fn poly_in(w: fn(i64) -> QExpr, terms: &[(i64, usize, i64)]) -> QExpr {
    lin(terms.iter().map(|&(c, a, b)| (c, qx(a, w(b)))).collect())
}

/// `(u^-1 - 3q + 4q^3 u^2)^5` reduced mod 17.
fn cubic5() -> QExpr {
    poly_in(
        u_pow,
        &[
            (1, 0, -5),
            (2, 1, -4),
            (5, 2, -3),
            (5, 3, -2),
            (12, 4, -1),
            (4, 5, 0),
            (6, 6, 1),
            (10, 7, 2),
            (2, 8, 3),
            (9, 9, 4),
            (2, 10, 5),
            (14, 11, 6),
            (5, 12, 7),
            (2, 13, 8),
            (4, 15, 10),
        ],
    )
}

/// `(u^-1 - 3q + 4q^3 u^2)^4` reduced mod 17.
fn cubic4() -> QExpr {
    poly_in(
        u_pow,
        &[
            (1, 0, -4),
            (5, 1, -3),
            (3, 2, -2),
            (10, 3, -1),
            (5, 4, 0),
            (7, 5, 1),
            (4, 6, 2),
            (2, 7, 3),
            (14, 8, 4),
            (1, 9, 5),
            (14, 10, 6),
            (1, 12, 8),
        ],
    )
}

fn cubic1() -> QExpr {
    poly_in(u_pow, &[(1, 0, -1), (-3, 1, 0), (4, 3, 2)])
}

/// `c v^-3 + d q + 2 q^2 v^3 + 14 q^3 v^6`.
fn v_poly(c: i64, d: i64) -> QExpr {
    poly_in(v_pow, &[(c, 0, -3), (d, 1, 0), (2, 2, 3), (14, 3, 6)])
}

/// `(v^-1 + 4 q v^2)^3`.
fn v_cube() -> QExpr {
    poly_in(v_pow, &[(1, 0, -1), (4, 1, 2)]).pow(3)
}

/// `5 (v^-1 + 4 q v^2)^3 + c q`.
fn v_cube_plus(c: i64) -> QExpr {
    lin(vec![(5, v_cube()), (c, QExpr::q(1))])
}

/// `f_1^12 / f_3^12 + 27 q`.
fn cube_rhs_76() -> QExpr {
    lin(vec![(1, eta(&[(1, 12), (3, -12)])), (27, QExpr::q(1))])
}

fn e2_rhs() -> QExpr {
    lin(vec![(1, eta(&[(4, 10), (2, -2), (8, -4)])), (-4, qx(1, eta(&[(2, 2), (8, 4), (4, -2)])))])
}

fn kp_rhs() -> QExpr {
    lin(vec![(1, eta(&[(4, 6), (6, 3), (2, -9), (12, -2)])), (3, qx(1, eta(&[(4, 2), (6, 1), (12, 2), (2, -7)])))])
}

fn kp1_rhs() -> QExpr {
    lin(vec![(1, eta(&[(4, 3), (12, -1)])), (-3, qx(1, eta(&[(2, 2), (12, 3), (4, -1), (6, -2)])))])
}

fn kp2_rhs() -> QExpr {
    lin(vec![
        (1, eta(&[(2, 1), (8, 2), (12, 4), (4, -2), (6, -1), (24, -2)])),
        (-1, qx(1, eta(&[(4, 4), (6, 1), (24, 2), (2, -1), (8, -2), (12, -2)]))),
    ])
}

fn kp3_rhs() -> QExpr {
    lin(vec![
        (1, eta(&[(6, 1), (12, 2), (4, 4), (2, -5), (8, -1), (24, -1)])),
        (2, qx(1, eta(&[(6, 2), (8, 1), (24, 1), (4, 1), (2, -4), (12, -1)]))),
    ])
}

fn inv_f1sq_rhs() -> QExpr {
    lin(vec![(1, eta(&[(8, 5), (2, -5), (16, -2)])), (2, qx(1, eta(&[(4, 2), (16, 2), (2, -5), (8, -1)])))])
}

fn inv_f1pow4_rhs() -> QExpr {
    lin(vec![(1, eta(&[(4, 14), (2, -14), (8, -4)])), (4, qx(1, eta(&[(4, 2), (8, 4), (2, -10)])))])
}

fn case(id: &str, section: &str, lhs: QExpr, rhs: QExpr, mode: Mode, order: usize) -> IdentityCase {
    IdentityCase {
        id: id.into(),
        section: section.into(),
        lhs,
        rhs,
        mode,
        default_order: order,
        suspect: false,
    }
}

pub(super) fn identities() -> Vec<IdentityCase> {
    const PRE: &str = "preliminaries";
    const CUBIC: &str = "bipartitions-81-17";
    let mut v = vec![
        case("0.2", PRE, QExpr::f(1), prod(vec![QExpr::f(25), bracket()]), Mode::Exact, 400),
        case("0.3", PRE, x56(), d5(), Mode::Exact, 400),
        case("0.3a", PRE, eta(&[(1, -1)]), prod(vec![eta(&[(25, 5), (5, -6)]), inv_f1_poly()]), Mode::Exact, 400),
        case("phi", PRE, QExpr::Phi(1), eta(&[(2, 5), (1, -2), (4, -2)]), Mode::Exact, 500),
        case("psi", PRE, QExpr::Psi(1), eta(&[(2, 2), (1, -1)]), Mode::Exact, 500),
        case("b.euler", PRE, QExpr::theta(Sign::Minus, 1, Sign::Minus, 2), QExpr::f(1), Mode::Exact, 500),
        case("a.inv-f1sq", PRE, eta(&[(1, -2)]), inv_f1sq_rhs(), Mode::Exact, 500),
        case("b.inv-f1pow4", PRE, eta(&[(1, -4)]), inv_f1pow4_rhs(), Mode::Exact, 500),
        case("e2", PRE, eta(&[(1, 4)]), e2_rhs(), Mode::Exact, 500),
        case("kp", PRE, eta(&[(3, 1), (1, -3)]), kp_rhs(), Mode::Exact, 500),
        case("kp1", PRE, eta(&[(1, 3), (3, -1)]), kp1_rhs(), Mode::Exact, 500),
        case("kp2", PRE, eta(&[(1, 1), (3, 1)]), kp2_rhs(), Mode::Exact, 500),
        case("kp3", PRE, eta(&[(3, 2), (1, -2)]), kp3_rhs(), Mode::Exact, 500),
        IdentityCase {
            suspect: true,
            ..case("7.3", CUBIC, eta(&[(1, 3)]), prod(vec![eta(&[(9, 3)]), cubic1()]), Mode::Exact, 600)
        },
        case("7.6", CUBIC, cube_rhs_76(), v_cube(), Mode::Exact, 600),
    ];
    for p in [3usize, 7, 11, 13, 17] {
        v.push(case(&format!("k1.p{p}"), PRE, QExpr::f(p), eta(&[(1, p as i64)]), Mode::Mod(p as u64), 500));
    }
    v
}

fn sub(id: &str) -> ProofStep {
    ProofStep::Substitute(id.into())
}

fn assert(label: &str, expr: QExpr) -> ProofStep {
    ProofStep::Assert { label: label.into(), expr, suspect: false }
}

fn extract(r: usize, s: usize) -> ProofStep {
    ProofStep::Extract { r, s }
}

fn back(s: usize) -> ProofStep {
    ProofStep::DilateBack(s)
}

fn combine(terms: &[(i64, &str)]) -> ProofStep {
    ProofStep::Combine(terms.iter().map(|&(c, l)| (c, l.to_string())).collect())
}

/// Eta quotient times a power of `q`, scaled.
fn term(c: i64, qe: usize, f: &[(usize, i64)]) -> (i64, QExpr) {
    (c, qx(qe, eta(f)))
}

fn chain_37() -> ProofChain {
    let w3_a = [(4, 8), (12, 4), (2, -1), (6, -1), (8, -2), (24, -2)];
    let w3_b = [(2, 3), (8, 6), (12, 4), (4, -4), (6, -1), (24, -2)];
    let w3_c = [(4, 14), (6, 1), (24, 2), (2, -3), (8, -6), (12, -2)];
    let w3_d = [(2, 1), (4, 2), (6, 1), (8, 2), (24, 2), (12, -2)];
    let w4_a = [(1, 3), (4, 6), (6, 4), (2, -4), (3, -1), (12, -2)];
    let w4_b = [(2, 14), (3, 1), (12, 2), (1, -3), (4, -6), (6, -2)];
    let w5_a = [(4, 9), (6, 4), (2, -4), (12, -3)];
    let w5_b = [(4, 5), (6, 2), (12, 1), (2, -2)];
    let w5_c = [(2, 7), (12, 4), (4, -4), (6, -1)];
    let f15f3 = [(1, 5), (3, 1)];
    let f25f6 = [(2, 5), (6, 1)];
    let w6_b = [(2, 9), (3, 4), (1, -4), (6, -3)];
    // 3 X (kp1) + 6 Y (kp) with the f_1, f_3 factors of the previous stage removed
    let kp_sub = |a: i64, b: i64| {
        lin(vec![
            (a, prod(vec![eta(&[(4, 6), (6, 4), (2, -4), (12, -2)]), kp1_rhs()])),
            (b, prod(vec![eta(&[(2, 14), (12, 2), (4, -6), (6, -2)]), kp_rhs()])),
        ])
    };
    let kp3_sq = |c: i64| (c, prod(vec![eta(&[(2, 9), (6, -3)]), kp3_rhs().pow(2)]));
    ProofChain {
        id: "w.18".into(),
        section: "bipartitions-3-7".into(),
        start: eta(&[(3, 1), (7, 1), (1, -2)]),
        mode: Mode::Mod(7),
        default_order: 3400,
        steps: vec![
            assert("w.2", eta(&f15f3)),
            sub("e2"),
            sub("kp2"),
            assert("w.3/sub", prod(vec![e2_rhs(), kp2_rhs()])),
            assert(
                "w.3",
                lin(vec![term(1, 0, &w3_a), term(3, 1, &w3_b), term(6, 1, &w3_c), term(4, 2, &w3_d)]),
            ),
            extract(1, 2),
            back(2),
            assert("w.4", lin(vec![term(3, 0, &w4_a), term(6, 0, &w4_b)])),
            sub("kp"),
            sub("kp1"),
            assert("w.5/sub", kp_sub(3, 6)),
            assert(
                "w.5",
                lin(vec![term(6, 0, &f25f6), term(3, 0, &w5_a), term(5, 1, &w5_b), term(4, 1, &w5_c)]),
            ),
            extract(0, 2),
            back(2),
            assert("w.6", lin(vec![term(6, 0, &f15f3), term(3, 0, &w6_b)])),
            sub("e2"),
            sub("kp2"),
            sub("kp3"),
            assert("w.7/sub", lin(vec![(6, prod(vec![e2_rhs(), kp2_rhs()])), kp3_sq(3)])),
            assert(
                "w.7",
                lin(vec![
                    term(2, 0, &w3_a),
                    term(5, 1, &[(4, 5), (12, 1)]),
                    term(4, 1, &w3_b),
                    term(1, 1, &w3_c),
                    term(1, 2, &w3_d),
                ]),
            ),
            extract(1, 2),
            back(2),
            assert("w.8", lin(vec![term(5, 0, &f25f6), term(4, 0, &w4_a), term(1, 0, &w4_b)])),
            sub("kp"),
            sub("kp1"),
            assert("w.9/sub", lin(vec![term(5, 0, &f25f6), (1, kp_sub(4, 1))])),
            assert(
                "w.9",
                lin(vec![term(6, 0, &f25f6), term(4, 0, &w5_a), term(2, 1, &w5_b), term(3, 1, &w5_c)]),
            ),
            extract(0, 2),
            back(2),
            assert("w.10", lin(vec![term(6, 0, &f15f3), term(4, 0, &w6_b)])),
            combine(&[(5, "w.2"), (6, "w.6")]),
            assert("w.11", lin(vec![term(6, 0, &f15f3), term(4, 0, &w6_b)])),
            combine(&[(2, "w.6"), (2, "w.2")]),
            assert("w.20", lin(vec![term(6, 0, &w6_b)])),
            sub("kp3"),
            assert("w.21/sub", lin(vec![kp3_sq(6)])),
            assert(
                "w.21",
                lin(vec![term(6, 0, &w3_a), term(3, 1, &[(4, 5), (12, 1)]), term(3, 2, &w3_d)]),
            ),
            extract(1, 2),
            back(2),
            assert("w.22", lin(vec![term(3, 0, &f25f6)])),
        ],
    }
}

fn chain_95() -> ProofChain {
    let f5f25_7 = || eta(&[(5, 1), (25, 7)]);
    let p7 = |c: i64| (c, prod(vec![f5f25_7(), bracket7_mod3()]));
    let lin_q = |c: i64| (c, qx(1, prod(vec![eta(&[(5, 7), (25, 1)]), bracket()])));
    let d5_stage = |c: i64| (c, prod(vec![f5f25_7(), lin(vec![(2, d5()), (2, QExpr::q(5))])]));
    let x_stage = |c: i64| (c, prod(vec![f5f25_7(), lin(vec![(2, x56()), (2, QExpr::q(5))])]));
    let f7_5 = [(5, 7), (25, 1)];
    let f1_7 = [(1, 7), (5, 1)];
    let f1_5_7 = [(1, 1), (5, 7)];
    ProofChain {
        id: "s2".into(),
        section: "bipartitions-9-5".into(),
        start: eta(&[(9, 1), (5, 1), (1, -2)]),
        mode: Mode::Mod(3),
        default_order: 26_000,
        steps: vec![
            assert("3.2", eta(&f1_7)),
            sub("0.2"),
            assert("3.3/sub", prod(vec![f5f25_7(), bracket_pow(7)])),
            assert("3.3", lin(vec![p7(1)])),
            extract(2, 5),
            assert("3.4", lin(vec![d5_stage(1)])),
            sub("0.3"),
            assert("3.5/sub", lin(vec![x_stage(1)])),
            assert("3.5", lin(vec![term(2, 0, &f7_5), term(2, 5, &[(5, 1), (25, 7)])])),
            back(5),
            assert("3.6", lin(vec![term(2, 0, &f1_7), term(2, 1, &f1_5_7)])),
            sub("0.2"),
            assert("3.7", lin(vec![p7(2), lin_q(2)])),
            extract(2, 5),
            assert("3.8", lin(vec![d5_stage(2), term(1, 0, &f7_5)])),
            sub("0.3"),
            assert("3.9/sub", lin(vec![x_stage(2), term(1, 0, &f7_5)])),
            assert("3.9", lin(vec![term(2, 0, &f7_5), term(1, 5, &[(5, 1), (25, 7)])])),
            back(5),
            assert("3.10", lin(vec![term(2, 0, &f1_7), term(1, 1, &f1_5_7)])),
            sub("0.2"),
            assert("3.11", lin(vec![p7(2), lin_q(1)])),
            extract(2, 5),
            assert("3.12", lin(vec![d5_stage(2), term(2, 0, &f7_5)])),
            sub("0.3"),
            assert("3.13/sub", lin(vec![x_stage(2), term(2, 0, &f7_5)])),
            assert("3.13", lin(vec![term(1, 5, &[(5, 1), (25, 7)])])),
            back(5),
            assert("3.14", lin(vec![term(1, 1, &f1_5_7)])),
            sub("0.2"),
            assert("3.15", lin(vec![lin_q(1)])),
        ],
    }
}

/// The 19-term expansion of `(1/S - q - q^2 S)^9` mod 11 with the
/// `q^4 (mod 5)` part written through `1/S^5 - 11q^5 - q^10 S^5`.
fn bracket9_mod11(fifth: QExpr) -> QExpr {
    lin(vec![
        (2, QExpr::q(9)),
        (9, qx(4, fifth)),
        (
            1,
            s_poly(&[
                (10, 18, 9),
                (2, 17, 8),
                (6, 16, 7),
                (10, 15, 6),
                (5, 13, 4),
                (6, 12, 3),
                (9, 11, 2),
                (7, 10, 1),
                (4, 8, -1),
                (9, 7, -2),
                (5, 6, -3),
                (5, 5, -4),
                (10, 3, -6),
                (5, 2, -7),
                (2, 1, -8),
                (1, 0, -9),
            ]),
        ),
    ])
}

fn chain_511() -> ProofChain {
    let e = |f: &[(usize, i64)]| eta(f);
    let b9 = |c: i64| (c, prod(vec![e(&[(5, 1), (25, 9)]), bracket_pow(9)]));
    let b3q = |c: i64| (c, qx(1, prod(vec![e(&[(5, 7), (25, 3)]), bracket_pow(3)])));
    let b7 = |c: i64| (c, prod(vec![e(&[(5, 3), (25, 7)]), bracket_pow(7)]));
    let b1q = |c: i64| (c, qx(1, prod(vec![e(&[(5, 9), (25, 1)]), bracket()])));
    // f_5 f_25^9 (2 q^5 + 9 W)
    let four = |c: i64, w: QExpr| {
        (c, prod(vec![e(&[(5, 1), (25, 9)]), lin(vec![(2, QExpr::q(5)), (9, w)])]))
    };
    let f1_9 = [(1, 9), (5, 1)];
    let f1_3 = [(1, 3), (5, 7)];
    let f1_7 = [(1, 7), (5, 3)];
    let f1_1 = [(1, 1), (5, 9)];
    ProofChain {
        id: "1.18a".into(),
        section: "bipartitions-5-11".into(),
        start: eta(&[(5, 1), (11, 1), (1, -2)]),
        mode: Mode::Mod(11),
        default_order: 126_000,
        steps: vec![
            assert("1.2", eta(&f1_9)),
            sub("0.2"),
            assert("1.3/sub", lin(vec![b9(1)])),
            assert("1.3", prod(vec![e(&[(5, 1), (25, 9)]), bracket9_mod11(d5())])),
            sub("0.3"),
            assert("1.3/x", prod(vec![e(&[(5, 1), (25, 9)]), bracket9_mod11(x56())])),
            extract(4, 5),
            back(5),
            assert("1.4", lin(vec![term(9, 0, &f1_7), term(2, 1, &f1_1)])),
            sub("0.2"),
            assert("1.5", lin(vec![b7(9), b1q(2)])),
            extract(2, 5),
            assert(
                "1.6",
                lin(vec![
                    (9, prod(vec![e(&[(5, 3), (25, 7)]), lin(vec![(4, QExpr::q(5)), (3, d5())])])),
                    term(9, 0, &[(5, 9), (25, 1)]),
                ]),
            ),
            sub("0.3"),
            assert(
                "1.6/x",
                lin(vec![
                    (9, prod(vec![e(&[(5, 3), (25, 7)]), lin(vec![(4, QExpr::q(5)), (3, x56())])])),
                    term(9, 0, &[(5, 9), (25, 1)]),
                ]),
            ),
            back(5),
            assert("1.8", lin(vec![term(3, 0, &f1_9), term(3, 1, &f1_3)])),
            sub("0.2"),
            assert("1.13", lin(vec![b9(3), b3q(3)])),
            extract(4, 5),
            assert("1.14", lin(vec![four(3, d5()), term(4, 0, &[(5, 7), (25, 3)])])),
            sub("0.3"),
            assert("1.14/x", lin(vec![four(3, x56()), term(4, 0, &[(5, 7), (25, 3)])])),
            back(5),
            assert("1.16", lin(vec![term(9, 0, &f1_7), term(6, 1, &f1_1)])),
            sub("0.2"),
            extract(2, 5),
            back(5),
            assert("1.17", lin(vec![term(10, 0, &f1_9), term(3, 1, &f1_3)])),
            combine(&[(1, "1.8"), (7, "1.2")]),
            assert("1.x", lin(vec![term(10, 0, &f1_9), term(3, 1, &f1_3)])),
            combine(&[(5, "1.8"), (6, "1.2")]),
            assert("1.19b", lin(vec![term(10, 0, &f1_9), term(4, 1, &f1_3)])),
            sub("0.2"),
            assert("1.19c", lin(vec![b9(10), b3q(4)])),
            extract(4, 5),
            assert("1.19d", lin(vec![four(10, d5()), term(9, 0, &[(5, 7), (25, 3)])])),
            sub("0.3"),
            assert("1.19d/x", lin(vec![four(10, x56()), term(9, 0, &[(5, 7), (25, 3)])])),
            back(5),
            assert("1.19e", lin(vec![term(9, 1, &f1_1)])),
            sub("0.2"),
            assert("1.19f", lin(vec![b1q(9)])),
        ],
    }
}

/// `(1/S - q - q^2 S)^11` mod 13 as first printed.
fn bracket11_mod13() -> QExpr {
    s_poly(&[
        (12, 22, 11),
        (2, 21, 10),
        (8, 20, 9),
        (10, 19, 8),
        (6, 18, 7),
        (12, 17, 6),
        (7, 16, 5),
        (12, 14, 3),
        (4, 13, 2),
        (10, 12, 1),
        (8, 11, 0),
        (3, 10, -1),
        (4, 9, -2),
        (1, 8, -3),
        (6, 6, -5),
        (12, 5, -6),
        (7, 4, -7),
        (10, 3, -8),
        (5, 2, -9),
        (2, 1, -10),
        (1, 0, -11),
    ])
}

/// The regrouped form, with the `q^1 (mod 5)` part written through `W`.
fn bracket11_grouped(w: QExpr) -> QExpr {
    lin(vec![
        (8, QExpr::q(11)),
        (2, qx(1, w.clone().pow(2))),
        (11, qx(6, w)),
        (
            1,
            s_poly(&[
                (12, 22, 11),
                (8, 20, 9),
                (10, 19, 8),
                (6, 18, 7),
                (12, 17, 6),
                (12, 14, 3),
                (4, 13, 2),
                (10, 12, 1),
                (3, 10, -1),
                (4, 9, -2),
                (1, 8, -3),
                (12, 5, -6),
                (7, 4, -7),
                (10, 3, -8),
                (5, 2, -9),
                (1, 0, -11),
            ]),
        ),
    ])
}

fn chain_513() -> ProofChain {
    let e = |f: &[(usize, i64)]| eta(f);
    let f13_5 = [(13, 1), (5, -1)];
    let f65_1 = [(65, 1), (1, -1)];
    let f1_11 = [(1, 11), (5, 1)];
    let f1_5 = [(1, 5), (5, 7)];
    let f1_7 = [(1, 7), (5, 5)];
    let f1_1 = [(1, 1), (5, 11)];
    let s1_term = |c: i64| (c, prod(vec![e(&[(325, 1), (5, -1)]), bracket13()]));
    let b7q = |c: i64| (c, qx(1, prod(vec![e(&[(5, 5), (25, 7)]), bracket_pow(7)])));
    let b1q2 = |c: i64| (c, qx(2, prod(vec![e(&[(5, 11), (25, 1)]), bracket()])));
    let b11 = |c: i64| (c, prod(vec![e(&[(5, 1), (25, 11)]), bracket_pow(11)]));
    let b5q = |c: i64| (c, qx(1, prod(vec![e(&[(5, 7), (25, 5)]), bracket_pow(5)])));
    let inv_q2 = |c: i64| (c, qx(2, prod(vec![e(&[(65, 1), (25, 5), (5, -6)]), inv_f1_poly()])));
    // f_5^5 f_25^7 (8 q^5 + W)
    let three = |c: i64, w: QExpr| {
        (c, prod(vec![e(&[(5, 5), (25, 7)]), lin(vec![(8, QExpr::q(5)), (1, w)])]))
    };
    // 3 f_5 f_25^11 (8 q^10 + 2 X^2 + 11 q^5 X)
    let one = |c: i64| {
        (
            c,
            prod(vec![
                e(&[(5, 1), (25, 11)]),
                lin(vec![(8, QExpr::q(10)), (2, x56().pow(2)), (11, qx(5, x56()))]),
            ]),
        )
    };
    let stage_2_8 = lin(vec![term(3, 0, &f1_11), term(10, 1, &f1_5), term(11, 2, &f65_1)]);
    let stage_2_14 = lin(vec![term(12, 0, &f1_11), term(2, 1, &f1_5), term(10, 2, &f65_1)]);
    ProofChain {
        id: "2.16a".into(),
        section: "bipartitions-5-13".into(),
        start: eta(&[(5, 1), (13, 1), (1, -2)]),
        mode: Mode::Mod(13),
        default_order: 126_000,
        steps: vec![
            assert("2.2", eta(&f1_11)),
            sub("0.2"),
            assert("2.3/sub", lin(vec![b11(1)])),
            assert("2.3", prod(vec![e(&[(5, 1), (25, 11)]), bracket11_mod13()])),
            assert("2.3/grouped", prod(vec![e(&[(5, 1), (25, 11)]), bracket11_grouped(d5())])),
            sub("0.3"),
            assert("2.3/x", prod(vec![e(&[(5, 1), (25, 11)]), bracket11_grouped(x56())])),
            extract(1, 5),
            back(5),
            assert("2.4", lin(vec![term(2, 0, &f13_5), term(11, 1, &f1_7), term(8, 2, &f1_1)])),
            sub("0.2"),
            assert("2.5", lin(vec![s1_term(2), b7q(11), b1q2(8)])),
            extract(3, 5),
            assert(
                "2.6",
                lin(vec![term(11, 10, &[(325, 1), (5, -1)]), three(11, d5()), term(5, 0, &[(5, 11), (25, 1)])]),
            ),
            sub("0.3"),
            assert(
                "2.7",
                lin(vec![
                    term(3, 0, &[(5, 11), (25, 1)]),
                    term(10, 5, &[(5, 5), (25, 7)]),
                    term(11, 10, &[(325, 1), (5, -1)]),
                ]),
            ),
            back(5),
            assert("2.8", stage_2_8.clone()),
            sub("0.2"),
            sub("0.3a"),
            assert("2.9", lin(vec![b11(3), b5q(10), inv_q2(11)])),
            extract(1, 5),
            sub("0.3"),
            assert(
                "2.10",
                lin(vec![
                    one(3),
                    (10, prod(vec![e(&[(5, 7), (25, 5)]), x56()])),
                    term(3, 5, &[(65, 1), (25, 5), (5, -6)]),
                ]),
            ),
            back(5),
            assert("2.11", lin(vec![term(3, 0, &f13_5), term(10, 1, &f1_7), term(11, 2, &f1_1)])),
            sub("0.2"),
            assert("2.12", lin(vec![s1_term(3), b7q(10), b1q2(11)])),
            extract(3, 5),
            sub("0.3"),
            assert(
                "2.13",
                lin(vec![term(10, 10, &[(325, 1), (5, -1)]), three(10, x56()), term(2, 0, &[(5, 11), (25, 1)])]),
            ),
            back(5),
            assert("2.14", stage_2_14.clone()),
            combine(&[(8, "2.8"), (1, "2.2")]),
            assert("2.x", stage_2_14),
            sub("0.2"),
            sub("0.3a"),
            assert("2.17", lin(vec![b11(12), b5q(2), inv_q2(10)])),
            extract(1, 5),
            sub("0.3"),
            assert(
                "2.19",
                lin(vec![
                    one(12),
                    (2, prod(vec![e(&[(5, 7), (25, 5)]), x56()])),
                    term(11, 5, &[(65, 1), (25, 5), (5, -6)]),
                ]),
            ),
            back(5),
            assert("2.20", lin(vec![term(5, 2, &f1_1)])),
            sub("0.2"),
            assert("2.21", lin(vec![b1q2(5)])),
        ],
    }
}

fn chain_8117() -> ProofChain {
    let e = |f: &[(usize, i64)]| eta(f);
    ProofChain {
        id: "s8".into(),
        section: CUBIC_SECTION.into(),
        start: eta(&[(81, 1), (17, 1), (1, -2)]),
        mode: Mode::Mod(17),
        default_order: 5600,
        steps: vec![
            assert("7.2", e(&[(81, 1), (1, 15)])),
            sub("7.3"),
            assert("7.4/sub", prod(vec![e(&[(81, 1), (9, 15)]), cubic1().pow(5)])),
            assert("7.4", prod(vec![e(&[(81, 1), (9, 15)]), cubic5()])),
            extract(2, 3),
            back(3),
            assert("7.5", prod(vec![e(&[(27, 1), (3, 15)]), v_poly(5, 4)])),
            assert("7.5/cube", prod(vec![e(&[(27, 1), (3, 15)]), v_cube_plus(12)])),
            sub("7.6"),
            assert(
                "7.7/sub",
                prod(vec![e(&[(27, 1), (3, 15)]), lin(vec![(5, cube_rhs_76()), (12, QExpr::q(1))])]),
            ),
            assert("7.7", lin(vec![term(5, 0, &[(1, 12), (27, 1), (3, 3)]), term(11, 1, &[(27, 1), (3, 15)])])),
            sub("7.3"),
            assert(
                "7.8",
                lin(vec![
                    (5, prod(vec![e(&[(9, 12), (27, 1), (3, 3)]), cubic4()])),
                    term(11, 1, &[(27, 1), (3, 15)]),
                ]),
            ),
            extract(1, 3),
            back(3),
            assert(
                "7.9",
                lin(vec![
                    (5, prod(vec![e(&[(3, 12), (9, 1), (1, 3)]), v_poly(5, 5)])),
                    term(11, 0, &[(9, 1), (1, 15)]),
                ]),
            ),
            assert(
                "7.9/cube",
                lin(vec![
                    (5, prod(vec![e(&[(3, 12), (9, 1), (1, 3)]), v_cube_plus(13)])),
                    term(11, 0, &[(9, 1), (1, 15)]),
                ]),
            ),
            sub("7.6"),
            assert(
                "7.10/sub",
                lin(vec![
                    (
                        5,
                        prod(vec![
                            e(&[(3, 12), (9, 1), (1, 3)]),
                            lin(vec![(5, cube_rhs_76()), (13, QExpr::q(1))]),
                        ]),
                    ),
                    term(11, 0, &[(9, 1), (1, 15)]),
                ]),
            ),
            assert("7.10", lin(vec![term(2, 0, &[(9, 1), (1, 15)]), term(9, 1, &[(3, 12), (9, 1), (1, 3)])])),
            sub("7.3"),
            assert(
                "7.11",
                lin(vec![
                    (2, prod(vec![e(&[(9, 16)]), cubic5()])),
                    (9, prod(vec![e(&[(3, 12), (9, 4)]), qx(1, cubic1())])),
                ]),
            ),
            extract(2, 3),
            back(3),
            assert("7.12", lin(vec![(2, prod(vec![e(&[(3, 16)]), v_poly(5, 4)])), term(7, 0, &[(1, 12), (3, 4)])])),
            assert(
                "7.12/cube",
                lin(vec![(2, prod(vec![e(&[(3, 16)]), v_cube_plus(12)])), term(7, 0, &[(1, 12), (3, 4)])]),
            ),
            sub("7.6"),
            assert(
                "7.13/sub",
                lin(vec![
                    (2, prod(vec![e(&[(3, 16)]), lin(vec![(5, cube_rhs_76()), (12, QExpr::q(1))])])),
                    term(7, 0, &[(1, 12), (3, 4)]),
                ]),
            ),
            assert("7.13", lin(vec![term(5, 1, &[(3, 16)])])),
        ],
    }
}

const CUBIC_SECTION: &str = "bipartitions-81-17";

fn chain_b17() -> ProofChain {
    let e = |f: &[(usize, i64)]| eta(f);
    let x = [(2, 24), (1, -8)];
    let printed = lin(vec![term(1, 0, &[(2, 20), (1, -4), (4, -8)]), term(16, 1, &[(1, 4), (2, 4), (4, 8)])]);
    let corrected = lin(vec![term(1, 0, &[(2, 28), (1, -4), (4, -8)]), term(16, 1, &[(1, 4), (2, 4), (4, 8)])]);
    ProofChain {
        id: "s10".into(),
        section: CUBIC_SECTION.into(),
        start: eta(&[(17, 1), (1, -1)]),
        mode: Mode::Exact,
        default_order: 1700,
        steps: vec![
            ProofStep::ReduceMod(17),
            assert("7.16", e(&[(1, 16)])),
            extract(2, 4),
            back(4),
            assert("7.17", lin(vec![term(2, 0, &[(1, 16)]), term(9, 1, &x)])),
            combine(&[(2, "7.17"), (13, "7.16")]),
            assert("7.18", lin(vec![term(1, 1, &x)])),
            sub("b.inv-f1pow4"),
            assert("7.19", qx(1, prod(vec![e(&[(2, 24)]), inv_f1pow4_rhs().pow(2)]))),
            extract(0, 2),
            back(2),
            assert("7.20", lin(vec![term(8, 1, &[(2, 16)])])),
            combine(&[(1, "7.19")]),
            extract(1, 2),
            back(2),
            assert("7.21/corrected", corrected),
            ProofStep::Assert { label: "7.21".into(), expr: printed, suspect: true },
        ],
    }
}

fn chain_28() -> ProofChain {
    let e = |f: &[(usize, i64)]| eta(f);
    ProofChain {
        id: "x1".into(),
        section: "bipartitions-2-8".into(),
        start: eta(&[(2, 1), (8, 1), (1, -2)]),
        mode: Mode::Exact,
        default_order: 1700,
        steps: vec![
            sub("a.inv-f1sq"),
            assert("5.2", prod(vec![e(&[(2, 1), (8, 1)]), inv_f1sq_rhs()])),
            extract(1, 2),
            back(2),
            assert("5.3", lin(vec![term(2, 0, &[(2, 2), (8, 2), (1, -4)])])),
            sub("b.inv-f1pow4"),
            assert("5.4", lin(vec![(2, prod(vec![e(&[(2, 2), (8, 2)]), inv_f1pow4_rhs()]))])),
            extract(1, 2),
            back(2),
            assert("5.5", lin(vec![term(8, 0, &[(2, 2), (4, 6), (1, -8)])])),
            sub("b.inv-f1pow4"),
            assert("5.6/sub", lin(vec![(8, prod(vec![e(&[(2, 2), (4, 6)]), inv_f1pow4_rhs().pow(2)]))])),
            assert(
                "5.6",
                lin(vec![(
                    8,
                    prod(vec![
                        e(&[(2, 2), (4, 6)]),
                        lin(vec![
                            term(1, 0, &[(4, 28), (2, -28), (8, -8)]),
                            term(8, 1, &[(4, 16), (2, -24)]),
                            term(16, 2, &[(4, 4), (8, 8), (2, -20)]),
                        ]),
                    ]),
                )]),
            ),
            extract(1, 2),
            back(2),
            assert("5.7", lin(vec![term(64, 0, &[(2, 22), (1, -22)])])),
            ProofStep::ReduceMod(11),
            assert("5.7/mod", lin(vec![term(9, 0, &[(22, 2), (11, -2)])])),
        ],
    }
}

pub(super) fn chains() -> Vec<ProofChain> {
    vec![chain_37(), chain_95(), chain_511(), chain_513(), chain_8117(), chain_b17(), chain_28()]
}

pub(super) fn builtin() -> Registry {
    Registry { identities: identities(), chains: chains() }
}
