//! Expression trees over q-products and their evaluation to truncated series.
//!
//! Atoms are the monomial `q^e`, Pochhammer products `(q^a; q^m)_inf`, eta
//! factors `f_k = (q^k; q^k)_inf`, and the theta functions `phi`, `psi` and
//! `f(a, b)`. The composites `S = R(q^5)`, `u` and `v` are ordinary trees
//! built by [`QExpr::s`], [`QExpr::u`] and [`QExpr::v`].

mod eval;
mod text;

use std::fmt;

use thiserror::Error;

use crate::series::SeriesError;

pub use eval::{eval, theta_sum, Evaluator};
pub use text::{parse, parse_all, ParseError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub(crate) fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum QExpr {
    Const(i64),
    /// `q^e`.
    Q(usize),
    /// `(q^a; q^m)_inf` with `1 <= a <= m`.
    Pochhammer { a: usize, m: usize },
    /// `f_k = (q^k; q^k)_inf`.
    EtaF(usize),
    /// `phi(q^k)`.
    Phi(usize),
    /// `psi(q^k)`.
    Psi(usize),
    /// `f(sa q^ua, sb q^ub)`.
    Theta { sa: Sign, ua: usize, sb: Sign, ub: usize },
    Mul(Vec<QExpr>),
    Pow(Box<QExpr>, i64),
    Sum(Vec<(i64, QExpr)>),
    /// `e(q^k)`.
    Dilate(Box<QExpr>, usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QExprError {
    #[error("invalid atom: {0}")]
    InvalidAtom(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

impl QExpr {
    pub fn q(e: usize) -> Self {
        QExpr::Q(e)
    }

    pub fn poch(a: usize, m: usize) -> Self {
        QExpr::Pochhammer { a, m }
    }

    pub fn f(k: usize) -> Self {
        QExpr::EtaF(k)
    }

    pub fn theta(sa: Sign, ua: usize, sb: Sign, ub: usize) -> Self {
        QExpr::Theta { sa, ua, sb, ub }
    }

    pub fn pow(self, e: i64) -> Self {
        QExpr::Pow(Box::new(self), e)
    }

    pub fn dilate(self, k: usize) -> Self {
        QExpr::Dilate(Box::new(self), k)
    }

    pub fn product(factors: impl IntoIterator<Item = QExpr>) -> Self {
        QExpr::Mul(factors.into_iter().collect())
    }

    pub fn sum(terms: impl IntoIterator<Item = (i64, QExpr)>) -> Self {
        QExpr::Sum(terms.into_iter().collect())
    }

    /// `prod f_k^e` over the given `(k, e)` pairs.
    pub fn eta_quotient(factors: &[(usize, i64)]) -> Self {
        QExpr::product(factors.iter().map(|&(k, e)| {
            if e == 1 {
                QExpr::f(k)
            } else {
                QExpr::f(k).pow(e)
            }
        }))
    }

    /// `S = R(q^5) = (q^5; q^25)(q^20; q^25) / ((q^10; q^25)(q^15; q^25))`.
    pub fn s() -> Self {
        QExpr::product([
            QExpr::poch(5, 25),
            QExpr::poch(20, 25),
            QExpr::poch(10, 25).pow(-1),
            QExpr::poch(15, 25).pow(-1),
        ])
    }

    /// `S_1 = S(q^13)`.
    pub fn s1() -> Self {
        QExpr::s().dilate(13)
    }

    /// `u = f_3 f_18^3 / (f_6 f_9^3)`.
    pub fn u() -> Self {
        QExpr::eta_quotient(&[(3, 1), (18, 3), (6, -1), (9, -3)])
    }

    /// `v = f_1 f_6^3 / (f_2 f_3^3)`.
    pub fn v() -> Self {
        QExpr::eta_quotient(&[(1, 1), (6, 3), (2, -1), (3, -3)])
    }

    /// Checks atom parameters throughout the tree.
    pub fn validate(&self) -> Result<(), QExprError> {
        match self {
            QExpr::Const(_) | QExpr::Q(_) => Ok(()),
            QExpr::Pochhammer { a, m } => {
                if *a >= 1 && a <= m {
                    Ok(())
                } else {
                    Err(QExprError::InvalidAtom(format!("(q^{a}; q^{m}) needs 1 <= a <= m")))
                }
            }
            QExpr::EtaF(k) | QExpr::Phi(k) | QExpr::Psi(k) => {
                if *k >= 1 {
                    Ok(())
                } else {
                    Err(QExprError::InvalidAtom(format!("{self} needs a positive index")))
                }
            }
            QExpr::Theta { ua, ub, .. } => {
                if *ua >= 1 && *ub >= 1 {
                    Ok(())
                } else {
                    Err(QExprError::InvalidAtom(format!("{self} needs positive exponents")))
                }
            }
            QExpr::Mul(children) => children.iter().try_for_each(QExpr::validate),
            QExpr::Sum(terms) => terms.iter().try_for_each(|(_, e)| e.validate()),
            QExpr::Pow(child, _) => child.validate(),
            QExpr::Dilate(child, k) => {
                if *k == 0 {
                    return Err(QExprError::InvalidAtom("dilation by 0".into()));
                }
                child.validate()
            }
        }
    }
}

impl fmt::Display for QExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        text::write_expr(self, f)
    }
}
