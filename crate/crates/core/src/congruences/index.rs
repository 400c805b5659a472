//! Affine index maps `n ↦ scale·n + offset` whose coefficients are integer
//! expressions in the family parameters `m` and `k`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Params {
    pub m: u32,
    pub k: u32,
}

impl Params {
    pub fn m(m: u32) -> Self {
        Params { m, k: 0 }
    }

    pub fn mk(m: u32, k: u32) -> Self {
        Params { m, k }
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m={},k={}", self.m, self.k)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IndexError {
    #[error("{0} is not divisible by {1}")]
    Inexact(i128, i128),
    #[error("negative exponent {0}")]
    NegativeExponent(i128),
    #[error("arithmetic overflow")]
    Overflow,
    #[error("{0} is not a valid {1}")]
    OutOfRange(i128, &'static str),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IExpr {
    Int(i128),
    M,
    K,
    Pow(i128, Box<IExpr>),
    Add(Vec<IExpr>),
    Mul(Vec<IExpr>),
    /// Exact division; an inexact quotient is an error.
    Div(Box<IExpr>, i128),
}

pub fn int(c: i128) -> IExpr {
    IExpr::Int(c)
}

pub fn pow(base: i128, e: IExpr) -> IExpr {
    IExpr::Pow(base, Box::new(e))
}

pub fn add(terms: impl IntoIterator<Item = IExpr>) -> IExpr {
    IExpr::Add(terms.into_iter().collect())
}

pub fn mul(factors: impl IntoIterator<Item = IExpr>) -> IExpr {
    IExpr::Mul(factors.into_iter().collect())
}

pub fn div(e: IExpr, d: i128) -> IExpr {
    IExpr::Div(Box::new(e), d)
}

fn lin(a: i128, x: IExpr, b: i128) -> IExpr {
    let ax = if a == 1 { x } else { mul([int(a), x]) };
    if b == 0 {
        ax
    } else {
        add([ax, int(b)])
    }
}

/// `a·m + b`.
pub fn lin_m(a: i128, b: i128) -> IExpr {
    lin(a, IExpr::M, b)
}

/// `a·k + b`.
pub fn lin_k(a: i128, b: i128) -> IExpr {
    lin(a, IExpr::K, b)
}

impl IExpr {
    pub fn eval(&self, p: Params) -> Result<i128, IndexError> {
        match self {
            IExpr::Int(c) => Ok(*c),
            IExpr::M => Ok(p.m as i128),
            IExpr::K => Ok(p.k as i128),
            IExpr::Pow(b, e) => {
                let e = e.eval(p)?;
                if e < 0 {
                    return Err(IndexError::NegativeExponent(e));
                }
                let e = u32::try_from(e).map_err(|_| IndexError::Overflow)?;
                b.checked_pow(e).ok_or(IndexError::Overflow)
            }
            IExpr::Add(ts) => ts.iter().try_fold(0i128, |acc, t| acc.checked_add(t.eval(p)?).ok_or(IndexError::Overflow)),
            IExpr::Mul(fs) => fs.iter().try_fold(1i128, |acc, t| acc.checked_mul(t.eval(p)?).ok_or(IndexError::Overflow)),
            IExpr::Div(e, d) => {
                let v = e.eval(p)?;
                if v % d != 0 {
                    return Err(IndexError::Inexact(v, *d));
                }
                Ok(v / d)
            }
        }
    }

    fn is_atom(&self) -> bool {
        matches!(self, IExpr::Int(c) if *c >= 0) || matches!(self, IExpr::M | IExpr::K | IExpr::Pow(..))
    }
}

impl fmt::Display for IExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |e: &IExpr, f: &mut fmt::Formatter<'_>| {
            if e.is_atom() {
                write!(f, "{e}")
            } else {
                write!(f, "({e})")
            }
        };
        match self {
            IExpr::Int(c) => write!(f, "{c}"),
            IExpr::M => f.write_str("m"),
            IExpr::K => f.write_str("k"),
            IExpr::Pow(b, e) => match **e {
                IExpr::Int(_) | IExpr::M | IExpr::K => write!(f, "{b}^{e}"),
                _ => write!(f, "{b}^({e})"),
            },
            IExpr::Add(ts) => {
                for (i, t) in ts.iter().enumerate() {
                    match (i, t) {
                        (0, _) => write!(f, "{t}")?,
                        (_, IExpr::Int(c)) if *c < 0 => write!(f, " - {}", -c)?,
                        _ => write!(f, " + {t}")?,
                    }
                }
                Ok(())
            }
            IExpr::Mul(fs) => {
                for (i, t) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    wrap(t, f)?;
                }
                Ok(())
            }
            IExpr::Div(e, d) => {
                wrap(e, f)?;
                write!(f, "/{d}")
            }
        }
    }
}

/// Concrete map `n ↦ scale·n + offset`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Progression {
    pub scale: u64,
    pub offset: u64,
}

impl Progression {
    pub const IDENTITY: Progression = Progression { scale: 1, offset: 0 };

    pub fn new(scale: u64, offset: u64) -> Self {
        Progression { scale, offset }
    }

    pub fn at(&self, n: u64) -> Option<u64> {
        self.scale.checked_mul(n)?.checked_add(self.offset)
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &Progression) -> Option<Progression> {
        Some(Progression {
            scale: self.scale.checked_mul(inner.scale)?,
            offset: self.scale.checked_mul(inner.offset)?.checked_add(self.offset)?,
        })
    }
}

impl fmt::Display for Progression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}n+{}", self.scale, self.offset)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Affine {
    pub scale: IExpr,
    pub offset: IExpr,
}

impl Affine {
    pub fn new(scale: IExpr, offset: IExpr) -> Self {
        Affine { scale, offset }
    }

    /// Constant map `n ↦ a·n + b`.
    pub fn fixed(a: i128, b: i128) -> Self {
        Affine { scale: int(a), offset: int(b) }
    }

    pub fn identity() -> Self {
        Affine::fixed(1, 0)
    }

    pub fn at(&self, p: Params) -> Result<Progression, IndexError> {
        let s = self.scale.eval(p)?;
        let o = self.offset.eval(p)?;
        let scale = u64::try_from(s).ok().filter(|&s| s >= 1).ok_or(IndexError::OutOfRange(s, "scale"))?;
        let offset = u64::try_from(o).map_err(|_| IndexError::OutOfRange(o, "offset"))?;
        Ok(Progression { scale, offset })
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let scale = match &self.scale {
            IExpr::Int(1) => "n".to_string(),
            s if s.is_atom() => format!("{s}*n"),
            s => format!("({s})*n"),
        };
        match &self.offset {
            IExpr::Int(0) => f.write_str(&scale),
            o => write!(f, "{scale} + {o}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluates_paper_style_offsets() {
        // (4^{7m} - 1)/3
        let off = div(add([pow(4, mul([int(7), IExpr::M])), int(-1)]), 3);
        assert_eq!(off.eval(Params::m(0)).unwrap(), 0);
        assert_eq!(off.eval(Params::m(1)).unwrap(), 5461);
        // ((2k+1) 5^{4m+3} - 1)/2 at k = 4, m = 0
        let off = div(add([mul([lin_k(2, 1), pow(5, lin_m(4, 3))]), int(-1)]), 2);
        assert_eq!(off.eval(Params::mk(0, 4)).unwrap(), 562);
    }

    #[test]
    fn reports_inexact_and_negative() {
        assert_eq!(div(int(7), 2).eval(Params::default()), Err(IndexError::Inexact(7, 2)));
        assert_eq!(pow(4, lin_m(9, -1)).eval(Params::m(0)), Err(IndexError::NegativeExponent(-1)));
        assert_eq!(pow(5, int(60)).eval(Params::default()), Err(IndexError::Overflow));
        assert!(Affine::fixed(1, -3).at(Params::default()).is_err());
    }

    #[test]
    fn composition() {
        let outer = Progression::new(16, 5);
        let inner = Progression::new(4, 1);
        let c = outer.after(&inner).unwrap();
        assert_eq!(c, Progression::new(64, 21));
        for n in 0..10 {
            assert_eq!(c.at(n), outer.at(inner.at(n).unwrap()));
        }
    }

    #[test]
    fn display() {
        let a = Affine::new(pow(4, mul([int(7), IExpr::M])), div(add([pow(4, mul([int(7), IExpr::M])), int(-1)]), 3));
        assert_eq!(a.to_string(), "4^(7*m)*n + (4^(7*m) - 1)/3");
        assert_eq!(Affine::fixed(16, 5).to_string(), "16*n + 5");
        assert_eq!(Affine::identity().to_string(), "n");
        assert_eq!(lin_m(1, 0), IExpr::M);
    }
}
