//! Truncated power series in `q` over the exact integers or a residue ring.
//!
//! A [`Series`] always carries its truncation order: coefficients of
//! `q^0 ..= q^order` are known and everything above is unknown. Binary
//! operations truncate to the smaller of the two orders.

mod arith;
mod dissect;
mod kernel;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use kernel::{inverse_mod, mul_mod_u64};

/// Coefficient ring: modulus 0 means the exact integers, `M >= 2` means `Z/M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct CoeffRing {
    modulus: u64,
}

impl CoeffRing {
    pub const EXACT: CoeffRing = CoeffRing { modulus: 0 };

    pub fn new(modulus: u64) -> Result<Self, SeriesError> {
        if modulus == 1 {
            return Err(SeriesError::InvalidModulus(modulus));
        }
        Ok(Self { modulus })
    }

    pub fn exact() -> Self {
        Self::EXACT
    }

    pub fn modular(modulus: u64) -> Result<Self, SeriesError> {
        if modulus < 2 {
            return Err(SeriesError::InvalidModulus(modulus));
        }
        Ok(Self { modulus })
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn is_exact(self) -> bool {
        self.modulus == 0
    }

    /// Reduces an integer into the ring's canonical representative.
    pub fn reduce(self, value: &BigInt) -> BigInt {
        if self.is_exact() {
            value.clone()
        } else {
            value.mod_floor(&BigInt::from(self.modulus))
        }
    }

    pub(crate) fn residue_of(self, value: &BigInt) -> u64 {
        debug_assert!(!self.is_exact());
        value
            .mod_floor(&BigInt::from(self.modulus))
            .to_u64()
            .expect("residue fits in u64")
    }

    pub(crate) fn residue_of_i64(self, value: i64) -> u64 {
        debug_assert!(!self.is_exact());
        (value as i128).rem_euclid(self.modulus as i128) as u64
    }
}

impl TryFrom<u64> for CoeffRing {
    type Error = SeriesError;

    fn try_from(value: u64) -> Result<Self, Self::Error> {
        CoeffRing::new(value)
    }
}

impl From<CoeffRing> for u64 {
    fn from(ring: CoeffRing) -> u64 {
        ring.modulus
    }
}

impl fmt::Display for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "Z")
        } else {
            write!(f, "Z/{}", self.modulus)
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("invalid modulus {0}: must be 0 (exact) or at least 2")]
    InvalidModulus(u64),
    #[error("a series needs at least one coefficient")]
    Empty,
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(CoeffRing, CoeffRing),
    #[error("constant term {constant} is not a unit in {ring}")]
    NonUnit { constant: BigInt, ring: CoeffRing },
    #[error("cannot reduce a series over {from} to {to}")]
    IncompatibleReduction { from: CoeffRing, to: CoeffRing },
    #[error("step must be positive")]
    ZeroStep,
    #[error("residue {residue} is not in [0, {step})")]
    ResidueOutOfRange { residue: usize, step: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Coeffs {
    Int(Vec<BigInt>),
    Mod(Vec<u64>),
}

impl Coeffs {
    fn len(&self) -> usize {
        match self {
            Coeffs::Int(v) => v.len(),
            Coeffs::Mod(v) => v.len(),
        }
    }
}

/// A power series known through `q^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    ring: CoeffRing,
    coeffs: Coeffs,
}

/// First disagreement between two series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub index: usize,
    pub left: BigInt,
    pub right: BigInt,
}

/// Outcome of [`eq_to_order`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Agreement {
    /// Highest exponent compared.
    pub checked_through: usize,
    pub mismatch: Option<Mismatch>,
}

impl Agreement {
    pub fn is_equal(&self) -> bool {
        self.mismatch.is_none()
    }
}

impl Series {
    pub(crate) fn from_parts(ring: CoeffRing, coeffs: Coeffs) -> Self {
        debug_assert!(coeffs.len() > 0);
        debug_assert_eq!(matches!(coeffs, Coeffs::Int(_)), ring.is_exact());
        Self { ring, coeffs }
    }

    /// Builds a series from integer coefficients, reducing them into `ring`.
    pub fn new(ring: CoeffRing, coeffs: Vec<BigInt>) -> Result<Self, SeriesError> {
        if coeffs.is_empty() {
            return Err(SeriesError::Empty);
        }
        let coeffs = if ring.is_exact() {
            Coeffs::Int(coeffs)
        } else {
            Coeffs::Mod(coeffs.iter().map(|c| ring.residue_of(c)).collect())
        };
        Ok(Self { ring, coeffs })
    }

    pub fn from_i64s(ring: CoeffRing, coeffs: &[i64]) -> Result<Self, SeriesError> {
        if coeffs.is_empty() {
            return Err(SeriesError::Empty);
        }
        let coeffs = if ring.is_exact() {
            Coeffs::Int(coeffs.iter().map(|&c| BigInt::from(c)).collect())
        } else {
            Coeffs::Mod(coeffs.iter().map(|&c| ring.residue_of_i64(c)).collect())
        };
        Ok(Self { ring, coeffs })
    }

    /// Residues must already lie in `[0, M)`; larger values are reduced.
    pub fn from_residues(ring: CoeffRing, residues: Vec<u64>) -> Result<Self, SeriesError> {
        if ring.is_exact() {
            return Err(SeriesError::InvalidModulus(0));
        }
        if residues.is_empty() {
            return Err(SeriesError::Empty);
        }
        let m = ring.modulus();
        let residues = residues.into_iter().map(|r| r % m).collect();
        Ok(Self { ring, coeffs: Coeffs::Mod(residues) })
    }

    pub fn zero(ring: CoeffRing, order: usize) -> Self {
        let coeffs = if ring.is_exact() {
            Coeffs::Int(vec![BigInt::zero(); order + 1])
        } else {
            Coeffs::Mod(vec![0; order + 1])
        };
        Self { ring, coeffs }
    }

    pub fn one(ring: CoeffRing, order: usize) -> Self {
        Self::constant(ring, 1, order)
    }

    pub fn constant(ring: CoeffRing, value: i64, order: usize) -> Self {
        Self::monomial(ring, 0, value, order)
    }

    /// `value * q^exponent`, which is the zero series when `exponent > order`.
    pub fn monomial(ring: CoeffRing, exponent: usize, value: i64, order: usize) -> Self {
        let mut s = Self::zero(ring, order);
        if exponent <= order {
            match &mut s.coeffs {
                Coeffs::Int(v) => v[exponent] = BigInt::from(value),
                Coeffs::Mod(v) => v[exponent] = ring.residue_of_i64(value),
            }
        }
        s
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `q^n` as an integer (the canonical residue in `Z/M`).
    ///
    /// Panics if `n > order`.
    pub fn coeff(&self, n: usize) -> BigInt {
        match &self.coeffs {
            Coeffs::Int(v) => v[n].clone(),
            Coeffs::Mod(v) => BigInt::from(v[n]),
        }
    }

    pub fn is_zero_at(&self, n: usize) -> bool {
        match &self.coeffs {
            Coeffs::Int(v) => v[n].is_zero(),
            Coeffs::Mod(v) => v[n] == 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        (0..=self.order()).all(|n| self.is_zero_at(n))
    }

    pub fn coeffs(&self) -> Vec<BigInt> {
        (0..=self.order()).map(|n| self.coeff(n)).collect()
    }

    /// Residues when the ring is modular.
    pub fn residues(&self) -> Option<&[u64]> {
        match &self.coeffs {
            Coeffs::Mod(v) => Some(v),
            Coeffs::Int(_) => None,
        }
    }

    /// Coefficients as `i64`, if every one fits.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        match &self.coeffs {
            Coeffs::Int(v) => v.iter().map(|c| c.to_i64()).collect(),
            Coeffs::Mod(v) => v.iter().map(|&c| i64::try_from(c).ok()).collect(),
        }
    }

    /// Number of nonzero coefficients.
    pub fn nnz(&self) -> usize {
        match &self.coeffs {
            Coeffs::Int(v) => v.iter().filter(|c| !c.is_zero()).count(),
            Coeffs::Mod(v) => v.iter().filter(|&&c| c != 0).count(),
        }
    }

    /// Keeps coefficients through `q^order` (no-op when already shorter).
    pub fn truncate(&self, order: usize) -> Series {
        if order >= self.order() {
            return self.clone();
        }
        let coeffs = match &self.coeffs {
            Coeffs::Int(v) => Coeffs::Int(v[..=order].to_vec()),
            Coeffs::Mod(v) => Coeffs::Mod(v[..=order].to_vec()),
        };
        Series { ring: self.ring, coeffs }
    }

    pub(crate) fn constant_is_unit(&self) -> bool {
        match &self.coeffs {
            Coeffs::Int(v) => v[0].abs().is_one(),
            Coeffs::Mod(v) => num_integer::gcd(v[0], self.ring.modulus()) == 1,
        }
    }

    pub(crate) fn parts(&self) -> &Coeffs {
        &self.coeffs
    }

    /// Multiplies in place by `1 + sign * q^t` (`sign` is `1` or `-1`).
    pub(crate) fn mul_binomial(&mut self, sign: i8, t: usize) {
        let len = self.order() + 1;
        if t == 0 || t >= len {
            return;
        }
        match &mut self.coeffs {
            Coeffs::Int(v) => {
                for n in (t..len).rev() {
                    let (lo, hi) = v.split_at_mut(n);
                    if sign > 0 {
                        hi[0] += &lo[n - t];
                    } else {
                        hi[0] -= &lo[n - t];
                    }
                }
            }
            Coeffs::Mod(v) => {
                let m = self.ring.modulus();
                for n in (t..len).rev() {
                    let x = v[n - t];
                    v[n] = if sign > 0 { (v[n] + x) % m } else { (v[n] + m - x) % m };
                }
            }
        }
    }

    /// Divides in place by `1 + sign * q^t`.
    pub(crate) fn div_binomial(&mut self, sign: i8, t: usize) {
        let len = self.order() + 1;
        if t == 0 || t >= len {
            return;
        }
        match &mut self.coeffs {
            Coeffs::Int(v) => {
                for n in t..len {
                    let (lo, hi) = v.split_at_mut(n);
                    if sign > 0 {
                        hi[0] -= &lo[n - t];
                    } else {
                        hi[0] += &lo[n - t];
                    }
                }
            }
            Coeffs::Mod(v) => {
                let m = self.ring.modulus();
                for n in t..len {
                    let x = v[n - t];
                    v[n] = if sign > 0 { (v[n] + m - x) % m } else { (v[n] + x) % m };
                }
            }
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for n in 0..=self.order() {
            if self.is_zero_at(n) {
                continue;
            }
            let c = self.coeff(n);
            let (neg, mag) = (c.is_negative(), c.abs());
            if wrote {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            } else if neg {
                write!(f, "-")?;
            }
            match (n, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}q")?,
                (_, true) => write!(f, "q^{n}")?,
                (_, false) => write!(f, "{mag}q^{n}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}

pub(crate) fn check_same_ring(a: &Series, b: &Series) -> Result<CoeffRing, SeriesError> {
    if a.ring != b.ring {
        return Err(SeriesError::RingMismatch(a.ring, b.ring));
    }
    Ok(a.ring)
}

/// Coefficientwise reduction into `Z/modulus`.
///
/// Accepts exact series, and modular series whose modulus is a multiple of
/// the target (the reduction is then a ring homomorphism).
pub fn reduce_mod(a: &Series, modulus: u64) -> Result<Series, SeriesError> {
    let target = CoeffRing::modular(modulus)?;
    match &a.coeffs {
        Coeffs::Int(v) => Ok(Series {
            ring: target,
            coeffs: Coeffs::Mod(v.iter().map(|c| target.residue_of(c)).collect()),
        }),
        Coeffs::Mod(v) => {
            if a.ring.modulus() % modulus != 0 {
                return Err(SeriesError::IncompatibleReduction { from: a.ring, to: target });
            }
            Ok(Series {
                ring: target,
                coeffs: Coeffs::Mod(v.iter().map(|&c| c % modulus).collect()),
            })
        }
    }
}

/// Compares coefficients `0..=min(order, a.order, b.order)` and reports the
/// smallest exponent where they differ.
pub fn eq_to_order(a: &Series, b: &Series, order: usize) -> Result<Agreement, SeriesError> {
    check_same_ring(a, b)?;
    let through = order.min(a.order()).min(b.order());
    let first = match (&a.coeffs, &b.coeffs) {
        (Coeffs::Int(x), Coeffs::Int(y)) => (0..=through).find(|&n| x[n] != y[n]),
        (Coeffs::Mod(x), Coeffs::Mod(y)) => (0..=through).find(|&n| x[n] != y[n]),
        _ => unreachable!("ring check guarantees matching storage"),
    };
    Ok(Agreement {
        checked_through: through,
        mismatch: first.map(|index| Mismatch { index, left: a.coeff(index), right: b.coeff(index) }),
    })
}

pub use arith::{add, div, invert, mul, neg, pow, scalar_mul, scalar_mul_big, sub, sum_scaled};
pub use dissect::{compress, dilate, extract, shift, stride};
pub(crate) use dissect::dilate_padded;

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &Series) -> Vec<i64> {
        s.to_i64s().unwrap()
    }

    #[test]
    fn ring_validation() {
        assert!(CoeffRing::new(1).is_err());
        assert!(CoeffRing::modular(0).is_err());
        assert!(CoeffRing::new(0).unwrap().is_exact());
        assert_eq!(CoeffRing::modular(7).unwrap().to_string(), "Z/7");
    }

    #[test]
    fn empty_series_rejected() {
        assert_eq!(Series::from_i64s(CoeffRing::EXACT, &[]), Err(SeriesError::Empty));
    }

    #[test]
    fn residues_are_canonical() {
        let r = CoeffRing::modular(7).unwrap();
        let s = Series::from_i64s(r, &[-1, 8, 14]).unwrap();
        assert_eq!(s.residues().unwrap(), &[6, 1, 0]);
    }

    #[test]
    fn reduce_mod_of_exact_and_modular() {
        let s = Series::from_i64s(CoeffRing::EXACT, &[5, -3, 22]).unwrap();
        assert_eq!(ints(&reduce_mod(&s, 7).unwrap()), vec![5, 4, 1]);
        let m21 = reduce_mod(&s, 21).unwrap();
        assert_eq!(ints(&reduce_mod(&m21, 7).unwrap()), vec![5, 4, 1]);
        assert!(reduce_mod(&m21, 5).is_err());
    }

    #[test]
    fn eq_to_order_reports_first_mismatch() {
        let a = Series::one(CoeffRing::EXACT, 8);
        assert!(eq_to_order(&a, &a, 8).unwrap().is_equal());
        let b = add(&a, &Series::monomial(CoeffRing::EXACT, 8, 1, 8)).unwrap();
        let agreement = eq_to_order(&a, &b, 8).unwrap();
        let m = agreement.mismatch.unwrap();
        assert_eq!((m.index, m.left, m.right), (8, BigInt::zero(), BigInt::one()));
    }

    #[test]
    fn display_is_readable() {
        let s = Series::from_i64s(CoeffRing::EXACT, &[1, -1, 0, 2]).unwrap();
        assert_eq!(s.to_string(), "1 - q + 2q^3 + O(q^4)");
    }
}
