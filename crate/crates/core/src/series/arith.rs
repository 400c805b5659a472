use num_bigint::BigInt;
use num_traits::Zero;

use super::dissect::{compress, dilate_padded, stride};
use super::kernel::{div_int, div_mod, inverse_mod, mul_int, mul_mod};
use super::{check_same_ring, Coeffs, Series, SeriesError};

pub fn add(a: &Series, b: &Series) -> Result<Series, SeriesError> {
    zip_with(a, b, |x, y| x + y, |x, y, m| (x + y) % m)
}

pub fn sub(a: &Series, b: &Series) -> Result<Series, SeriesError> {
    zip_with(a, b, |x, y| x - y, |x, y, m| (x + m - y) % m)
}

fn zip_with(
    a: &Series,
    b: &Series,
    int_op: impl Fn(&BigInt, &BigInt) -> BigInt,
    mod_op: impl Fn(u64, u64, u64) -> u64,
) -> Result<Series, SeriesError> {
    let ring = check_same_ring(a, b)?;
    let len = a.order().min(b.order()) + 1;
    let coeffs = match (&a.coeffs, &b.coeffs) {
        (Coeffs::Int(x), Coeffs::Int(y)) => Coeffs::Int((0..len).map(|n| int_op(&x[n], &y[n])).collect()),
        (Coeffs::Mod(x), Coeffs::Mod(y)) => {
            let m = ring.modulus();
            Coeffs::Mod((0..len).map(|n| mod_op(x[n], y[n], m)).collect())
        }
        _ => unreachable!(),
    };
    Ok(Series::from_parts(ring, coeffs))
}

pub fn neg(a: &Series) -> Series {
    scalar_mul(a, -1)
}

pub fn scalar_mul(a: &Series, c: i64) -> Series {
    scalar_mul_big(a, &BigInt::from(c))
}

pub fn scalar_mul_big(a: &Series, c: &BigInt) -> Series {
    let coeffs = match &a.coeffs {
        Coeffs::Int(v) => Coeffs::Int(v.iter().map(|x| x * c).collect()),
        Coeffs::Mod(v) => {
            let m = a.ring.modulus();
            let r = a.ring.residue_of(c);
            Coeffs::Mod(v.iter().map(|&x| super::mul_mod_u64(x, r, m)).collect())
        }
    };
    Series::from_parts(a.ring, coeffs)
}

/// `sum c_i * s_i`, truncated at the smallest input order.
pub fn sum_scaled(ring: super::CoeffRing, terms: &[(BigInt, &Series)], order: usize) -> Result<Series, SeriesError> {
    let len = terms.iter().map(|(_, s)| s.order()).fold(order, usize::min) + 1;
    let mut acc = Series::zero(ring, len - 1);
    for (c, s) in terms {
        if s.ring() != ring {
            return Err(SeriesError::RingMismatch(ring, s.ring()));
        }
        if c.is_zero() {
            continue;
        }
        acc = add(&acc, &scalar_mul_big(&s.truncate(len - 1), c))?;
    }
    Ok(acc)
}

/// Shared support stride of two series; 0 when both are constants.
fn common_stride(a: &Series, b: &Series) -> usize {
    num_integer::gcd(stride(a), stride(b))
}

/// Cauchy product truncated at `min(a.order, b.order)`.
///
/// Zero coefficients of the sparser factor are skipped, so multiplying by a
/// pentagonal-support factor costs `O(N * sqrt(N))`. Factors that are both
/// series in `q^g` are multiplied at order `N/g`.
pub fn mul(a: &Series, b: &Series) -> Result<Series, SeriesError> {
    let ring = check_same_ring(a, b)?;
    let order = a.order().min(b.order());
    let g = common_stride(a, b);
    if g >= 2 && order >= g {
        let prod = mul(&compress(&a.truncate(order), g)?, &compress(&b.truncate(order), g)?)?;
        return Ok(dilate_padded(&prod, g, order));
    }
    let len = order + 1;
    let (sparse, dense) = if a.nnz() <= b.nnz() { (a, b) } else { (b, a) };
    let coeffs = match (&sparse.coeffs, &dense.coeffs) {
        (Coeffs::Int(x), Coeffs::Int(y)) => Coeffs::Int(mul_int(x, y, len)),
        (Coeffs::Mod(x), Coeffs::Mod(y)) => Coeffs::Mod(mul_mod(x, y, ring.modulus(), len)),
        _ => unreachable!(),
    };
    Ok(Series::from_parts(ring, coeffs))
}

fn non_unit(a: &Series) -> SeriesError {
    SeriesError::NonUnit { constant: a.coeff(0), ring: a.ring() }
}

/// `a / b` by the coefficient recurrence; `b` needs a unit constant term.
pub fn div(a: &Series, b: &Series) -> Result<Series, SeriesError> {
    let ring = check_same_ring(a, b)?;
    if !b.constant_is_unit() {
        return Err(non_unit(b));
    }
    let order = a.order().min(b.order());
    let g = common_stride(a, b);
    if g >= 2 && order >= g {
        let q = div(&compress(&a.truncate(order), g)?, &compress(&b.truncate(order), g)?)?;
        return Ok(dilate_padded(&q, g, order));
    }
    let len = order + 1;
    let coeffs = match (&a.coeffs, &b.coeffs) {
        (Coeffs::Int(x), Coeffs::Int(y)) => Coeffs::Int(div_int(x, y, len)),
        (Coeffs::Mod(x), Coeffs::Mod(y)) => {
            let m = ring.modulus();
            let inv = inverse_mod(y[0], m).ok_or_else(|| non_unit(b))?;
            Coeffs::Mod(div_mod(x, y, inv, m, len))
        }
        _ => unreachable!(),
    };
    Ok(Series::from_parts(ring, coeffs))
}

/// Multiplicative inverse; the constant term must be a unit
/// (`±1` over the integers).
pub fn invert(a: &Series) -> Result<Series, SeriesError> {
    div(&Series::one(a.ring(), a.order()), a)
}

/// `a^e` for any integer `e`; negative exponents need a unit constant term.
///
/// Chooses between repeated sparse multiplication (cheap for pentagonal and
/// theta-like supports) and binary powering of a dense series.
pub fn pow(a: &Series, e: i64) -> Result<Series, SeriesError> {
    let order = a.order();
    if e == 0 {
        return Ok(Series::one(a.ring(), order));
    }
    if e < 0 && !a.constant_is_unit() {
        return Err(non_unit(a));
    }
    if e == 1 {
        return Ok(a.clone());
    }
    let g = stride(a);
    if g >= 2 && order >= g {
        let p = pow(&compress(a, g)?, e)?;
        return Ok(dilate_padded(&p, g, order));
    }
    let k = e.unsigned_abs();
    let n = (order + 1) as f64;
    let nnz = a.nnz().max(1) as f64;
    let repeated_cost = k as f64 * n * nnz;
    let bits = 64 - k.leading_zeros() as u64 + k.count_ones() as u64;
    let squaring_cost = bits as f64 * n * n / 2.0 + if e < 0 { n * nnz } else { 0.0 };
    if repeated_cost <= squaring_cost {
        let mut acc = Series::one(a.ring(), order);
        for _ in 0..k {
            acc = if e > 0 { mul(&acc, a)? } else { div(&acc, a)? };
        }
        return Ok(acc);
    }
    let base = if e > 0 { a.clone() } else { invert(a)? };
    binary_pow(&base, k)
}

fn binary_pow(base: &Series, mut k: u64) -> Result<Series, SeriesError> {
    let mut result: Option<Series> = None;
    let mut sq = base.clone();
    loop {
        if k & 1 == 1 {
            result = Some(match result {
                None => sq.clone(),
                Some(r) => mul(&r, &sq)?,
            });
        }
        k >>= 1;
        if k == 0 {
            break;
        }
        sq = mul(&sq, &sq)?;
    }
    Ok(result.expect("k >= 1"))
}
