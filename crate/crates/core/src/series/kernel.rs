//! Inner loops for residue and big-integer coefficient vectors.
//!
//! Products are accumulated lazily in `u64` whenever `(M-1)^2` times the
//! number of summands cannot overflow; otherwise every step is reduced
//! through `u128`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[inline]
pub fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Inverse of `a` modulo `m`, when `gcd(a, m) = 1`.
pub fn inverse_mod(a: u64, m: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

fn lazy_fits(m: u64, terms: usize) -> bool {
    let sq = (m as u128 - 1) * (m as u128 - 1);
    sq.saturating_mul(terms.max(1) as u128) <= u64::MAX as u128
}

fn nonzeros_mod(v: &[u64]) -> Vec<(usize, u64)> {
    v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c)).collect()
}

/// Truncated product `a*b` through index `len-1`; iterates the nonzero
/// entries of `a`, so `a` should be the sparser operand.
pub(super) fn mul_mod(a: &[u64], b: &[u64], m: u64, len: usize) -> Vec<u64> {
    let nz: Vec<(usize, u64)> = nonzeros_mod(&a[..len]);
    if lazy_fits(m, nz.len()) {
        let mut acc = vec![0u64; len];
        for &(i, ai) in &nz {
            let span = len - i;
            for (c, &bj) in acc[i..].iter_mut().zip(&b[..span]) {
                *c += ai * bj;
            }
        }
        for c in &mut acc {
            *c %= m;
        }
        acc
    } else {
        let mut acc = vec![0u64; len];
        for &(i, ai) in &nz {
            let span = len - i;
            for (c, &bj) in acc[i..].iter_mut().zip(&b[..span]) {
                let t = (*c as u128 + ai as u128 * bj as u128) % m as u128;
                *c = t as u64;
            }
        }
        acc
    }
}

/// Solves `b * c = a` for `c` by the coefficient recurrence. The caller
/// guarantees `b[0]` is invertible with inverse `b0_inv`.
pub(super) fn div_mod(a: &[u64], b: &[u64], b0_inv: u64, m: u64, len: usize) -> Vec<u64> {
    let mut c = vec![0u64; len];
    let nz: Vec<(usize, u64)> = nonzeros_mod(&b[1..len]).into_iter().map(|(j, v)| (j + 1, v)).collect();
    let dense = nz.len() * 4 > len;
    let lazy = lazy_fits(m, nz.len() + 1);
    for n in 0..len {
        let acc = if dense {
            // c[n] depends on b[1..=n] against c[n-1..=0]
            let upto = n.min(len - 1);
            if lazy {
                let mut s = 0u64;
                for (bj, cj) in b[1..=upto].iter().zip(c[..n].iter().rev()) {
                    s += bj * cj;
                }
                s % m
            } else {
                let mut s = 0u64;
                for (bj, cj) in b[1..=upto].iter().zip(c[..n].iter().rev()) {
                    s = ((s as u128 + *bj as u128 * *cj as u128) % m as u128) as u64;
                }
                s
            }
        } else if lazy {
            let mut s = 0u64;
            for &(j, bj) in &nz {
                if j > n {
                    break;
                }
                s += bj * c[n - j];
            }
            s % m
        } else {
            let mut s = 0u64;
            for &(j, bj) in &nz {
                if j > n {
                    break;
                }
                s = ((s as u128 + bj as u128 * c[n - j] as u128) % m as u128) as u64;
            }
            s
        };
        let v = (a[n] + m - acc) % m;
        c[n] = mul_mod_u64(v, b0_inv, m);
    }
    c
}

pub(super) fn mul_int(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut acc = vec![BigInt::zero(); len];
    for (i, ai) in a[..len].iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        let span = len - i;
        if ai.is_one() {
            for (c, bj) in acc[i..].iter_mut().zip(&b[..span]) {
                *c += bj;
            }
        } else if ai.is_negative() && ai.abs().is_one() {
            for (c, bj) in acc[i..].iter_mut().zip(&b[..span]) {
                *c -= bj;
            }
        } else {
            for (c, bj) in acc[i..].iter_mut().zip(&b[..span]) {
                if !bj.is_zero() {
                    *c += ai * bj;
                }
            }
        }
    }
    acc
}

/// Exact division by a series whose constant term is `b0 = ±1`.
pub(super) fn div_int(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let negate = b[0].is_negative();
    let nz: Vec<(usize, &BigInt)> =
        b[1..len].iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(j, v)| (j + 1, v)).collect();
    let mut c: Vec<BigInt> = Vec::with_capacity(len);
    for n in 0..len {
        let mut s = a[n].clone();
        for &(j, bj) in &nz {
            if j > n {
                break;
            }
            let cj = &c[n - j];
            if cj.is_zero() {
                continue;
            }
            if bj.is_one() {
                s -= cj;
            } else if bj.is_negative() && bj.abs().is_one() {
                s += cj;
            } else {
                s -= bj * cj;
            }
        }
        c.push(if negate { -s } else { s });
    }
    c
}
