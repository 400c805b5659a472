//! `f_l f_m / f_1^2 (mod p)` through index `n` in `O(n sqrt n)` time.
//!
//! The numerator is a product of two pentagonal series with `O(sqrt n)`
//! nonzero terms each; each division by `f_1` runs Euler's recurrence
//! `c(n) = a(n) + sum_k (-1)^(k+1) (c(n - k(3k-1)/2) + c(n - k(3k+1)/2))`.
//! The recurrence is processed in blocks: offsets at least the block length
//! only read finished entries and are applied as whole-slice updates.

use std::path::Path;

use super::cache::{load_table, save_table};
use super::{check_param, CountTable, Counts, OracleError, TableKind};
use crate::series::CoeffRing;

const BLOCK: usize = 4096;

/// Nonzero terms `(exponent, +-1)` of `f_k` through `q^n`.
fn pentagonal(k: usize, n: usize) -> Vec<(usize, bool)> {
    let mut out = vec![(0, true)];
    for j in 1usize.. {
        let lo = k * (j * (3 * j - 1) / 2);
        if lo > n {
            break;
        }
        let positive = j % 2 == 0;
        out.push((lo, positive));
        let hi = k * (j * (3 * j + 1) / 2);
        if hi <= n {
            out.push((hi, positive));
        }
    }
    out
}

fn check_prime(p: u64) -> Result<(), OracleError> {
    if !num_prime::nt_funcs::is_prime64(p) {
        return Err(OracleError::NotPrime(p));
    }
    Ok(())
}

/// `prod f_k` over `ks`, modulo `p`, through `q^n`.
fn eta_product(ks: &[usize], n: usize, p: u64) -> Vec<u64> {
    let mut acc = vec![0u64; n + 1];
    acc[0] = 1 % p;
    for &k in ks {
        let terms = pentagonal(k, n);
        let nz: Vec<(usize, u64)> = acc.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c)).collect();
        let mut next = vec![0u64; n + 1];
        for &(e, positive) in &terms {
            for &(i, c) in &nz {
                let j = i + e;
                if j > n {
                    break;
                }
                let v = next[j] + if positive { c } else { p - c };
                next[j] = if v >= p { v - p } else { v };
            }
        }
        acc = next;
    }
    acc
}

/// Replaces `a` by `a / f_1` modulo `p`.
fn divide_by_f1(a: &mut [u64], p: u64) {
    let n = a.len() - 1;
    let offsets: Vec<(usize, bool)> = pentagonal(1, n).into_iter().skip(1).map(|(d, s)| (d, !s)).collect();
    // offsets carry the sign with which c(n - d) enters c(n)
    let fits_lazy = p as u128 * (offsets.len() as u128 + 2) < u64::MAX as u128;
    let mut acc = vec![0u64; BLOCK];
    let mut start = 0;
    while start <= n {
        let len = BLOCK.min(n + 1 - start);
        let acc = &mut acc[..len];
        acc.copy_from_slice(&a[start..start + len]);
        let (done, rest) = a.split_at_mut(start);
        for &(d, positive) in offsets.iter().filter(|&&(d, _)| d >= len) {
            if d > start + len - 1 {
                break;
            }
            let first = d.saturating_sub(start);
            let src = &done[start + first - d..start + len - d];
            let dst = &mut acc[first..];
            if positive {
                for (x, &y) in dst.iter_mut().zip(src) {
                    *x += y;
                }
            } else {
                for (x, &y) in dst.iter_mut().zip(src) {
                    *x += p - y;
                }
            }
            if !fits_lazy {
                for x in dst.iter_mut() {
                    *x %= p;
                }
            }
        }
        for i in 0..len {
            let idx = start + i;
            let mut s = acc[i];
            for &(d, positive) in offsets.iter().take_while(|&&(d, _)| d < len) {
                if d > idx {
                    break;
                }
                let y = if d > i { done[idx - d] } else { rest[i - d] };
                s += if positive { y } else { p - y };
                if !fits_lazy {
                    s %= p;
                }
            }
            rest[i] = s % p;
        }
        start += len;
    }
}

fn quotient(ks: &[usize], f1_power: usize, n: usize, p: u64) -> Vec<u64> {
    let mut a = eta_product(ks, n, p);
    for _ in 0..f1_power {
        divide_by_f1(&mut a, p);
    }
    a
}

/// `B_{l,m}(0..=n) mod p`.
pub fn coeff_fast(l: u64, m: u64, n: usize, p: u64) -> Result<CountTable, OracleError> {
    check_param("l", l)?;
    check_param("m", m)?;
    check_prime(p)?;
    let values = quotient(&[l as usize, m as usize], 2, n, p);
    Ok(CountTable {
        kind: TableKind::Bipartite { l, m },
        ring: CoeffRing::modular(p).expect("prime modulus"),
        values: Counts::Mod(values),
    })
}

/// `b_l(0..=n) mod p`.
pub fn regular_fast(l: u64, n: usize, p: u64) -> Result<CountTable, OracleError> {
    check_param("l", l)?;
    check_prime(p)?;
    let values = quotient(&[l as usize], 1, n, p);
    Ok(CountTable {
        kind: TableKind::Regular { l },
        ring: CoeffRing::modular(p).expect("prime modulus"),
        values: Counts::Mod(values),
    })
}

/// [`coeff_fast`] (or [`regular_fast`] when `m` is `None`) backed by an
/// on-disk cache. A cached table reaching at least `n` is truncated and
/// reused; unreadable cache files are recomputed and overwritten.
pub fn coeff_fast_cached(
    dir: Option<&Path>,
    l: u64,
    m: Option<u64>,
    n: usize,
    p: u64,
) -> Result<CountTable, OracleError> {
    let kind = match m {
        Some(m) => TableKind::Bipartite { l, m },
        None => TableKind::Regular { l },
    };
    let compute = || match m {
        Some(m) => coeff_fast(l, m, n, p),
        None => regular_fast(l, n, p),
    };
    let Some(dir) = dir else { return compute() };
    let file = dir.join(super::cache::file_name(kind, p));
    if let Ok(t) = load_table(&file) {
        if t.kind == kind && t.ring.modulus() == p && t.max_index() >= n {
            if let Counts::Mod(v) = t.values {
                return Ok(CountTable { kind, ring: t.ring, values: Counts::Mod(v[..=n].to_vec()) });
            }
        }
    }
    let table = compute()?;
    // a failed write only loses the cache entry
    let _ = std::fs::create_dir_all(dir).and_then(|_| save_table(&table, &file).map_err(std::io::Error::other));
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{bipartition_counts, regular_counts};

    #[test]
    fn agrees_with_dp() {
        let r = CoeffRing::modular(7).unwrap();
        let slow = bipartition_counts(3, 7, 2000, r).unwrap();
        let fast = coeff_fast(3, 7, 2000, 7).unwrap();
        assert_eq!(slow.residues(), fast.residues());
        let slow = regular_counts(17, 3000, CoeffRing::modular(17).unwrap()).unwrap();
        assert_eq!(slow.residues(), regular_fast(17, 3000, 17).unwrap().residues());
    }

    #[test]
    fn blocks_and_large_moduli() {
        // crosses several block boundaries with a modulus that needs eager reduction
        let p = (1u64 << 61) - 1;
        let n = 3 * BLOCK + 17;
        let fast = coeff_fast(2, 3, n, p).unwrap();
        let slow = bipartition_counts(2, 3, 400, CoeffRing::modular(p).unwrap()).unwrap();
        assert_eq!(&fast.residues().unwrap()[..=400], slow.residues().unwrap());
        let r = CoeffRing::modular(13).unwrap();
        assert_eq!(coeff_fast(2, 3, n, 13).unwrap(), bipartition_counts(2, 3, n, r).unwrap());
    }

    #[test]
    fn small_values() {
        assert_eq!(coeff_fast(3, 7, 5, 7).unwrap().residues().unwrap()[5], 3);
        assert_eq!(coeff_fast(3, 7, 0, 7).unwrap().residues().unwrap(), &[1]);
        assert_eq!(coeff_fast(3, 7, 5, 8), Err(OracleError::NotPrime(8)));
    }
}
