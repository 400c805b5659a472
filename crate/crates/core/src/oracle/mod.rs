//! Partition-counting ground truth.
//!
//! `b_l(n)` counts partitions of `n` with no part divisible by `l`, and
//! `B_{l,m}(n)` counts pairs `(lambda, mu)` of an `l`-regular and an
//! `m`-regular partition with total size `n`. The dynamic programs here never
//! touch the series engine; [`coeff_fast`] is the fast modular path used for
//! very large indices.

mod cache;
mod fast;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::series::{CoeffRing, Series};

pub use cache::{cache_dir_from_env, load_table, save_table, CacheError, CACHE_ENV};
pub use fast::{coeff_fast, coeff_fast_cached, regular_fast};

/// Largest index for which exact counts are produced.
pub const EXACT_CAP: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TableKind {
    Regular { l: u64 },
    Bipartite { l: u64, m: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Counts {
    Exact(Vec<BigUint>),
    Mod(Vec<u64>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub kind: TableKind,
    pub ring: CoeffRing,
    pub values: Counts,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("exact counts are limited to n <= {cap}, requested {n}")]
    ExactCapExceeded { n: usize, cap: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
}

impl CountTable {
    pub fn max_index(&self) -> usize {
        self.len() - 1
    }

    pub fn len(&self) -> usize {
        match &self.values {
            Counts::Exact(v) => v.len(),
            Counts::Mod(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The count at `n`, reduced into the table's ring.
    pub fn get(&self, n: usize) -> BigInt {
        match &self.values {
            Counts::Exact(v) => BigInt::from(v[n].clone()),
            Counts::Mod(v) => BigInt::from(v[n]),
        }
    }

    pub fn residues(&self) -> Option<&[u64]> {
        match &self.values {
            Counts::Mod(v) => Some(v),
            Counts::Exact(_) => None,
        }
    }

    /// Residue of the count at `n` modulo `p`, for exact tables and for
    /// tables over `Z/M` with `p | M`.
    pub fn residue(&self, n: usize, p: u64) -> Option<u64> {
        match &self.values {
            Counts::Exact(v) => (&v[n] % p).to_u64(),
            Counts::Mod(v) => (self.ring.modulus() % p == 0).then(|| v[n] % p),
        }
    }

    pub fn to_series(&self) -> Series {
        match &self.values {
            Counts::Exact(v) => Series::new(self.ring, v.iter().map(|c| BigInt::from(c.clone())).collect()),
            Counts::Mod(v) => Series::from_residues(self.ring, v.clone()),
        }
        .expect("table is nonempty")
    }
}

fn check_param(name: &str, value: u64) -> Result<(), OracleError> {
    if value < 2 {
        return Err(OracleError::InvalidParameter(format!("{name} = {value} must be at least 2")));
    }
    Ok(())
}

fn check_exact_cap(ring: CoeffRing, n: usize) -> Result<(), OracleError> {
    if ring.is_exact() && n > EXACT_CAP {
        return Err(OracleError::ExactCapExceeded { n, cap: EXACT_CAP });
    }
    Ok(())
}

/// `b_l(0..=n)` by the bounded-parts dynamic program.
pub fn regular_counts(l: u64, n: usize, ring: CoeffRing) -> Result<CountTable, OracleError> {
    check_param("l", l)?;
    check_exact_cap(ring, n)?;
    let parts = (1..=n).filter(|&p| p as u64 % l != 0);
    let values = if ring.is_exact() {
        let mut t = vec![BigUint::zero(); n + 1];
        t[0] = BigUint::from(1u32);
        for p in parts {
            for i in p..=n {
                let (lo, hi) = t.split_at_mut(i);
                hi[0] += &lo[i - p];
            }
        }
        Counts::Exact(t)
    } else {
        let m = ring.modulus();
        let mut t = vec![0u64; n + 1];
        t[0] = 1 % m;
        for p in parts {
            for i in p..=n {
                let s = t[i] + t[i - p];
                t[i] = if s >= m { s - m } else { s };
            }
        }
        Counts::Mod(t)
    };
    Ok(CountTable { kind: TableKind::Regular { l }, ring, values })
}

/// `B_{l,m}(0..=n)` as the convolution of the two regular tables.
pub fn bipartition_counts(l: u64, m: u64, n: usize, ring: CoeffRing) -> Result<CountTable, OracleError> {
    check_param("l", l)?;
    check_param("m", m)?;
    let a = regular_counts(l, n, ring)?;
    let b = if l == m { a.clone() } else { regular_counts(m, n, ring)? };
    let values = match (&a.values, &b.values) {
        (Counts::Exact(x), Counts::Exact(y)) => Counts::Exact(
            (0..=n).map(|k| (0..=k).map(|j| &x[j] * &y[k - j]).sum()).collect(),
        ),
        (Counts::Mod(x), Counts::Mod(y)) => {
            let p = ring.modulus() as u128;
            Counts::Mod(
                (0..=n)
                    .map(|k| {
                        let mut s = 0u128;
                        for j in 0..=k {
                            s = (s + x[j] as u128 * y[k - j] as u128) % p;
                        }
                        s as u64
                    })
                    .collect(),
            )
        }
        _ => unreachable!(),
    };
    Ok(CountTable { kind: TableKind::Bipartite { l, m }, ring, values })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(t: &CountTable) -> Vec<u64> {
        (0..t.len()).map(|n| t.get(n).to_u64().unwrap()).collect()
    }

    #[test]
    fn regular_small_values() {
        let t = regular_counts(2, 5, CoeffRing::EXACT).unwrap();
        assert_eq!(small(&t), vec![1, 1, 1, 2, 2, 3]);
        assert_eq!(regular_counts(3, 4, CoeffRing::EXACT).unwrap().get(4), 4.into());
        for l in 2..6 {
            assert_eq!(regular_counts(l, 0, CoeffRing::EXACT).unwrap().get(0), 1.into());
        }
    }

    #[test]
    fn bipartition_small_values() {
        let t = bipartition_counts(3, 7, 2, CoeffRing::EXACT).unwrap();
        assert_eq!(small(&t), vec![1, 2, 5]);
    }

    #[test]
    fn modular_tables_reduce_exact_ones() {
        let exact = bipartition_counts(5, 11, 200, CoeffRing::EXACT).unwrap();
        let r = CoeffRing::modular(11).unwrap();
        let modular = bipartition_counts(5, 11, 200, r).unwrap();
        for n in 0..=200 {
            assert_eq!(exact.residue(n, 11), modular.residue(n, 11));
        }
        assert_eq!(modular.residue(3, 7), None);
    }

    #[test]
    fn parameter_checks() {
        assert!(regular_counts(1, 5, CoeffRing::EXACT).is_err());
        assert!(bipartition_counts(3, 0, 5, CoeffRing::EXACT).is_err());
        assert_eq!(
            regular_counts(2, EXACT_CAP + 1, CoeffRing::EXACT),
            Err(OracleError::ExactCapExceeded { n: EXACT_CAP + 1, cap: EXACT_CAP })
        );
    }
}
