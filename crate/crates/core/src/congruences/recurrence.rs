//! Second-order linear recurrences `s_{k+1} = α s_k + β s_{k-1}`.

use num_bigint::BigInt;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RecurrenceSeq {
    pub name: &'static str,
    pub alpha: i64,
    pub beta: i64,
    pub s0: i64,
    pub s1: i64,
}

pub const E: RecurrenceSeq = RecurrenceSeq { name: "E", alpha: 6, beta: 5, s0: 0, s1: 1 };
pub const E_LOWER: RecurrenceSeq = RecurrenceSeq { name: "e", alpha: 6, beta: 5, s0: 1, s1: 0 };
pub const A: RecurrenceSeq = RecurrenceSeq { name: "A", alpha: 1, beta: 7, s0: 0, s1: 1 };
pub const A_LOWER: RecurrenceSeq = RecurrenceSeq { name: "a", alpha: 1, beta: 7, s0: 1, s1: 0 };
pub const C: RecurrenceSeq = RecurrenceSeq { name: "C", alpha: 8, beta: 1, s0: 0, s1: 1 };
pub const C_LOWER: RecurrenceSeq = RecurrenceSeq { name: "c", alpha: 8, beta: 1, s0: 1, s1: 0 };
pub const D: RecurrenceSeq = RecurrenceSeq { name: "D", alpha: 2, beta: 4, s0: 0, s1: 1 };
pub const D_LOWER: RecurrenceSeq = RecurrenceSeq { name: "d", alpha: 2, beta: 4, s0: 1, s1: 0 };

pub const SEQUENCES: [RecurrenceSeq; 8] = [E, E_LOWER, A, A_LOWER, C, C_LOWER, D, D_LOWER];

pub fn sequence(name: &str) -> Option<RecurrenceSeq> {
    SEQUENCES.iter().copied().find(|s| s.name == name)
}

fn residue(v: i64, p: u64) -> u64 {
    v.rem_euclid(p as i64) as u64
}

type Mat = [[u64; 2]; 2];

fn mat_mul(a: &Mat, b: &Mat, p: u64) -> Mat {
    let m = |x: u64, y: u64| (x as u128 * y as u128 % p as u128) as u64;
    let mut out = [[0u64; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = (m(a[i][0], b[0][j]) + m(a[i][1], b[1][j])) % p;
        }
    }
    out
}

impl RecurrenceSeq {
    /// `s_k mod p` by fast powering of the companion matrix.
    pub fn eval_mod(&self, k: u64, p: u64) -> u64 {
        assert!(p >= 2, "modulus must be at least 2");
        let (s0, s1) = (residue(self.s0, p), residue(self.s1, p));
        if k == 0 {
            return s0;
        }
        // (s_{j+1}, s_j) = M (s_j, s_{j-1})
        let step: Mat = [[residue(self.alpha, p), residue(self.beta, p)], [1 % p, 0]];
        let mut acc: Mat = [[1 % p, 0], [0, 1 % p]];
        let mut base = step;
        let mut e = k - 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = mat_mul(&acc, &base, p);
            }
            base = mat_mul(&base, &base, p);
            e >>= 1;
        }
        let mm = |x: u64, y: u64| (x as u128 * y as u128 % p as u128) as u64;
        (mm(acc[0][0], s1) + mm(acc[0][1], s0)) % p
    }

    /// `s_0, ..., s_k` over the integers.
    pub fn exact(&self, k: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::from(self.s0), BigInt::from(self.s1)];
        while v.len() <= k {
            let n = v.len();
            let next = self.alpha * &v[n - 1] + self.beta * &v[n - 2];
            v.push(next);
        }
        v.truncate(k + 1);
        v
    }
}

/// `s_k mod p`.
pub fn seq_eval(seq: &RecurrenceSeq, k: u64, p: u64) -> u64 {
    seq.eval_mod(k, p)
}
