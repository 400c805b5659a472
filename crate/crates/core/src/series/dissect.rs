//! Dilation, extraction of arithmetic progressions, and shifts.

use super::{Coeffs, Series, SeriesError};

/// `a(q^k)` with order `k * a.order`.
pub fn dilate(a: &Series, k: usize) -> Result<Series, SeriesError> {
    if k == 0 {
        return Err(SeriesError::ZeroStep);
    }
    Ok(dilate_to(a, k, k * a.order()))
}

/// `a(q^k)` through `q^order`; `a` must reach `order / k`.
pub(crate) fn dilate_padded(a: &Series, k: usize, order: usize) -> Series {
    debug_assert!(k >= 1 && a.order() >= order / k);
    dilate_to(a, k, order)
}

fn dilate_to(a: &Series, k: usize, order: usize) -> Series {
    let len = order + 1;
    let coeffs = match a.parts() {
        Coeffs::Int(v) => {
            let mut out = vec![num_bigint::BigInt::default(); len];
            for (n, c) in v.iter().enumerate().take_while(|(n, _)| n * k < len) {
                out[n * k] = c.clone();
            }
            Coeffs::Int(out)
        }
        Coeffs::Mod(v) => {
            let mut out = vec![0u64; len];
            for (n, &c) in v.iter().enumerate().take_while(|(n, _)| n * k < len) {
                out[n * k] = c;
            }
            Coeffs::Mod(out)
        }
    };
    Series::from_parts(a.ring(), coeffs)
}

/// The series `sum_n a(s*n + r) q^n`, known through `(order - r) / s`.
pub fn extract(a: &Series, r: usize, s: usize) -> Result<Series, SeriesError> {
    if s == 0 {
        return Err(SeriesError::ZeroStep);
    }
    if r >= s {
        return Err(SeriesError::ResidueOutOfRange { residue: r, step: s });
    }
    if r > a.order() {
        return Err(SeriesError::Empty);
    }
    let coeffs = match a.parts() {
        Coeffs::Int(v) => Coeffs::Int(v[r..].iter().step_by(s).cloned().collect()),
        Coeffs::Mod(v) => Coeffs::Mod(v[r..].iter().step_by(s).copied().collect()),
    };
    Ok(Series::from_parts(a.ring(), coeffs))
}

/// `q^e * a`, keeping the order of `a`.
pub fn shift(a: &Series, e: usize) -> Series {
    let len = a.order() + 1;
    let coeffs = match a.parts() {
        Coeffs::Int(v) => {
            let mut out = vec![num_bigint::BigInt::default(); len];
            for n in e..len {
                out[n] = v[n - e].clone();
            }
            Coeffs::Int(out)
        }
        Coeffs::Mod(v) => {
            let mut out = vec![0u64; len];
            if e < len {
                out[e..].copy_from_slice(&v[..len - e]);
            }
            Coeffs::Mod(out)
        }
    };
    Series::from_parts(a.ring(), coeffs)
}

/// Largest `g` such that every nonzero coefficient sits at a multiple of
/// `g`; 0 for a constant series.
pub fn stride(a: &Series) -> usize {
    (1..=a.order()).filter(|&n| !a.is_zero_at(n)).fold(0, num_integer::gcd)
}

/// Inverse of [`dilate`] for a series supported on multiples of `g`.
pub fn compress(a: &Series, g: usize) -> Result<Series, SeriesError> {
    extract(a, 0, g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::CoeffRing;

    fn s(c: &[i64]) -> Series {
        Series::from_i64s(CoeffRing::EXACT, c).unwrap()
    }

    #[test]
    fn dilate_spreads() {
        let d = dilate(&s(&[1, 2, 3]), 3).unwrap();
        assert_eq!(d.to_i64s().unwrap(), vec![1, 0, 0, 2, 0, 0, 3]);
        assert_eq!(dilate(&s(&[1, 1]), 5).unwrap().to_string(), "1 + q^5 + O(q^6)");
        assert!(dilate(&s(&[1]), 0).is_err());
    }

    #[test]
    fn dilate_composes() {
        let a = s(&[1, -2, 0, 5]);
        let twice = dilate(&dilate(&a, 2).unwrap(), 3).unwrap();
        assert_eq!(twice, dilate(&a, 6).unwrap());
    }

    #[test]
    fn extract_progressions() {
        let a = s(&[0, 1, 2, 3, 4, 5, 6, 7]);
        assert_eq!(extract(&a, 1, 3).unwrap().to_i64s().unwrap(), vec![1, 4, 7]);
        assert_eq!(extract(&a, 2, 3).unwrap().to_i64s().unwrap(), vec![2, 5]);
        assert!(matches!(extract(&a, 3, 3), Err(SeriesError::ResidueOutOfRange { .. })));
        assert!(extract(&s(&[1]), 1, 2).is_err());
    }

    #[test]
    fn shift_drops_the_top() {
        assert_eq!(shift(&s(&[1, 2, 3]), 1).to_i64s().unwrap(), vec![0, 1, 2]);
        assert!(shift(&s(&[1, 2, 3]), 5).is_zero());
    }

    #[test]
    fn stride_of_supports() {
        assert_eq!(stride(&s(&[1, 0, 0, 4, 0, 0, 2])), 3);
        assert_eq!(stride(&s(&[5, 0, 0])), 0);
        assert_eq!(stride(&s(&[0, 0, 2, 0, 4, 1])), 1);
    }
}
