use std::collections::HashMap;

use crate::series::{self, dilate_padded, CoeffRing, Series};

use super::{QExpr, QExprError, Sign};

/// Powers of product-form atoms up to this size are built factor by factor.
const DIRECT_POWER_LIMIT: u64 = 8;

/// Evaluates expressions in a fixed ring, memoizing every subtree by
/// `(expression, order)`.
pub struct Evaluator {
    ring: CoeffRing,
    memo: HashMap<(QExpr, usize), Series>,
}

impl Evaluator {
    pub fn new(ring: CoeffRing) -> Self {
        Self { ring, memo: HashMap::new() }
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn clear(&mut self) {
        self.memo.clear();
    }

    pub fn eval(&mut self, e: &QExpr, order: usize) -> Result<Series, QExprError> {
        let key = (e.clone(), order);
        if let Some(s) = self.memo.get(&key) {
            return Ok(s.clone());
        }
        let value = self.eval_uncached(e, order)?;
        self.memo.insert(key, value.clone());
        Ok(value)
    }

    fn eval_uncached(&mut self, e: &QExpr, order: usize) -> Result<Series, QExprError> {
        let ring = self.ring;
        Ok(match e {
            QExpr::Const(c) => Series::constant(ring, *c, order),
            QExpr::Q(k) => Series::monomial(ring, *k, 1, order),
            QExpr::EtaF(k) => {
                check(e)?;
                eta(ring, *k, order)
            }
            QExpr::Pochhammer { .. } | QExpr::Phi(_) | QExpr::Psi(_) | QExpr::Theta { .. } => {
                check(e)?;
                product_power(ring, &binomial_factors(e), 1, order)
            }
            QExpr::Mul(children) => {
                let mut acc = Series::one(ring, order);
                for child in children {
                    let value = self.eval(child, order)?;
                    acc = series::mul(&acc, &value)?;
                }
                acc
            }
            QExpr::Pow(child, p) => {
                let direct = matches!(
                    **child,
                    QExpr::Pochhammer { .. } | QExpr::Phi(_) | QExpr::Psi(_) | QExpr::Theta { .. }
                ) && p.unsigned_abs() <= DIRECT_POWER_LIMIT;
                if direct {
                    check(child)?;
                    product_power(ring, &binomial_factors(child), *p, order)
                } else {
                    let base = self.eval(child, order)?;
                    series::pow(&base, *p)?
                }
            }
            QExpr::Sum(terms) => {
                let mut acc = Series::zero(ring, order);
                for (c, child) in terms {
                    if *c == 0 {
                        continue;
                    }
                    let value = self.eval(child, order)?;
                    acc = series::add(&acc, &series::scalar_mul(&value, *c))?;
                }
                acc
            }
            QExpr::Dilate(child, k) => {
                check(e)?;
                let inner = self.eval(child, order / k)?;
                dilate_padded(&inner, *k, order)
            }
        })
    }
}

fn check(e: &QExpr) -> Result<(), QExprError> {
    match e {
        QExpr::Dilate(_, 0) => Err(QExprError::InvalidAtom("dilation by 0".into())),
        QExpr::Dilate(..) => Ok(()),
        other => other.validate(),
    }
}

/// One-shot evaluation of `e` through `q^order`.
pub fn eval(e: &QExpr, ring: CoeffRing, order: usize) -> Result<Series, QExprError> {
    Evaluator::new(ring).eval(e, order)
}

/// `f_k` from the pentagonal number theorem.
fn eta(ring: CoeffRing, k: usize, order: usize) -> Series {
    let mut c = vec![0i64; order + 1];
    c[0] = 1;
    for j in 1usize.. {
        let lo = k * (j * (3 * j - 1) / 2);
        if lo > order {
            break;
        }
        let sign = if j % 2 == 0 { 1 } else { -1 };
        c[lo] += sign;
        let hi = k * (j * (3 * j + 1) / 2);
        if hi <= order {
            c[hi] += sign;
        }
    }
    Series::from_i64s(ring, &c).expect("nonempty")
}

/// The infinite product of `1 + sign q^t` factors of a product-form atom,
/// listed as `(sign, t)`; only the first `order` of them can matter.
fn binomial_factors(e: &QExpr) -> Vec<(Sign, usize)> {
    match e {
        QExpr::Pochhammer { a, m } => vec![(Sign::Minus, *a), (Sign::Plus, *m)],
        QExpr::Phi(k) => theta_factors(Sign::Plus, *k, Sign::Plus, *k),
        QExpr::Psi(k) => theta_factors(Sign::Plus, *k, Sign::Plus, 3 * k),
        QExpr::Theta { sa, ua, sb, ub } => theta_factors(*sa, *ua, *sb, *ub),
        _ => unreachable!("not a product-form atom"),
    }
}

/// Encodes `f(a, b) = (-a; ab)(-b; ab)(ab; ab)` as progressions. Each entry
/// pair `(sign, start), (ratio_sign, step)` stands for the factors
/// `1 + sign * ratio_sign^j q^(start + j step)`, `j >= 0`.
fn theta_factors(sa: Sign, ua: usize, sb: Sign, ub: usize) -> Vec<(Sign, usize)> {
    let w = ua + ub;
    let r = sa.times(sb);
    let neg_r = r.times(Sign::Minus);
    vec![(sa, ua), (r, w), (sb, ub), (r, w), (neg_r, w), (r, w)]
}

/// Evaluates `prod (1 + s_j q^t_j)^p` for the progressions in `spec`,
/// multiplying or dividing factor by factor.
fn product_power(ring: CoeffRing, spec: &[(Sign, usize)], p: i64, order: usize) -> Series {
    let progressions: Vec<((Sign, usize), (Sign, usize))> =
        spec.chunks(2).map(|pair| (pair[0], pair[1])).collect();
    let g = progressions.iter().fold(0, |g, &((_, a), (_, m))| num_integer::gcd(g, num_integer::gcd(a, m)));
    if g >= 2 && order >= g {
        let scaled: Vec<(Sign, usize)> = spec.iter().map(|&(s, t)| (s, t / g)).collect();
        let inner = product_power(ring, &scaled, p, order / g);
        return dilate_padded(&inner, g, order);
    }
    let mut acc = Series::one(ring, order);
    for _ in 0..p.unsigned_abs() {
        for &((s0, start), (ratio, step)) in &progressions {
            let mut sign = s0;
            let mut t = start;
            while t <= order {
                if p > 0 {
                    acc.mul_binomial(sign.as_i8(), t);
                } else {
                    acc.div_binomial(sign.as_i8(), t);
                }
                sign = sign.times(ratio);
                t += step;
            }
        }
    }
    acc
}

/// `f(a, b)` for a theta atom from the bilateral sum
/// `sum_n a^(n(n+1)/2) b^(n(n-1)/2)`.
pub fn theta_sum(e: &QExpr, ring: CoeffRing, order: usize) -> Result<Series, QExprError> {
    let (sa, ua, sb, ub) = match *e {
        QExpr::Theta { sa, ua, sb, ub } => (sa, ua, sb, ub),
        QExpr::Phi(k) => (Sign::Plus, k, Sign::Plus, k),
        QExpr::Psi(k) => (Sign::Plus, k, Sign::Plus, 3 * k),
        _ => return Err(QExprError::InvalidAtom(format!("{e} is not a theta function"))),
    };
    e.validate()?;
    let sign_pow = |s: Sign, k: usize| if s == Sign::Minus && k % 2 == 1 { -1 } else { 1 };
    let mut c = vec![0i64; order + 1];
    let mut add_term = |x: usize, y: usize| {
        let exp = ua * x + ub * y;
        if exp <= order {
            c[exp] += sign_pow(sa, x) * sign_pow(sb, y);
        }
        exp <= order
    };
    for n in 0usize.. {
        if !add_term((n * n + n) / 2, (n * n - n) / 2) {
            break;
        }
    }
    for m in 1usize.. {
        if !add_term((m * m - m) / 2, (m * m + m) / 2) {
            break;
        }
    }
    Ok(Series::from_i64s(ring, &c)?)
}
