//! Exact integer helpers: binomials, p-adic valuations, nearest-third rounding
//! and balanced base-p digits.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A p-adic valuation; `Infinity` is the valuation of zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(u64),
    Infinity,
}

impl Valuation {
    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinity)
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinity) => Ordering::Less,
            (Valuation::Infinity, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinity, Valuation::Infinity) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Valuation of a product.
impl Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinity,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_u64(*v),
            Valuation::Infinity => s.serialize_str("inf"),
        }
    }
}

/// Trial-division primality test.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NonPrime(p))
    }
}

/// Generalized binomial coefficient: the falling-factorial product for `i > 0`,
/// 1 for `i = 0` and 0 for `i < 0`.
pub fn binom(m: i64, i: i64) -> BigInt {
    if i < 0 {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for k in 0..i {
        acc *= BigInt::from(m - k);
        acc /= BigInt::from(k + 1);
    }
    acc
}

/// The exponent of the largest power of `p` dividing `m`.
pub fn padic_val(m: &BigInt, p: u64) -> Result<Valuation> {
    require_prime(p)?;
    if m.is_zero() {
        return Ok(Valuation::Infinity);
    }
    let pb = BigInt::from(p);
    let mut v = 0;
    let mut cur = m.abs();
    loop {
        let (q, r) = cur.div_rem(&pb);
        if !r.is_zero() {
            return Ok(Valuation::Finite(v));
        }
        cur = q;
        v += 1;
    }
}

fn digit_sum(mut m: u64, p: u64) -> u64 {
    let mut s = 0;
    while m > 0 {
        s += m % p;
        m /= p;
    }
    s
}

/// Valuation of `binom(m, i)` by Legendre's digit-sum formula.
///
/// Agrees with `padic_val(&binom(m, i), p)` but never forms the binomial.
pub fn binom_val(m: i64, i: i64, p: u64) -> Valuation {
    if i < 0 {
        return Valuation::Infinity;
    }
    if i == 0 {
        return Valuation::Finite(0);
    }
    if m < 0 {
        return binom_val(i - m - 1, i, p);
    }
    if i > m {
        return Valuation::Infinity;
    }
    let (m, i) = (m as u64, i as u64);
    let carries = digit_sum(i, p) + digit_sum(m - i, p) - digit_sum(m, p);
    Valuation::Finite(carries / (p - 1))
}

/// The integer `{b/3}` closest to `b/3`.
pub fn round_third(b: i64) -> i64 {
    match b.rem_euclid(3) {
        0 => b / 3,
        1 => (b - 1).div_euclid(3),
        _ => (b + 1).div_euclid(3),
    }
}

/// `(u, v)`: the largest odd integer below `p/3` and the largest even integer below `2p/3`.
pub fn digit_bounds(p: u64) -> Result<(i64, i64)> {
    if p < 5 {
        return Err(Error::PrimeTooSmall(p));
    }
    require_prime(p)?;
    let p = p as i64;
    let mut u = (p - 1) / 3;
    if u % 2 == 0 {
        u -= 1;
    }
    let mut v = (2 * p - 1) / 3;
    if v % 2 == 1 {
        v -= 1;
    }
    Ok((u, v))
}

/// Balanced base-p digits, least significant first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DigitExpansion {
    pub prime: u64,
    pub digits: Vec<i64>,
}

impl DigitExpansion {
    pub fn evaluate(&self) -> BigInt {
        let p = BigInt::from(self.prime);
        self.digits
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, &d| acc * &p + BigInt::from(d))
    }

    pub fn all_even(&self) -> bool {
        self.digits.iter().all(|d| d % 2 == 0)
    }
}

fn legal_digit(a: i64, u: i64, v: i64) -> bool {
    if a % 2 == 0 {
        a.abs() <= v
    } else {
        a.abs() <= u
    }
}

/// Expansion of `m` in balanced base-p digits.
pub fn digit_expand(m: i64, p: u64) -> Result<DigitExpansion> {
    let (u, v) = digit_bounds(p)?;
    let pi = p as i64;
    let mut digits = Vec::new();
    let mut cur = m;
    while cur != 0 {
        let r = cur.rem_euclid(pi);
        let a = if legal_digit(r, u, v) { r } else { r - pi };
        debug_assert!(legal_digit(a, u, v));
        digits.push(a);
        cur = (cur - a) / pi;
    }
    Ok(DigitExpansion { prime: p, digits })
}

/// Valuation of a machine integer; zero has infinite valuation.
pub fn int_val(m: i64, p: u64) -> Valuation {
    if m == 0 {
        return Valuation::Infinity;
    }
    let (mut m, p) = (m.unsigned_abs(), p);
    let mut v = 0;
    while m % p == 0 {
        m /= p;
        v += 1;
    }
    Valuation::Finite(v)
}

/// One failed case of a valuation identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub identity: String,
    pub params: Vec<i64>,
    pub lhs: Valuation,
    pub rhs: Valuation,
}

fn record(out: &mut Vec<Violation>, label: &str, params: &[i64], lhs: Valuation, rhs: Valuation) {
    if lhs != rhs {
        out.push(Violation {
            identity: label.into(),
            params: params.to_vec(),
            lhs,
            rhs,
        });
    }
}

/// Reduction of `binom(A, D)`-type valuations with `A = pa + r`, `D = pd + ε`
/// to valuations of smaller binomials, checked for one parameter tuple
/// `(p, d, ε, a, r, s, t)`. Parts (a) and (b) do not involve `a, r, s, t`.
pub fn reduction_case(p: u64, d: i64, eps: i64, a: i64, r: i64, s: i64, t: i64) -> Vec<Violation> {
    let pi = p as i64;
    let bv = |m: i64, i: i64| binom_val(m, i, p);
    let iv = |m: i64| int_val(m, p);
    let (big_a, big_d) = (pi * a + r, pi * d + eps);
    let params = [pi, d, eps, a, r, s, t];
    let mut out = Vec::new();

    let k = r + s + 1 - eps;
    let c_rhs = if k <= 0 {
        iv(pi * (a - d)) + bv(a, d)
    } else if s <= eps && k <= pi {
        bv(a, d)
    } else if k <= pi {
        iv(pi * d) + bv(a, d)
    } else {
        bv(a, d - 1)
    };
    record(&mut out, "c", &params, bv(big_a, big_d - s), c_rhs);

    let m = 3 * big_d - big_a - t;
    let u = r + t;
    let rhs = if eps >= 0 {
        if u >= 3 * eps + pi + 1 {
            bv(3 * d - a - 2, d)
        } else if u >= 2 * eps + pi + 1 {
            iv(pi * (2 * d - a - 1)) + bv(3 * d - a - 1, d)
        } else if u >= 3 * eps + 1 {
            bv(3 * d - a - 1, d)
        } else if u >= 2 * eps + 1 {
            iv(pi * (2 * d - a)) + bv(3 * d - a, d)
        } else {
            bv(3 * d - a, d)
        }
    } else if u >= 2 * eps + pi + 1 {
        iv(pi * d) + bv(3 * d - a - 2, d)
    } else if u >= 3 * eps + pi + 1 {
        bv(3 * d - a - 2, d - 1)
    } else {
        iv(pi * d) + bv(3 * d - a - 1, d)
    };
    record(&mut out, if eps >= 0 { "d" } else { "e" }, &params, bv(m, big_d), rhs);
    out
}

/// Parts (a) and (b) of the reduction: `binom(2D, D)` and `binom(3D, D)`.
pub fn reduction_central(p: u64, d: i64, eps: i64) -> Vec<Violation> {
    let pi = p as i64;
    let bv = |m: i64, i: i64| binom_val(m, i, p);
    let big_d = pi * d + eps;
    let params = [pi, d, eps];
    let mut out = Vec::new();
    let pd = int_val(pi * d, p);
    let (a_rhs, b_rhs) = if eps < 0 {
        (pd + bv(2 * d, d), pd + bv(3 * d - 1, d - 1))
    } else {
        (bv(2 * d, d), bv(3 * d, d))
    };
    record(&mut out, "a", &params, bv(2 * big_d, big_d), a_rhs);
    record(&mut out, "b", &params, bv(3 * big_d, big_d), b_rhs);
    out
}

/// All failures of the p-adic reduction identities for `1 ≤ d ≤ dmax`,
/// `|ε| < p/3`, `0 ≤ a ≤ amax(d)`, `r < p`, `s ≤ 1`, `t ≤ 2`.
pub fn reduction_violations(p: u64, dmax: i64, amax: impl Fn(i64) -> i64) -> Vec<Violation> {
    let pi = p as i64;
    let mut out = Vec::new();
    for d in 1..=dmax {
        for eps in -pi..=pi {
            if 3 * eps.abs() >= pi {
                continue;
            }
            out.extend(reduction_central(p, d, eps));
            for a in 0..=amax(d) {
                for r in 0..pi {
                    for s in 0..=1 {
                        for t in 0..=2 {
                            out.extend(reduction_case(p, d, eps, a, r, s, t));
                        }
                    }
                }
            }
        }
    }
    out
}

/// The 3-adic reduction identities for `A = 3a + r`, `D = 3d + ε`, `ε ∈ {0, 2}`.
pub fn ternary_case(a: i64, d: i64, r: i64, eps: i64) -> Vec<Violation> {
    let bv = |m: i64, i: i64| binom_val(m, i, 3);
    let iv = |m: i64| int_val(m, 3);
    let (big_a, big_d) = (3 * a + r, 3 * d + eps);
    let params = [a, d, r, eps];
    let e0 = eps == 0;
    let mut out = Vec::new();
    let rhs = if e0 || r == 2 { bv(a, d) } else { iv(3 * (d + 1)) + bv(a, d + 1) };
    record(&mut out, "a", &params, bv(big_a, big_d), rhs);
    let rhs = if e0 { bv(2 * d, d) } else { iv(3 * (d + 1)) + bv(2 * d + 1, d) };
    record(&mut out, "b", &params, bv(2 * big_d, big_d), rhs);
    let rhs = if e0 { bv(2 * d, d) } else { bv(2 * d + 1, d) };
    record(&mut out, "c", &params, bv(2 * big_d + 1, big_d), rhs);
    let rhs = if e0 { bv(3 * d, d) } else { iv(3 * (d + 1)) + bv(3 * d + 2, d) };
    record(&mut out, "d", &params, bv(3 * big_d, big_d), rhs);
    let rhs = if e0 { bv(3 * d, d) } else { bv(3 * d + 2, d) };
    record(&mut out, "e", &params, bv(3 * big_d + 2, big_d), rhs);
    let rhs = match (e0, r) {
        (true, _) => bv(3 * d - 1 - a, d),
        (false, 0) => bv(3 * d + 1 - a, d),
        _ => iv(3 * (2 * d - a + 1)) + bv(3 * d + 1 - a, d),
    };
    record(&mut out, "f", &params, bv(3 * big_d - 1 - big_a, big_d), rhs);
    let rhs = match (e0, r) {
        (true, 0) => bv(3 * d - a, d),
        (true, _) => bv(3 * d - 1 - a, d),
        (false, 0) => iv(3 * (3 * d - a + 2)) + bv(3 * d + 1 - a, d),
        (false, 1) => bv(3 * d + 1 - a, d),
        _ => iv(3 * (d + 1)) + bv(3 * d + 1 - a, d + 1),
    };
    record(&mut out, "g", &params, bv(3 * big_d - big_a, big_d), rhs);
    let rhs = match (e0, r) {
        (true, 0) => bv(3 * d - a, d),
        (true, 1) => iv(3 * (2 * d - a)) + bv(3 * d - a, d),
        (true, _) => bv(3 * d - 1 - a, d),
        (false, 2) => bv(3 * d + 1 - a, d + 1),
        (false, _) => bv(3 * d + 2 - a, d + 1),
    };
    record(&mut out, "h", &params, bv(3 * big_d + 1 - big_a, big_d + 1), rhs);
    out
}

/// All failures of the 3-adic reduction identities for `a ≤ amax`, `d ≤ dmax`.
pub fn ternary_violations(amax: i64, dmax: i64) -> Vec<Violation> {
    let mut out = Vec::new();
    for a in 0..=amax {
        for d in 0..=dmax {
            for r in 0..=2 {
                for eps in [0, 2] {
                    out.extend(ternary_case(a, d, r, eps));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binom_examples() {
        assert_eq!(binom(5, 2), BigInt::from(10));
        assert_eq!(binom(3, -2), BigInt::zero());
        assert_eq!(binom(2, 5), BigInt::zero());
        assert_eq!(binom(-1, 2), BigInt::from(1));
        assert_eq!(binom(-3, 3), BigInt::from(-10));
    }

    #[test]
    fn padic_examples() {
        assert_eq!(padic_val(&BigInt::zero(), 3), Ok(Valuation::Infinity));
        assert_eq!(padic_val(&BigInt::from(45), 3), Ok(Valuation::Finite(2)));
        assert_eq!(padic_val(&binom(6, 3), 2), Ok(Valuation::Finite(2)));
        assert_eq!(padic_val(&BigInt::from(7), 4), Err(Error::NonPrime(4)));
    }

    #[test]
    fn rounding() {
        assert_eq!(round_third(6), 2);
        assert_eq!(round_third(7), 2);
        assert_eq!(round_third(8), 3);
        assert_eq!(round_third(-1), 0);
        assert_eq!(round_third(-2), -1);
    }

    #[test]
    fn bounds() {
        assert_eq!(digit_bounds(5), Ok((1, 2)));
        assert_eq!(digit_bounds(7), Ok((1, 4)));
        assert_eq!(digit_bounds(13), Ok((3, 8)));
        assert_eq!(digit_bounds(3), Err(Error::PrimeTooSmall(3)));
    }

    #[test]
    fn digit_count_matches_prime() {
        for p in [5u64, 7, 11, 13, 17, 19, 23] {
            let (u, v) = digit_bounds(p).unwrap();
            assert_eq!((u + 1 + v + 1) as u64, p);
        }
    }

    #[test]
    fn expansions() {
        assert!(digit_expand(0, 7).unwrap().digits.is_empty());
        assert_eq!(digit_expand(8, 5).unwrap().digits, vec![-2, 2]);
        assert_eq!(digit_expand(7, 5).unwrap().digits, vec![2, 1]);
    }

    #[test]
    fn valuation_order() {
        assert!(Valuation::Infinity > Valuation::Finite(1000));
        assert_eq!(Valuation::Finite(2) + Valuation::Finite(3), Valuation::Finite(5));
        assert_eq!(Valuation::Finite(2) + Valuation::Infinity, Valuation::Infinity);
    }

    #[test]
    fn legendre_matches_bigint() {
        for p in [2u64, 3, 5, 7] {
            for m in -30..60 {
                for i in -3..40 {
                    assert_eq!(binom_val(m, i, p), padic_val(&binom(m, i), p).unwrap());
                }
            }
        }
    }

    #[test]
    fn int_valuations() {
        assert_eq!(int_val(0, 3), Valuation::Infinity);
        assert_eq!(int_val(-18, 3), Valuation::Finite(2));
        assert_eq!(int_val(7, 5), Valuation::Finite(0));
    }

    #[test]
    fn reduction_identities_small() {
        for p in [3u64, 5, 7] {
            assert!(reduction_violations(p, 8, |d| 3 * d + 3).is_empty());
        }
        assert!(ternary_violations(30, 10).is_empty());
    }
}
