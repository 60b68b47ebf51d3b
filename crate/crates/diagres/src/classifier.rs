#![allow(non_snake_case)]

//! The integer sets D_p, S_c, T_c and the finite/infinite verdict for
//! pd_R Q with Q = k[x,y,z]/(x^n+y^n+z^n, x^N, y^N, z^N).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{binom_val, digit_expand, is_prime, round_third, Valuation, Violation};
use crate::par::{self, Mode};

/// Rejects characteristics other than 0 or a prime.
pub fn validate_char(c: u64) -> Result<()> {
    if c == 0 || is_prime(c) {
        Ok(())
    } else {
        Err(Error::NonPrime(c))
    }
}

/// Largest integer strictly below `p/3`.
pub fn pi_p(p: u64) -> Result<i64> {
    if p < 5 {
        return Err(Error::PrimeTooSmall(p));
    }
    if !is_prime(p) {
        return Err(Error::NonPrime(p));
    }
    Ok((p as i64 - 1) / 3)
}

/// Membership in D_p, by stripping the last base-p block.
pub fn in_D(p: u64, d: i64) -> bool {
    if d < 0 {
        return false;
    }
    let pi = p as i64;
    if p == 3 {
        let mut d = d;
        while d > 0 {
            match d % 3 {
                0 => d /= 3,
                2 => d = (d - 2) / 3,
                _ => return false,
            }
        }
        return true;
    }
    let bound = (pi - 1) / 3;
    let mut d = d;
    while d > bound {
        let parent = (d + pi / 2) / pi;
        if (d - parent * pi).abs() > bound {
            return false;
        }
        d = parent;
    }
    true
}

/// Membership in S_c.
pub fn in_S(c: u64, a: i64) -> bool {
    if a < 0 {
        return false;
    }
    match c {
        0 => true,
        2 => a == 0,
        3 => (0..=1).any(|eps| {
            let rest = a - eps;
            if rest % 4 != 0 {
                return false;
            }
            let mut m = rest / 4;
            while m > 0 {
                if m % 3 == 2 {
                    return false;
                }
                m /= 3;
            }
            true
        }),
        p => {
            let m = if a % 2 == 0 { a } else { a + 1 };
            digit_expand(m, p).map(|e| e.all_even()).unwrap_or(false)
        }
    }
}

/// A witness `(J, q = p^e)` for membership in T_c.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TWitness {
    #[serde(rename = "J")]
    pub j: i64,
    pub q: i64,
    pub e: u32,
}

impl TWitness {
    /// The defining window `Jq - {q/3} <= a < Jq + {q/3}`.
    pub fn covers(&self, a: i64) -> bool {
        let w = round_third(self.q);
        self.j * self.q - w <= a && a < self.j * self.q + w
    }
}

fn odd_candidates(center: i64) -> impl Iterator<Item = i64> {
    (center - 1..=center + 2).filter(|j| *j >= 1 && j % 2 != 0)
}

/// A witness for `a` in T_c, or `None` when `a` is not in T_c.
pub fn in_T(c: u64, a: i64) -> Option<TWitness> {
    if c == 0 || a <= 0 {
        return None;
    }
    let p = c as i64;
    let mut q = p;
    let mut e = 1;
    while q <= 3 * (a + 1) {
        for j in odd_candidates(a / q) {
            let w = TWitness { j, q, e };
            if w.covers(a) {
                return Some(w);
            }
        }
        q *= p;
        e += 1;
    }
    None
}

/// Even-number form of T_p: some odd J and q = p^e with |a - Jq| < q/3.
pub fn in_T_even_form(p: u64, a: i64) -> bool {
    let p = p as i64;
    let mut q = p;
    while q <= 3 * (a + 1) {
        if odd_candidates(a / q).any(|j| 3 * (a - j * q).abs() < q) {
            return true;
        }
        q *= p;
    }
    false
}

/// True iff every `0 <= a <= bound` lies in exactly one of S_c, T_c.
pub fn partition_check(c: u64, bound: i64) -> bool {
    partition_check_with(Mode::default(), c, bound)
}

pub fn partition_check_with(mode: Mode, c: u64, bound: i64) -> bool {
    let chunks: Vec<(i64, i64)> = (0..=bound / 1024)
        .map(|k| (k * 1024, ((k + 1) * 1024 - 1).min(bound)))
        .collect();
    par::all(mode, chunks, |(lo, hi)| {
        (lo..=hi).all(|a| in_S(c, a) != in_T(c, a).is_some())
    })
}

/// Breadth-first closure of the recursive definition of S_c, up to `bound`.
pub fn enumerate_S(c: u64, bound: usize) -> Vec<bool> {
    let mut member = vec![false; bound + 1];
    match c {
        0 => member.iter_mut().for_each(|m| *m = true),
        2 => member[0] = true,
        3 => {
            let mut queue = vec![0usize];
            while let Some(a) = queue.pop() {
                if a > bound || member[a] {
                    continue;
                }
                member[a] = true;
                if a % 2 == 0 {
                    for child in [3 * a, 3 * a + 1, 3 * a + 4, 3 * a + 5] {
                        if child != a {
                            queue.push(child);
                        }
                    }
                }
            }
        }
        p => {
            let p = p as usize;
            let pi = (p - 1) / 3;
            let mut queue: Vec<usize> = (0..=2 * pi).collect();
            while let Some(t) = queue.pop() {
                if t > bound || member[t] {
                    continue;
                }
                member[t] = true;
                if t % 2 == 0 && t > 0 {
                    queue.extend(p * t - 2 * pi - 1..=p * t + 2 * pi);
                }
            }
        }
    }
    member
}

/// Breadth-first closure of the recursive definition of D_p, up to `bound`.
pub fn enumerate_D(p: u64, bound: usize) -> Vec<bool> {
    let mut member = vec![false; bound + 1];
    let p = p as usize;
    let mut queue: Vec<usize> = if p == 3 {
        vec![0]
    } else {
        (0..=(p - 1) / 3).collect()
    };
    while let Some(d) = queue.pop() {
        if d > bound || member[d] {
            continue;
        }
        member[d] = true;
        if p == 3 {
            if d > 0 {
                queue.push(3 * d);
            }
            queue.push(3 * d + 2);
        } else if d > 0 {
            let pi = (p - 1) / 3;
            queue.extend(p * d - pi..=p * d + pi);
        }
    }
    member
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PdKind {
    Finite,
    Infinite,
}

/// Why a Finite verdict holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FiniteReason {
    /// n divides N.
    Divides,
    /// Characteristic 2 with n <= N.
    Char2,
    /// A pair (J, q) with |Jq - N/n| < {q/3}.
    Witness,
}

/// Verdict on pd_R Q with the decomposition N = theta*n + r.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PdVerdict {
    pub kind: PdKind,
    pub theta: i64,
    pub r: i64,
    pub witness: Option<TWitness>,
    pub reason: Option<FiniteReason>,
}

impl PdVerdict {
    pub fn is_infinite(&self) -> bool {
        self.kind == PdKind::Infinite
    }
}

fn ratio_witness(p: i64, n: i64, big_n: i64) -> Option<TWitness> {
    let mut q = p;
    let mut e = 1;
    while q * n <= 3 * (big_n + n) {
        for j in odd_candidates(big_n / (n * q)) {
            if (j * q * n - big_n).abs() < round_third(q) * n {
                return Some(TWitness { j, q, e });
            }
        }
        q *= p;
        e += 1;
    }
    None
}

/// Finite/Infinite verdict for pd_R Q over a field of characteristic `c`.
pub fn pd_verdict(c: u64, n: i64, big_n: i64) -> PdVerdict {
    let theta = big_n / n;
    let r = big_n % n;
    let finite = |reason, witness| PdVerdict {
        kind: PdKind::Finite,
        theta,
        r,
        witness,
        reason: Some(reason),
    };
    if r == 0 {
        return finite(FiniteReason::Divides, None);
    }
    if c == 2 && theta >= 1 {
        return finite(FiniteReason::Char2, None);
    }
    if c != 0 {
        if let Some(w) = ratio_witness(c as i64, n, big_n) {
            return finite(FiniteReason::Witness, Some(w));
        }
    }
    PdVerdict {
        kind: PdKind::Infinite,
        theta,
        r,
        witness: None,
        reason: None,
    }
}

/// Failures of the binomial valuation identities for one `d ∈ D_p` and all
/// `0 ≤ a ≤ 2d`.
pub fn valuation_identity_case(p: u64, d: i64) -> Vec<Violation> {
    let bv = |m: i64, i: i64| binom_val(m, i, p);
    let mut out = Vec::new();
    let mut check = |label: &str, a: i64, lhs: Valuation, rhs: Valuation, equal: bool| {
        let ok = if equal { lhs == rhs } else { lhs >= rhs };
        if !ok {
            out.push(Violation {
                identity: label.into(),
                params: vec![p as i64, d, a],
                lhs,
                rhs,
            });
        }
    };
    let central = bv(2 * d, d);
    check("a", 0, central, bv(3 * d, d), true);
    if p == 3 {
        let odd = bv(2 * d + 1, d);
        check("b", 0, odd, bv(3 * d + 2, d), true);
        for a in 0..=2 * d {
            check("c", a, bv(a, d) + bv(3 * d - a, d), central, false);
            check("d", a, bv(a, d) + bv(3 * d - 1 - a, d), central, false);
            check("e", a, bv(a, d) + bv(3 * d + 1 - a, d + 1), odd, false);
        }
    } else {
        for a in 0..=2 * d {
            check("b", a, bv(a, d) + bv(3 * d - a, d), central, false);
            check("c", a, bv(a, d) + bv(3 * d - 1 - a, d), central, false);
            check("d", a, bv(a, d - 1) + bv(3 * d - 2 - a, d), central, false);
        }
    }
    out
}

/// Failures of the binomial valuation identities over `d ∈ D_p`, `d ≤ dmax`.
pub fn valuation_identity_violations(mode: Mode, p: u64, dmax: i64) -> Vec<Violation> {
    let ds: Vec<i64> = (0..=dmax).filter(|&d| in_D(p, d)).collect();
    par::map(mode, ds, |d| valuation_identity_case(p, d)).into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn intervals(c: u64, upto: i64, pred: impl Fn(u64, i64) -> bool) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        let mut start = None;
        for a in 0..=upto + 1 {
            let m = a <= upto && pred(c, a);
            match (m, start) {
                (true, None) => start = Some(a),
                (false, Some(s)) => {
                    out.push((s, a - 1));
                    start = None;
                }
                _ => {}
            }
        }
        out
    }

    #[test]
    fn pi_values() {
        assert_eq!(pi_p(5), Ok(1));
        assert_eq!(pi_p(7), Ok(2));
        assert_eq!(pi_p(13), Ok(4));
        assert_eq!(pi_p(3), Err(Error::PrimeTooSmall(3)));
    }

    #[test]
    fn membership_examples() {
        assert!(in_D(3, 6));
        assert!(!in_D(3, 1));
        assert!(in_D(7, 5));
        assert!(in_S(3, 12));
        assert!(!in_S(2, 1));
        assert!(in_S(5, 8));
        assert!(in_S(0, 999));
    }

    #[test]
    fn t_examples() {
        assert_eq!(in_T(5, 3), Some(TWitness { j: 1, q: 5, e: 1 }));
        assert_eq!(in_T(3, 5), None);
        assert_eq!(in_T(0, 7), None);
        assert_eq!(in_T(3, 0), None);
    }

    #[test]
    fn t7_prefix() {
        let got = intervals(7, 106, |c, a| in_T(c, a).is_some());
        assert_eq!(got, vec![(5, 8), (19, 22), (33, 64), (75, 78), (89, 92), (103, 106)]);
    }

    #[test]
    fn s11_prefix() {
        let got = intervals(11, 72, in_S);
        assert_eq!(got, vec![(0, 6), (15, 28), (37, 50), (59, 72)]);
    }

    #[test]
    fn verdict_examples() {
        let v = pd_verdict(0, 2, 5);
        assert_eq!((v.kind, v.theta, v.r), (PdKind::Infinite, 2, 1));
        assert_eq!(pd_verdict(2, 3, 7).kind, PdKind::Finite);
        let v = pd_verdict(5, 3, 10);
        assert_eq!(v.kind, PdKind::Finite);
        assert_eq!(v.witness, Some(TWitness { j: 1, q: 5, e: 1 }));
        let v = pd_verdict(3, 2, 3);
        assert_eq!((v.kind, v.theta, v.r), (PdKind::Infinite, 1, 1));
    }

    #[test]
    fn char2_positive_integers_are_in_t() {
        assert!((1..2000).all(|a| in_T(2, a).is_some()));
    }

    #[test]
    fn small_partitions() {
        for c in [0, 2, 3, 5, 7] {
            for mode in [Mode::Parallel, Mode::Sequential] {
                assert!(partition_check_with(mode, c, 3000));
            }
        }
    }

    #[test]
    fn valuation_identities_need_d_in_d() {
        for p in [3u64, 5, 7] {
            assert!(valuation_identity_violations(Mode::Sequential, p, 200).is_empty());
        }
        assert!(!in_D(3, 1));
        assert!(!valuation_identity_case(3, 1).is_empty());
    }
}

