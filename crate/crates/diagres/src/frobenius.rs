//! Frobenius powers `Q_{p^t N}` and the two-variable analogue
//! `k[x,y]/(x^n+y^n, x^N, y^N)`.

use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use serde::Serialize;

use crate::classifier::{in_S, pd_verdict, validate_char, PdVerdict};
use crate::error::{Error, Result};
use crate::numeric::{digit_expand, is_prime};
use crate::par::{self, Mode};
use crate::pfaffian::Matrix;
use crate::polyring::{Polynomial, Ring};
use crate::resolver::{second_syzygy, socle_degrees, GradedMap, GradedResolution, Tail};

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NonPrime(p))
    }
}

fn require_coprime(p: u64, n: u64) -> Result<()> {
    if gcd(p, n) == 1 {
        Ok(())
    } else {
        Err(Error::NotCoprime(p, n))
    }
}

fn overflow() -> Error {
    Error::OutOfRange("Frobenius power exceeds 64-bit range".into())
}

fn checked_pow(p: u64, e: u32) -> Result<u64> {
    p.checked_pow(e).ok_or_else(overflow)
}

/// `p^t · N` as a signed integer.
fn frob(p: u64, t: u32, big_n: u64) -> Result<i64> {
    checked_pow(p, t)?
        .checked_mul(big_n)
        .and_then(|v| i64::try_from(v).ok())
        .ok_or_else(overflow)
}

fn verdict(p: u64, n: u64, big_n: i64) -> PdVerdict {
    pd_verdict(p, n as i64, big_n)
}

/// Least `o ≥ 1` with `p^o ≡ 1 mod n`.
pub fn mult_order(p: u64, n: u64) -> Result<u32> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("n = {n}, expected n >= 2")));
    }
    require_coprime(p, n)?;
    let (p, n) = (u128::from(p % n), u128::from(n));
    let mut x = p;
    let mut o = 1;
    while x != 1 {
        x = x * p % n;
        o += 1;
    }
    Ok(o)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(a: i64) -> Self {
        if a % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Isomorphism class, up to shift, of the second syzygy of `Q_N`.
///
/// Infinite classes are determined by the first index of the presenting
/// matrix `φ_{s, n-s}`: `s = n - r` for even θ and `s = r` for odd θ.
/// All free classes coincide.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TailClass {
    pub n: i64,
    pub r: i64,
    pub parity: Parity,
    pub free: bool,
}

impl TailClass {
    pub fn from_verdict(n: i64, v: &PdVerdict) -> Self {
        TailClass {
            n,
            r: v.r,
            parity: Parity::of(v.theta),
            free: !v.is_infinite(),
        }
    }

    pub fn of(c: u64, n: i64, big_n: i64) -> Self {
        Self::from_verdict(n, &pd_verdict(c, n, big_n))
    }

    /// First index of the presenting matrix, or None when free.
    pub fn key(&self) -> Option<i64> {
        if self.free {
            return None;
        }
        Some(match self.parity {
            Parity::Even => self.n - self.r,
            Parity::Odd => self.r,
        })
    }
}

impl PartialEq for TailClass {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.key() == other.key()
    }
}

impl Eq for TailClass {}

impl Hash for TailClass {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.n.hash(h);
        self.key().hash(h);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PeriodCase {
    /// Some `Q_{p^t N}` has finite projective dimension.
    EventuallyFree,
    /// Every scanned `Q_{p^t N}` has infinite projective dimension.
    Periodic,
}

/// Periodicity of the tail class of `Q_{p^t N}` in `t`.
#[derive(Debug, Clone, Serialize)]
pub struct PeriodReport {
    pub p: u64,
    pub n: u64,
    #[serde(rename = "N")]
    pub big_n: u64,
    pub order: u32,
    pub case: PeriodCase,
    pub q: u64,
    pub e: u32,
    pub t0: u32,
    /// Tail classes for `t = 0..=scan`.
    pub classes: Vec<TailClass>,
    pub scan: u32,
    /// Least period of the scanned classes from `t0` on.
    pub observed_period: Option<u32>,
    /// The reported `e` is a period of the scanned classes from `t0` on.
    pub periodic: bool,
    /// Only `t ≤ scan` was examined.
    pub bounded: bool,
    /// The reported behaviour holds for every `t`: once free, Frobenius keeps
    /// the resolution finite; in the periodic case infinitude follows from the
    /// digit criterion for `N ≡ 1 mod n`.
    pub certified: bool,
}

fn least_period<T: PartialEq>(seq: &[T]) -> Option<u32> {
    (1..seq.len()).find(|&d| (0..seq.len() - d).all(|t| seq[t] == seq[t + d])).map(|d| d as u32)
}

fn has_period<T: PartialEq>(seq: &[T], d: usize) -> bool {
    d >= 1 && (0..seq.len().saturating_sub(d)).all(|t| seq[t] == seq[t + d])
}

/// Scans `Q_{p^t N}` for `t ≤ 2o + 4` and reports the Frobenius period.
pub fn tail_period(p: u64, n: u64, big_n: u64) -> Result<PeriodReport> {
    require_prime(p)?;
    let o = mult_order(p, n)?;
    if big_n == 0 {
        return Err(Error::OutOfRange("N must be positive".into()));
    }
    let scan = 2 * o + 4;
    let classes = (0..=scan)
        .map(|t| Ok(TailClass::of(p, n as i64, frob(p, t, big_n)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut report = PeriodReport {
        p,
        n,
        big_n,
        order: o,
        case: PeriodCase::Periodic,
        q: p,
        e: 1,
        t0: 0,
        classes,
        scan,
        observed_period: None,
        periodic: false,
        bounded: true,
        certified: false,
    };
    if let Some(t0) = report.classes.iter().position(|c| c.free) {
        let rest = &report.classes[t0..];
        report.case = PeriodCase::EventuallyFree;
        report.t0 = t0 as u32;
        report.observed_period = least_period(rest).or(Some(1));
        report.periodic = rest.iter().all(|c| c.free);
        report.certified = report.periodic;
        return Ok(report);
    }
    let b1 = (checked_pow(p, o)? - 1) / n;
    let e = if b1 % 2 == 0 { o } else { 2 * o };
    report.e = e;
    report.q = checked_pow(p, e)?;
    report.observed_period = least_period(&report.classes);
    report.periodic = has_period(&report.classes, e as usize);
    report.certified = big_n % n == 1 % n && digit_criterion_applies(p, n) && {
        let b = (checked_pow(p, o)? - 1) / n;
        let a = (big_n / n) as i64;
        even_in_s(p, a) && even_in_s(p, b as i64)
    };
    Ok(report)
}

fn even_in_s(p: u64, a: i64) -> bool {
    a % 2 == 0 && in_S(p, a)
}

fn digit_criterion_applies(p: u64, n: u64) -> bool {
    p >= 3 && (n >= 4 || (n == 3 && p % 3 == 2)) && gcd(p, n) == 1
}

fn uniform_shift(a: &[i64], b: &[i64]) -> Option<i64> {
    if a.len() != b.len() || a.is_empty() {
        return None;
    }
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    a.sort_unstable();
    b.sort_unstable();
    let w = b[0] - a[0];
    a.iter().zip(&b).all(|(x, y)| y - x == w).then_some(w)
}

/// `w` with `soc Q_{N2} ≅ soc Q_{N1}(-w)`, if the socle degrees differ by a uniform shift.
pub fn socle_shift(c: u64, n: u32, n1: u32, n2: u32) -> Result<Option<i64>> {
    Ok(uniform_shift(&socle_degrees(c, n, n1)?, &socle_degrees(c, n, n2)?))
}

/// `w` with the presentation of `syz₂ Q_{N2}` equal to that of `syz₂ Q_{N1}`
/// raised by `w` in every degree, compared as degree multisets.
pub fn presentation_shift(c: u64, n: u32, n1: u32, n2: u32) -> Result<Option<i64>> {
    let (m1, m2) = (second_syzygy(c, n, n1)?, second_syzygy(c, n, n2)?);
    Ok(map_shift(&m1, &m2))
}

fn map_shift(a: &GradedMap, b: &GradedMap) -> Option<i64> {
    let ws = uniform_shift(a.source(), b.source())?;
    let wt = uniform_shift(a.target(), b.target())?;
    (ws == wt).then_some(ws)
}

/// Shift between the tails of `Q_{N1}` and `Q_{N2}`, or None when the
/// tail classes differ.
pub fn tail_compare(c: u64, n: u32, n1: u32, n2: u32) -> Result<Option<i64>> {
    validate_char(c)?;
    let (v1, v2) = (
        pd_verdict(c, i64::from(n), i64::from(n1)),
        pd_verdict(c, i64::from(n), i64::from(n2)),
    );
    if !v1.is_infinite() || !v2.is_infinite() {
        return Err(Error::NotInfinite);
    }
    let n_ = i64::from(n);
    if TailClass::from_verdict(n_, &v1) != TailClass::from_verdict(n_, &v2) {
        return Ok(None);
    }
    if n2 % n1 == 0 {
        let q = i64::from(n2 / n1);
        return Ok(Some(3 * i64::from(n1) * (q - 1) / 2));
    }
    presentation_shift(c, n, n1, n2)?
        .map(Some)
        .ok_or_else(|| Error::ConstructionFailed(format!("presentations for N = {n1}, {n2} do not match")))
}

/// Whether `k[x,y,z]/(x^n+y^n+z^n)` is F-injective in characteristic `p`.
pub fn f_injective(p: u64, n: u64) -> Result<bool> {
    require_prime(p)?;
    if n < 2 {
        return Err(Error::OutOfRange(format!("n = {n}, expected n >= 2")));
    }
    if (p, n) == (2, 2) || (p, n) == (3, 3) {
        return Err(Error::Unsupported(format!("p = n = {p}")));
    }
    require_coprime(p, n)?;
    Ok(!(n >= 4 || (n == 3 && p % 3 == 2)))
}

/// `N` with `pd Q_N` infinite and `pd Q_{pN}` finite.
pub fn frobenius_counterexample(p: u64, n: u64) -> Result<u64> {
    if f_injective(p, n)? {
        return Err(Error::ConditionFails(format!("the ring is F-injective for p = {p}, n = {n}")));
    }
    let big_n = match p {
        2 => n - 1,
        3 => n + 1,
        _ if p % 3 == 1 => n * (p - (p - 1) / 3) - 1,
        _ => n * (p - (p + 1) / 3) - 1,
    };
    let before = verdict(p, n, big_n as i64);
    let after = verdict(p, n, frob(p, 1, big_n)?);
    if before.is_infinite() && !after.is_infinite() {
        Ok(big_n)
    } else {
        Err(Error::ConstructionFailed(format!("N = {big_n} is not a counterexample")))
    }
}

/// For every `N ≤ nmax`: finite pd at `pN` implies finite pd at `N`.
pub fn prop28_check(p: u64, n: u64, nmax: u64) -> Result<bool> {
    prop28_check_with(Mode::default(), p, n, nmax)
}

pub fn prop28_check_with(mode: Mode, p: u64, n: u64, nmax: u64) -> Result<bool> {
    require_prime(p)?;
    if !((p % 3 == 1 && n == 3) || (p % 2 == 1 && n == 2)) {
        return Err(Error::ConditionFails(format!("p = {p}, n = {n}")));
    }
    let ok = par::map(mode, (1..=nmax).collect(), |big_n| -> Result<bool> {
        let up = verdict(p, n, frob(p, 1, big_n)?);
        Ok(up.is_infinite() || !verdict(p, n, big_n as i64).is_infinite())
    });
    ok.into_iter().try_fold(true, |acc, r| Ok(acc && r?))
}

fn concat_digits(b: &[i64], width: usize, a: &[i64]) -> Vec<i64> {
    let mut out = b.to_vec();
    out.resize(width, 0);
    out.extend_from_slice(a);
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// For `N = an + 1`, `a ≤ amax`: bounded all-`t` infinitude, infinitude at
/// `q²N` and "a, b even elements of `S_p`" agree, with `q = p^o = bn + 1`.
/// Also checks that `qa + b ∈ S_p` forces `a` even, that `b` has at most `e`
/// balanced digits for `q = p^e` (p ≥ 5), and that the tail classes of
/// `Q_{q^s N}` agree for `s ≤ 2` whenever the conditions hold.
pub fn digit_criterion_check(p: u64, n: u64, amax: u64) -> Result<bool> {
    digit_criterion_check_with(Mode::default(), p, n, amax)
}

pub fn digit_criterion_check_with(mode: Mode, p: u64, n: u64, amax: u64) -> Result<bool> {
    require_prime(p)?;
    require_coprime(p, n)?;
    if !digit_criterion_applies(p, n) {
        return Err(Error::ConditionFails(format!("p = {p}, n = {n}")));
    }
    let o = mult_order(p, n)?;
    let q = checked_pow(p, o)?;
    let b = ((q - 1) / n) as i64;
    let b_ok = even_in_s(p, b);
    let powers: Vec<(i64, i64)> = [o, 2 * o]
        .iter()
        .map(|&e| {
            let qe = checked_pow(p, e)?;
            Ok((qe as i64, ((qe - 1) / n) as i64))
        })
        .collect::<Result<_>>()?;
    if p >= 5 {
        for (&e, &(_, be)) in [o, 2 * o].iter().zip(&powers) {
            if digit_expand(be, p)?.digits.len() > e as usize {
                return Ok(false);
            }
        }
    }
    let b_digits = if p >= 5 { Some(digit_expand(b, p)?.digits) } else { None };
    let results = par::map(mode, (0..=amax).collect(), |a| -> Result<bool> {
        let big_n = a * n + 1;
        let ai = a as i64;
        let mut all_t = true;
        for t in 0..=2 * o + 2 {
            all_t &= verdict(p, n, frob(p, t, big_n)?).is_infinite();
        }
        let at_q2 = verdict(p, n, frob(p, 2 * o, big_n)?).is_infinite();
        let digits = even_in_s(p, ai) && b_ok;
        if all_t != at_q2 || at_q2 != digits {
            return Ok(false);
        }
        for &(qe, be) in &powers {
            let m = qe.checked_mul(ai).and_then(|v| v.checked_add(be)).ok_or_else(overflow)?;
            if in_S(p, m) && ai % 2 != 0 {
                return Ok(false);
            }
        }
        if let Some(bd) = &b_digits {
            let m = (q as i64).checked_mul(ai).and_then(|v| v.checked_add(b)).ok_or_else(overflow)?;
            let want = concat_digits(bd, o as usize, &digit_expand(ai, p)?.digits);
            if digit_expand(m, p)?.digits != want {
                return Ok(false);
            }
        }
        if digits {
            let base = TailClass::of(p, n as i64, big_n as i64);
            for s in 1..=2 {
                if TailClass::of(p, n as i64, frob(q, s, big_n)?) != base {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    });
    results.into_iter().try_fold(true, |acc, r| Ok(acc && r?))
}

fn split(n: u32, big_n: u32) -> Result<(u32, u32)> {
    if n == 0 || big_n == 0 {
        return Err(Error::OutOfRange("n and N must be positive".into()));
    }
    Ok((big_n / n, big_n % n))
}

fn sign(k: u32) -> BigInt {
    BigInt::from(if k % 2 == 0 { 1 } else { -1 })
}

fn xy(ring: Ring, i: u32, j: u32, c: BigInt) -> Polynomial {
    Polynomial::monomial(ring, [i, j, 0], c)
}

fn describe_twovar(n: u32, big_n: u32) -> String {
    format!("k[x,y]/(x^{n}+y^{n}, x^{big_n}, y^{big_n})")
}

/// The matrices `D` and its classical adjoint `Ď`.
pub fn twovar_matrices(n: u32, big_n: u32, c: u64) -> Result<(Matrix, Matrix)> {
    validate_char(c)?;
    let (a, r) = split(n, big_n)?;
    let ring = Ring::xy(c);
    let d = Matrix::from_rows(
        ring,
        vec![
            vec![xy(ring, n - r, 0, 1.into()), xy(ring, 0, r, sign(a + 1))],
            vec![xy(ring, 0, n - r, sign(a)), xy(ring, r, 0, 1.into())],
        ],
    );
    let dc = Matrix::from_rows(
        ring,
        vec![
            vec![xy(ring, r, 0, 1.into()), xy(ring, 0, r, sign(a))],
            vec![xy(ring, 0, n - r, sign(a + 1)), xy(ring, n - r, 0, 1.into())],
        ],
    );
    Ok((d, dc))
}

/// `x^n + y^n` in `k[x,y]`.
pub fn twovar_f(n: u32, c: u64) -> Polynomial {
    let ring = Ring::xy(c);
    xy(ring, n, 0, 1.into()) + xy(ring, 0, n, 1.into())
}

/// The length-two resolution of `k[x,y]/(x^N, y^N, x^n+y^n)` over `k[x,y]`.
pub fn twovar_p_resolution(n: u32, big_n: u32, c: u64) -> Result<GradedResolution> {
    let (d, _) = twovar_matrices(n, big_n, c)?;
    let (a, r) = split(n, big_n)?;
    let ring = Ring::xy(c);
    let l = -(0..=a)
        .map(|i| xy(ring, n * (a - i), n * i, sign(i)))
        .fold(Polynomial::zero(ring), |s, t| s + t);
    let m = (0..a)
        .map(|i| xy(ring, r + n * (a - 1 - i), r + n * i, sign(i) * sign(a)))
        .fold(Polynomial::zero(ring), |s, t| s + t);
    let bn = i64::from(big_n);
    let (n_, r_) = (i64::from(n), i64::from(r));
    let d1 = GradedMap::new(
        Matrix::from_rows(ring, vec![vec![xy(ring, big_n, 0, 1.into()), xy(ring, 0, big_n, 1.into()), twovar_f(n, c)]]),
        vec![bn, bn, n_],
        vec![0],
    )?;
    let d2 = Matrix::vstack(&d, &Matrix::from_rows(ring, vec![vec![l, m]]));
    let d2 = GradedMap::new(d2, vec![bn + n_ - r_, bn + r_], vec![bn, bn, n_])?;
    Ok(GradedResolution::new("P", describe_twovar(n, big_n), vec![d1, d2], None, a >= 1 && r >= 1))
}

/// The resolution of `k[x,y]/(x^N, y^N, x^n+y^n)` over `k[x,y]/(x^n+y^n)`,
/// periodic after the first map.
pub fn twovar_r_resolution(n: u32, big_n: u32, c: u64) -> Result<GradedResolution> {
    let (d, dc) = twovar_matrices(n, big_n, c)?;
    let (_, r) = split(n, big_n)?;
    let ring = Ring::xy(c);
    let bn = i64::from(big_n);
    let (n_, r_) = (i64::from(n), i64::from(r));
    let d1 = GradedMap::new(
        Matrix::from_rows(ring, vec![vec![xy(ring, big_n, 0, 1.into()), xy(ring, 0, big_n, 1.into())]]),
        vec![bn, bn],
        vec![0],
    )?;
    let d2 = GradedMap::new(d, vec![bn + n_ - r_, bn + r_], vec![bn, bn])?;
    let d3 = GradedMap::new(dc, vec![bn + n_, bn + n_], d2.source().to_vec())?;
    let d4 = d2.shifted(n_);
    let tail = Tail {
        maps: vec![d3, d4],
        period_shift: n_,
    };
    Ok(GradedResolution::new("R", describe_twovar(n, big_n), vec![d1, d2], Some(tail), r >= 1))
}

/// Socle degrees of the two-variable quotient, sorted: `{N+n-r-2, N+r-2}`,
/// or `{2N-2}` when `N < n` and the quotient is `k[x,y]/(x^N, y^N)`.
pub fn twovar_socle_degrees(n: u32, big_n: u32) -> Result<Vec<i64>> {
    let (a, r) = split(n, big_n)?;
    let (n, bn, r) = (i64::from(n), i64::from(big_n), i64::from(r));
    if a == 0 {
        return Ok(vec![2 * bn - 2]);
    }
    let mut v = vec![bn + n - r - 2, bn + r - 2];
    v.sort_unstable();
    Ok(v)
}

/// Shift `w = N2 - N1` between the first syzygies when `N1 ≡ ±N2 mod n`.
pub fn twovar_equiv(n: u64, n1: u64, n2: u64) -> Result<Option<i64>> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be positive".into()));
    }
    for m in [n1, n2] {
        if m % n == 0 {
            return Err(Error::Divisible(m));
        }
    }
    let matches = (n1 + n - n2 % n) % n == 0 || (n1 + n2) % n == 0;
    Ok(matches.then(|| n2 as i64 - n1 as i64))
}

/// Two-variable tail class: the residue pair `{M mod n, -M mod n}`.
pub fn twovar_class(n: u64, m: u64) -> u64 {
    let r = m % n;
    r.min(n - r)
}

/// Least period in `t` of the two-variable tail class of `Q_{p^t N}` with `n = p^e + 1`.
pub fn twovar_period(p: u64, e: u32, big_n: u64) -> Result<u32> {
    require_prime(p)?;
    if e == 0 {
        return Err(Error::OutOfRange("e must be positive".into()));
    }
    let n = checked_pow(p, e)? + 1;
    if gcd(big_n, n) != 1 {
        return Err(Error::NotCoprime(big_n, n));
    }
    let (p_, n_) = (u128::from(p), u128::from(n));
    let mut res = u128::from(big_n) % n_;
    let mut classes = Vec::new();
    for _ in 0..=4 * e + 4 {
        classes.push(twovar_class(n, res as u64));
        res = res * p_ % n_;
    }
    least_period(&classes).ok_or_else(|| Error::ConstructionFailed("no period within scan".into()))
}
