//! Sparse exact polynomials in at most three variables, and the polynomial
//! families Poly_{d,a,b}, 𝔓_θ, P_θ, H_{d,δ}, Q_{2δ-1} and 𝓡_θ.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::classifier::in_S;
use crate::error::{Error, Result};
use crate::numeric::{binom, padic_val, Valuation};

pub const ABC: &[&str] = &["A", "B", "C"];
pub const XYZ: &[&str] = &["x", "y", "z"];
pub const HB_VARS: &[&str] = &["X", "Y"];
pub const XY: &[&str] = &["x", "y"];

/// Coefficient characteristic plus variable names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ring {
    pub characteristic: u64,
    pub vars: &'static [&'static str],
}

impl Ring {
    pub fn new(characteristic: u64, vars: &'static [&'static str]) -> Self {
        assert!(vars.len() <= 3, "at most three variables");
        Ring {
            characteristic,
            vars,
        }
    }
    /// ℤ[A,B,C].
    pub fn abc() -> Self {
        Ring::new(0, ABC)
    }
    pub fn xyz(c: u64) -> Self {
        Ring::new(c, XYZ)
    }
    pub fn hb(c: u64) -> Self {
        Ring::new(c, HB_VARS)
    }
    pub fn xy(c: u64) -> Self {
        Ring::new(c, XY)
    }
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }
    pub fn with_char(self, c: u64) -> Self {
        Ring::new(c, self.vars)
    }
    fn normalize(&self, c: BigInt) -> BigInt {
        if self.characteristic == 0 {
            c
        } else {
            c.mod_floor(&BigInt::from(self.characteristic))
        }
    }
}

/// Exponent vector, ordered graded-lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Mono(pub [u32; 3]);

impl Mono {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
    pub fn mul(&self, other: &Mono) -> Mono {
        Mono([
            self.0[0] + other.0[0],
            self.0[1] + other.0[1],
            self.0[2] + other.0[2],
        ])
    }
    pub fn divides(&self, other: &Mono) -> bool {
        (0..3).all(|i| self.0[i] <= other.0[i])
    }
    pub fn div(&self, other: &Mono) -> Option<Mono> {
        if other.divides(self) {
            Some(Mono([
                self.0[0] - other.0[0],
                self.0[1] - other.0[1],
                self.0[2] - other.0[2],
            ]))
        } else {
            None
        }
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial with big-integer coefficients, reduced mod p in characteristic p.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: Ring,
    terms: BTreeMap<Mono, BigInt>,
}

impl Polynomial {
    pub fn zero(ring: Ring) -> Self {
        Polynomial {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: Ring, c: impl Into<BigInt>) -> Self {
        Self::monomial(ring, [0, 0, 0], c)
    }

    pub fn one(ring: Ring) -> Self {
        Self::constant(ring, 1)
    }

    pub fn monomial(ring: Ring, exps: [u32; 3], c: impl Into<BigInt>) -> Self {
        for (i, e) in exps.iter().enumerate() {
            assert!(i < ring.nvars() || *e == 0, "exponent on a missing variable");
        }
        let mut p = Self::zero(ring);
        p.add_term(Mono(exps), c.into());
        p
    }

    /// The `i`-th variable raised to `e`.
    pub fn var_pow(ring: Ring, i: usize, e: u32) -> Self {
        let mut exps = [0; 3];
        exps[i] = e;
        Self::monomial(ring, exps, 1)
    }

    pub fn var(ring: Ring, i: usize) -> Self {
        Self::var_pow(ring, i, 1)
    }

    /// Builds from `(exponents, coefficient)` pairs, combining repeats.
    pub fn from_terms(ring: Ring, terms: impl IntoIterator<Item = ([u32; 3], BigInt)>) -> Self {
        let mut p = Self::zero(ring);
        for (e, c) in terms {
            p.add_term(Mono(e), c);
        }
        p
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: [u32; 3]) -> BigInt {
        self.terms.get(&Mono(exps)).cloned().unwrap_or_default()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Mono::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Mono::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Nonzero constant.
    pub fn is_unit_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms.contains_key(&Mono::default())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    /// Single term with coefficient one.
    pub fn as_monomial(&self) -> Option<Mono> {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if c.is_one() {
                return Some(*m);
            }
        }
        None
    }

    pub fn leading(&self) -> Option<(&Mono, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub(crate) fn add_term(&mut self, m: Mono, c: BigInt) {
        let c = self.ring.normalize(c);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = self.ring.normalize(o.get() + c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check(&self, other: &Polynomial) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut acc: std::collections::HashMap<Mono, BigInt> = std::collections::HashMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                *acc.entry(m1.mul(m2)).or_default() += c1 * c2;
            }
        }
        let mut out = Polynomial::zero(self.ring);
        for (m, c) in acc {
            let c = self.ring.normalize(c);
            if !c.is_zero() {
                out.terms.insert(m, c);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> Polynomial {
        let mut out = Polynomial::zero(self.ring);
        for (m, d) in &self.terms {
            out.add_term(*m, d * c);
        }
        out
    }

    pub fn mul_mono(&self, m: &Mono) -> Polynomial {
        Polynomial {
            ring: self.ring,
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Ring homomorphism sending variable `i` to `images[i]`.
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.ring.nvars());
        let target = images
            .first()
            .map(|p| p.ring)
            .unwrap_or(self.ring);
        let mut cache: Vec<BTreeMap<u32, Polynomial>> = vec![BTreeMap::new(); images.len()];
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, img) in images.iter().enumerate() {
                let e = m.0[i];
                if e == 0 {
                    continue;
                }
                let pw = cache[i].entry(e).or_insert_with(|| img.pow(e)).clone();
                t = &t * &pw;
            }
            out = &out + &t;
        }
        out
    }

    /// Sends variable `i` to the monomial with exponent vector `images[i]` in `target`.
    pub fn substitute_powers(&self, target: Ring, images: &[[u32; 3]]) -> Polynomial {
        assert_eq!(images.len(), self.ring.nvars());
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut e = [0u32; 3];
            for (i, img) in images.iter().enumerate() {
                for k in 0..3 {
                    e[k] += img[k] * m.0[i];
                }
            }
            out.add_term(Mono(e), c.clone());
        }
        out
    }

    /// Same terms read in another characteristic (coefficients reduced).
    pub fn to_char(&self, c: u64) -> Polynomial {
        let ring = self.ring.with_char(c);
        let mut out = Polynomial::zero(ring);
        for (m, d) in &self.terms {
            out.add_term(*m, d.clone());
        }
        out
    }

    /// Divides every coefficient by the integer `d` (characteristic 0 only).
    pub fn div_exact_int(&self, d: &BigInt) -> Result<Polynomial> {
        let mut out = Polynomial::zero(self.ring);
        for (m, c) in &self.terms {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return Err(Error::NonIntegralCoefficient(format!("{c}/{d}")));
            }
            out.add_term(*m, q);
        }
        Ok(out)
    }

    /// Gcd of all coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Same exponents with variables permuted: variable `i` becomes `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Polynomial {
        let mut out = Polynomial::zero(self.ring);
        for (m, c) in &self.terms {
            let mut e = [0u32; 3];
            for (i, &j) in perm.iter().enumerate() {
                e[j] = m.0[i];
            }
            out.add_term(Mono(e), c.clone());
        }
        out
    }

    /// Homogeneous component of degree `d`.
    pub fn component(&self, d: u32) -> Polynomial {
        Polynomial {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Exact division by a monomial, if every term is divisible.
    pub fn div_mono(&self, m: &Mono) -> Option<Polynomial> {
        let mut out = Polynomial::zero(self.ring);
        for (k, c) in &self.terms {
            out.terms.insert(k.div(m)?, c.clone());
        }
        Some(out)
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $checked:ident) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("ring mismatch")
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$checked(&rhs).expect("ring mismatch")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&BigInt::from(-1))
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let mut factors = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.vars[i].to_string()),
                    _ => factors.push(format!("{}^{}", self.ring.vars[i], e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct TermJson {
    coeff: String,
    exp: Vec<u32>,
}

impl Serialize for Polynomial {
    /// Terms in descending graded-lex order.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (m, c) in self.terms.iter().rev() {
            seq.serialize_element(&TermJson {
                coeff: c.to_string(),
                exp: m.0[..self.ring.nvars()].to_vec(),
            })?;
        }
        seq.end()
    }
}

/// `Poly_{d,a,b}` written in variables `u`, `v` of ℤ[A,B,C]; zero when `d < 0`.
pub fn poly_dab_in(d: i64, a: i64, b: i64, u: usize, v: usize) -> Polynomial {
    let ring = Ring::abc();
    let mut out = Polynomial::zero(ring);
    for i in 0..=d {
        let mut e = [0u32; 3];
        e[u] += (d - i) as u32;
        e[v] += i as u32;
        let c = binom(a + d - i, a) * binom(b + i, b);
        out.add_term(Mono(e), if i % 2 == 0 { c } else { -c });
    }
    out
}

/// `Poly_{d,a,b}(A,B)`.
pub fn poly_dab(d: i64, a: i64, b: i64) -> Polynomial {
    poly_dab_in(d, a, b, 0, 1)
}

const A: usize = 0;
const B: usize = 1;
const C: usize = 2;

fn var(i: usize) -> Polynomial {
    Polynomial::var(Ring::abc(), i)
}

fn sign(k: i64) -> BigInt {
    if k.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `𝔓_θ(A,B,C)`; θ = 0 uses the even formula with δ = 0.
pub fn frak_p(theta: i64) -> Polynomial {
    if theta % 2 == 1 {
        let dl = (theta + 1) / 2;
        let pp = |u, v| poly_dab_in(dl - 1, dl, dl - 1, u, v);
        let t1 = (&var(A) * &pp(A, B) * pp(A, C)).scale(&sign(dl));
        let t2 = &var(B) * &pp(B, A) * pp(A, C);
        let t3 = &var(C) * &pp(A, B) * pp(C, A);
        t1 + t2 + t3
    } else {
        let dl = theta / 2;
        let p1 = |u, v| poly_dab_in(dl, dl, dl, u, v);
        let p2 = |u, v| poly_dab_in(dl - 1, dl, dl, u, v);
        let t1 = (&p1(A, B) * &p1(A, C)).scale(&sign(dl + 1));
        let t2 = &var(B) * &p2(B, A) * p1(A, C);
        let t3 = &var(C) * &p1(A, B) * p2(C, A);
        t1 + t2 + t3
    }
}

/// The integer `c_θ` with `P_θ = 𝔓_θ + c_θ·A^θ`.
pub fn big_p_coefficient(theta: i64) -> BigInt {
    if theta % 2 == 1 {
        let dl = (theta + 1) / 2;
        sign(dl + 1) * binom(2 * dl, dl) * binom(3 * dl - 1, dl - 1)
    } else {
        let dl = theta / 2;
        sign(dl) * binom(2 * dl, dl) * binom(3 * dl, dl)
    }
}

/// `P_θ(A,B,C)`, which lies in the ideal (A+B+C).
pub fn big_p(theta: i64) -> Polynomial {
    let a_pow = Polynomial::var_pow(Ring::abc(), A, theta as u32);
    frak_p(theta) + a_pow.scale(&big_p_coefficient(theta))
}

/// `f = (A+B+C)·q + r` with `r = f(-B-C, B, C)`; synthetic division in A.
pub fn divide_by_linear(f: &Polynomial) -> (Polynomial, Polynomial) {
    let ring = f.ring();
    assert_eq!(ring.vars, ABC, "divide_by_linear expects A, B, C");
    let top = f.terms().map(|(m, _)| m.0[0]).max().unwrap_or(0) as usize;
    let mut coeffs = vec![Polynomial::zero(ring); top + 1];
    for (m, c) in f.terms() {
        coeffs[m.0[0] as usize].add_term(Mono([0, m.0[1], m.0[2]]), c.clone());
    }
    let minus_s = -(Polynomial::var(ring, B) + Polynomial::var(ring, C));
    let mut q = vec![Polynomial::zero(ring); top.max(1)];
    let mut carry = Polynomial::zero(ring);
    for k in (0..=top).rev() {
        let cur = &coeffs[k] + &(&minus_s * &carry);
        if k == 0 {
            carry = cur;
        } else {
            q[k - 1] = cur.clone();
            carry = cur;
        }
    }
    let mut quotient = Polynomial::zero(ring);
    for (k, qk) in q.iter().enumerate() {
        quotient = quotient + qk.mul_mono(&Mono([k as u32, 0, 0]));
    }
    (quotient, carry)
}

/// `H_{d,δ}(A,B)`.
pub fn h_poly(d: i64, delta: i64) -> Polynomial {
    h_poly_in(d, delta, A, B)
}

fn h_poly_in(d: i64, delta: i64, u: usize, v: usize) -> Polynomial {
    let mut out = Polynomial::zero(Ring::abc());
    for i in 0..=d {
        let mut e = [0u32; 3];
        e[u] += (d - i) as u32;
        e[v] += i as u32;
        let c = binom(2 * delta - 1 - i, d - i) * binom(d + i, d);
        out.add_term(Mono(e), sign(i) * c);
    }
    out
}

/// The closed form `Q_{2δ-1}`, certified integral and equal to `P_{2δ-1}/(A+B+C)`.
pub fn q_closed(delta: i64) -> Result<Polynomial> {
    let mut parts = Vec::new();
    let mut lcm = BigInt::one();
    for d in 0..delta {
        let num = sign(delta + 1)
            * binom(3 * delta - 1, 2 * delta + d)
            * binom(2 * delta - d - 1, delta)
            * BigInt::from(2 * d + 1);
        let den = BigInt::from(delta) * binom(delta - 1, d).pow(2);
        let g = num.gcd(&den);
        let (num, den) = (num / &g, den / &g);
        lcm = lcm.lcm(&den);
        let body = &h_poly_in(d, delta, A, B) * &h_poly_in(d, delta, A, C);
        let body = body.mul_mono(&Mono([2 * (delta - d - 1) as u32, 0, 0]));
        parts.push((num, den, body));
    }
    let mut total = Polynomial::zero(Ring::abc());
    for (num, den, body) in parts {
        total = total + body.scale(&(num * (&lcm / den)));
    }
    let q = total.div_exact_int(&lcm)?;
    let s = Polynomial::from_terms(
        Ring::abc(),
        [([1, 0, 0], BigInt::one()), ([0, 1, 0], BigInt::one()), ([0, 0, 1], BigInt::one())],
    );
    if &s * &q != big_p(2 * delta - 1) {
        return Err(Error::NonIntegralCoefficient(format!(
            "(A+B+C)·Q_{} differs from P_{}",
            2 * delta - 1,
            2 * delta - 1
        )));
    }
    Ok(q)
}

/// Whether `P_{2δ} + 3A·P_{2δ-1} + (-1)^δ A(A+B+C)·Poly_{δ-1,δ,δ}(A,B)·Poly_{δ-1,δ,δ}(A,C)` vanishes.
pub fn l2b_check(delta: i64) -> bool {
    let s = var(A) + var(B) + var(C);
    let tail = &var(A) * &s * poly_dab_in(delta - 1, delta, delta, A, B)
        * poly_dab_in(delta - 1, delta, delta, A, C);
    let total = big_p(2 * delta)
        + (&var(A) * &big_p(2 * delta - 1)).scale(&BigInt::from(3))
        + tail.scale(&sign(delta));
    total.is_zero()
}

/// Normalizing data γ, Γ and the unit u_θ for a given characteristic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScaleData {
    pub theta: i64,
    pub delta: i64,
    /// The char-3 parameter: δ for even θ, δ-1 for odd θ.
    pub d: Option<i64>,
    #[serde(serialize_with = "ser_big")]
    pub gamma: BigInt,
    #[serde(serialize_with = "ser_big_opt", rename = "Gamma")]
    pub big_gamma: Option<BigInt>,
    #[serde(serialize_with = "ser_big")]
    pub unit: BigInt,
}

fn ser_big<S: Serializer>(b: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&b.to_string())
}

fn ser_big_opt<S: Serializer>(b: &Option<BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match b {
        Some(b) => s.serialize_str(&b.to_string()),
        None => s.serialize_none(),
    }
}

impl ScaleData {
    /// The divisor of the Poly factors in ψ (Γ in the char-3 odd case, γ otherwise).
    pub fn poly_divisor(&self) -> &BigInt {
        self.big_gamma.as_ref().unwrap_or(&self.gamma)
    }
}

fn power_part(m: &BigInt, p: u64) -> BigInt {
    match padic_val(m, p).expect("prime") {
        Valuation::Finite(v) => BigInt::from(p).pow(v as u32),
        Valuation::Infinity => unreachable!("nonzero binomial"),
    }
}

/// γ (and Γ) with the unit u_θ; requires θ ∈ S_c.
pub fn scale_data(c: u64, theta: i64) -> Result<ScaleData> {
    if !in_S(c, theta) {
        return Err(Error::NotInS(theta));
    }
    let odd = theta % 2 == 1;
    let delta = if odd { (theta + 1) / 2 } else { theta / 2 };
    let (d, gamma, big_gamma) = match c {
        0 | 2 => (None, BigInt::one(), None),
        3 => {
            let d = if odd { delta - 1 } else { delta };
            let gamma = power_part(&binom(2 * d, d), 3);
            let big = odd.then(|| power_part(&binom(2 * d + 1, d), 3));
            (Some(d), gamma, big)
        }
        p => (None, power_part(&binom(2 * delta, delta), p), None),
    };
    let divisor = big_gamma.clone().unwrap_or_else(|| gamma.clone());
    let unit = big_p_coefficient(theta) / (&divisor * &divisor);
    if c != 0 && (&unit % BigInt::from(c)).is_zero() {
        return Err(Error::NonUnit(unit.to_string()));
    }
    Ok(ScaleData {
        theta,
        delta,
        d,
        gamma,
        big_gamma,
        unit,
    })
}

/// `𝓡_θ = (𝔓_θ/divisor² + u_θ A^θ)/(A+B+C)` over ℤ.
pub fn cal_r(c: u64, theta: i64) -> Result<Polynomial> {
    let sd = scale_data(c, theta)?;
    let div = sd.poly_divisor();
    let scaled = frak_p(theta).div_exact_int(&(div * div))?;
    let num = scaled + Polynomial::var_pow(Ring::abc(), A, theta as u32).scale(&sd.unit);
    let (q, r) = divide_by_linear(&num);
    if !r.is_zero() {
        return Err(Error::NonIntegralCoefficient(format!(
            "𝔓'_{theta} + u·A^{theta} is not divisible by A+B+C"
        )));
    }
    Ok(q)
}
