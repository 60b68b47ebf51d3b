//! Cross-module verification sweeps shared by the CLI `verify` command and
//! the acceptance harness.

use serde::Serialize;

use crate::classifier::{partition_check_with, pd_verdict, valuation_identity_violations};
use crate::error::{Error, Result};
use crate::finitepd::{finite_resolution, hb_matrix, unbalanced_predicted};
use crate::frobenius::{
    mult_order, digit_criterion_check_with, presentation_shift, prop28_check_with, socle_shift, tail_compare, tail_period,
    twovar_equiv, twovar_f, twovar_matrices, twovar_p_resolution, twovar_period, twovar_r_resolution,
    twovar_socle_degrees, PeriodCase,
};
use crate::numeric::{reduction_violations, ternary_violations};
use crate::oracle::{colon_ideal, frobenius_gens, ideals_equal, pd_probe, socle, socle_compute, GradedRing, PdProbe};
use crate::par::{self, Mode};
use crate::pfaffian::Matrix;
use crate::polyring::{big_p, divide_by_linear, l2b_check, q_closed, Polynomial, Ring};
use crate::resolver::{
    build_witness, colon_generators, gorenstein_resolution, p_resolution, r_resolution, socle_degrees,
};

/// Outcome of one sweep.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport {
            name: name.into(),
            checked: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn absorb(&mut self, results: Vec<Vec<String>>) {
        self.checked += results.len();
        self.failures.extend(results.into_iter().flatten());
    }
}

/// Names accepted by [`run`].
pub const SUITES: &[&str] = &[
    "partition",
    "valuations",
    "nandi",
    "crit",
    "referee",
    "hb",
    "frobenius",
    "twovar",
];

/// Runs the suite `name` with its main bound replaced by `max` when given.
pub fn run(name: &str, mode: Mode, max: Option<u32>) -> Result<SuiteReport> {
    let m = |d: u32| max.unwrap_or(d);
    Ok(match name {
        "partition" => partition(mode, &[0, 2, 3, 5, 7, 11, 13], i64::from(m(100_000))),
        "valuations" => valuations(mode, &[3, 5, 7, 11, 13], i64::from(m(2000))),
        "nandi" => polynomial_identities(mode, i64::from(m(24)), 10),
        "crit" => crit(mode, &[0, 2, 3, 5, 7], 5, m(40)),
        "referee" => referee(mode, &[0, 2, 3, 5], 4, m(20)),
        "hb" => hilbert_burch(mode, &[2, 3, 5, 7], m(60), &[0, 2, 3, 5], 4, 20),
        "frobenius" => frobenius(mode, m(30)),
        "twovar" => twovar(mode, 8, m(40)),
        _ => return Err(Error::Unsupported(format!("unknown suite {name}"))),
    })
}

/// `S_c` and `T_c` partition `0..=bound`.
pub fn partition(mode: Mode, chars: &[u64], bound: i64) -> SuiteReport {
    let mut rep = SuiteReport::new("partition");
    for &c in chars {
        rep.checked += 1;
        if !partition_check_with(mode, c, bound) {
            rep.failures.push(format!("c={c}: S_c and T_c do not partition 0..={bound}"));
        }
    }
    rep
}

/// Binomial valuation identities over `D_p`, plus the 3-adic and p-adic
/// reduction tables.
pub fn valuations(mode: Mode, primes: &[u64], dmax: i64) -> SuiteReport {
    let mut rep = SuiteReport::new("valuations");
    for &p in primes {
        rep.checked += 1;
        for v in valuation_identity_violations(mode, p, dmax).into_iter().take(5) {
            rep.failures.push(format!("binomial identity {} at {:?}", v.identity, v.params));
        }
    }
    let aug = par::map(mode, vec![3u64, 5, 7], |p| reduction_violations(p, 60, |d| 3 * d + 3));
    for v in aug.into_iter().flatten().take(5) {
        rep.failures.push(format!("p-adic reduction {} at {:?}", v.identity, v.params));
    }
    for v in ternary_violations(200, 60).into_iter().take(5) {
        rep.failures.push(format!("3-adic reduction {} at {:?}", v.identity, v.params));
    }
    rep.checked += 2;
    rep
}

/// Divisibility of `P_θ` by `A+B+C`, the closed quotient and the vanishing
/// combination.
pub fn polynomial_identities(mode: Mode, theta_max: i64, delta_max: i64) -> SuiteReport {
    let mut rep = SuiteReport::new("nandi");
    let div = par::map(mode, (1..=theta_max).collect(), |t| {
        if divide_by_linear(&big_p(t)).1.is_zero() {
            vec![]
        } else {
            vec![format!("P_{t} is not divisible by A+B+C")]
        }
    });
    rep.absorb(div);
    let closed = par::map(mode, (1..=delta_max).collect(), |d| {
        let mut out = Vec::new();
        match q_closed(d) {
            Ok(q) if q == divide_by_linear(&big_p(2 * d - 1)).0 => {}
            Ok(_) => out.push(format!("closed quotient differs for delta={d}")),
            Err(e) => out.push(format!("delta={d}: {e}")),
        }
        if !l2b_check(d) {
            out.push(format!("vanishing combination fails for delta={d}"));
        }
        out
    });
    rep.absorb(closed);
    rep
}

fn cases(chars: &[u64], nmax: u32, bigmax: u32, infinite: Option<bool>) -> Vec<(u64, u32, u32)> {
    let mut v = Vec::new();
    for &c in chars {
        for n in 1..=nmax {
            for big_n in 1..=bigmax {
                let inf = pd_verdict(c, n.into(), big_n.into()).is_infinite();
                if infinite.map_or(true, |want| want == inf) {
                    v.push((c, n, big_n));
                }
            }
        }
    }
    v
}

/// The defining identity of the Infinite-case witness, with a unit `u`.
pub fn crit(mode: Mode, chars: &[u64], nmax: u32, bigmax: u32) -> SuiteReport {
    let mut rep = SuiteReport::new("crit");
    let res = par::map(mode, cases(chars, nmax, bigmax, Some(true)), |(c, n, big_n)| {
        match build_witness(c, n, big_n) {
            Ok(_) => vec![],
            Err(e) => vec![format!("({c},{n},{big_n}): {e}")],
        }
    });
    rep.absorb(res);
    rep
}

fn fermat_poly(ring: Ring, n: u32) -> Polynomial {
    (0..3).map(|i| Polynomial::var_pow(ring, i, n)).fold(Polynomial::zero(ring), |a, b| a + b)
}

fn referee_case(c: u64, n: u32, big_n: u32) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let tag = format!("({c},{n},{big_n})");
    let verdict = pd_verdict(c, n.into(), big_n.into());
    let cutoff = 3 * big_n as usize + 3;
    let probe = pd_probe(c, n, big_n, 4)?;
    let agrees = matches!(
        (&probe, verdict.is_infinite()),
        (PdProbe::Finite { .. }, false) | (PdProbe::InfiniteEvidence { .. }, true)
    );
    if !agrees {
        out.push(format!("{tag}: verdict {:?} but probe {probe:?}", verdict.kind));
    }
    let poly = GradedRing::polynomial(Ring::xyz(c), cutoff);
    let quot = GradedRing::fermat(c, n, cutoff);
    let colon = colon_ideal(&poly, &frobenius_gens(Ring::xyz(c), big_n), &fermat_poly(Ring::xyz(c), n))?;
    if verdict.is_infinite() {
        if socle_degrees(c, n, big_n)? != socle_compute(c, n, big_n)? {
            out.push(format!("{tag}: socle degrees differ from the oracle"));
        }
        let expected = if verdict.theta >= 1 { 7 } else { 1 };
        if colon.count() != expected {
            out.push(format!("{tag}: colon ideal has {} generators", colon.count()));
        }
        if !ideals_equal(&poly, &colon_generators(c, n, big_n)?, &colon.generators)? {
            out.push(format!("{tag}: colon generators differ from the oracle"));
        }
        if !p_resolution(c, n, big_n)?.verify(&poly, 3)? {
            out.push(format!("{tag}: P-resolution fails"));
        }
        if verdict.theta >= 1 && !gorenstein_resolution(c, n, big_n)?.verify(&poly, 3)? {
            out.push(format!("{tag}: Gorenstein resolution fails"));
        }
        if !r_resolution(c, n, big_n)?.verify(&quot, 6)? {
            out.push(format!("{tag}: R-resolution fails"));
        }
    } else {
        if colon.count() > 5 {
            out.push(format!("{tag}: colon ideal has {} generators", colon.count()));
        }
        let res = finite_resolution(c, n, big_n)?.resolution()?;
        if !res.verify(&quot, res.len())? || !res.maps.iter().all(|m| m.is_minimal()) {
            out.push(format!("{tag}: finite resolution is not a minimal complex"));
        }
    }
    Ok(out)
}

/// Classifier, resolver and finite constructions against the oracle.
pub fn referee(mode: Mode, chars: &[u64], nmax: u32, bigmax: u32) -> SuiteReport {
    let mut rep = SuiteReport::new("referee");
    let res = par::map(mode, cases(chars, nmax, bigmax, None), |(c, n, big_n)| {
        referee_case(c, n, big_n).unwrap_or_else(|e| vec![format!("({c},{n},{big_n}): {e}")])
    });
    rep.absorb(res);
    rep
}

/// Predicted against computed balancedness, and the minors of every finite
/// construction generate `(x^N, y^N, z^N)`.
pub fn hilbert_burch(mode: Mode, primes: &[u64], amax: u32, chars: &[u64], nmax: u32, bigmax: u32) -> SuiteReport {
    let mut rep = SuiteReport::new("hb");
    let pairs: Vec<(u64, u32)> = primes.iter().flat_map(|&p| (1..=amax).map(move |a| (p, a))).collect();
    let res = par::map(mode, pairs, |(p, a)| match hb_matrix(a, p) {
        Ok(hb) if hb.check() && unbalanced_predicted(p, a.into()) == !hb.balanced => vec![],
        Ok(_) => vec![format!("p={p} a={a}: balancedness differs from prediction")],
        Err(e) => vec![format!("p={p} a={a}: {e}")],
    });
    rep.absorb(res);
    let res = par::map(mode, cases(chars, nmax, bigmax, Some(false)), |(c, n, big_n)| {
        match finite_resolution(c, n, big_n).and_then(|r| r.minors_generate()) {
            Ok(true) => vec![],
            Ok(false) => vec![format!("({c},{n},{big_n}): minors do not generate")],
            Err(e) => vec![format!("({c},{n},{big_n}): {e}")],
        }
    });
    rep.absorb(res);
    rep
}

/// Instances `N2 = q N1` with `N1 ≥ n` and matching tail classes, for the shift formula.
pub fn shift_instances(count: usize) -> Vec<(u64, u32, u32, u32)> {
    let mut out = Vec::new();
    for c in [0u64, 3, 5, 7] {
        for n in 2..=5u32 {
            for n1 in n..=12u32 {
                for q in 2..=5u32 {
                    let n2 = q * n1;
                    let inf = |m: u32| pd_verdict(c, n.into(), m.into()).is_infinite();
                    if out.len() < count && inf(n1) && inf(n2) && matches!(tail_compare(c, n, n1, n2), Ok(Some(_))) {
                        out.push((c, n, n1, n2));
                    }
                }
            }
        }
    }
    out
}

/// Frobenius periodicity, the descent propositions and the shift formula.
pub fn frobenius(mode: Mode, bigmax: u32) -> SuiteReport {
    let mut rep = SuiteReport::new("frobenius");
    let mut grid = Vec::new();
    for p in [3u64, 5] {
        for n in [4u64, 5, 7] {
            if p != n {
                for big_n in 1..=u64::from(bigmax) {
                    grid.push((p, n, big_n));
                }
            }
        }
    }
    let res = par::map(mode, grid, |(p, n, big_n)| {
        let tag = format!("p={p} n={n} N={big_n}");
        let Ok(r) = tail_period(p, n, big_n) else {
            return vec![format!("{tag}: tail_period failed")];
        };
        let o = mult_order(p, n).unwrap_or(0);
        let mut out = Vec::new();
        if r.e > 2 * o || !r.periodic {
            out.push(format!("{tag}: e={} periodic={}", r.e, r.periodic));
        }
        if r.case == PeriodCase::Periodic && r.observed_period.map_or(true, |d| r.e % d != 0) {
            out.push(format!("{tag}: observed period {:?} does not divide e={}", r.observed_period, r.e));
        }
        out
    });
    rep.absorb(res);
    for (p, n) in [(7, 3), (5, 2), (3, 2)] {
        rep.checked += 1;
        if prop28_check_with(mode, p, n, 500) != Ok(true) {
            rep.failures.push(format!("descent check fails for p={p} n={n}"));
        }
    }
    for (p, n) in [(3, 4), (5, 4), (5, 3)] {
        rep.checked += 1;
        if digit_criterion_check_with(mode, p, n, 100) != Ok(true) {
            rep.failures.push(format!("digit criterion check fails for p={p} n={n}"));
        }
    }
    let res = par::map(mode, shift_instances(10), |(c, n, n1, n2)| {
        let q = i64::from(n2 / n1);
        let w = 3 * i64::from(n1) * (q - 1) / 2;
        match presentation_shift(c, n, n1, n2) {
            Ok(Some(x)) if x == w && socle_shift(c, n, n1, n2) == Ok(Some(w)) => vec![],
            other => vec![format!("c={c} n={n} N1={n1} N2={n2}: expected shift {w}, got {other:?}")],
        }
    });
    if res.len() < 10 {
        rep.failures.push(format!("only {} shift instances found", res.len()));
    }
    rep.absorb(res);
    rep
}

fn twovar_case(c: u64, n: u32, big_n: u32) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let tag = format!("c={c} n={n} N={big_n}");
    let ring = Ring::xy(c);
    let p = twovar_p_resolution(n, big_n, c)?;
    if !p.verify(&GradedRing::polynomial(ring, 0), 2)? {
        out.push(format!("{tag}: P-resolution fails"));
    }
    let d2 = p.maps[1].matrix();
    let minors = vec![d2.minor_rows(&[1, 2]), -d2.minor_rows(&[0, 2]), d2.minor_rows(&[0, 1])];
    if minors != p.maps[0].matrix().row(0) {
        out.push(format!("{tag}: signed minors differ from the generators"));
    }
    let (d, dc) = twovar_matrices(n, big_n, c)?;
    let fi = Matrix::identity(ring, 2).scale(&twovar_f(n, c));
    if d.mul(&dc) != fi || dc.mul(&d) != fi {
        out.push(format!("{tag}: D and its adjoint do not multiply to f"));
    }
    let r = twovar_r_resolution(n, big_n, c)?;
    if !r.verify(&GradedRing::twovar(c, n, 0), 6)? {
        out.push(format!("{tag}: R-resolution fails"));
    }
    if big_n % n != 0 {
        let quot = GradedRing::twovar(c, n, 2 * (big_n + n) as usize);
        if socle(&quot, &frobenius_gens(ring, big_n))? != twovar_socle_degrees(n, big_n)? {
            out.push(format!("{tag}: socle differs from the oracle"));
        }
    }
    Ok(out)
}

fn uniform(a: &[i64], b: &[i64]) -> Option<i64> {
    let w = b[0] - a[0];
    (a.len() == b.len() && a.iter().zip(b).all(|(x, y)| y - x == w)).then_some(w)
}

/// Two-variable complexes, the residue criterion and the Frobenius period.
pub fn twovar(mode: Mode, nmax: u32, bigmax: u32) -> SuiteReport {
    let mut rep = SuiteReport::new("twovar");
    let mut grid = Vec::new();
    for n in 1..=nmax {
        for big_n in 1..=bigmax {
            grid.push((0u64, n, big_n));
            grid.push((3, n, big_n));
        }
    }
    let res = par::map(mode, grid, |(c, n, big_n)| {
        twovar_case(c, n, big_n).unwrap_or_else(|e| vec![format!("c={c} n={n} N={big_n}: {e}")])
    });
    rep.absorb(res);
    let mut pairs = Vec::new();
    for n in 2..=nmax {
        for n1 in n + 1..=bigmax {
            for n2 in n + 1..=bigmax {
                if n1 % n != 0 && n2 % n != 0 {
                    pairs.push((n, n1, n2));
                }
            }
        }
    }
    let res = par::map(mode, pairs, |(n, n1, n2)| {
        let s1 = twovar_socle_degrees(n, n1).unwrap();
        let s2 = twovar_socle_degrees(n, n2).unwrap();
        let w = twovar_equiv(n.into(), n1.into(), n2.into()).unwrap();
        if uniform(&s1, &s2) == w {
            vec![]
        } else {
            vec![format!("n={n} N1={n1} N2={n2}: socle shift {:?} vs residue shift {w:?}", uniform(&s1, &s2))]
        }
    });
    rep.absorb(res);
    for (p, e) in [(2u64, 1u32), (2, 2), (2, 3), (3, 1), (3, 2)] {
        let n = p.pow(e) + 1;
        for m in (1..).filter(|m| num_integer::gcd(*m, n) == 1).take(5) {
            rep.checked += 1;
            if twovar_period(p, e, m) != Ok(e) {
                rep.failures.push(format!("p={p} e={e} N={m}: period {:?}", twovar_period(p, e, m)));
            }
        }
    }
    rep
}
