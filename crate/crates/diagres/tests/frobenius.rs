use diagres::classifier::pd_verdict;
use diagres::frobenius::{
    f_injective, frobenius_counterexample, mult_order, digit_criterion_check, presentation_shift, prop28_check, socle_shift,
    tail_compare, tail_period, twovar_equiv, twovar_matrices, twovar_f, twovar_period, twovar_socle_degrees,
    PeriodCase, TailClass,
};
use diagres::pfaffian::Matrix;
use diagres::polyring::Ring;
use diagres::resolver::socle_degrees;
use diagres::Error;
use proptest::prelude::*;

fn condition5(n: u32, n1: u32, n2: u32) -> bool {
    let (a1, r1, a2, r2) = (n1 / n, n1 % n, n2 / n, n2 % n);
    ((a1 + a2) % 2 == 0 && r1 == r2) || ((a1 + a2) % 2 == 1 && r1 + r2 == n)
}

fn uniform_shift(a: &[i64], b: &[i64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| y - x == b[0] - a[0])
}

#[test]
fn orders() {
    assert_eq!(mult_order(2, 5).unwrap(), 4);
    assert_eq!(mult_order(3, 4).unwrap(), 2);
    assert_eq!(mult_order(7, 3).unwrap(), 1);
    assert!(matches!(mult_order(3, 6), Err(Error::NotCoprime(..))));
}

#[test]
fn frobenius_period_cases() {
    let r = tail_period(3, 4, 2).unwrap();
    assert_eq!((r.case, r.e, r.order), (PeriodCase::Periodic, 2, 2));
    let r = tail_period(3, 8, 4).unwrap();
    assert_eq!(r.case, PeriodCase::Periodic);
    assert_eq!(r.e, 4);
    for n in [3u64, 5, 7, 9] {
        for big_n in 1..=20 {
            assert_eq!(tail_period(2, n, big_n).unwrap().case, PeriodCase::EventuallyFree, "n={n} N={big_n}");
        }
    }
}

#[test]
fn tail_periods_divide_e() {
    for p in [3u64, 5] {
        for n in [4u64, 5, 7].into_iter().filter(|&n| n != p) {
            for big_n in 1..=30 {
                let r = tail_period(p, n, big_n).unwrap();
                assert!(r.e <= 2 * r.order && r.periodic, "p={p} n={n} N={big_n}");
                if let Some(obs) = r.observed_period {
                    assert_eq!(r.e % obs, 0, "p={p} n={n} N={big_n}");
                }
            }
        }
    }
}

#[test]
fn tail_comparison() {
    assert_eq!(tail_compare(3, 2, 4, 12).unwrap_err(), Error::NotInfinite);
    assert_eq!(tail_compare(0, 5, 6, 12).unwrap(), None);
    for (c, n, n1, q) in [(0u64, 2u32, 3u32, 3u32), (0, 3, 4, 3), (3, 4, 5, 9), (5, 3, 4, 2)] {
        let n2 = q * n1;
        if !pd_verdict(c, n.into(), n2.into()).is_infinite() || !condition5(n, n1, n2) {
            continue;
        }
        let w = i64::from(3 * n1 * (q - 1) / 2);
        assert_eq!(tail_compare(c, n, n1, n2).unwrap(), Some(w), "({c},{n},{n1},{n2})");
        assert_eq!(presentation_shift(c, n, n1, n2).unwrap(), Some(w));
        assert_eq!(socle_shift(c, n, n1, n2).unwrap(), Some(w));
    }
}

#[test]
fn socle_shift_iff_condition_five() {
    for c in [0u64, 3, 5] {
        for n in 2..=5u32 {
            let inf: Vec<u32> = (n..=30).filter(|&m| pd_verdict(c, n.into(), m.into()).is_infinite()).collect();
            for &n1 in &inf {
                for &n2 in &inf {
                    let s1 = socle_degrees(c, n, n1).unwrap();
                    let s2 = socle_degrees(c, n, n2).unwrap();
                    assert_eq!(uniform_shift(&s1, &s2), condition5(n, n1, n2), "({c},{n},{n1},{n2})");
                }
            }
        }
    }
}

#[test]
fn injectivity_and_counterexamples() {
    assert!(f_injective(5, 2).unwrap());
    assert!(!f_injective(2, 3).unwrap());
    assert!(!f_injective(7, 4).unwrap());
    assert_eq!(frobenius_counterexample(2, 3).unwrap(), 2);
    assert_eq!(frobenius_counterexample(3, 4).unwrap(), 5);
    assert_eq!(frobenius_counterexample(7, 4).unwrap(), 19);
    for p in [2u64, 3, 5, 7, 11, 13] {
        for n in 2..=9u64 {
            if let Ok(false) = f_injective(p, n) {
                let big_n = frobenius_counterexample(p, n).unwrap() as i64;
                assert!(pd_verdict(p, n as i64, big_n).is_infinite());
                assert!(!pd_verdict(p, n as i64, p as i64 * big_n).is_infinite());
            }
        }
    }
}

#[test]
fn frobenius_propositions() {
    assert!(prop28_check(7, 3, 500).unwrap());
    assert!(prop28_check(5, 2, 500).unwrap());
    assert!(prop28_check(3, 2, 500).unwrap());
    assert!(digit_criterion_check(3, 4, 100).unwrap());
    assert!(digit_criterion_check(5, 4, 100).unwrap());
    assert!(digit_criterion_check(5, 3, 100).unwrap());
}

#[test]
fn two_variable_factorization() {
    for c in [0u64, 2, 3] {
        for n in 1..=8u32 {
            for big_n in 1..=20u32 {
                let (d, dc) = twovar_matrices(n, big_n, c).unwrap();
                let fi = Matrix::identity(Ring::xy(c), 2).scale(&twovar_f(n, c));
                assert_eq!(d.mul(&dc), fi);
                assert_eq!(dc.mul(&d), fi);
            }
        }
    }
}

#[test]
fn two_variable_periods() {
    let coprime = |n: u64| (1..).filter(move |m| gcd(*m, n) == 1).take(5).collect::<Vec<u64>>();
    for (p, e) in [(2u64, 1u32), (2, 2), (2, 3), (3, 1), (3, 2)] {
        let n = p.pow(e) + 1;
        for big_n in coprime(n) {
            assert_eq!(twovar_period(p, e, big_n).unwrap(), e, "p={p} e={e} N={big_n}");
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

#[test]
fn two_variable_equivalence_examples() {
    assert!(twovar_equiv(5, 1, 4).unwrap().is_some());
    assert_eq!(twovar_equiv(5, 1, 2).unwrap(), None);
    assert!(twovar_equiv(5, 5, 2).is_err());
}

proptest! {
    #[test]
    fn tail_class_keys_encode_condition_five(ci in 0usize..3, n in 2u32..=9, n1 in 1u32..400, n2 in 1u32..400) {
        let c = [0u64, 3, 5][ci];
        prop_assume!(n1 >= n && n2 >= n && n1 % n != 0 && n2 % n != 0);
        let k1 = TailClass::of(c, n.into(), n1.into());
        let k2 = TailClass::of(c, n.into(), n2.into());
        prop_assume!(!k1.free && !k2.free);
        prop_assert_eq!(k1 == k2, condition5(n, n1, n2));
    }

    #[test]
    fn two_variable_shift_iff_residues_match(n in 2u32..=12, n1 in 1u32..200, n2 in 1u32..200) {
        prop_assume!(n1 > n && n2 > n && n1 % n != 0 && n2 % n != 0);
        let s1 = twovar_socle_degrees(n, n1).unwrap();
        let s2 = twovar_socle_degrees(n, n2).unwrap();
        let w = twovar_equiv(n.into(), n1.into(), n2.into()).unwrap();
        let residues = (n1 + n2) % n == 0 || (n1 % n == n2 % n);
        prop_assert_eq!(w.is_some(), residues);
        prop_assert_eq!(uniform_shift(&s1, &s2), residues);
        if let Some(w) = w {
            prop_assert_eq!(w, i64::from(n2) - i64::from(n1));
        }
    }
}
