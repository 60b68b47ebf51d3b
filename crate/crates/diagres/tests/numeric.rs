use diagres::numeric::{
    reduction_violations, binom, binom_val, digit_expand, is_prime, ternary_violations, padic_val, round_third, Valuation,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn factorial(m: i64) -> BigInt {
    (1..=m).fold(BigInt::one(), |acc, k| acc * k)
}

#[test]
fn pascal_and_symmetry() {
    for m in -200i64..=200 {
        for i in -200i64..=200 {
            let b = binom(m, i);
            assert_eq!(binom(m, i - 1) + &b, binom(m + 1, i), "pascal m={m} i={i}");
            if m >= 0 {
                assert_eq!(b, binom(m, m - i), "symmetry m={m} i={i}");
            }
            assert_eq!(BigInt::from(m - i) * &b, binom(m, i + 1) * BigInt::from(i + 1));
            assert_eq!(BigInt::from(i) * &b, binom(m - 1, i - 1) * BigInt::from(m));
        }
    }
}

#[test]
fn binomials_vanish_and_match_factorials() {
    for m in 0i64..=60 {
        for i in m + 1..=m + 5 {
            assert!(binom(m, i).is_zero());
        }
        for i in 0..=m {
            assert_eq!(binom(m, i) * factorial(i) * factorial(m - i), factorial(m));
        }
    }
    assert!(binom(5, -1).is_zero());
    assert_eq!(binom(-1, 3), BigInt::from(-1));
}

#[test]
fn digit_expansions_round_trip() {
    for p in [5u64, 7, 11, 13] {
        for m in -100_000i64..=100_000 {
            let e = digit_expand(m, p).unwrap();
            assert_eq!(e.evaluate(), BigInt::from(m), "p={p} m={m}");
        }
    }
}

#[test]
fn digit_expansion_needs_p_at_least_five() {
    assert!(digit_expand(10, 3).is_err());
    assert!(digit_expand(10, 9).is_err());
}

#[test]
fn reduction_lemmas_have_no_violations() {
    for p in [3u64, 5, 7] {
        let v = reduction_violations(p, 60, |d| 3 * d + 3);
        assert!(v.is_empty(), "p={p}: {:?}", &v[..v.len().min(3)]);
    }
    let v = ternary_violations(200, 60);
    assert!(v.is_empty(), "{:?}", &v[..v.len().min(3)]);
}

#[test]
fn rounding_is_nearest_integer() {
    for b in -300i64..=300 {
        let r = round_third(b);
        assert!((3 * r - b).abs() <= 1, "b={b}");
    }
}

proptest! {
    #[test]
    fn binom_val_matches_padic_val(m in -300i64..300, i in 0i64..300, pi in 0usize..5) {
        let p = [2u64, 3, 5, 7, 11][pi];
        prop_assert_eq!(binom_val(m, i, p), padic_val(&binom(m, i), p).unwrap());
    }

    #[test]
    fn valuation_is_additive(a in 1i64..100_000, b in 1i64..100_000, pi in 0usize..4) {
        let p = [2u64, 3, 5, 7][pi];
        let va = padic_val(&BigInt::from(a), p).unwrap().finite().unwrap();
        let vb = padic_val(&BigInt::from(b), p).unwrap().finite().unwrap();
        let vab = padic_val(&(BigInt::from(a) * b), p).unwrap();
        prop_assert_eq!(vab, Valuation::Finite(va + vb));
    }

    #[test]
    fn digit_expansion_round_trips(m in -1_000_000_000i64..1_000_000_000, pi in 0usize..4) {
        let p = [5u64, 7, 11, 13][pi];
        prop_assert_eq!(digit_expand(m, p).unwrap().evaluate(), BigInt::from(m));
    }

    #[test]
    fn primality_by_trial_division(n in 0u64..5000) {
        let trial = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
        prop_assert_eq!(is_prime(n), trial);
    }
}
