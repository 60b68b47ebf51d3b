use diagres::classifier::{
    enumerate_D, enumerate_S, in_D, in_S, in_T, in_T_even_form, partition_check, pd_verdict, pi_p, valuation_identity_violations,
    PdKind,
};
use diagres::par::Mode;
use proptest::prelude::*;

const ODD_PRIMES: [u64; 5] = [3, 5, 7, 11, 13];

#[test]
fn d_and_s_determine_each_other() {
    let bound = 10_000i64;
    for p in ODD_PRIMES {
        for a in 0..=bound {
            if a % 2 == 0 {
                assert_eq!(in_S(p, a), in_D(p, a / 2), "p={p} a={a}");
            }
            let d = if p == 3 { (a - 1) / 2 } else { (a + 1) / 2 };
            if a % 2 == 1 {
                assert_eq!(in_S(p, a), in_D(p, d), "p={p} a={a}");
            }
        }
    }
}

#[test]
fn digit_criteria_match_enumeration() {
    let bound = 10_000usize;
    for c in [0u64, 2, 3, 5, 7, 11, 13] {
        let s = enumerate_S(c, bound);
        for (a, &m) in s.iter().enumerate() {
            assert_eq!(in_S(c, a as i64), m, "S_{c} at {a}");
        }
    }
    for p in ODD_PRIMES {
        let d = enumerate_D(p, bound);
        for (a, &m) in d.iter().enumerate() {
            assert_eq!(in_D(p, a as i64), m, "D_{p} at {a}");
        }
    }
}

#[test]
fn even_form_of_t() {
    for p in [5u64, 7, 11, 13] {
        for a in (0..=10_000i64).step_by(2) {
            assert_eq!(in_T(p, a).is_some(), in_T_even_form(p, a), "p={p} a={a}");
        }
    }
}

#[test]
fn parity_shifts() {
    for a in (1..=10_000i64).step_by(2) {
        assert_eq!(in_S(3, a), in_S(3, a - 1), "S_3 at {a}");
        assert_eq!(in_T(3, a).is_some(), in_T(3, a - 1).is_some(), "T_3 at {a}");
        for p in [5u64, 7, 11, 13] {
            assert_eq!(in_S(p, a), in_S(p, a + 1), "S_{p} at {a}");
            assert_eq!(in_T(p, a).is_some(), in_T(p, a + 1).is_some(), "T_{p} at {a}");
        }
    }
}

#[test]
fn partitions_small() {
    for c in [0u64, 2, 3, 5, 7, 11, 13, 17, 19] {
        assert!(partition_check(c, 20_000), "c={c}");
    }
}

#[test]
fn witnesses_cover_their_elements() {
    for p in ODD_PRIMES {
        for a in 0..=5_000 {
            if let Some(w) = in_T(p, a) {
                assert!(w.covers(a) && w.j % 2 == 1 && w.q == (p as i64).pow(w.e), "p={p} a={a} {w:?}");
            }
        }
    }
}

#[test]
fn pi_is_below_a_third() {
    for p in [5u64, 7, 11, 13, 17, 19, 23] {
        let pi = pi_p(p).unwrap();
        assert!(3 * pi < p as i64 && 3 * (pi + 1) >= p as i64);
    }
    assert!(pi_p(9).is_err());
}

#[test]
fn verdict_is_s_membership_with_nonzero_remainder() {
    for c in [0u64, 2, 3, 5, 7, 11, 13] {
        for n in 1..=8i64 {
            for big_n in 1..=500i64 {
                let v = pd_verdict(c, n, big_n);
                let expected = in_S(c, big_n / n) && big_n % n >= 1;
                assert_eq!(v.kind == PdKind::Infinite, expected, "c={c} n={n} N={big_n}");
                assert_eq!((v.theta, v.r), (big_n / n, big_n % n));
            }
        }
    }
}

#[test]
fn valuation_identities_small() {
    for p in ODD_PRIMES {
        assert!(valuation_identity_violations(Mode::default(), p, 300).is_empty(), "p={p}");
    }
}

proptest! {
    #[test]
    fn exactly_one_of_s_and_t(a in 0i64..2_000_000, ci in 0usize..7) {
        let c = [0u64, 2, 3, 5, 7, 11, 13][ci];
        prop_assert!(in_S(c, a) != in_T(c, a).is_some());
    }

    #[test]
    fn finite_witnesses_certify(n in 1i64..12, big_n in 1i64..3000, pi in 0usize..5) {
        let p = ODD_PRIMES[pi];
        let v = pd_verdict(p, n, big_n);
        if let Some(w) = v.witness {
            prop_assert!(v.kind == PdKind::Finite);
            prop_assert!(in_T(p, v.theta).is_some());
            prop_assert!(w.j % 2 == 1);
        }
    }

    #[test]
    fn verdict_matches_membership(n in 1i64..30, big_n in 1i64..100_000, ci in 0usize..7) {
        let c = [0u64, 2, 3, 5, 7, 11, 13][ci];
        let v = pd_verdict(c, n, big_n);
        prop_assert_eq!(v.is_infinite(), in_S(c, big_n / n) && big_n % n != 0);
    }
}
