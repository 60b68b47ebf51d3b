use diagres::pfaffian::{assemble, check_adjoint, pf2_identity, pf_minors, pfaffian, phi_rs, AlternatingMatrix, Matrix};
use diagres::polyring::{Polynomial, Ring};
use num_bigint::BigInt;
use proptest::prelude::*;

fn ring() -> Ring {
    Ring::xyz(0)
}

fn arb_entry() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -5i64..5), 0..3).prop_map(|terms| {
        Polynomial::from_terms(ring(), terms.into_iter().map(|((a, b, c), k)| ([a, b, c], BigInt::from(k))))
    })
}

fn arb_alternating(size: usize) -> impl Strategy<Value = AlternatingMatrix> {
    prop::collection::vec(arb_entry(), size * size.saturating_sub(1) / 2).prop_map(move |upper| {
        let idx = |i: usize, j: usize| i * size - i * (i + 1) / 2 + (j - i - 1);
        AlternatingMatrix::from_upper(ring(), size, |i, j| upper[idx(i, j)].clone())
    })
}

fn arb_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(arb_entry(), rows * cols)
        .prop_map(move |e| Matrix::from_fn(ring(), rows, cols, |i, j| e[i * cols + j].clone()))
}

fn fermat(r: Ring, n: u32) -> Polynomial {
    (0..3).map(|i| Polynomial::var_pow(r, i, n)).fold(Polynomial::zero(r), |a, b| a + b)
}

#[test]
fn phi_rs_pfaffians() {
    for c in [0u64, 2, 3, 5] {
        for r in 1..=11u32 {
            for s in 1..=12 - r {
                let phi = phi_rs(c, r, s);
                assert_eq!(pfaffian(&phi), fermat(Ring::xyz(c), r + s), "c={c} r={r} s={s}");
            }
        }
    }
}

#[test]
fn odd_sizes_are_rejected() {
    let m = AlternatingMatrix::from_upper(ring(), 3, |_, _| Polynomial::one(ring()));
    assert!(check_adjoint(&m).is_err());
    assert!(pfaffian(&m).is_zero());
    assert_eq!(pf_minors(&m).unwrap().len(), 3);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn adjoint_identity(phi in prop_oneof![arb_alternating(2), arb_alternating(4), arb_alternating(6)]) {
        let s = phi.size();
        let check = check_adjoint(&phi).unwrap();
        let pf = Matrix::identity(ring(), s).scale(&pfaffian(&phi));
        prop_assert_eq!(phi.matrix().mul(check.matrix()), pf.clone());
        prop_assert_eq!(check.matrix().mul(phi.matrix()), pf);
    }

    #[test]
    fn repeated_index_kills_pfaffian(phi in prop_oneof![arb_alternating(4), arb_alternating(6)], i in 0usize..6, j in 0usize..6) {
        let s = phi.size();
        let (i, j) = (i % s, j % s);
        prop_assume!(i != j);
        let src = |k: usize| if k == j { i } else { k };
        let m = phi.matrix();
        let dup = AlternatingMatrix::from_upper(ring(), s, |a, b| {
            if src(a) == src(b) { Polynomial::zero(ring()) } else { m[(src(a), src(b))].clone() }
        });
        prop_assert!(pfaffian(&dup).is_zero());
    }

    #[test]
    fn pfaffian_squares_to_determinant(phi in prop_oneof![arb_alternating(2), arb_alternating(4)]) {
        let pf = pfaffian(&phi);
        prop_assert_eq!(&pf * &pf, phi.matrix().det());
    }
}

fn arb_block() -> impl Strategy<Value = (AlternatingMatrix, Matrix, AlternatingMatrix)> {
    prop_oneof![Just(2usize), Just(4usize)]
        .prop_flat_map(|m| (arb_alternating(m), arb_matrix(3, m), arb_alternating(3)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn block_pfaffian_identity((phi, psi, big_phi) in arb_block(), l in 1usize..=3) {
        prop_assert!(pf2_identity(&phi, &psi, &big_phi, l).unwrap());
        prop_assert_eq!(assemble(&phi, &psi, &big_phi).size(), phi.size() + 3);
    }
}
