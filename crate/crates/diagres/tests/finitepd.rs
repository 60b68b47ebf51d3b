use diagres::classifier::pd_verdict;
use diagres::finitepd::{finite_resolution, hb_matrix, rho, signed_minors, unbalanced_predicted, Construction};
use diagres::Error;

#[test]
fn hilbert_burch_matrices() {
    for c in [0u64, 2, 3, 5, 7] {
        for a in 1..=60 {
            let hb = hb_matrix(a, c).unwrap();
            assert!(hb.check(), "c={c} a={a}");
            assert_eq!(hb.degrees[0] + hb.degrees[1], a);
            let m = signed_minors(&hb.matrix);
            let g = rho(c, a);
            for i in 0..3 {
                assert_eq!(m[i], g[i].scale(&hb.minor_scale));
            }
        }
    }
}

#[test]
fn balancedness_matches_prediction() {
    for p in [2u64, 3, 5, 7] {
        for a in 1..=60u32 {
            let hb = hb_matrix(a, p).unwrap();
            assert_eq!(unbalanced_predicted(p, a.into()), !hb.balanced, "p={p} a={a}");
        }
    }
}

#[test]
fn explicit_constructions_cover_every_finite_case() {
    for c in [0u64, 2, 3, 5, 7] {
        for n in 1..=5u32 {
            for big_n in 1..=60u32 {
                if pd_verdict(c, n.into(), big_n.into()).is_infinite() {
                    assert_eq!(finite_resolution(c, n, big_n).unwrap_err(), Error::NotFinite);
                    continue;
                }
                let res = finite_resolution(c, n, big_n).unwrap();
                assert_ne!(res.construction, Construction::Oracle, "({c},{n},{big_n})");
                assert_eq!((res.matrix.rows(), res.matrix.cols()), (3, 2));
            }
        }
    }
}

#[test]
fn finite_resolutions_are_certified() {
    for c in [0u64, 2, 3, 5] {
        for n in 1..=4u32 {
            for big_n in 1..=14u32 {
                if pd_verdict(c, n.into(), big_n.into()).is_infinite() {
                    continue;
                }
                let rr = finite_resolution(c, n, big_n).unwrap();
                assert!(rr.minors_generate().unwrap(), "({c},{n},{big_n})");
                let res = rr.resolution().unwrap();
                assert!(res.verify(&rr.quotient_ring(), res.len()).unwrap(), "({c},{n},{big_n})");
                assert!(res.maps.iter().all(|m| m.is_minimal()));
            }
        }
    }
}
