use qpart::bailey::{
    chain_step, derive_si, lattice_step, limit_index, run_pipeline, unit_pair, verify_pair, BaileyPair,
    StepKind,
};
use qpart::qseries::identities::ag_sum;
use qpart::qseries::{inv_poch, Count, Identity, TruncatedSeries};

#[test]
fn unit_pairs_are_bailey_pairs() {
    for e in 0..=2 {
        let p = unit_pair(e, 10, 40);
        assert!(verify_pair(&p), "e={e}");
        assert_eq!(p.alpha()[0], TruncatedSeries::one(40));
        assert_eq!(p.beta()[0], TruncatedSeries::one(40));
        assert!(p.beta()[1..].iter().all(|b| b.is_zero()));
    }
}

#[test]
fn perturbed_beta_is_rejected() {
    let (e, alpha, mut beta) = unit_pair(1, 8, 30).into_parts();
    beta[1].add_shifted(&TruncatedSeries::one(30), 1);
    let bad = BaileyPair::from_parts(e, alpha, beta).unwrap();
    assert!(!verify_pair(&bad));
}

#[test]
fn one_chain_step_from_a_equal_one() {
    let p = chain_step(&unit_pair(0, 8, 30));
    for (n, b) in p.beta().iter().enumerate() {
        assert_eq!(b, &inv_poch(1, 1, Count::Finite(n), 30).unwrap(), "n={n}");
    }
}

#[test]
fn every_short_composition_stays_a_bailey_pair() {
    for e in 0..=2u32 {
        for len in 1..=4 {
            for mask in 0..(1u32 << len) {
                let mut p = unit_pair(e, 8, 40);
                let mut ok = true;
                for bit in 0..len {
                    p = if mask >> bit & 1 == 1 {
                        match lattice_step(&p) {
                            Ok(next) => next,
                            Err(_) => {
                                // a = 1 cannot be lowered further
                                assert_eq!(p.e(), 0);
                                ok = false;
                                break;
                            }
                        }
                    } else {
                        chain_step(&p)
                    };
                    assert!(verify_pair(&p), "e={e} mask={mask:b} after {} steps", bit + 1);
                }
                if ok {
                    assert_eq!(p.e(), e - mask.count_ones());
                }
            }
        }
    }
}

#[test]
fn lattice_lowers_e_and_keeps_alpha_zero() {
    let p = chain_step(&unit_pair(2, 8, 40));
    let l = lattice_step(&p).unwrap();
    assert_eq!(l.e(), 1);
    assert_eq!(l.alpha()[0], p.alpha()[0]);
    assert!(lattice_step(&unit_pair(0, 8, 40)).is_err());
}

#[test]
fn pipelines_for_small_e() {
    for r in 1..=5 {
        for e in 0..=1u32 {
            for i in 0..=r {
                if i >= 1 && e == 0 {
                    assert!(run_pipeline(r, i, e, 40).is_err());
                    continue;
                }
                let p = run_pipeline(r, i, e, 40).unwrap();
                assert_eq!(p.limit_index, 10);
                assert!(p.all_steps_verified(), "r={r} i={i} e={e}");
                assert_eq!(p.first_mismatch(), None, "r={r} i={i} e={e}");
                let lattices = p.steps.iter().filter(|s| s.kind == StepKind::Lattice).count();
                assert_eq!(lattices, (i >= 1) as usize);
            }
        }
    }
}

#[test]
fn chain_only_pipeline_gives_andrews_gordon() {
    for r in 1..=5 {
        let p = run_pipeline(r, 0, 0, 40).unwrap();
        assert_eq!(p.beta_limit, ag_sum(r, r, 40), "r={r}");
        // a = q gives the i = 1 instance
        assert_eq!(run_pipeline(r, 0, 1, 40).unwrap().beta_limit, ag_sum(r, 1, 40), "r={r}");
    }
}

#[test]
fn limit_index_covers_the_order() {
    assert_eq!(limit_index(40), 10);
    assert_eq!(limit_index(0), 2);
    for n in 0..200usize {
        let m = limit_index(n);
        assert!(m * (m - 1) / 2 > n);
        assert!(m < 2 || (m - 1) * (m - 2) / 2 <= n);
    }
}

#[test]
fn derived_si_is_bressoud() {
    for r in 1..=5 {
        for i in 0..r {
            let s = derive_si(r, i, 40).unwrap();
            let id = Identity::Br33 { r, i, uncorrected: false };
            assert_eq!(s, id.sum_side(40).unwrap(), "r={r} i={i}");
            assert_eq!(s, id.product_side(40).unwrap(), "r={r} i={i}");
        }
        assert_eq!(derive_si(r, 0, 40).unwrap(), ag_sum(r, r, 40));
        for i in 1..r {
            let diff = &derive_si(r, i, 40).unwrap() - &derive_si(r, i - 1, 40).unwrap();
            assert_eq!(diff, Identity::Agp { r, i }.sum_side(40).unwrap(), "r={r} i={i}");
        }
    }
    assert!(derive_si(3, 3, 10).is_err());
}
