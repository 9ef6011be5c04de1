use satseq_core::rational::binom;
use satseq_core::saturation::{
    check_counting_inequality, ic_dim, ideal_dim, ideal_dims, q_factorization_holds, saturation_sequence, RankConfig,
    Zeta,
};

#[test]
fn degree_two_pieces() {
    let cfg = RankConfig::default();
    for d in 4..=9 {
        let dims = ideal_dims(d, 2, &cfg).unwrap().0;
        for q in 1..=d / 2 {
            let expect: usize = (1..=q).map(|i| 2 * d - 4 * i + 1).sum();
            assert_eq!(dims[q - 1], expect as u128, "d={d} q={q}");
        }
        assert_eq!(dims[d / 2 - 1], ic_dim(d, 2));
    }
    assert_eq!(ideal_dim(4, 2, 2, &cfg).unwrap().dim, 6);
}

#[test]
fn filtration_is_monotone_and_bounded() {
    let cfg = RankConfig::default();
    for d in 4..=7 {
        for m in 2..=4 {
            let dims = ideal_dims(d, m, &cfg).unwrap().0;
            assert!(dims.windows(2).all(|w| w[0] <= w[1]));
            assert!(*dims.last().unwrap() <= ic_dim(d, m));
            let total = binom((m + d) as i64, d as i64);
            assert!(num_bigint::BigInt::from(ic_dim(d, m)) <= total);
        }
    }
}

#[test]
fn ic_formula_values() {
    assert_eq!(ic_dim(4, 2), 6);
    assert_eq!(ic_dim(6, 3), 65);
    for d in 2..10 {
        assert_eq!(ic_dim(d, 1), 0);
    }
}

#[test]
fn zeta_and_counting() {
    assert_eq!(Zeta::new(4).squared(), satseq_core::rational::rat(21, 4));
    assert!(check_counting_inequality(4, 3));
    for d in 4..=60 {
        let z = Zeta::new(d);
        for m in 2..=d + 2 {
            if z.exceeds(m) {
                assert!(!check_counting_inequality(d, m), "d={d} m={m}");
            }
        }
        assert!(q_factorization_holds(d));
    }
    // 3 < zeta(d) forces d > 7
    for d in 4..=7 {
        assert!(!Zeta::new(d).exceeds(3));
    }
}

#[test]
fn certified_small_sequences() {
    let cfg = RankConfig {
        certify: true,
        ..RankConfig::default()
    };
    assert_eq!(saturation_sequence(6, &cfg).unwrap().alphas, vec![5, 3]);
    let rec = saturation_sequence(7, &RankConfig::default()).unwrap();
    assert_eq!(rec.alphas, vec![4, 3]);
    assert!(rec.zeta_le_s && rec.s_le_d_plus_2);
    assert_eq!(rec.satieties, vec![4, 3]);
}
