use proptest::prelude::*;
use satseq_core::gordan::{
    delta, delta6_closed_form, expand_to_zero, gordan_lower, gordan_upper, lower_range, threshold_search, theta,
    upper_range, verify_general, GordanParameters, KNOWN_THRESHOLDS,
};
use satseq_core::rational::{int, rat};
use satseq_core::transvectant::binary_form;

fn params() -> impl Strategy<Value = GordanParameters> {
    (1i64..5, 1i64..5, 1i64..5, 0i64..3, 0i64..3, 0i64..3)
        .prop_map(|(m, n, p, a1, a2, a3)| GordanParameters { m, n, p, a1, a2, a3 })
        .prop_filter("valid", |g| g.validate().is_ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn general_series_on_random_forms(
        g in params(),
        seed in prop::collection::vec(-3i64..4, 15),
    ) {
        let mk = |order: i64, off: usize| {
            let c: Vec<_> = (0..=order as usize).map(|i| int(seed[(off + i) % seed.len()])).collect();
            binary_form(8, &c)
        };
        let (f, phi, psi) = (mk(g.m, 0), mk(g.n, 5), mk(g.p, 10));
        prop_assert!(verify_general(&g, &f, &phi, &psi).unwrap());
    }
}

#[test]
fn syzygies_vanish_small_d() {
    for d in 3..=7 {
        for (k, w) in lower_range(d) {
            assert!(expand_to_zero(&gordan_lower(d, k, w).unwrap()).unwrap(), "lower d={d} ({k},{w})");
        }
        for (k, w) in upper_range(d) {
            assert!(expand_to_zero(&gordan_upper(d, k, w).unwrap()).unwrap(), "upper d={d} ({k},{w})");
        }
    }
}

#[test]
fn theta_top_entry() {
    for d in 3..=40i64 {
        assert_eq!(theta(d, 1, d, d).unwrap(), rat(1, d) - rat(1, 2));
    }
}

#[test]
fn delta6_matches_closed_form() {
    for d in [8, 10, 12, 20] {
        assert_eq!(delta(d, 3, 6).unwrap(), delta6_closed_form(d as i64), "d={d}");
    }
}

#[test]
fn small_thresholds() {
    for &(s, n) in KNOWN_THRESHOLDS.iter().take(3) {
        assert_eq!(threshold_search(s, 24).unwrap().n, n, "s={s}");
    }
}
