use proptest::prelude::*;
use satseq_core::repdim::{decompose_sym, dim_graded_ring, eta, h_brute_force, h_invariant_dim};

/// Number of monomials of `Sym^m S_d` of weight `k`, by enumeration.
fn weight_count(d: usize, m: usize, k: usize) -> u128 {
    fn go(d: usize, left: usize, max: usize, k: usize) -> u128 {
        if left == 0 {
            return u128::from(k == 0);
        }
        (0..=max.min(k)).map(|i| go(d, left - 1, i, k - i)).sum()
    }
    go(d, m, d, k)
}

/// Multiplicity of `S_n` as the drop in weight counts.
fn eta_oracle(d: usize, m: usize, n: usize) -> u128 {
    let md = m * d;
    if n > md || (md - n) % 2 == 1 {
        return 0;
    }
    let k = (md - n) / 2;
    let below = if k == 0 { 0 } else { weight_count(d, m, k - 1) };
    weight_count(d, m, k) - below
}

#[test]
fn eta_matches_weight_counts() {
    for d in 0..=8 {
        for m in 0..=4 {
            for n in 0..=m * d + 1 {
                assert_eq!(eta(d, m, n), eta_oracle(d, m, n), "d={d} m={m} n={n}");
            }
        }
    }
}

#[test]
fn h_matches_set_count() {
    for d in 0..=200 {
        assert_eq!(h_invariant_dim(d), h_brute_force(d), "d={d}");
    }
}

proptest! {
    #[test]
    fn decomposition_dimension(d in 1usize..9, m in 0usize..6) {
        let dec = decompose_sym(d, m);
        prop_assert_eq!(num_bigint::BigInt::from(dec.dimension()), satseq_core::rational::binom((m + d) as i64, d as i64));
        // Hermite reciprocity
        prop_assert_eq!(dec.parts, decompose_sym(m, d).parts);
    }

    #[test]
    fn graded_ring_dimension(d in 1usize..10, m in 0usize..8) {
        let total: u128 = (0..=m * d).map(|k| weight_count(d, m, k)).sum();
        prop_assert_eq!(num_bigint::BigInt::from(total), dim_graded_ring(d, m));
    }
}
