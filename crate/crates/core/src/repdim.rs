//! Multiplicities of irreducible SL_2-modules inside `Sym^m S_d`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use serde::Serialize;

use crate::rational::binom;

/// Coefficients of the Gaussian binomial `[m + d, m]_q`, i.e. the number of
/// partitions of `k` into at most `m` parts each at most `d`, for `k = 0..=md`.
pub fn box_partitions(d: usize, m: usize) -> Arc<Vec<u128>> {
    static MEMO: OnceLock<Mutex<HashMap<(usize, usize), Arc<Vec<u128>>>>> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    if let Some(v) = memo.lock().unwrap().get(&(d, m)) {
        return v.clone();
    }
    let top = m * d;
    let mut c = vec![0i128; top + 1];
    c[0] = 1;
    // prod_{i=1..m} (1 - q^(d+i)) / (1 - q^i), truncated at degree md
    for i in 1..=m {
        let j = d + i;
        for k in (j..=top).rev() {
            c[k] -= c[k - j];
        }
        for k in i..=top {
            c[k] += c[k - i];
        }
    }
    let v: Arc<Vec<u128>> = Arc::new(
        c.into_iter()
            .map(|x| u128::try_from(x).expect("partition count is nonnegative"))
            .collect(),
    );
    memo.lock().unwrap().insert((d, m), v.clone());
    v
}

/// Multiplicity of `S_n` in `Sym^m S_d`.
pub fn eta(d: usize, m: usize, n: usize) -> u128 {
    let md = m * d;
    if n > md || (md - n) % 2 != 0 {
        return 0;
    }
    let k = (md - n) / 2;
    let p = box_partitions(d, m);
    let below = if k == 0 { 0 } else { p[k - 1] };
    p[k] - below
}

/// `Sym^m S_d` as a sum of irreducibles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsotypicDecomposition {
    pub d: usize,
    pub m: usize,
    /// `(n, multiplicity)` with `n` decreasing.
    pub parts: Vec<(usize, u128)>,
}

impl IsotypicDecomposition {
    pub fn dimension(&self) -> u128 {
        self.parts.iter().map(|&(n, c)| c * (n as u128 + 1)).sum()
    }

    pub fn multiplicity(&self, n: usize) -> u128 {
        self.parts
            .iter()
            .find(|&&(k, _)| k == n)
            .map_or(0, |&(_, c)| c)
    }
}

impl fmt::Display for IsotypicDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .parts
            .iter()
            .map(|&(n, c)| {
                if c == 1 {
                    format!("S_{n}")
                } else {
                    format!("S_{n}^{c}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn decompose_sym(d: usize, m: usize) -> IsotypicDecomposition {
    let md = m * d;
    let parts = (0..=md / 2)
        .map(|k| md - 2 * k)
        .filter_map(|n| {
            let c = eta(d, m, n);
            (c > 0).then_some((n, c))
        })
        .collect();
    IsotypicDecomposition { d, m, parts }
}

/// Dimension of the space of degree-4 invariants of the binary d-ic.
pub fn h_invariant_dim(d: usize) -> usize {
    let (e, k) = (d / 6, d % 6);
    e + usize::from(k != 1)
}

/// Number of `(a, b)` in `N^2` with `2a + 3b = d`.
pub fn h_brute_force(d: usize) -> usize {
    (0..=d / 3).filter(|b| (d - 3 * b) % 2 == 0).count()
}

/// `dim R_m = binom(m + d, d)`.
pub fn dim_graded_ring(d: usize, m: usize) -> BigInt {
    binom((m + d) as i64, d as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sextic_cubes() {
        let dec = decompose_sym(6, 3);
        assert_eq!(
            dec.parts,
            vec![(18, 1), (14, 1), (12, 1), (10, 1), (8, 1), (6, 2), (2, 1)]
        );
        assert_eq!(dec.to_string(), "S_18 + S_14 + S_12 + S_10 + S_8 + S_6^2 + S_2");
        assert_eq!(eta(6, 3, 6), 2);
        assert_eq!(eta(6, 3, 8), 1);
        assert_eq!(eta(6, 3, 7), 0);
        assert_eq!(eta(6, 3, 19), 0);
    }

    #[test]
    fn small_cases() {
        for d in 1..10 {
            assert_eq!(eta(d, 1, d), 1);
            assert_eq!(decompose_sym(d, 0).parts, vec![(0, 1)]);
            let sq = decompose_sym(d, 2);
            let expect: Vec<(usize, u128)> = (0..=d / 2).map(|q| (2 * d - 4 * q, 1)).collect();
            assert_eq!(sq.parts, expect);
        }
    }

    #[test]
    fn invariant_counts() {
        assert_eq!(h_invariant_dim(75), 13);
        assert_eq!(h_invariant_dim(1), 0);
        assert_eq!(h_invariant_dim(6), 2);
        assert_eq!(h_invariant_dim(4), 1);
        assert_eq!(dim_graded_ring(4, 2), BigInt::from(15));
        assert_eq!(dim_graded_ring(20, 8), BigInt::from(3108105));
    }
}
