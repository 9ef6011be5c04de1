//! Linear algebra over prime fields `Z/p` with `p < 2^31`.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

/// Inverse of a unit modulo a prime.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "zero has no inverse mod {p}");
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `count` distinct random primes in `(2^30, 2^31)`, determined by `seed`.
pub fn random_primes(seed: u64, count: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let c = rng.gen_range((1u64 << 30) + 1..(1u64 << 31)) | 1;
        if is_prime(c) && !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

/// Row echelon form over `Z/p` grown one vector at a time.
#[derive(Clone, Debug)]
pub struct ModEchelon {
    p: u64,
    ncols: usize,
    pivot_row: Vec<u32>,
    rows: Vec<Vec<u64>>,
}

const NONE: u32 = u32::MAX;

impl ModEchelon {
    pub fn new(ncols: usize, p: u64) -> Self {
        ModEchelon {
            p,
            ncols,
            pivot_row: vec![NONE; ncols],
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// Reduce `v` (entries already in `[0, p)`) and keep it if independent.
    /// Returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        debug_assert_eq!(v.len(), self.ncols);
        let p = self.p;
        for c in 0..self.ncols {
            let f = v[c];
            if f == 0 {
                continue;
            }
            let r = self.pivot_row[c];
            if r == NONE {
                let inv = inv_mod(f, p);
                for x in &mut v[c..] {
                    *x = mul_mod(*x, inv, p);
                }
                self.pivot_row[c] = self.rows.len() as u32;
                self.rows.push(v);
                return true;
            }
            let row = &self.rows[r as usize];
            let g = p - f;
            for (x, &y) in v[c..].iter_mut().zip(&row[c..]) {
                *x = (*x + g * y) % p;
            }
        }
        false
    }
}

/// Rank of a dense matrix over `Z/p` by Gaussian elimination in place.
pub fn rank_dense(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..nrows).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = inv_mod(m[rank][c], p);
        for x in &mut m[rank][c..] {
            *x = mul_mod(*x, inv, p);
        }
        let (top, bottom) = m.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in bottom.iter_mut() {
            let f = row[c];
            if f == 0 {
                continue;
            }
            let g = p - f;
            for (x, &y) in row[c..].iter_mut().zip(&prow[c..]) {
                *x = (*x + g * y) % p;
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(is_prime(2));
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007u64 * 3));
        assert!(!is_prime(561));
        let ps = random_primes(7, 2);
        assert_eq!(ps, random_primes(7, 2));
        assert!(ps.iter().all(|&p| p > 1 << 30 && p < 1 << 31 && is_prime(p)));
        assert_ne!(ps[0], ps[1]);
    }

    #[test]
    fn inverses() {
        let p = 2_147_483_647;
        for a in [1u64, 2, 12345, p - 1] {
            assert_eq!(mul_mod(a, inv_mod(a, p), p), 1);
        }
    }

    #[test]
    fn echelon_rank() {
        let p = 101;
        let mut e = ModEchelon::new(3, p);
        assert!(e.insert(vec![1, 2, 3]));
        assert!(e.insert(vec![2, 4, 7]));
        assert!(!e.insert(vec![3, 6, 10]));
        assert!(e.insert(vec![0, 1, 0]));
        assert!(!e.insert(vec![5, 5, 5]));
        assert_eq!(e.rank(), 3);
        assert_eq!(rank_dense(vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 0, 1]], p), 2);
    }
}
