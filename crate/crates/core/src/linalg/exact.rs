//! Exact elimination over the integers and the rationals.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::{Monomial, SparsePoly};
use crate::rational::ExactRational;

/// Fraction-free row echelon form over Z, grown one vector at a time.
/// Every stored row is primitive (content 1).
#[derive(Clone, Debug, Default)]
pub struct IntEchelon {
    ncols: usize,
    pivot_row: Vec<Option<usize>>,
    rows: Vec<Vec<BigInt>>,
}

impl IntEchelon {
    pub fn new(ncols: usize) -> Self {
        IntEchelon {
            ncols,
            pivot_row: vec![None; ncols],
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, mut v: Vec<BigInt>) -> bool {
        debug_assert_eq!(v.len(), self.ncols);
        for c in 0..self.ncols {
            if v[c].is_zero() {
                continue;
            }
            match self.pivot_row[c] {
                None => {
                    make_primitive(&mut v[c..]);
                    self.pivot_row[c] = Some(self.rows.len());
                    self.rows.push(v);
                    return true;
                }
                Some(r) => {
                    let row = &self.rows[r];
                    let g = row[c].gcd(&v[c]);
                    let fr = &v[c] / &g;
                    let fv = &row[c] / &g;
                    for j in c..self.ncols {
                        if row[j].is_zero() {
                            if !v[j].is_zero() {
                                v[j] *= &fv;
                            }
                        } else {
                            v[j] = &v[j] * &fv - &fr * &row[j];
                        }
                    }
                    make_primitive(&mut v[c + 1..]);
                }
            }
        }
        false
    }
}

fn make_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g > BigInt::one() {
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x /= &g;
            }
        }
    }
}

/// Fraction-free rank of an integer matrix given as rows.
pub fn int_rank(rows: impl IntoIterator<Item = Vec<BigInt>>) -> usize {
    let mut it = rows.into_iter().peekable();
    let Some(first) = it.peek() else { return 0 };
    let mut e = IntEchelon::new(first.len());
    for r in it {
        e.insert(r);
    }
    e.rank()
}

/// Scale a rational vector to a primitive integer vector.
pub fn clear_denominators(v: &[ExactRational]) -> Vec<BigInt> {
    let l = crate::rational::denominator_lcm(v);
    v.iter().map(|x| (x * ExactRational::from_integer(l.clone())).to_integer()).collect()
}

/// Rank over Q of rational vectors.
pub fn rational_rank(rows: &[Vec<ExactRational>]) -> usize {
    int_rank(rows.iter().map(|r| clear_denominators(r)))
}

/// Rank of polynomials as coefficient vectors over their common monomials.
pub fn rank_of_polys<'a>(polys: impl IntoIterator<Item = &'a SparsePoly>) -> usize {
    let polys: Vec<&SparsePoly> = polys.into_iter().collect();
    let mut index: BTreeMap<&Monomial, usize> = BTreeMap::new();
    for p in &polys {
        for (m, _) in p.terms() {
            let n = index.len();
            index.entry(m).or_insert(n);
        }
    }
    let rows: Vec<Vec<ExactRational>> = polys
        .iter()
        .map(|p| {
            let mut v = vec![ExactRational::zero(); index.len()];
            for (m, c) in p.terms() {
                v[index[m]] = c.clone();
            }
            v
        })
        .collect();
    rational_rank(&rows)
}

/// Determinant by exact Gaussian elimination. The empty matrix has determinant 1.
pub fn det(m: &[Vec<ExactRational>]) -> ExactRational {
    let n = m.len();
    let mut a: Vec<Vec<ExactRational>> = m.to_vec();
    let mut acc = ExactRational::one();
    for c in 0..n {
        assert_eq!(a[c].len(), n, "determinant of a non-square matrix");
        let Some(piv) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return ExactRational::zero();
        };
        if piv != c {
            a.swap(piv, c);
            acc = -acc;
        }
        let pv = a[c][c].clone();
        acc *= &pv;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &pv;
            for j in c..n {
                let t = &f * &a[c][j];
                a[r][j] -= t;
            }
        }
    }
    acc
}

/// Solve `A x = b` for square nonsingular `A`.
pub fn solve(a: &[Vec<ExactRational>], b: &[ExactRational]) -> Option<Vec<ExactRational>> {
    let n = a.len();
    let mut m: Vec<Vec<ExactRational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(piv, c);
        let inv = m[c][c].recip();
        for x in &mut m[c] {
            *x *= &inv;
        }
        for r in 0..n {
            if r == c || m[r][c].is_zero() {
                continue;
            }
            let f = m[r][c].clone();
            for j in c..=n {
                let t = &f * &m[c][j];
                m[r][j] -= t;
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Largest absolute entry, used for reporting matrix sizes.
pub fn max_abs(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x.abs()).max().unwrap_or_default()
}
