//! Laurent polynomials in one variable `λ` and matrices over them.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{to_compact_string, to_fraction_string, ExactRational};

/// `sum c_e λ^e` with finitely many nonzero `c_e`, `e` in Z.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, ExactRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(ExactRational::one(), 0)
    }

    pub fn constant(c: ExactRational) -> Self {
        Self::monomial(c, 0)
    }

    /// `c λ^e`.
    pub fn monomial(c: ExactRational, e: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, ExactRational)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: i64, c: ExactRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(ExactRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &ExactRational)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, e: i64) -> ExactRational {
        self.terms.get(&e).cloned().unwrap_or_else(ExactRational::zero)
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// `Some((c, e))` when the polynomial is the single term `c λ^e`.
    pub fn as_monomial(&self) -> Option<(&ExactRational, i64)> {
        if self.terms.len() == 1 {
            let (&e, c) = self.terms.iter().next().unwrap();
            Some((c, e))
        } else {
            None
        }
    }

    /// Unit of `Q[λ, λ^-1]`: a nonzero monomial.
    pub fn is_unit(&self) -> bool {
        self.as_monomial().is_some()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&e| e == 0)
    }

    /// No negative powers.
    pub fn in_positive_ring(&self) -> bool {
        self.min_exp().is_none_or(|e| e >= 0)
    }

    /// No positive powers.
    pub fn in_negative_ring(&self) -> bool {
        self.max_exp().is_none_or(|e| e <= 0)
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, v)| (e, v * c)).collect(),
        }
    }

    /// Multiply by `λ^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, v)| (e + k, v.clone())).collect(),
        }
    }

    /// Substitute `λ -> λ^-1`.
    pub fn invert_variable(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, v)| (-e, v.clone())).collect(),
        }
    }

    /// Inverse of a unit.
    pub fn unit_inverse(&self) -> Option<Self> {
        let (c, e) = self.as_monomial()?;
        Some(Self::monomial(c.recip(), -e))
    }

    /// Serialization as `[[exponent, "num/den"], ...]` in increasing exponent.
    pub fn canonical(&self) -> Vec<(i64, String)> {
        self.terms
            .iter()
            .map(|(&e, c)| (e, to_fraction_string(c)))
            .collect()
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-ExactRational::one())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, c) in self.terms.iter().rev() {
            let neg = c < &ExactRational::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let cs = to_compact_string(&a);
            match e {
                0 => write!(f, "{cs}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{cs}*")?;
                    }
                    if e == 1 {
                        write!(f, "L")?;
                    } else {
                        write!(f, "L^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Square matrix over `Q[λ, λ^-1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentMatrix {
    rows: Vec<Vec<LaurentPoly>>,
}

impl LaurentMatrix {
    pub fn new(rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::OutOfRange("matrix is not square".into()));
        }
        Ok(Self { rows })
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![0; n])
    }

    /// `diag(λ^{k_1}, ..., λ^{k_n})`.
    pub fn diagonal(ks: &[i64]) -> Self {
        let n = ks.len();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            LaurentPoly::monomial(ExactRational::one(), ks[i])
                        } else {
                            LaurentPoly::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Self { rows }
    }

    /// Matrix with integer-or-rational entries `c_ij λ^{e_ij}`.
    pub fn from_monomials(entries: &[Vec<(ExactRational, i64)>]) -> Result<Self> {
        Self::new(
            entries
                .iter()
                .map(|r| r.iter().map(|(c, e)| LaurentPoly::monomial(c.clone(), *e)).collect())
                .collect(),
        )
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<LaurentPoly>] {
        &self.rows
    }

    pub fn mul(&self, other: &LaurentMatrix) -> Result<LaurentMatrix> {
        let n = self.size();
        if other.size() != n {
            return Err(Error::OutOfRange("matrix sizes differ".into()));
        }
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut acc = LaurentPoly::zero();
                        for k in 0..n {
                            acc = &acc + &(&self.rows[i][k] * &other.rows[k][j]);
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        Ok(LaurentMatrix { rows })
    }

    pub fn scale_by_power(&self, k: i64) -> LaurentMatrix {
        LaurentMatrix {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|p| p.shift(k)).collect())
                .collect(),
        }
    }

    pub fn invert_variable(&self) -> LaurentMatrix {
        LaurentMatrix {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(LaurentPoly::invert_variable).collect())
                .collect(),
        }
    }

    /// Determinant by Laplace expansion memoized over column subsets.
    pub fn det(&self) -> LaurentPoly {
        let n = self.size();
        if n == 0 {
            return LaurentPoly::one();
        }
        assert!(n < 20, "determinant size {n} too large");
        // minor[mask] = det of the last popcount(mask) rows on columns `mask`
        let mut minor: HashMap<u32, LaurentPoly> = HashMap::new();
        minor.insert(0, LaurentPoly::one());
        for size in 1..=n {
            let row = n - size;
            let mut next = HashMap::new();
            for mask in masks_of_size(n, size) {
                let mut acc = LaurentPoly::zero();
                let mut sign_pos = 0;
                for j in 0..n {
                    if mask & (1 << j) == 0 {
                        continue;
                    }
                    let rest = mask & !(1 << j);
                    let m = &minor[&rest];
                    if !m.is_zero() && !self.rows[row][j].is_zero() {
                        let t = &self.rows[row][j] * m;
                        acc = if sign_pos % 2 == 0 { &acc + &t } else { &acc - &t };
                    }
                    sign_pos += 1;
                }
                next.insert(mask, acc);
            }
            minor = next;
        }
        minor.remove(&((1u32 << n) - 1)).unwrap()
    }

    /// Inverse over `Q[λ, λ^-1]` via the adjugate; fails unless the
    /// determinant is a unit.
    pub fn inverse(&self) -> Result<LaurentMatrix> {
        let n = self.size();
        let det = self.det();
        let dinv = det
            .unit_inverse()
            .ok_or_else(|| Error::Singular(format!("determinant {det} is not a unit")))?;
        let mut rows = vec![vec![LaurentPoly::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let minor: Vec<Vec<LaurentPoly>> = (0..n)
                    .filter(|&r| r != i)
                    .map(|r| {
                        (0..n)
                            .filter(|&c| c != j)
                            .map(|c| self.rows[r][c].clone())
                            .collect()
                    })
                    .collect();
                let c = LaurentMatrix { rows: minor }.det();
                let c = if (i + j) % 2 == 0 { c } else { -&c };
                rows[j][i] = &c * &dinv;
            }
        }
        Ok(LaurentMatrix { rows })
    }

    pub fn is_polynomial_in_lambda(&self) -> bool {
        self.rows.iter().flatten().all(LaurentPoly::in_positive_ring)
    }

    pub fn is_polynomial_in_inverse(&self) -> bool {
        self.rows.iter().flatten().all(LaurentPoly::in_negative_ring)
    }

    /// Invertible over `Q[λ]`.
    pub fn in_gl_positive(&self) -> bool {
        self.is_polynomial_in_lambda() && is_nonzero_constant(&self.det())
    }

    /// Invertible over `Q[λ^-1]`.
    pub fn in_gl_negative(&self) -> bool {
        self.is_polynomial_in_inverse() && is_nonzero_constant(&self.det())
    }

    /// Every entry `(i, j)` is zero or `c λ^{i - j + offset}`.
    pub fn has_toeplitz_exponents(&self, offset: i64) -> bool {
        self.rows.iter().enumerate().all(|(i, r)| {
            r.iter().enumerate().all(|(j, p)| {
                p.is_zero() || p.as_monomial().is_some_and(|(_, e)| e == i as i64 - j as i64 + offset)
            })
        })
    }

    pub fn canonical(&self) -> Vec<Vec<Vec<(i64, String)>>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(LaurentPoly::canonical).collect())
            .collect()
    }
}

impl Serialize for LaurentMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let text: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect();
        text.serialize(s)
    }
}

impl fmt::Display for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(ToString::to_string).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

fn is_nonzero_constant(p: &LaurentPoly) -> bool {
    !p.is_zero() && p.is_constant()
}

fn masks_of_size(n: usize, k: usize) -> impl Iterator<Item = u32> {
    (0u32..(1 << n)).filter(move |m| m.count_ones() as usize == k)
}

/// `Q = E^{-1} D F`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Birkhoff {
    /// Invertible over `Q[λ]`.
    pub e: LaurentMatrix,
    /// `diag(λ^{k_i})`.
    pub d: LaurentMatrix,
    /// Invertible over `Q[λ^-1]`.
    pub f: LaurentMatrix,
    pub ks: Vec<i64>,
}

/// Left null vector of a rational matrix, if any.
fn left_null_vector(l: &[Vec<ExactRational>]) -> Option<Vec<ExactRational>> {
    let n = l.len();
    // work on the transpose augmented with the identity
    let mut a: Vec<Vec<ExactRational>> = (0..n)
        .map(|i| {
            let mut row = l[i].clone();
            row.extend((0..n).map(|j| if i == j { ExactRational::one() } else { ExactRational::zero() }));
            row
        })
        .collect();
    let ncols = l.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let piv = a[r][c].clone();
        for i in 0..n {
            if i != r && !a[i][c].is_zero() {
                let f = &a[i][c] / &piv;
                let pivot_row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    (r < n).then(|| a[r][ncols..].to_vec())
}

/// Factor an invertible Laurent matrix as `Q = E^{-1} D F` by row reduction
/// over `Q[λ]` to a row-proper form.
pub fn birkhoff_factorize(q: &LaurentMatrix) -> Result<Birkhoff> {
    let n = q.size();
    let det = q.det();
    if !det.is_unit() {
        return Err(Error::Singular(format!("determinant {det} is not a unit")));
    }
    let mut a = q.rows.clone();
    let mut e = LaurentMatrix::identity(n).rows;
    let row_degree = |row: &[LaurentPoly]| row.iter().filter_map(LaurentPoly::max_exp).max();
    loop {
        let ks: Vec<i64> = a
            .iter()
            .map(|r| row_degree(r).expect("invertible matrix has no zero row"))
            .collect();
        let lead: Vec<Vec<ExactRational>> = a
            .iter()
            .zip(&ks)
            .map(|(r, &k)| r.iter().map(|p| p.coeff(k)).collect())
            .collect();
        let Some(c) = left_null_vector(&lead) else {
            let d = LaurentMatrix::diagonal(&ks);
            let f = LaurentMatrix {
                rows: a
                    .iter()
                    .zip(&ks)
                    .map(|(r, &k)| r.iter().map(|p| p.shift(-k)).collect())
                    .collect(),
            };
            let out = Birkhoff {
                e: LaurentMatrix { rows: e },
                d,
                f,
                ks,
            };
            verify_birkhoff(q, &out)?;
            return Ok(out);
        };
        let i = (0..n)
            .filter(|&j| !c[j].is_zero())
            .max_by_key(|&j| (ks[j], std::cmp::Reverse(j)))
            .unwrap();
        let combine = |m: &[Vec<LaurentPoly>]| -> Vec<LaurentPoly> {
            let mut row = vec![LaurentPoly::zero(); n];
            for j in (0..n).filter(|&j| !c[j].is_zero()) {
                let factor = LaurentPoly::monomial(c[j].clone(), ks[i] - ks[j]);
                for (x, y) in row.iter_mut().zip(&m[j]) {
                    *x = &*x + &(&factor * y);
                }
            }
            row
        };
        let new_a = combine(&a);
        let new_e = combine(&e);
        a[i] = new_a;
        e[i] = new_e;
    }
}

/// Checks `E Q = D F` and the ring conditions on `E`, `D`, `F`.
pub fn verify_birkhoff(q: &LaurentMatrix, b: &Birkhoff) -> Result<()> {
    if !b.e.in_gl_positive() {
        return Err(Error::Inconsistent(format!("E = {} is not invertible over Q[L]", b.e)));
    }
    if !b.f.in_gl_negative() {
        return Err(Error::Inconsistent(format!("F = {} is not invertible over Q[1/L]", b.f)));
    }
    if b.d != LaurentMatrix::diagonal(&b.ks) {
        return Err(Error::Inconsistent("D is not diag(L^k)".into()));
    }
    if b.e.mul(q)? != b.d.mul(&b.f)? {
        return Err(Error::Inconsistent("E Q != D F".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn m(c: i64, e: i64) -> LaurentPoly {
        LaurentPoly::monomial(int(c), e)
    }

    #[test]
    fn arithmetic() {
        let p = &m(1, 1) + &m(2, -1);
        let q = &m(1, 1) - &m(2, -1);
        assert_eq!(&p * &q, &m(1, 2) - &m(4, -2));
        assert_eq!(p.to_string(), "L + 2*L^-1");
        assert!(m(3, -2).unit_inverse().unwrap() == LaurentPoly::monomial(crate::rational::rat(1, 3), 2));
    }

    #[test]
    fn identity_factors_trivially() {
        let b = birkhoff_factorize(&LaurentMatrix::identity(3)).unwrap();
        assert_eq!(b.ks, vec![0, 0, 0]);
        assert_eq!(b.e, LaurentMatrix::identity(3));
        assert_eq!(b.f, LaurentMatrix::identity(3));
    }

    #[test]
    fn diagonal_exponents() {
        let q = LaurentMatrix::diagonal(&[2, -1, 0]);
        let b = birkhoff_factorize(&q).unwrap();
        let mut ks = b.ks.clone();
        ks.sort();
        assert_eq!(ks, vec![-1, 0, 2]);
    }

    #[test]
    fn singular_rejected() {
        let q = LaurentMatrix::new(vec![vec![m(1, 0), m(1, 1)], vec![m(1, -1), m(1, 0)]]).unwrap();
        assert!(q.det().is_zero());
        assert!(birkhoff_factorize(&q).is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let q = LaurentMatrix::new(vec![vec![m(-1, 0), m(3, -1)], vec![m(-3, 1), m(8, 0)]]).unwrap();
        let inv = q.inverse().unwrap();
        assert_eq!(q.mul(&inv).unwrap(), LaurentMatrix::identity(2));
    }
}
