//! Gordan's cubic syzygies and the determinants `Delta_t`, `Delta'_t`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::exact::{det, solve};
use crate::rational::{binom_q, int, to_compact_string, ExactRational};
use crate::transvectant::{cubic_table, generic_form, is_admissible, transvect, Covariant};

/// Largest `d` for which syzygies are expanded symbolically.
pub const EXPANSION_BUDGET: usize = 12;

/// `binom(n, k)` as a rational, zero outside `0 <= k <= n`.
fn b(n: i64, k: i64) -> ExactRational {
    binom_q(n, k)
}

/// `num / den`, where a zero numerator wins over a zero denominator.
fn ratio(num: ExactRational, den: ExactRational) -> Result<ExactRational> {
    if num.is_zero() {
        Ok(num)
    } else if den.is_zero() {
        Err(Error::Inconsistent("vanishing denominator in a Gordan coefficient".into()))
    } else {
        Ok(num / den)
    }
}

/// Which of the three forms a slot refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Slot {
    F,
    Phi,
    Psi,
}

/// `((x, y)_inner, z)_outer`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Compound {
    pub x: Slot,
    pub y: Slot,
    pub inner: u32,
    pub z: Slot,
    pub outer: u32,
}

impl fmt::Display for Compound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(({:?},{:?})_{},{:?})_{}",
            self.x, self.y, self.inner, self.z, self.outer
        )
    }
}

/// Orders `(m, n, p)` of `f, phi, psi` and the exponents `a_1, a_2, a_3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GordanParameters {
    pub m: i64,
    pub n: i64,
    pub p: i64,
    pub a1: i64,
    pub a2: i64,
    pub a3: i64,
}

impl GordanParameters {
    pub fn validate(&self) -> Result<()> {
        let GordanParameters { m, n, p, a1, a2, a3 } = *self;
        let ok = [m, n, p, a1, a2, a3].iter().all(|&x| x >= 0)
            && a2 + a3 <= m
            && a1 + a3 <= n
            && a1 + a2 <= p
            && (a1 == 0 || a2 + a3 == m);
        if ok {
            Ok(())
        } else {
            Err(Error::OutOfRange(format!("invalid Gordan parameters {self:?}")))
        }
    }

    pub fn weight(&self) -> i64 {
        self.a1 + self.a2 + self.a3
    }
}

pub type FormalSum = Vec<(Compound, ExactRational)>;

/// Both sides of Gordan's series as finite formal sums; the sign
/// `(-1)^{a_1}` is folded into the right-hand side.
pub fn gordan_general(params: &GordanParameters) -> Result<(FormalSum, FormalSum)> {
    params.validate()?;
    let GordanParameters { m, n, p, a1, a2, a3 } = *params;
    let mut lhs = Vec::new();
    for i in 0..=a2.min(n - a1 - a3) {
        let c = ratio(b(n - a1 - a3, i) * b(a2, i), b(m + n - 2 * a3 - i + 1, i))?;
        if !c.is_zero() {
            let t = Compound {
                x: Slot::F,
                y: Slot::Phi,
                inner: (a3 + i) as u32,
                z: Slot::Psi,
                outer: (a1 + a2 - i) as u32,
            };
            lhs.push((t, c));
        }
    }
    let sign = if a1 % 2 == 0 { int(1) } else { int(-1) };
    let mut rhs = Vec::new();
    for i in 0..=a3.min(p - a1 - a2) {
        let c = ratio(b(p - a1 - a2, i) * b(a3, i), b(m + p - 2 * a2 - i + 1, i))?;
        if !c.is_zero() {
            let t = Compound {
                x: Slot::F,
                y: Slot::Psi,
                inner: (a2 + i) as u32,
                z: Slot::Phi,
                outer: (a1 + a3 - i) as u32,
            };
            rhs.push((t, &sign * c));
        }
    }
    Ok((lhs, rhs))
}

/// Evaluate a formal sum on concrete forms.
pub fn evaluate(sum: &FormalSum, f: &Covariant, phi: &Covariant, psi: &Covariant) -> Result<Covariant> {
    let pick = |s: Slot| match s {
        Slot::F => f,
        Slot::Phi => phi,
        Slot::Psi => psi,
    };
    let mut acc: Option<Covariant> = None;
    for (t, c) in sum {
        let inner = transvect(pick(t.x), pick(t.y), t.inner)?;
        let v = transvect(&inner, pick(t.z), t.outer)?.scale(c);
        acc = Some(match acc {
            None => v,
            Some(a) => a.try_add(&v)?,
        });
    }
    Ok(acc.unwrap_or_else(|| Covariant::zero(f.d(), 0, 0)))
}

/// Expand both sides on `f, phi, psi` and compare.
pub fn verify_general(params: &GordanParameters, f: &Covariant, phi: &Covariant, psi: &Covariant) -> Result<bool> {
    if [f.order(), phi.order(), psi.order()] != [params.m as u32, params.n as u32, params.p as u32] {
        return Err(Error::OutOfRange("form orders do not match the parameters".into()));
    }
    let (lhs, rhs) = gordan_general(params)?;
    let l = evaluate(&lhs, f, phi, psi)?;
    let r = evaluate(&rhs, f, phi, psi)?;
    Ok(l.body() == r.body())
}

/// Collapse a formal sum with `f = phi = psi = F` into cubic covariants `{a, b}`.
pub fn as_cubic_terms(sum: &FormalSum) -> BTreeMap<(i64, i64), ExactRational> {
    let mut out: BTreeMap<(i64, i64), ExactRational> = BTreeMap::new();
    for (t, c) in sum {
        *out.entry((t.inner as i64, t.outer as i64)).or_insert_with(ExactRational::zero) += c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `theta^{(m)}_{d,k,w}`.
pub fn theta(d: i64, k: i64, w: i64, m: i64) -> Result<ExactRational> {
    if !(0 <= w && w <= d && 0 <= k && 2 * k < w && k <= m && m <= w) {
        return Err(Error::OutOfRange(format!("theta needs 0 <= w <= d, 0 <= k < w/2, k <= m <= w; got d={d} k={k} w={w} m={m}")));
    }
    let first = ratio(b(d - k, m - k) * b(w - k, m - k), b(2 * d - k - m + 1, m - k))?;
    if m < w - k {
        return Ok(first);
    }
    let star = ratio(
        b(d - w + k, m - w + k) * b(k, m - w + k),
        b(2 * d - w + k - m + 1, m - w + k),
    )?;
    Ok(first - star)
}

/// `vartheta^{(m)}_{d,k,w}`.
pub fn vartheta(d: i64, k: i64, w: i64, m: i64) -> Result<ExactRational> {
    if !(d <= w && 2 * w <= 3 * d && w - d <= k && 2 * k <= d && k <= m && m <= 2 * d - w) {
        return Err(Error::OutOfRange(format!(
            "vartheta needs d <= w <= 3d/2, w-d <= k <= d/2, k <= m <= 2d-w; got d={d} k={k} w={w} m={m}"
        )));
    }
    let first = ratio(b(2 * d - w - k, m - k) * b(d - k, m - k), b(2 * d - k - m + 1, m - k))?;
    if m < d - k {
        return Ok(first);
    }
    let star = ratio(b(d - w + k, m - d + k) * b(k, m - d + k), b(d - m + k + 1, m - d + k))?;
    if (w + d + 1) % 2 == 0 {
        Ok(first + star)
    } else {
        Ok(first - star)
    }
}

/// A rational combination of cubic covariants `{a, b}` of a common weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygyCombination {
    pub d: usize,
    pub weight: i64,
    /// Keyed by `(a, b)`; only even `a` appear.
    pub terms: BTreeMap<(i64, i64), ExactRational>,
}

impl SyzygyCombination {
    pub fn coefficient(&self, a: i64, b: i64) -> ExactRational {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(ExactRational::zero)
    }

    pub fn scale(&self, c: &ExactRational) -> SyzygyCombination {
        let mut out = self.clone();
        out.terms = self
            .terms
            .iter()
            .map(|(k, v)| (*k, v * c))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        out
    }

    pub fn add(&self, other: &SyzygyCombination) -> SyzygyCombination {
        assert_eq!(self.d, other.d);
        let mut terms = self.terms.clone();
        for (k, v) in &other.terms {
            *terms.entry(*k).or_insert_with(ExactRational::zero) += v;
        }
        terms.retain(|_, v| !v.is_zero());
        SyzygyCombination {
            d: self.d,
            weight: self.weight,
            terms,
        }
    }
}

impl fmt::Display for SyzygyCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((a, b), c)| format!("{}*{{{a},{b}}}", to_compact_string(c)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn combination(d: usize, w: i64, coeffs: impl IntoIterator<Item = (i64, Result<ExactRational>)>) -> Result<SyzygyCombination> {
    let mut terms = BTreeMap::new();
    for (m, c) in coeffs {
        let c = c?;
        if m % 2 == 0 && !c.is_zero() {
            terms.insert((m, w - m), c);
        }
    }
    Ok(SyzygyCombination { d, weight: w, terms })
}

/// `Gamma_lower(k, w)`: syzygy of weight `w <= d`.
pub fn gordan_lower(d: usize, k: i64, w: i64) -> Result<SyzygyCombination> {
    let di = d as i64;
    if !(0 <= w && w <= di && 0 <= k && 2 * k < w) {
        return Err(Error::OutOfRange(format!("lower syzygy needs 0 <= w <= d, 0 <= k < w/2; got k={k} w={w}")));
    }
    combination(d, w, (k..=w).map(|m| (m, theta(di, k, w, m))))
}

/// `Gamma_upper(k, w)`: syzygy of weight `w >= d`.
pub fn gordan_upper(d: usize, k: i64, w: i64) -> Result<SyzygyCombination> {
    let di = d as i64;
    if !(di <= w && 2 * w <= 3 * di && w - di <= k && 2 * k <= di) {
        return Err(Error::OutOfRange(format!("upper syzygy needs d <= w <= 3d/2, w-d <= k <= d/2; got k={k} w={w}")));
    }
    combination(d, w, (k..=2 * di - w).map(|m| (m, vartheta(di, k, w, m))))
}

/// Every valid `(k, w)` for the lower family.
pub fn lower_range(d: usize) -> Vec<(i64, i64)> {
    let di = d as i64;
    (0..=di)
        .flat_map(|w| (0..).take_while(move |k| 2 * k < w).map(move |k| (k, w)))
        .collect()
}

/// Every valid `(k, w)` for the upper family.
pub fn upper_range(d: usize) -> Vec<(i64, i64)> {
    let di = d as i64;
    (di..=3 * di / 2)
        .flat_map(|w| ((w - di)..=di / 2).map(move |k| (k, w)))
        .collect()
}

/// Cubic covariants of degree `d`, memoized.
pub fn cubics(d: usize) -> Arc<BTreeMap<(i64, i64), Covariant>> {
    static MEMO: OnceLock<Mutex<HashMap<usize, Arc<BTreeMap<(i64, i64), Covariant>>>>> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    if let Some(t) = memo.lock().unwrap().get(&d) {
        return t.clone();
    }
    let t = Arc::new(cubic_table(d));
    memo.lock().unwrap().insert(d, t.clone());
    t
}

/// `sum c * {a, b}` as a covariant.
pub fn expand(c: &SyzygyCombination) -> Result<Covariant> {
    if c.d > EXPANSION_BUDGET {
        return Err(Error::ResourceLimit(format!(
            "symbolic expansion limited to d <= {EXPANSION_BUDGET}, got {}",
            c.d
        )));
    }
    let table = cubics(c.d);
    let order = (3 * c.d as i64 - 2 * c.weight).max(0) as u32;
    let mut acc = Covariant::zero(c.d, 3, order);
    for ((a, b), coeff) in &c.terms {
        if let Some(cov) = table.get(&(*a, *b)) {
            acc = acc.try_add(&cov.scale(coeff))?;
        }
    }
    Ok(acc)
}

pub fn expand_to_zero(c: &SyzygyCombination) -> Result<bool> {
    Ok(expand(c)?.is_zero())
}

/// Solve for the combination of `syz` in which the pairs of `kill` vanish and
/// `keep` has coefficient 1. Needs `syz.len() == kill.len() + 1`.
pub fn eliminate(
    syz: &[SyzygyCombination],
    kill: &[(i64, i64)],
    keep: (i64, i64),
) -> Result<SyzygyCombination> {
    if syz.is_empty() || syz.len() != kill.len() + 1 {
        return Err(Error::OutOfRange("need one more syzygy than eliminated pairs".into()));
    }
    let rows: Vec<(i64, i64)> = kill.iter().copied().chain([keep]).collect();
    let a: Vec<Vec<ExactRational>> = rows
        .iter()
        .map(|&(x, y)| syz.iter().map(|s| s.coefficient(x, y)).collect())
        .collect();
    let mut rhs = vec![ExactRational::zero(); rows.len()];
    *rhs.last_mut().unwrap() = ExactRational::one();
    let x = solve(&a, &rhs).ok_or_else(|| Error::Singular("elimination system".into()))?;
    let mut acc = syz[0].scale(&x[0]);
    for (s, c) in syz.iter().zip(&x).skip(1) {
        acc = acc.add(&s.scale(c));
    }
    Ok(acc)
}

/// Number of admissible `(a', b')` with `a' >= a` and `a' + b' = a + b`.
pub fn position(d: usize, a: i64, b: i64) -> Result<usize> {
    let di = d as i64;
    if !is_admissible(di, a, b) {
        return Err(Error::OutOfRange(format!("({a},{b}) is not admissible for d = {d}")));
    }
    let w = a + b;
    Ok((a..=di).filter(|&x| is_admissible(di, x, w - x)).count())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    Lower,
    Upper,
}

/// The matrix `M_t` (even `d`) or `M'_t` (odd `d`) for the tail length `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaMatrix {
    pub d: usize,
    pub s: usize,
    pub t: usize,
    pub w: i64,
    pub case: Case,
    /// Row labels `k`.
    pub ks: Vec<i64>,
    /// Column labels `m`; entries use `theta^{(2m)}` or `vartheta^{(2m)}`.
    pub ms: Vec<i64>,
    pub entries: Vec<Vec<ExactRational>>,
}

/// Largest `t` for given `d` and `s`: `4s - 4` for even `d`, `4s - 2` for odd.
pub fn max_t(d: usize, s: usize) -> usize {
    if d % 2 == 0 {
        4 * s - 4
    } else {
        4 * s - 2
    }
}

pub fn build_matrix(d: usize, s: usize, t: usize) -> Result<DeltaMatrix> {
    if s < 1 {
        return Err(Error::OutOfRange("s must be at least 1".into()));
    }
    let n = (d / 2) as i64;
    let si = s as i64;
    if n - si + 1 < 1 {
        return Err(Error::OutOfRange(format!("d = {d} too small for s = {s}")));
    }
    if t > max_t(d, s) || t > d {
        return Err(Error::OutOfRange(format!("t = {t} out of range for d = {d}, s = {s}")));
    }
    let a = 2 * (n - si + 1);
    let ti = t as i64;
    let w = a + ti;
    let di = d as i64;
    let p = position(d, a, ti)? as i64;
    let ms: Vec<i64> = (n - si + 1..=n - si + p).collect();
    let (case, ks) = if w <= di {
        (Case::Lower, (1..=p).collect::<Vec<_>>())
    } else {
        (Case::Upper, (w - di..=w - di + p - 1).collect::<Vec<_>>())
    };
    let entries = ks
        .iter()
        .map(|&k| {
            ms.iter()
                .map(|&m| match case {
                    Case::Lower => theta(di, k, w, 2 * m),
                    Case::Upper => vartheta(di, k, w, 2 * m),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DeltaMatrix {
        d,
        s,
        t,
        w,
        case,
        ks,
        ms,
        entries,
    })
}

/// `det M_t` (or `det M'_t`); the empty matrix gives 1.
pub fn delta(d: usize, s: usize, t: usize) -> Result<ExactRational> {
    Ok(det(&build_matrix(d, s, t)?.entries))
}

/// Closed form of `Delta_6(d)` for `s = 3`.
pub fn delta6_closed_form(d: i64) -> ExactRational {
    let num = 3780 * (d - 4) * (d - 5) * (d - 6) * (d + 7) * (d * d + 3 * d + 10);
    let den = (d - 1).pow(2) * (d - 2) * (d + 2) * (d + 1).pow(2) * d * d * (d + 3);
    ExactRational::new(num.into(), den.into())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Threshold {
    pub s: usize,
    pub d_start: usize,
    pub d_max: usize,
    /// Least `N >= d_start` with every determinant nonzero on `N..=d_max`.
    pub n: usize,
    /// `(d, t)` with a vanishing determinant.
    pub vanishing: Vec<(usize, usize)>,
}

/// Scan `d` from `max(4, 4s - 2)` to `d_max`.
pub fn threshold_search(s: usize, d_max: usize) -> Result<Threshold> {
    if s < 1 {
        return Err(Error::OutOfRange("s must be at least 1".into()));
    }
    let d_start = (4 * s).saturating_sub(2).max(4);
    let per_d: Vec<Vec<(usize, usize)>> = (d_start..=d_max)
        .into_par_iter()
        .map(|d| -> Result<Vec<(usize, usize)>> {
            let mut zeros = Vec::new();
            for t in 0..=max_t(d, s) {
                if delta(d, s, t)?.is_zero() {
                    zeros.push((d, t));
                }
            }
            Ok(zeros)
        })
        .collect::<Result<_>>()?;
    let vanishing: Vec<(usize, usize)> = per_d.into_iter().flatten().collect();
    let n = vanishing.iter().map(|&(d, _)| d + 1).max().unwrap_or(d_start).max(d_start);
    Ok(Threshold {
        s,
        d_start,
        d_max,
        n,
        vanishing,
    })
}

/// `(s, N_s)`: the least `N_s` with every `Delta_t` nonzero for `d >= N_s`.
pub const KNOWN_THRESHOLDS: [(usize, usize); 8] =
    [(1, 4), (2, 8), (3, 10), (4, 14), (5, 18), (6, 22), (7, 26), (8, 30)];

/// Evaluate the general series with `f = phi = psi = F`.
pub fn general_on_generic(d: usize, params: &GordanParameters) -> Result<bool> {
    let f = generic_form(d);
    verify_general(params, &f, &f, &f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn displayed_syzygies() {
        let g = gordan_lower(7, 1, 6).unwrap();
        assert_eq!(g.coefficient(2, 4), rat(5, 2));
        assert_eq!(g.coefficient(4, 2), rat(5, 3));
        assert_eq!(g.coefficient(6, 0), rat(-11, 28));
        assert_eq!(g.terms.len(), 3);
        let h = gordan_upper(11, 4, 13).unwrap();
        assert_eq!(h.coefficient(4, 9), rat(1, 1));
        assert_eq!(h.coefficient(6, 7), rat(35, 13));
        assert_eq!(h.coefficient(8, 5), rat(-31, 66));
        assert_eq!(h.terms.len(), 3);
        assert_eq!(vartheta(11, 4, 13, 4).unwrap(), rat(1, 1));
    }

    #[test]
    fn theta_corner() {
        for d in 3..=40i64 {
            assert_eq!(theta(d, 1, d, d).unwrap(), rat(1, d) - rat(1, 2));
        }
        assert!(theta(7, 3, 6, 4).is_err());
    }

    #[test]
    fn positions() {
        assert_eq!(position(13, 6, 9).unwrap(), 3);
        assert!(position(13, 5, 9).is_err());
        for n in 2..10usize {
            let d = 2 * n;
            for s in 1..=n {
                for t in 0..=(2 * s - 2).min(d) {
                    let a = (2 * (n - s + 1)) as i64;
                    if is_admissible(d as i64, a, t as i64) {
                        assert_eq!(position(d, a, t as i64).unwrap(), t / 2 + 1);
                    }
                }
            }
        }
    }

    #[test]
    fn boundary_agreement() {
        for d in 2..=12usize {
            for k in 0..=(d as i64) / 2 {
                if 2 * k < d as i64 {
                    assert_eq!(gordan_lower(d, k, d as i64).unwrap().terms, gordan_upper(d, k, d as i64).unwrap().terms);
                }
            }
        }
    }

    #[test]
    fn small_determinants() {
        for d in (4..=20).step_by(2) {
            let m = build_matrix(d, 1, 0).unwrap();
            assert_eq!(m.entries, vec![vec![rat(1, d as i64) - rat(1, 2)]]);
        }
        for d in [8i64, 10, 12, 20] {
            assert_eq!(delta(d as usize, 3, 6).unwrap(), delta6_closed_form(d));
        }
        assert_eq!(det(&[]), int(1));
    }
}
