//! Splitting type of the rank `d-2` bundle on the rational normal curve,
//! from the affine Hessian of `F/a_0` and the transition between the charts
//! `a_0 != 0` and `a_d != 0`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::{birkhoff_factorize, Birkhoff, LaurentMatrix, LaurentPoly};
use crate::poly::{Monomial, SparsePoly, VariableUniverse};
use crate::rational::{binom_q, ExactRational};
use crate::transvectant::transvectant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Chart {
    /// `λ_i = a_i / a_0`.
    Lower,
    /// `μ_{-i} = a_{d-i} / a_d`.
    Upper,
}

/// Which `u`-factor absorbs a monomial divisible by several of them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CofactorRule {
    LowestIndex,
    HighestIndex,
}

/// Coefficients of the affine Hessian
/// `(f,f)_2 = sum_r binom(2d-4, r-2) u_r x^.. + sum_s binom(2d-4, s-2) v_s x^..`.
#[derive(Clone, Debug)]
pub struct AffineHessianData {
    pub d: usize,
    pub chart: Chart,
    /// Variable `i-1` is `λ_i` (or `μ_{-i}`).
    pub ring: Arc<VariableUniverse>,
    pub u: BTreeMap<usize, SparsePoly>,
    pub v: BTreeMap<usize, SparsePoly>,
}

impl AffineHessianData {
    /// `w_i`: `u_i` for `i <= d`, `v_i` above.
    pub fn w(&self, i: usize) -> &SparsePoly {
        self.u.get(&i).or_else(|| self.v.get(&i)).expect("index in 2..=2d-2")
    }

    /// `|weight|` of each ring variable.
    pub fn weights(&self) -> Vec<i64> {
        (1..=self.d as i64).collect()
    }

    /// `κ_r` with `κ_r u_r = λ_r - P_r`.
    pub fn kappa(&self, r: usize) -> ExactRational {
        let mut e = vec![0u16; self.d];
        e[r - 1] = 1;
        self.u[&r].coeff(&Monomial::from_exponents(e)).recip()
    }

    /// `P_r(λ_1..λ_{r-1}) = λ_r - κ_r u_r`.
    pub fn p_poly(&self, r: usize) -> SparsePoly {
        let lr = SparsePoly::var(&self.ring, r - 1);
        &lr - &self.u[&r].scale(&self.kappa(r))
    }
}

fn ring(d: usize, chart: Chart) -> Arc<VariableUniverse> {
    let prefix = match chart {
        Chart::Lower => "l",
        Chart::Upper => "m",
    };
    VariableUniverse::new((1..=d).map(|i| format!("{prefix}{i}")).chain(["x1".into(), "x2".into()]))
}

fn coefficient_ring(d: usize, chart: Chart) -> Arc<VariableUniverse> {
    let prefix = match chart {
        Chart::Lower => "l",
        Chart::Upper => "m",
    };
    VariableUniverse::new((1..=d).map(|i| format!("{prefix}{i}")))
}

/// Exponents `(e1, e2)` of `x1, x2` carrying `w_i` in the given chart.
fn w_monomial(d: usize, chart: Chart, i: usize) -> (usize, usize) {
    let (lead, other) = (2 * d - i - 2, i - 2);
    match chart {
        Chart::Lower => (lead, other),
        Chart::Upper => (other, lead),
    }
}

/// `f = F/a_0` (or `F/a_d`) in the chart ring extended by `x1, x2`.
fn affine_form(d: usize, chart: Chart, u: &Arc<VariableUniverse>) -> SparsePoly {
    let (x1, x2) = u.x_vars().unwrap();
    let mut f = SparsePoly::zero(u);
    for i in 0..=d {
        let (e1, e2) = match chart {
            Chart::Lower => (d - i, i),
            Chart::Upper => (i, d - i),
        };
        let mut e = vec![0u16; u.len()];
        e[x1] = e1 as u16;
        e[x2] = e2 as u16;
        if i > 0 {
            e[i - 1] = 1;
        }
        f.add_term(Monomial::from_exponents(e), binom_q(d as i64, i as i64));
    }
    f
}

/// Split `sum c(λ) x1^e1 x2^e2` into its x-coefficients in the coefficient ring.
fn x_coefficients(h: &SparsePoly, target: &Arc<VariableUniverse>) -> BTreeMap<(u16, u16), SparsePoly> {
    let (x1, x2) = h.universe().x_vars().unwrap();
    let mut out: BTreeMap<(u16, u16), SparsePoly> = BTreeMap::new();
    for (m, c) in h.terms() {
        let key = (m.exponent(x1), m.exponent(x2));
        let e: Vec<u16> = m.exponents()[..target.len()].to_vec();
        out.entry(key)
            .or_insert_with(|| SparsePoly::zero(target))
            .add_term(Monomial::from_exponents(e), c.clone());
    }
    out
}

pub fn affine_hessian(d: usize) -> Result<AffineHessianData> {
    affine_hessian_in(d, Chart::Lower)
}

/// Affine Hessian data in either chart.
pub fn affine_hessian_in(d: usize, chart: Chart) -> Result<AffineHessianData> {
    if d < 3 {
        return Err(Error::OutOfRange(format!("affine Hessian needs d >= 3, got {d}")));
    }
    let big = ring(d, chart);
    let small = coefficient_ring(d, chart);
    let f = affine_form(d, chart, &big);
    let h = transvectant(&f, &f, 2)?;
    let coeffs = x_coefficients(&h, &small);
    let n = 2 * d - 4;
    let mut u = BTreeMap::new();
    let mut v = BTreeMap::new();
    for i in 2..=2 * d - 2 {
        let (e1, e2) = w_monomial(d, chart, i);
        let c = coeffs
            .get(&(e1 as u16, e2 as u16))
            .cloned()
            .unwrap_or_else(|| SparsePoly::zero(&small));
        let w = c.scale(&binom_q(n as i64, (i - 2) as i64).recip());
        if i <= d {
            u.insert(i, w);
        } else {
            v.insert(i, w);
        }
    }
    let data = AffineHessianData { d, chart, ring: small, u, v };
    let weights = data.weights();
    for i in 2..=2 * d - 2 {
        let w = data.w(i);
        if !w.is_zero() && w.isobaric_weight(&weights) != Some(i as i64) {
            return Err(Error::Inconsistent(format!("w_{i} is not isobaric of weight {i}")));
        }
    }
    for r in 2..=d {
        if data.kappa(r).is_zero() {
            return Err(Error::Inconsistent(format!("u_{r} has no linear λ_{r} term")));
        }
    }
    Ok(data)
}

/// `v_s = sum_r g_{s-r} u_r`, keyed by `s` then `r`.
pub type Cofactors = BTreeMap<usize, BTreeMap<usize, SparsePoly>>;

/// Images of `λ_1..λ_d` in `Q[λ_1, u_2..u_d]` and back.
struct Rewriting {
    tri: Arc<VariableUniverse>,
    forward: Vec<SparsePoly>,
    backward: Vec<SparsePoly>,
}

fn rewriting(h: &AffineHessianData) -> Result<Rewriting> {
    let d = h.d;
    let tri = VariableUniverse::new(
        std::iter::once("t1".to_string()).chain((2..=d).map(|r| format!("u{r}"))),
    );
    let mut forward = vec![SparsePoly::var(&tri, 0)];
    for r in 2..=d {
        let mut images = forward.clone();
        images.resize(d, SparsePoly::zero(&tri));
        let p = h.p_poly(r).substitute(&tri, &images)?;
        let uvar = SparsePoly::var(&tri, r - 1).scale(&h.kappa(r));
        forward.push(&uvar + &p);
    }
    let backward = std::iter::once(SparsePoly::var(&h.ring, 0))
        .chain((2..=d).map(|r| h.u[&r].clone()))
        .collect();
    Ok(Rewriting { tri, forward, backward })
}

pub fn cofactor_decomposition(d: usize) -> Result<Cofactors> {
    cofactors_for(&affine_hessian(d)?, CofactorRule::LowestIndex)
}

/// Cofactors by triangular rewriting: each monomial of `v_s` in
/// `(λ_1, u_2, ..., u_d)` goes to one of its `u`-factors.
pub fn cofactors_for(h: &AffineHessianData, rule: CofactorRule) -> Result<Cofactors> {
    let d = h.d;
    let rw = rewriting(h)?;
    let weights = h.weights();
    let mut out = Cofactors::new();
    for (&s, vs) in &h.v {
        let t = vs.substitute(&rw.tri, &rw.forward)?;
        let mut g: BTreeMap<usize, SparsePoly> =
            (2..=d).map(|r| (r, SparsePoly::zero(&rw.tri))).collect();
        for (m, c) in t.terms() {
            let exps = m.exponents();
            let mut us = (1..d).filter(|&k| exps[k] > 0);
            let k = match rule {
                CofactorRule::LowestIndex => us.next(),
                CofactorRule::HighestIndex => us.next_back(),
            }
            .ok_or_else(|| Error::Inconsistent(format!("v_{s} has a term outside (u_2..u_d)")))?;
            let mut e = exps.to_vec();
            e[k] -= 1;
            g.get_mut(&(k + 1)).unwrap().add_term(Monomial::from_exponents(e), c.clone());
        }
        let mut back = BTreeMap::new();
        let mut check = SparsePoly::zero(&h.ring);
        for (r, gr) in g {
            let gr = gr.substitute(&h.ring, &rw.backward)?;
            if !gr.is_zero() && gr.isobaric_weight(&weights) != Some(s as i64 - r as i64) {
                return Err(Error::Inconsistent(format!("g_{{{s}-{r}}} is not isobaric")));
            }
            check = &check + &(&gr * &h.u[&r]);
            back.insert(r, gr);
        }
        if &check != vs {
            return Err(Error::Inconsistent(format!("cofactors of v_{s} do not re-expand")));
        }
        out.insert(s, back);
    }
    Ok(out)
}

/// `κ_r u_r ≡ λ_r - λ_1^r mod (u_2..u_{r-1})`, checked in the rewritten ring.
pub fn regular_sequence_witness(h: &AffineHessianData) -> Result<bool> {
    let rw = rewriting(h)?;
    let t1 = SparsePoly::var(&rw.tri, 0);
    for r in 2..=h.d {
        // λ_r - κ_r u_r with u_2..u_{r-1} set to zero must be λ_1^r
        let uvar = SparsePoly::var(&rw.tri, r - 1).scale(&h.kappa(r));
        let rest = &rw.forward[r - 1] - &uvar;
        let zeros: Vec<(usize, SparsePoly)> =
            (1..r - 1).map(|k| (k, SparsePoly::zero(&rw.tri))).collect();
        if rest.substitute_some(&zeros)? != t1.pow(r as u32) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Restriction to the curve: `λ_i -> λ^i`, or `μ_{-i} -> λ^{-i}`.
pub fn to_curve(p: &SparsePoly, chart: Chart) -> LaurentPoly {
    let sign = match chart {
        Chart::Lower => 1,
        Chart::Upper => -1,
    };
    LaurentPoly::from_terms(p.terms().map(|(m, c)| {
        let w: i64 = m
            .exponents()
            .iter()
            .enumerate()
            .map(|(i, &e)| (i as i64 + 1) * e as i64)
            .sum();
        (sign * w, c.clone())
    }))
}

/// `ξ_s`: the class of `z_s = V_s - sum g_{s-r} U_r` on the curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XiGenerator {
    pub s: usize,
    pub chart: Chart,
    /// Over `U_2..U_d, V_{d+1}..V_{2d-2}` of the chart.
    pub coords: Vec<LaurentPoly>,
}

impl XiGenerator {
    /// Coordinate on `W_i`, `2 <= i <= 2d-2`.
    pub fn coord(&self, i: usize) -> &LaurentPoly {
        &self.coords[i - 2]
    }
}

pub fn xi_generators(d: usize, chart: Chart) -> Result<Vec<XiGenerator>> {
    xi_generators_with(d, chart, CofactorRule::LowestIndex)
}

pub fn xi_generators_with(d: usize, chart: Chart, rule: CofactorRule) -> Result<Vec<XiGenerator>> {
    let h = affine_hessian_in(d, chart)?;
    check_pairing(&h)?;
    let cof = cofactors_for(&h, rule)?;
    let mut out = Vec::new();
    for (&s, g) in &cof {
        // z_s in ker f: v_s - sum g u_r = 0 in the coefficient ring
        let mut image = h.v[&s].clone();
        for (r, gr) in g {
            image = &image - &(gr * &h.u[r]);
        }
        if !image.is_zero() {
            return Err(Error::Inconsistent(format!("z_{s} is not in the kernel")));
        }
        let mut coords = vec![LaurentPoly::zero(); 2 * d - 3];
        for (&r, gr) in g {
            coords[r - 2] = -&to_curve(gr, chart);
        }
        coords[s - 2] = LaurentPoly::one();
        // on the curve every w_i vanishes, so the image is zero there too
        let on_curve = (2..=2 * d - 2).fold(LaurentPoly::zero(), |acc, i| {
            &acc + &(&coords[i - 2] * &to_curve(h.w(i), chart))
        });
        if !on_curve.is_zero() {
            return Err(Error::Inconsistent(format!("ξ_{s} fails the kernel check on the curve")));
        }
        out.push(XiGenerator { s, chart, coords });
    }
    Ok(out)
}

/// `((f,f)_2, W_i)_{2d-4} = w_i` for the basis
/// `W_i = (-1)^i x1^{i-2} x2^{2d-i-2}` (x1, x2 exchanged in the upper chart).
pub fn check_pairing(h: &AffineHessianData) -> Result<()> {
    let d = h.d;
    let big = ring(d, h.chart);
    let f = affine_form(d, h.chart, &big);
    let hess = transvectant(&f, &f, 2)?;
    let (x1, x2) = big.x_vars().unwrap();
    for i in 2..=2 * d - 2 {
        let (e2, e1) = w_monomial(d, h.chart, i);
        let mut e = vec![0u16; big.len()];
        e[x1] = e1 as u16;
        e[x2] = e2 as u16;
        let sign = if i % 2 == 0 { ExactRational::one() } else { -ExactRational::one() };
        let basis = SparsePoly::term(&big, Monomial::from_exponents(e), sign);
        let paired = transvectant(&hess, &basis, (2 * d - 4) as u32)?;
        let paired = x_coefficients(&paired, &h.ring).remove(&(0, 0)).unwrap_or_else(|| SparsePoly::zero(&h.ring));
        if &paired != h.w(i) {
            return Err(Error::Inconsistent(format!("pairing with W_{i} is not w_{i}")));
        }
    }
    Ok(())
}

/// `ξ^+` and `λ^{-2d} ξ^-` in the lower basis `W_2..W_{2d-2}`; `ξ^-` is
/// ordered `ξ_{-(2d-2)}, ..., ξ_{-(d+1)}`.
fn overlap_vectors(d: usize, rule: CofactorRule) -> Result<(Vec<Vec<LaurentPoly>>, Vec<Vec<LaurentPoly>>)> {
    let plus: Vec<Vec<LaurentPoly>> = xi_generators_with(d, Chart::Lower, rule)?
        .into_iter()
        .map(|x| x.coords)
        .collect();
    let mut minus: Vec<Vec<LaurentPoly>> = Vec::new();
    for x in xi_generators_with(d, Chart::Upper, rule)?.into_iter().rev() {
        // upper W'_i is the lower W_{2d-i}
        let mut row = vec![LaurentPoly::zero(); 2 * d - 3];
        for i in 2..=2 * d - 2 {
            row[2 * d - i - 2] = x.coord(i).shift(-2 * d as i64);
        }
        minus.push(row);
    }
    Ok((plus, minus))
}

/// Exponent `3d - 1` in `Q ξ^- = λ^{-(3d-1)} ξ^+`.
pub fn twist(d: usize) -> i64 {
    3 * d as i64 - 1
}

pub fn transition_matrix(d: usize) -> Result<LaurentMatrix> {
    transition_matrix_with(d, CofactorRule::LowestIndex)
}

/// Solves `Q (λ^{-2d} ξ^-) = λ^{-(3d-1)} ξ^+` on the columns `W_2..W_{d-1}`,
/// where `λ^{-2d} ξ^-` is `λ^{-2d}` times the identity, then checks all columns.
pub fn transition_matrix_with(d: usize, rule: CofactorRule) -> Result<LaurentMatrix> {
    let (plus, minus) = overlap_vectors(d, rule)?;
    let n = d - 2;
    let t = twist(d);
    let q = LaurentMatrix::new(
        (0..n)
            .map(|i| (0..n).map(|j| plus[i][j].shift(2 * d as i64 - t)).collect())
            .collect(),
    )?;
    check_relation(&q, &minus, &plus, -t)?;
    if !q.has_toeplitz_exponents(0) {
        return Err(Error::Inconsistent(format!("Q = {q} is not of the form c λ^(i-j)")));
    }
    if !q.det().is_unit() {
        return Err(Error::Singular(format!("Q = {q} is not invertible")));
    }
    Ok(q)
}

/// `M x = λ^k y` row by row over every basis column.
fn check_relation(m: &LaurentMatrix, x: &[Vec<LaurentPoly>], y: &[Vec<LaurentPoly>], k: i64) -> Result<()> {
    let n = m.size();
    for i in 0..n {
        for c in 0..x[0].len() {
            let lhs = (0..n).fold(LaurentPoly::zero(), |acc, j| &acc + &(m.get(i, j) * &x[j][c]));
            if lhs != y[i][c].shift(k) {
                return Err(Error::Singular(format!(
                    "chart transition fails in row {i}, column W_{}",
                    c + 2
                )));
            }
        }
    }
    Ok(())
}

/// The inverse transition `R ξ^+ = λ^{3d-1} ξ^-`, solved on `V_{d+1}..V_{2d-2}`.
pub fn inverse_transition_matrix(d: usize, rule: CofactorRule) -> Result<LaurentMatrix> {
    let (plus, minus) = overlap_vectors(d, rule)?;
    let n = d - 2;
    let t = twist(d);
    let r = LaurentMatrix::new(
        (0..n)
            .map(|i| (0..n).map(|j| minus[i][d - 1 + j].shift(t)).collect())
            .collect(),
    )?;
    check_relation(&r, &plus, &minus, t)?;
    Ok(r)
}

#[derive(Clone, Debug, Serialize)]
pub struct SplittingReport {
    pub d: usize,
    pub q: LaurentMatrix,
    pub factors: Birkhoff,
    /// Sorted `t_i`.
    pub splitting_type: Vec<i64>,
}

/// `t_i = -(3d-1) + k_i`, sorted.
pub fn splitting_type(d: usize) -> Result<Vec<i64>> {
    Ok(splitting_report(d, CofactorRule::LowestIndex)?.splitting_type)
}

pub fn splitting_report(d: usize, rule: CofactorRule) -> Result<SplittingReport> {
    let q = transition_matrix_with(d, rule)?;
    let factors = birkhoff_factorize(&q)?;
    let bound = d as i64 - 3;
    if factors.ks.iter().any(|k| k.abs() > bound) {
        return Err(Error::Inconsistent(format!("exponents {:?} exceed d-3", factors.ks)));
    }
    let mut t: Vec<i64> = factors.ks.iter().map(|k| k - twist(d)).collect();
    t.sort();
    Ok(SplittingReport {
        d,
        q,
        factors,
        splitting_type: t,
    })
}

/// Splitting type read off the upper chart: factor `R(1/λ)` with
/// `R = Q^{-1}` so that the roles of `E` and `F` swap.
pub fn splitting_type_upper(d: usize) -> Result<Vec<i64>> {
    let r = inverse_transition_matrix(d, CofactorRule::LowestIndex)?;
    let b = birkhoff_factorize(&r.invert_variable())?;
    let mut t: Vec<i64> = b.ks.iter().map(|k| k - twist(d)).collect();
    t.sort();
    Ok(t)
}

/// Bounds `-4d+4 <= t <= -2d-2` and rank `d-2`.
pub fn within_bounds(d: usize, t: &[i64]) -> bool {
    let d = d as i64;
    t.len() as i64 == d - 2 && t.iter().all(|&x| -4 * d + 4 <= x && x <= -2 * d - 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn parse(h: &AffineHessianData, s: &str) -> SparsePoly {
        SparsePoly::parse(&h.ring, s).unwrap()
    }

    #[test]
    fn quartic_hessian() {
        let h = affine_hessian(4).unwrap();
        assert_eq!(h.u[&2].scale(&crate::rational::rat(1, 2)), parse(&h, "l2 - l1^2"));
        assert_eq!(h.u[&3], parse(&h, "l3 - l1*l2"));
        assert_eq!(h.u[&4].scale(&int(3)), parse(&h, "l4 + 2*l1*l3 - 3*l2^2"));
    }

    #[test]
    fn kappa_u2() {
        for d in 3..=8 {
            let h = affine_hessian(d).unwrap();
            let lhs = h.u[&2].scale(&h.kappa(2));
            assert_eq!(lhs, parse(&h, "l2 - l1^2"));
        }
    }

    #[test]
    fn pairing_holds() {
        for d in 3..=6 {
            check_pairing(&affine_hessian_in(d, Chart::Lower).unwrap()).unwrap();
            check_pairing(&affine_hessian_in(d, Chart::Upper).unwrap()).unwrap();
        }
    }

    #[test]
    fn quartic_transition() {
        let q = transition_matrix(4).unwrap();
        let expect = LaurentMatrix::from_monomials(&[
            vec![(int(-1), 0), (int(3), -1)],
            vec![(int(-3), 1), (int(8), 0)],
        ])
        .unwrap();
        assert_eq!(q, expect);
        assert_eq!(splitting_type(4).unwrap(), vec![-11, -11]);
    }

    #[test]
    fn cubic_is_rank_one() {
        let t = splitting_type(3).unwrap();
        assert_eq!(t.len(), 1);
        assert!(within_bounds(3, &t));
    }

    #[test]
    fn quartic_generators() {
        let xi = xi_generators(4, Chart::Lower).unwrap();
        let l = |c: i64, e: i64| LaurentPoly::monomial(int(c), e);
        let z = LaurentPoly::zero;
        assert_eq!(xi[0].coords, vec![l(-1, 3), l(3, 2), l(-3, 1), l(1, 0), z()]);
        assert_eq!(xi[1].coords, vec![l(-3, 4), l(8, 3), l(-6, 2), z(), l(1, 0)]);
    }

    #[test]
    fn displayed_quartic_cofactors() {
        let h = affine_hessian(4).unwrap();
        let g5 = [(2, "l3"), (3, "-3*l2"), (4, "3*l1")];
        let g6 = [(2, "3*l2^2"), (3, "-2*l3 - 6*l1*l2"), (4, "6*l2")];
        for (s, g) in [(5, g5), (6, g6)] {
            let sum = g.iter().fold(SparsePoly::zero(&h.ring), |acc, (r, t)| {
                &acc + &(&parse(&h, t) * &h.u[r])
            });
            assert_eq!(sum, h.v[&s]);
        }
    }

    #[test]
    fn rules_give_different_cofactors() {
        let h = affine_hessian(5).unwrap();
        let a = cofactors_for(&h, CofactorRule::LowestIndex).unwrap();
        let b = cofactors_for(&h, CofactorRule::HighestIndex).unwrap();
        assert_ne!(a, b);
        assert!(regular_sequence_witness(&h).unwrap());
    }
}
