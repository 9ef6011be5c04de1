//! Transvectants of binary forms and the covariants built from the generic form.
//!
//! Covariants store raw monomial coefficients. The binomial weights of the
//! generic form appear only in [`generic_form`] and [`specialize`].

use std::sync::Arc;

use num_traits::One;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::{Monomial, SparsePoly, VariableUniverse};
use crate::rational::{binom, binom_q, factorial, ExactRational};

/// A bihomogeneous polynomial in `a0..ad; x1, x2` of degree `m` in the
/// coefficients and order `n` in x. A vanishing covariant keeps its declared
/// `(m, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Covariant {
    d: usize,
    body: SparsePoly,
    degree: u32,
    order: u32,
}

impl Covariant {
    pub fn new(d: usize, body: SparsePoly, degree: u32, order: u32) -> Result<Self> {
        match body.bidegree() {
            Some(b) if b.matches(degree, order) => Ok(Covariant {
                d,
                body,
                degree,
                order,
            }),
            _ => Err(Error::NotHomogeneous(format!(
                "declared degree-order ({degree},{order}) for {body}"
            ))),
        }
    }

    /// The zero covariant with the given metadata.
    pub fn zero(d: usize, degree: u32, order: u32) -> Self {
        Covariant {
            d,
            body: SparsePoly::zero(&VariableUniverse::binary_form(d)),
            degree,
            order,
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn body(&self) -> &SparsePoly {
        &self.body
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    pub fn scale(&self, c: &ExactRational) -> Covariant {
        Covariant {
            body: self.body.scale(c),
            ..self.clone()
        }
    }

    pub fn try_add(&self, other: &Covariant) -> Result<Covariant> {
        if self.d != other.d || self.degree != other.degree || self.order != other.order {
            return Err(Error::OutOfRange(format!(
                "cannot add covariants of degree-order ({},{}) and ({},{})",
                self.degree, self.order, other.degree, other.order
            )));
        }
        Ok(Covariant {
            body: self.body.try_add(&other.body)?,
            ..self.clone()
        })
    }

    pub fn try_mul(&self, other: &Covariant) -> Result<Covariant> {
        if self.d != other.d {
            return Err(Error::UniverseMismatch);
        }
        Ok(Covariant {
            d: self.d,
            body: self.body.try_mul(&other.body)?,
            degree: self.degree + other.degree,
            order: self.order + other.order,
        })
    }

    pub fn pow(&self, e: u32) -> Covariant {
        Covariant {
            d: self.d,
            body: self.body.pow(e),
            degree: self.degree * e,
            order: self.order * e,
        }
    }
}

/// Transvectant of two polynomials homogeneous in x of orders `p` and `q`.
/// Other variables are carried along as coefficients.
pub fn transvectant(a: &SparsePoly, b: &SparsePoly, r: u32) -> Result<SparsePoly> {
    let u = a.universe().clone();
    if a.try_add(b).is_err() {
        return Err(Error::UniverseMismatch);
    }
    let (x1, x2) = u
        .x_vars()
        .ok_or_else(|| Error::UnknownVariable("x1/x2".into()))?;
    if a.is_zero() || b.is_zero() {
        return Ok(SparsePoly::zero(&u));
    }
    let p = a
        .x_order()
        .ok_or_else(|| Error::NotHomogeneous(a.to_string()))?;
    let q = b
        .x_order()
        .ok_or_else(|| Error::NotHomogeneous(b.to_string()))?;
    if r > p.min(q) {
        return Ok(SparsePoly::zero(&u));
    }
    let mut sum = SparsePoly::zero(&u);
    for i in 0..=r {
        let da = a.mixed_derivative(x1, r - i, x2, i);
        let db = b.mixed_derivative(x1, i, x2, r - i);
        let mut prod = &da * &db;
        let w = ExactRational::from_integer(binom(r as i64, i as i64));
        prod = if i % 2 == 0 { prod.scale(&w) } else { prod.scale(&-w) };
        sum = &sum + &prod;
    }
    let pre = ExactRational::new(
        factorial((p - r) as u64) * factorial((q - r) as u64),
        factorial(p as u64) * factorial(q as u64),
    );
    Ok(sum.scale(&pre))
}

/// `(A, B)_r`. Zero when `r` exceeds either order.
pub fn transvect(a: &Covariant, b: &Covariant, r: u32) -> Result<Covariant> {
    if a.d != b.d {
        return Err(Error::UniverseMismatch);
    }
    let degree = a.degree + b.degree;
    let order = (a.order + b.order).checked_sub(2 * r);
    let Some(order) = order.filter(|_| r <= a.order.min(b.order)) else {
        return Ok(Covariant::zero(a.d, degree, (a.order + b.order).saturating_sub(2 * r)));
    };
    let body = transvectant(&a.body, &b.body, r)?;
    Ok(Covariant {
        d: a.d,
        body,
        degree,
        order,
    })
}

/// `F = sum binom(d,i) a_i x1^(d-i) x2^i`.
pub fn generic_form(d: usize) -> Covariant {
    assert!(d >= 1, "generic form needs d >= 1");
    let u = VariableUniverse::binary_form(d);
    let (x1, x2) = u.x_vars().unwrap();
    let terms = (0..=d).map(|i| {
        let mut e = vec![0u16; u.len()];
        e[i] = 1;
        e[x1] = (d - i) as u16;
        e[x2] = i as u16;
        (Monomial::from_exponents(e), binom_q(d as i64, i as i64))
    });
    Covariant {
        d,
        body: SparsePoly::from_terms(&u, terms),
        degree: 1,
        order: d as u32,
    }
}

/// `H_{2q} = (F, F)_{2q}` for `1 <= q <= d/2`.
pub fn hessian_covariant(d: usize, q: usize) -> Result<Covariant> {
    if q < 1 || 2 * q > d {
        return Err(Error::OutOfRange(format!("H_{{2q}} needs 1 <= q <= {}, got q = {q}", d / 2)));
    }
    let f = generic_form(d);
    transvect(&f, &f, 2 * q as u32)
}

/// Quadratic covariants `H_2, H_4, ..., H_{2 e_d}` computed in parallel.
pub fn hessian_family(d: usize) -> Vec<Covariant> {
    (1..=d / 2)
        .into_par_iter()
        .map(|q| hessian_covariant(d, q).expect("q in range"))
        .collect()
}

/// Admissible pair conditions: `0 <= a, b <= d`, `a` even, `2a + b <= 2d`.
pub fn is_admissible(d: i64, a: i64, b: i64) -> bool {
    (0..=d).contains(&a) && (0..=d).contains(&b) && a % 2 == 0 && 2 * a + b <= 2 * d
}

/// The cubic covariant `{a, b} = ((F, F)_a, F)_b` of order `3d - 2(a + b)`.
/// Non-admissible pairs give the zero covariant.
pub fn cubic_covariant(d: usize, a: i64, b: i64) -> Covariant {
    let order = 3 * d as i64 - 2 * (a + b);
    if !is_admissible(d as i64, a, b) {
        return Covariant::zero(d, 3, order.max(0) as u32);
    }
    let f = generic_form(d);
    let h = transvect(&f, &f, a as u32).expect("same d");
    cubic_from_quadratic(&h, &f, b)
}

/// `(H, F)_b` for an already computed `H = (F, F)_a`.
pub fn cubic_from_quadratic(h: &Covariant, f: &Covariant, b: i64) -> Covariant {
    transvect(h, f, b as u32).expect("same d")
}

/// Specialize the coefficients: `coeffs[i]` is the coefficient of
/// `x1^(d-i) x2^i` in the target form, so `a_i` becomes `coeffs[i] / binom(d, i)`.
pub fn specialize(c: &Covariant, coeffs: &[ExactRational]) -> Result<Covariant> {
    let d = c.d;
    if coeffs.len() != d + 1 {
        return Err(Error::OutOfRange(format!(
            "specialization needs {} coefficients, got {}",
            d + 1,
            coeffs.len()
        )));
    }
    let u = c.body.universe().clone();
    let bindings: Vec<(usize, SparsePoly)> = coeffs
        .iter()
        .enumerate()
        .map(|(i, v)| {
            (
                i,
                SparsePoly::constant(&u, v / binom_q(d as i64, i as i64)),
            )
        })
        .collect();
    Ok(Covariant {
        d,
        body: c.body.substitute_some(&bindings)?,
        degree: 0,
        order: c.order,
    })
}

/// A binary form in x only, from its coefficient list (`coeffs[i]` multiplies
/// `x1^(n-i) x2^i`), living in the universe of degree-`d` covariants.
pub fn binary_form(d: usize, coeffs: &[ExactRational]) -> Covariant {
    let u = VariableUniverse::binary_form(d);
    let (x1, x2) = u.x_vars().unwrap();
    let n = coeffs.len() - 1;
    let terms = coeffs.iter().enumerate().map(|(i, c)| {
        let mut e = vec![0u16; u.len()];
        e[x1] = (n - i) as u16;
        e[x2] = i as u16;
        (Monomial::from_exponents(e), c.clone())
    });
    Covariant {
        d,
        body: SparsePoly::from_terms(&u, terms),
        degree: 0,
        order: n as u32,
    }
}

/// Coefficients `phi_0..phi_n` with `C = sum phi_j x1^(n-j) x2^j`.
pub fn coefficient_list(c: &Covariant) -> Vec<SparsePoly> {
    let u = c.body.universe().clone();
    let (x1, x2) = u.x_vars().unwrap();
    let n = c.order as usize;
    let mut out = vec![SparsePoly::zero(&u); n + 1];
    for (m, coeff) in c.body.terms() {
        let j = m.exponent(x2) as usize;
        let mut e = m.exponents().to_vec();
        e[x1] = 0;
        e[x2] = 0;
        out[j].add_term(Monomial::from_exponents(e), coeff.clone());
    }
    out
}

/// Action of `g` in SL_2(Q) by the substitution
/// `x1 -> g11 x1 + g12 x2`, `x2 -> g21 x1 + g22 x2`.
pub fn apply_sl2(c: &Covariant, g: [[ExactRational; 2]; 2]) -> Result<Covariant> {
    let det = &g[0][0] * &g[1][1] - &g[0][1] * &g[1][0];
    if !det.is_one() {
        return Err(Error::OutOfRange(format!("det g = {det}, expected 1")));
    }
    let u = c.body.universe().clone();
    let (x1, x2) = u.x_vars().unwrap();
    let lin = |a: &ExactRational, b: &ExactRational| {
        let p1 = SparsePoly::var(&u, x1).scale(a);
        let p2 = SparsePoly::var(&u, x2).scale(b);
        &p1 + &p2
    };
    let body = c.body.substitute_some(&[
        (x1, lin(&g[0][0], &g[0][1])),
        (x2, lin(&g[1][0], &g[1][1])),
    ])?;
    Ok(Covariant { body, ..c.clone() })
}

/// Rank of a family of covariants as vectors of monomial coefficients.
pub fn covariant_rank(cs: &[Covariant]) -> usize {
    crate::linalg::exact::rank_of_polys(cs.iter().map(|c| c.body()))
}

/// Whether the body has the declared degree and order.
pub fn check_bidegree(c: &Covariant) -> bool {
    matches!(c.body.bidegree(), Some(b) if b.matches(c.degree, c.order))
}

pub fn universe(d: usize) -> Arc<VariableUniverse> {
    VariableUniverse::binary_form(d)
}

/// `(F, F)_a` for every even `a <= d`, indexed by `a / 2`.
pub fn even_quadratics(d: usize) -> Vec<Covariant> {
    let f = generic_form(d);
    (0..=d / 2)
        .into_par_iter()
        .map(|h| transvect(&f, &f, 2 * h as u32).unwrap())
        .collect()
}

/// Every cubic covariant `{a, b}` for admissible pairs of degree `d`,
/// keyed by `(a, b)`.
pub fn cubic_table(d: usize) -> std::collections::BTreeMap<(i64, i64), Covariant> {
    let f = generic_form(d);
    let quads = even_quadratics(d);
    let pairs: Vec<(i64, i64)> = (0..=d as i64)
        .step_by(2)
        .flat_map(|a| (0..=d as i64).map(move |b| (a, b)))
        .filter(|&(a, b)| is_admissible(d as i64, a, b))
        .collect();
    pairs
        .into_par_iter()
        .map(|(a, b)| {
            let c = cubic_from_quadratic(&quads[(a / 2) as usize], &f, b);
            ((a, b), c)
        })
        .collect()
}
