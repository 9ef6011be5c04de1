//! Specialization probes giving lower bounds on single `alpha_q`, and the
//! degree-4 invariants `G^{(q)}`.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::exact::{det, rank_of_polys};
use crate::poly::Monomial;
use crate::rational::{binom, int, to_fraction_string, ExactRational};
use crate::repdim::h_invariant_dim;
use crate::transvectant::{binary_form, hessian_covariant, transvect, Covariant};

/// The triples `(q, b, N)`: `alpha_q > b` for all `d >= N`.
pub const TRIPLES: [(usize, usize, usize); 4] = [(1, 3, 6), (1, 4, 8), (2, 3, 12), (3, 3, 16)];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeOutcome {
    pub q: usize,
    pub b: usize,
    pub n: usize,
    pub d: usize,
    /// The independence test succeeded, so `alpha_q > b` at this `d`.
    pub holds: bool,
    /// Exact witness values as `num/den` strings.
    pub witness: Vec<String>,
}

/// Binary form from `(x1 exponent, coefficient)` pairs of a `d`-ic.
fn form(d: usize, terms: &[(usize, i64)]) -> Covariant {
    let mut c = vec![ExactRational::zero(); d + 1];
    for &(e1, v) in terms {
        c[d - e1] += int(v);
    }
    binary_form(d, &c)
}

/// `x1^d + x1^{d-2} x2^2 + x1 x2^{d-1} + x2^d`.
pub fn probe_form_a(d: usize) -> Covariant {
    form(d, &[(d, 1), (d - 2, 1), (1, 1), (0, 1)])
}

/// `x1^d + x1^{d-3} x2^3 - x1 x2^{d-1} + 2 x2^d`.
pub fn probe_form_b(d: usize) -> Covariant {
    form(d, &[(d, 1), (d - 3, 1), (1, -1), (0, 2)])
}

/// Dense form with coefficients `((7i + 3) mod 11) - 5` on `x1^{d-i} x2^i`.
pub fn probe_form_dense(d: usize) -> Covariant {
    let c: Vec<ExactRational> = (0..=d).map(|i| int(((7 * i + 3) % 11) as i64 - 5)).collect();
    binary_form(d, &c)
}

fn h(f: &Covariant, q: usize) -> Covariant {
    transvect(f, f, 2 * q as u32).expect("same universe")
}

fn hf(f: &Covariant, q: usize, r: u32) -> Covariant {
    transvect(&h(f, q), f, r).expect("same universe")
}

/// Coefficient of `x1^i x2^j` in a form without `a` variables.
pub fn x_coefficient(c: &Covariant, i: usize, j: usize) -> ExactRational {
    let u = c.body().universe();
    let (x1, x2) = u.x_vars().unwrap();
    let mut e = vec![0u16; u.len()];
    e[x1] = i as u16;
    e[x2] = j as u16;
    c.body().coeff(&Monomial::from_exponents(e))
}

/// `(d-8)(d-9)(d-10)(d-11) / (8 (2d-9)(2d-11)(2d-13)(2d-15))`.
pub fn entry_21_closed_form(d: i64) -> ExactRational {
    ExactRational::new(
        BigInt::from((d - 8) * (d - 9) * (d - 10) * (d - 11)),
        BigInt::from(8 * (2 * d - 9) * (2 * d - 11) * (2 * d - 13) * (2 * d - 15)),
    )
}

/// The 3x3 matrix for `(q, b) = (2, 3)`: row `i` holds three coefficients of
/// `Gamma_1 = (H_6,F)_6`, `Gamma_2 = (H_4,F)_8`, `Gamma_3 = (H_2,F)_10`.
pub fn alpha2_matrix(d: usize) -> Vec<Vec<ExactRational>> {
    let f = probe_form_a(d);
    let gammas = [hf(&f, 3, 6), hf(&f, 2, 8), hf(&f, 1, 10)];
    let cols = [(2 * d - 12, d - 12), (2 * d - 13, d - 11), (2 * d - 15, d - 9)];
    gammas
        .iter()
        .map(|g| cols.iter().map(|&(i, j)| x_coefficient(g, i, j)).collect())
        .collect()
}

/// `f(d) = (d^3 - 8d^2 + 19d - 14) + (-1)^d binom(2d-6, d-3)`.
pub fn f_of_d(d: usize) -> BigInt {
    let di = d as i64;
    let t1 = BigInt::from(di * di * di - 8 * di * di + 19 * di - 14);
    let t2 = binom(2 * di - 6, di - 3);
    if d % 2 == 0 {
        t1 + t2
    } else {
        t1 - t2
    }
}

/// `det [[J1, J2], [K1, K2]]` with `J = (H_4,H_4)_{2d-8}`, `K = (H_2,H_2)_{2d-4}`
/// at `F1 = x1^d + x2^d` and `F2 = x1^d + x1^{d-2} x2^2 + x1 x2^{d-1}`.
pub fn alpha1_quartic_det(d: usize) -> ExactRational {
    let invariants = |f: &Covariant| {
        let j = transvect(&h(f, 2), &h(f, 2), (2 * d - 8) as u32).unwrap();
        let k = transvect(&h(f, 1), &h(f, 1), (2 * d - 4) as u32).unwrap();
        (x_coefficient(&j, 0, 0), x_coefficient(&k, 0, 0))
    };
    let (j1, k1) = invariants(&form(d, &[(d, 1), (0, 1)]));
    let (j2, k2) = invariants(&form(d, &[(d, 1), (d - 2, 1), (1, 1)]));
    det(&[vec![j1, j2], vec![k1, k2]])
}

fn rank(cs: &[Covariant]) -> usize {
    rank_of_polys(cs.iter().map(Covariant::body))
}

/// Run the independence test behind the triple `(q, b, N)` at degree `d`.
pub fn run_triple_bound(q: usize, b: usize, n: usize, d: usize) -> Result<ProbeOutcome> {
    if !TRIPLES.contains(&(q, b, n)) {
        return Err(Error::OutOfRange(format!("({q},{b},{n}) is not one of the probe triples")));
    }
    if d < n {
        return Err(Error::OutOfRange(format!("d = {d} below the threshold {n}")));
    }
    let (holds, witness) = match (q, b) {
        (1, 3) => {
            let f = probe_form_a(d);
            let r = rank(&[hf(&f, 2, 2), hf(&f, 1, 4)]);
            (r == 2, vec![r.to_string()])
        }
        (1, 4) => {
            let dt = alpha1_quartic_det(d);
            let fd = f_of_d(d);
            if dt.is_zero() != fd.is_zero() {
                return Err(Error::Inconsistent(format!("determinant {dt} and f({d}) = {fd} disagree")));
            }
            (!dt.is_zero(), vec![to_fraction_string(&dt), fd.to_string()])
        }
        (2, 3) => {
            let m = alpha2_matrix(d);
            let dt = det(&m);
            (!dt.is_zero(), vec![to_fraction_string(&dt), to_fraction_string(&m[1][0])])
        }
        (3, 3) => {
            if d >= 18 {
                let f = probe_form_b(d);
                let rest = [hf(&f, 3, 12), hf(&f, 2, 14), hf(&f, 1, 16)];
                let r0 = rank(&rest);
                let mut all = rest.to_vec();
                all.push(hf(&f, 4, 10));
                let r1 = rank(&all);
                (r1 > r0, vec![r0.to_string(), r1.to_string()])
            } else {
                // (H_8,F)_10 is dependent here; no syzygy can kill (H_8,F)_16
                let g = hf(&probe_form_dense(d), 4, 16);
                let terms = g.body().num_terms();
                (terms > 0, vec![terms.to_string()])
            }
        }
        _ => unreachable!(),
    };
    Ok(ProbeOutcome {
        q,
        b,
        n,
        d,
        holds,
        witness,
    })
}

/// `G^{(q)} = (H_{2q}, H_{2q})_{2d-4q}` on the generic form.
pub fn quartic_invariant(d: usize, q: usize) -> Result<Covariant> {
    let hq = hessian_covariant(d, q)?;
    transvect(&hq, &hq, (2 * d - 4 * q) as u32)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuarticRank {
    pub d: usize,
    pub qs: Vec<usize>,
    pub rank: usize,
    pub h: usize,
}

/// Rank of `{G^{(q)} : q in qs}` next to `h(d) = dim A_{4,0}`.
pub fn quartic_invariants_rank(d: usize, qs: &[usize]) -> Result<QuarticRank> {
    let gs = qs
        .iter()
        .map(|&q| quartic_invariant(d, q))
        .collect::<Result<Vec<_>>>()?;
    Ok(QuarticRank {
        d,
        qs: qs.to_vec(),
        rank: rank(&gs),
        h: h_invariant_dim(d),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_values() {
        assert_eq!(f_of_d(9), BigInt::from(-686));
        assert_eq!(f_of_d(8), BigInt::from(390));
    }

    #[test]
    fn entry_21() {
        for d in 12..=14 {
            assert_eq!(alpha2_matrix(d)[1][0], entry_21_closed_form(d as i64));
        }
    }

    #[test]
    fn quartic_d4() {
        let r = quartic_invariants_rank(4, &[1, 2]).unwrap();
        assert_eq!((r.rank, r.h), (1, 1));
    }

    #[test]
    fn alpha3_small_cases() {
        for d in [16, 17] {
            assert!(run_triple_bound(3, 3, 16, d).unwrap().holds);
        }
    }

    #[test]
    fn below_threshold() {
        assert!(run_triple_bound(2, 3, 12, 11).is_err());
        assert!(run_triple_bound(2, 4, 12, 12).is_err());
    }
}
