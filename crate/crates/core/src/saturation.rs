//! Graded pieces of the ideals `J_2 ⊆ J_4 ⊆ ... ⊆ J_{2e} = I_C` and the
//! saturation sequence.
//!
//! Every `J_{2q}` is stable under SL_2, so `(J_{2q})_m` splits into weight
//! blocks: block `k` is spanned by monomials of `R_m` whose index sum is `k`.
//! Blocks `k` and `md - k` have equal dimension, and two SL_2-stable subspaces
//! of `R_m` agree iff their middle blocks `k = floor(md/2)` agree.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::exact::IntEchelon;
use crate::linalg::modular::{random_primes, ModEchelon};
use crate::rational::{binom, to_fraction_string, ExactRational};
use crate::transvectant::{coefficient_list, hessian_covariant};

const BITS: u32 = 5;
const MAX_D: usize = 24;
const MAX_EXP: usize = (1 << BITS) - 1;

/// How a dimension was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Modular,
    Rational,
    Formula,
}

/// Knobs for the rank computations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankConfig {
    /// Seed for prime selection and random compression.
    pub seed: u64,
    pub primes: usize,
    /// Largest weight block handled at all.
    pub max_rows: usize,
    /// Largest weight block used for the optional check past `alpha_q`.
    pub guard_max_rows: usize,
    /// Use exact fraction-free elimination instead of primes.
    pub certify: bool,
    /// Blocks are not started after this instant.
    #[serde(skip)]
    pub deadline: Option<Instant>,
}

impl Default for RankConfig {
    fn default() -> Self {
        RankConfig {
            seed: 0x5a7_5e9,
            primes: 2,
            max_rows: 12_000,
            guard_max_rows: 2_500,
            certify: false,
            deadline: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedPieceDim {
    pub d: usize,
    /// `None` stands for `I_C`.
    pub q: Option<usize>,
    pub m: usize,
    pub dim: u128,
    pub method: Method,
}

/// Packed exponent vector of a monomial in `a0..ad`.
type Packed = u128;

fn pack(exps: &[u16]) -> Packed {
    exps.iter()
        .enumerate()
        .fold(0, |acc, (i, &e)| acc | ((e as u128) << (BITS as usize * i)))
}

/// A generator of `W_{2q}` with integer coefficients.
#[derive(Clone, Debug)]
struct IntPoly {
    weight: usize,
    terms: Vec<(Packed, BigInt)>,
}

/// Coefficients of `H_2, ..., H_{2e}`, one list per level.
#[derive(Debug)]
pub struct Generators {
    d: usize,
    levels: Vec<Vec<IntPoly>>,
}

impl Generators {
    pub fn for_degree(d: usize) -> Arc<Generators> {
        static MEMO: OnceLock<Mutex<HashMap<usize, Arc<Generators>>>> = OnceLock::new();
        let memo = MEMO.get_or_init(Default::default);
        if let Some(g) = memo.lock().unwrap().get(&d) {
            return g.clone();
        }
        assert!((2..=MAX_D).contains(&d), "degree {d} outside 2..={MAX_D}");
        let levels: Vec<Vec<IntPoly>> = (1..=d / 2)
            .into_par_iter()
            .map(|q| {
                let h = hessian_covariant(d, q).expect("q in range");
                coefficient_list(&h)
                    .into_iter()
                    .filter(|p| !p.is_zero())
                    .map(|p| {
                        let coeffs: Vec<ExactRational> = p.terms().map(|(_, c)| c.clone()).collect();
                        let ints = crate::linalg::exact::clear_denominators(&coeffs);
                        let terms: Vec<(Packed, BigInt)> = p
                            .terms()
                            .zip(ints)
                            .map(|((m, _), c)| (pack(&m.exponents()[..=d]), c))
                            .collect();
                        let weight = weight_of(terms[0].0, d);
                        debug_assert!(terms.iter().all(|t| weight_of(t.0, d) == weight));
                        IntPoly { weight, terms }
                    })
                    .collect()
            })
            .collect();
        let g = Arc::new(Generators { d, levels });
        memo.lock().unwrap().insert(d, g.clone());
        g
    }

    pub fn levels(&self) -> usize {
        self.levels.len()
    }

    /// Number of generators at each level.
    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }
}

fn weight_of(p: Packed, d: usize) -> usize {
    (0..=d)
        .map(|i| i * ((p >> (BITS as usize * i)) as usize & MAX_EXP))
        .sum()
}

/// Monomials of degree `m` and weight `k` in `a0..ad`, in a fixed order.
pub fn block_monomials(d: usize, m: usize, k: usize) -> Vec<u128> {
    fn rec(i: usize, m: usize, k: usize, acc: Packed, out: &mut Vec<Packed>) {
        if i == 0 {
            if k == 0 {
                out.push(acc | (m as u128));
            }
            return;
        }
        // exponent of a_i is e; remaining weight k - i e spread over a_0..a_{i-1}
        let max_e = m.min(k / i);
        for e in 0..=max_e {
            let rest_k = k - i * e;
            let rest_m = m - e;
            if rest_k > rest_m * (i - 1) {
                continue;
            }
            rec(i - 1, rest_m, rest_k, acc | ((e as u128) << (BITS as usize * i)), out);
        }
    }
    let mut out = Vec::new();
    if k <= m * d {
        rec(d, m, k, 0, &mut out);
    }
    out
}

/// Number of monomials of `R_m` of weight `k`.
pub fn block_size(d: usize, m: usize, k: usize) -> usize {
    let p = crate::repdim::box_partitions(d, m);
    p.get(k).map_or(0, |&x| x as usize)
}

fn middle(d: usize, m: usize) -> usize {
    m * d / 2
}

/// Columns of the multiplication map into block `k` of `R_m`, per level.
/// A column entry `(row, id)` carries the coefficient `coeffs[level][id]`.
struct BlockProblem {
    rows: usize,
    columns: Vec<Vec<Vec<(u32, u32)>>>,
    coeffs: Vec<Vec<BigInt>>,
}

fn assemble(gens: &Generators, m: usize, k: usize) -> BlockProblem {
    let d = gens.d;
    let rows = block_monomials(d, m, k);
    let index: HashMap<Packed, u32> = rows.iter().enumerate().map(|(i, &r)| (r, i as u32)).collect();
    let mut shifted: BTreeMap<usize, Vec<Packed>> = BTreeMap::new();
    let mut columns = Vec::with_capacity(gens.levels.len());
    let mut coeffs = Vec::with_capacity(gens.levels.len());
    for level in &gens.levels {
        let mut cols = Vec::new();
        let mut flat: Vec<BigInt> = Vec::new();
        for g in level {
            let offset = flat.len() as u32;
            flat.extend(g.terms.iter().map(|t| t.1.clone()));
            if g.weight > k || k - g.weight > (m - 2) * d {
                continue;
            }
            let mus = shifted
                .entry(k - g.weight)
                .or_insert_with(|| block_monomials(d, m - 2, k - g.weight));
            for &mu in mus.iter() {
                cols.push(
                    g.terms
                        .iter()
                        .enumerate()
                        .map(|(t, (mono, _))| (index[&(mono + mu)], offset + t as u32))
                        .collect(),
                );
            }
        }
        columns.push(cols);
        coeffs.push(flat);
    }
    BlockProblem {
        rows: rows.len(),
        columns,
        coeffs,
    }
}

impl BlockProblem {
    fn ranks_mod(&self, p: u64, seed: u64) -> Vec<usize> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ p);
        let mut ech = ModEchelon::new(self.rows, p);
        let mut out = Vec::with_capacity(self.columns.len());
        for (level, cols) in self.columns.iter().enumerate() {
            let room = self.rows - ech.rank();
            if room == 0 {
                out.push(ech.rank());
                continue;
            }
            let cm: Vec<u64> = self.coeffs[level]
                .iter()
                .map(|c| c.mod_floor(&BigInt::from(p)).to_u64().unwrap())
                .collect();
            let want = room + 2;
            if cols.len() <= want {
                for col in cols {
                    let mut v = vec![0u64; self.rows];
                    for &(r, t) in col {
                        v[r as usize] = (v[r as usize] + cm[t as usize]) % p;
                    }
                    ech.insert(v);
                }
            } else {
                // random combinations: rank is preserved with probability >= 1 - rows/p
                let c = want;
                let mut acc = vec![0u64; self.rows * c];
                let mut g = vec![0u64; c];
                for col in cols {
                    for x in &mut g {
                        *x = rng.gen_range(0..p);
                    }
                    for &(r, t) in col {
                        let a = cm[t as usize];
                        if a == 0 {
                            continue;
                        }
                        let row = &mut acc[r as usize * c..(r as usize + 1) * c];
                        for (x, &gt) in row.iter_mut().zip(&g) {
                            *x = (*x + a * gt) % p;
                        }
                    }
                }
                for t in 0..c {
                    let v: Vec<u64> = (0..self.rows).map(|r| acc[r * c + t]).collect();
                    ech.insert(v);
                    if ech.rank() == self.rows {
                        break;
                    }
                }
            }
            out.push(ech.rank());
        }
        out
    }

    fn ranks_exact(&self) -> Vec<usize> {
        let mut ech = IntEchelon::new(self.rows);
        let mut out = Vec::with_capacity(self.columns.len());
        for (level, cols) in self.columns.iter().enumerate() {
            let cf = &self.coeffs[level];
            for col in cols {
                if ech.rank() == self.rows {
                    break;
                }
                let mut v = vec![BigInt::zero(); self.rows];
                for &(r, t) in col {
                    v[r as usize] += &cf[t as usize];
                }
                ech.insert(v);
            }
            out.push(ech.rank());
        }
        out
    }
}

/// Cumulative ranks of one weight block for `J_2, J_4, ..., J_{2e}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockRanks {
    pub d: usize,
    pub m: usize,
    pub k: usize,
    pub rows: usize,
    pub ranks: Vec<usize>,
    pub method: Method,
    /// Primes used, empty for exact ranks.
    pub primes: Vec<u64>,
    /// Whether all primes returned the same ranks.
    pub primes_agree: bool,
}

pub fn block_ranks(d: usize, m: usize, k: usize, cfg: &RankConfig) -> Result<BlockRanks> {
    if d < 2 || d > MAX_D || m < 2 || m > MAX_EXP {
        return Err(Error::OutOfRange(format!("block ranks need 2 <= d <= {MAX_D}, 2 <= m <= {MAX_EXP}")));
    }
    if cfg.deadline.is_some_and(|t| Instant::now() > t) {
        return Err(Error::ResourceLimit(format!("time budget exhausted before block ({d},{m},{k})")));
    }
    let rows = block_size(d, m, k);
    if rows > cfg.max_rows {
        return Err(Error::ResourceLimit(format!(
            "weight block ({d},{m},{k}) has {rows} rows, limit {}",
            cfg.max_rows
        )));
    }
    let gens = Generators::for_degree(d);
    let prob = assemble(&gens, m, k);
    if cfg.certify {
        return Ok(BlockRanks {
            d,
            m,
            k,
            rows,
            ranks: prob.ranks_exact(),
            method: Method::Rational,
            primes: Vec::new(),
            primes_agree: true,
        });
    }
    let primes = random_primes(cfg.seed, cfg.primes.max(1));
    let per_prime: Vec<Vec<usize>> = primes
        .par_iter()
        .map(|&p| prob.ranks_mod(p, cfg.seed.wrapping_add((m * 1000 + k) as u64)))
        .collect();
    let primes_agree = per_prime.windows(2).all(|w| w[0] == w[1]);
    // each modular rank is a lower bound for the rational rank
    let ranks = (0..gens.levels())
        .map(|l| per_prime.iter().map(|r| r[l]).max().unwrap())
        .collect();
    Ok(BlockRanks {
        d,
        m,
        k,
        rows,
        ranks,
        method: Method::Modular,
        primes,
        primes_agree,
    })
}

/// Middle block ranks, which decide equality of the ideals in degree `m`.
pub fn middle_ranks(d: usize, m: usize, cfg: &RankConfig) -> Result<BlockRanks> {
    block_ranks(d, m, middle(d, m), cfg)
}

/// `dim (J_{2q})_m` for every `q`, summing all weight blocks.
pub fn ideal_dims(d: usize, m: usize, cfg: &RankConfig) -> Result<(Vec<u128>, Method)> {
    let md = m * d;
    let blocks: Vec<BlockRanks> = (0..=md / 2)
        .into_par_iter()
        .map(|k| block_ranks(d, m, k, cfg))
        .collect::<Result<_>>()?;
    let levels = d / 2;
    let mut dims = vec![0u128; levels];
    for b in &blocks {
        let mult = if 2 * b.k == md { 1 } else { 2 };
        for (q, &r) in b.ranks.iter().enumerate() {
            dims[q] += mult * r as u128;
        }
    }
    let method = blocks.first().map_or(Method::Modular, |b| b.method);
    Ok((dims, method))
}

pub fn ideal_dim(d: usize, q: usize, m: usize, cfg: &RankConfig) -> Result<GradedPieceDim> {
    if q < 1 || q > d / 2 {
        return Err(Error::OutOfRange(format!("q = {q} outside 1..={}", d / 2)));
    }
    if m < 2 {
        return Err(Error::OutOfRange(format!("m = {m} below 2")));
    }
    let (dims, method) = ideal_dims(d, m, cfg)?;
    Ok(GradedPieceDim {
        d,
        q: Some(q),
        m,
        dim: dims[q - 1],
        method,
    })
}

/// `dim (I_C)_m = binom(m + d, d) - (md + 1)` for `m >= 1`.
pub fn ic_dim(d: usize, m: usize) -> u128 {
    let total = binom((m + d) as i64, d as i64).to_u128().expect("fits in u128");
    total - (m * d + 1) as u128
}

pub fn ic_piece(d: usize, m: usize) -> GradedPieceDim {
    GradedPieceDim {
        d,
        q: None,
        m,
        dim: ic_dim(d, m),
        method: Method::Formula,
    }
}

/// Result of checking that equality persists past `alpha_q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GuardCheck {
    pub q: usize,
    pub m: usize,
    /// `None` when the block was over the guard limit.
    pub holds: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MiddleRow {
    pub m: usize,
    pub rows: usize,
    pub ranks: Vec<usize>,
    pub primes_agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SaturationRecord {
    pub d: usize,
    pub alphas: Vec<usize>,
    pub satieties: Vec<usize>,
    pub big_s: usize,
    /// `zeta(d)^2` as `num/den`.
    pub zeta_squared: String,
    pub zeta_le_s: bool,
    pub s_le_d_plus_2: bool,
    /// Levels whose ideals already agree in degree 2 (expected empty).
    pub equal_in_degree_two: Vec<usize>,
    pub method: Method,
    pub seed: u64,
    pub primes: Vec<u64>,
    pub middle: Vec<MiddleRow>,
    pub guards: Vec<GuardCheck>,
}

/// The saturation sequence `(alpha_1, ..., alpha_{e-1})` of `d`.
pub fn saturation_sequence(d: usize, cfg: &RankConfig) -> Result<SaturationRecord> {
    if d < 4 {
        return Err(Error::OutOfRange(format!("saturation sequence needs d >= 4, got {d}")));
    }
    let e = d / 2;
    let mut table: BTreeMap<usize, BlockRanks> = BTreeMap::new();
    let two = middle_ranks(d, 2, cfg)?;
    let equal_in_degree_two: Vec<usize> = (1..e).filter(|&q| two.ranks[q - 1] == two.ranks[q]).collect();
    let mut alphas: Vec<Option<usize>> = vec![None; e - 1];
    let mut m = 3;
    while alphas.iter().any(Option::is_none) {
        if m > d + 2 {
            return Err(Error::Inconsistent(format!(
                "no agreement by degree {} for d = {d}",
                d + 2
            )));
        }
        let br = middle_ranks(d, m, cfg)?;
        if br.ranks[e - 1] + 1 != br.rows {
            return Err(Error::Inconsistent(format!(
                "(I_C)_{m} middle block for d = {d}: rank {} of {} rows",
                br.ranks[e - 1], br.rows
            )));
        }
        for q in 1..e {
            if alphas[q - 1].is_none() && br.ranks[q - 1] == br.ranks[q] {
                alphas[q - 1] = Some(m);
            }
        }
        table.insert(m, br);
        m += 1;
    }
    let alphas: Vec<usize> = alphas.into_iter().map(Option::unwrap).collect();

    let mut guards = Vec::new();
    for (i, &a) in alphas.iter().enumerate() {
        for t in [a + 1, a + 2] {
            let k = middle(d, t);
            let holds = if let Some(br) = table.get(&t) {
                Some(br.ranks[i] == br.ranks[i + 1])
            } else if block_size(d, t, k) <= cfg.guard_max_rows.min(cfg.max_rows) {
                let br = middle_ranks(d, t, cfg)?;
                let h = br.ranks[i] == br.ranks[i + 1];
                table.insert(t, br);
                Some(h)
            } else {
                None
            };
            guards.push(GuardCheck { q: i + 1, m: t, holds });
        }
    }
    if let Some(g) = guards.iter().find(|g| g.holds == Some(false)) {
        return Err(Error::Inconsistent(format!(
            "equality for q = {} fails again in degree {}",
            g.q, g.m
        )));
    }

    let satieties: Vec<usize> = (0..alphas.len()).map(|i| *alphas[i..].iter().max().unwrap()).collect();
    let big_s = satieties[0];
    let z = Zeta::new(d);
    let method = two.method;
    let primes = two.primes.clone();
    let middle_rows = table
        .into_values()
        .map(|b| MiddleRow {
            m: b.m,
            rows: b.rows,
            ranks: b.ranks,
            primes_agree: b.primes_agree,
        })
        .collect();
    Ok(SaturationRecord {
        d,
        alphas,
        satieties,
        big_s,
        zeta_squared: to_fraction_string(&z.squared()),
        zeta_le_s: z.at_most(big_s),
        s_le_d_plus_2: big_s <= d + 2,
        equal_in_degree_two,
        method,
        seed: cfg.seed,
        primes,
        middle: middle_rows,
        guards,
    })
}

/// `zeta(d) = sqrt((d-1)(d^2-2)/2) / (d-2)`, kept as its exact square.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Zeta {
    d: i64,
}

impl Zeta {
    pub fn new(d: usize) -> Self {
        assert!(d >= 3, "zeta(d) needs d >= 3");
        Zeta { d: d as i64 }
    }

    fn num(&self) -> BigInt {
        let d = BigInt::from(self.d);
        (&d - 1) * (&d * &d - 2)
    }

    fn den(&self) -> BigInt {
        let d2 = BigInt::from(self.d - 2);
        2 * &d2 * &d2
    }

    pub fn squared(&self) -> ExactRational {
        ExactRational::new(self.num(), self.den())
    }

    /// `m < zeta(d)`, decided on squares.
    pub fn exceeds(&self, m: usize) -> bool {
        BigInt::from(m * m) * self.den() < self.num()
    }

    /// `zeta(d) <= s`.
    pub fn at_most(&self, s: usize) -> bool {
        self.num() <= BigInt::from(s * s) * self.den()
    }

    /// Approximate value, for display only.
    pub fn approx(&self) -> f64 {
        let d = self.d as f64;
        ((d - 1.0) * (d * d - 2.0) / 2.0).sqrt() / (d - 2.0)
    }
}

/// `(2d - 3) binom(m + d - 2, d) >= binom(m + d, d) - (md + 1)`.
pub fn check_counting_inequality(d: usize, m: usize) -> bool {
    let (di, mi) = (d as i64, m as i64);
    let lhs = BigInt::from(2 * di - 3) * binom(mi + di - 2, di);
    let rhs = binom(mi + di, di) - BigInt::from(mi * di + 1);
    lhs >= rhs
}

/// Coefficients `[c0, c1, c2]` of `Q(d, m) = (2d-3)(m-1)m - (m+d-1)(m+d)` in `m`.
pub fn q_polynomial(d: usize) -> [BigInt; 3] {
    let d = d as i64;
    [
        BigInt::from(-d * (d - 1)),
        BigInt::from(-4 * (d - 1)),
        BigInt::from(2 * (d - 2)),
    ]
}

/// Checks `Q(d, m) = 2(d-2)(m - xi_1)(m - xi_2)` with
/// `xi_{1,2} = (d-1)/(d-2) -+ zeta(d)`, comparing coefficients exactly.
pub fn q_factorization_holds(d: usize) -> bool {
    let [c0, c1, c2] = q_polynomial(d);
    let lead = ExactRational::from_integer(BigInt::from(2 * (d as i64 - 2)));
    let center = ExactRational::new(BigInt::from(d as i64 - 1), BigInt::from(d as i64 - 2));
    // sum xi_1 + xi_2 = 2 center; product = center^2 - zeta^2
    let sum = &center * ExactRational::from_integer(BigInt::from(2));
    let prod = &center * &center - Zeta::new(d).squared();
    ExactRational::from_integer(c2) == lead
        && ExactRational::from_integer(c1) == -(&lead * sum)
        && ExactRational::from_integer(c0) == &lead * prod
}

/// Direct evaluation of `Q(d, m)` from its definition.
pub fn q_value(d: usize, m: i64) -> BigInt {
    let d = d as i64;
    BigInt::from((2 * d - 3) * (m - 1) * m) - BigInt::from((m + d - 1) * (m + d))
}

pub fn is_nonnegative(x: &BigInt) -> bool {
    !x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_enumeration() {
        for d in 2..7 {
            for m in 0..5 {
                let total: usize = (0..=m * d).map(|k| block_monomials(d, m, k).len()).sum();
                assert_eq!(BigInt::from(total), binom((m + d) as i64, d as i64));
                for k in 0..=m * d {
                    let b = block_monomials(d, m, k);
                    assert_eq!(b.len(), block_size(d, m, k));
                    assert!(b.iter().all(|&p| weight_of(p, d) == k));
                }
            }
        }
    }

    #[test]
    fn quadrics() {
        let cfg = RankConfig::default();
        for d in 4..9 {
            let (dims, _) = ideal_dims(d, 2, &cfg).unwrap();
            for q in 1..=d / 2 {
                let expect: usize = (1..=q).map(|i| 2 * d - 4 * i + 1).sum();
                assert_eq!(dims[q - 1], expect as u128);
            }
            assert_eq!(dims[d / 2 - 1], ic_dim(d, 2));
        }
        assert_eq!(ideal_dim(4, 2, 2, &cfg).unwrap().dim, 6);
        assert_eq!(ic_dim(6, 3), 65);
        assert_eq!(ic_dim(5, 1), 0);
    }

    #[test]
    fn small_sequences() {
        let cfg = RankConfig::default();
        assert_eq!(saturation_sequence(4, &cfg).unwrap().alphas, vec![3]);
        assert_eq!(saturation_sequence(6, &cfg).unwrap().alphas, vec![5, 3]);
        assert!(saturation_sequence(3, &cfg).is_err());
    }

    #[test]
    fn exact_matches_modular() {
        let cfg = RankConfig::default();
        let exact = RankConfig {
            certify: true,
            ..cfg.clone()
        };
        for (d, m) in [(4, 3), (5, 4), (6, 3)] {
            assert_eq!(ideal_dims(d, m, &cfg).unwrap().0, ideal_dims(d, m, &exact).unwrap().0);
        }
    }

    #[test]
    fn zeta_and_counting() {
        let z = Zeta::new(4);
        assert_eq!(z.squared(), ExactRational::new(21.into(), 4.into()));
        assert!(z.exceeds(2));
        assert!(!z.exceeds(3));
        assert!(check_counting_inequality(4, 3));
        for d in 4..=60 {
            assert!(q_factorization_holds(d));
            for m in 0..10 {
                let [c0, c1, c2] = q_polynomial(d);
                let mm = BigInt::from(m);
                assert_eq!(c0 + c1 * &mm + c2 * &mm * &mm, q_value(d, m));
            }
        }
    }
}
