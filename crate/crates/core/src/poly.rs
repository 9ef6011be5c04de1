//! Canonical sparse multivariate polynomials over [`ExactRational`].
//!
//! A polynomial lives in a [`VariableUniverse`], a fixed ordered list of
//! variable names. Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose
//! ordering is degree-then-lexicographic, so structural equality is polynomial
//! equality and the text form is deterministic.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, falling, ExactRational};

/// Ordered variable names. Polynomials from different universes never mix.
#[derive(Debug, PartialEq, Eq)]
pub struct VariableUniverse {
    names: Vec<String>,
    index: HashMap<String, usize>,
    x_vars: Option<(usize, usize)>,
}

impl VariableUniverse {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Arc<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let index: HashMap<String, usize> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();
        assert_eq!(index.len(), names.len(), "duplicate variable names");
        let x_vars = match (index.get("x1"), index.get("x2")) {
            (Some(&i), Some(&j)) => Some((i, j)),
            _ => None,
        };
        Arc::new(VariableUniverse {
            names,
            index,
            x_vars,
        })
    }

    /// The universe `a0, ..., ad, x1, x2` of covariants of a binary d-ic.
    /// Instances are shared per `d`.
    pub fn binary_form(d: usize) -> Arc<Self> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<VariableUniverse>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        let mut guard = cache.lock().unwrap();
        guard
            .entry(d)
            .or_insert_with(|| {
                let names = (0..=d)
                    .map(|i| format!("a{i}"))
                    .chain(["x1".to_string(), "x2".to_string()]);
                VariableUniverse::new(names)
            })
            .clone()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Indices of `x1` and `x2`, when present.
    pub fn x_vars(&self) -> Option<(usize, usize)> {
        self.x_vars
    }

    fn is_x(&self, i: usize) -> bool {
        matches!(self.x_vars, Some((a, b)) if a == i || b == i)
    }
}

fn same_universe(a: &Arc<VariableUniverse>, b: &Arc<VariableUniverse>) -> bool {
    Arc::ptr_eq(a, b) || a.names == b.names
}

/// Dense exponent vector, ordered by total degree and then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Box<[u16]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars].into_boxed_slice())
    }

    pub fn from_exponents(exps: impl Into<Box<[u16]>>) -> Self {
        Monomial(exps.into())
    }

    pub fn var(nvars: usize, i: usize, e: u16) -> Self {
        let mut v = vec![0; nvars];
        v[i] = e;
        Monomial(v.into_boxed_slice())
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> u16 {
        self.0[i]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Bidegree of a polynomial in (non-x variables, x variables).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bidegree {
    /// The zero polynomial has every bidegree.
    Any,
    Exact(u32, u32),
}

impl Bidegree {
    pub fn matches(&self, m: u32, n: u32) -> bool {
        match *self {
            Bidegree::Any => true,
            Bidegree::Exact(a, b) => a == m && b == n,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SparsePoly {
    universe: Arc<VariableUniverse>,
    terms: BTreeMap<Monomial, ExactRational>,
}

impl PartialEq for SparsePoly {
    fn eq(&self, other: &Self) -> bool {
        same_universe(&self.universe, &other.universe) && self.terms == other.terms
    }
}

impl Eq for SparsePoly {}

impl SparsePoly {
    pub fn zero(universe: &Arc<VariableUniverse>) -> Self {
        SparsePoly {
            universe: universe.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(universe: &Arc<VariableUniverse>, c: ExactRational) -> Self {
        let mut p = Self::zero(universe);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(universe.len()), c);
        }
        p
    }

    pub fn one(universe: &Arc<VariableUniverse>) -> Self {
        Self::constant(universe, ExactRational::one())
    }

    pub fn var(universe: &Arc<VariableUniverse>, i: usize) -> Self {
        Self::term(universe, Monomial::var(universe.len(), i, 1), ExactRational::one())
    }

    pub fn var_named(universe: &Arc<VariableUniverse>, name: &str) -> Result<Self> {
        Ok(Self::var(universe, universe.index_of(name)?))
    }

    pub fn term(universe: &Arc<VariableUniverse>, m: Monomial, c: ExactRational) -> Self {
        assert_eq!(m.0.len(), universe.len());
        let mut p = Self::zero(universe);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(
        universe: &Arc<VariableUniverse>,
        terms: impl IntoIterator<Item = (Monomial, ExactRational)>,
    ) -> Self {
        let mut p = Self::zero(universe);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn universe(&self) -> &Arc<VariableUniverse> {
        &self.universe
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &ExactRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> ExactRational {
        self.terms.get(m).cloned().unwrap_or_else(ExactRational::zero)
    }

    /// Add `c * m` in place, keeping the no-zero-coefficient invariant.
    pub fn add_term(&mut self, m: Monomial, c: ExactRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check(&self, other: &SparsePoly) -> Result<()> {
        if same_universe(&self.universe, &other.universe) {
            Ok(())
        } else {
            Err(Error::UniverseMismatch)
        }
    }

    pub fn try_add(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check(other)?;
        let mut out = SparsePoly::zero(&self.universe);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &ExactRational) -> SparsePoly {
        if c.is_zero() {
            return SparsePoly::zero(&self.universe);
        }
        SparsePoly {
            universe: self.universe.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> SparsePoly {
        let mut acc = SparsePoly::one(&self.universe);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `k`-th partial derivative with respect to variable `v`.
    pub fn partial_derivative(&self, v: usize, k: u32) -> SparsePoly {
        let mut out = SparsePoly::zero(&self.universe);
        for (m, c) in &self.terms {
            let e = m.0[v] as u64;
            if (k as u64) > e {
                continue;
            }
            let factor = falling(e, k as u64);
            let mut exps = m.0.clone();
            exps[v] -= k as u16;
            out.add_term(Monomial(exps), c * ExactRational::from_integer(factor));
        }
        out
    }

    /// Mixed derivative `d^(k1+k2) / dv1^k1 dv2^k2` in one pass.
    pub fn mixed_derivative(&self, v1: usize, k1: u32, v2: usize, k2: u32) -> SparsePoly {
        let mut out = SparsePoly::zero(&self.universe);
        for (m, c) in &self.terms {
            let (e1, e2) = (m.0[v1] as u64, m.0[v2] as u64);
            if k1 as u64 > e1 || k2 as u64 > e2 {
                continue;
            }
            let factor: BigInt = falling(e1, k1 as u64) * falling(e2, k2 as u64);
            let mut exps = m.0.clone();
            exps[v1] -= k1 as u16;
            exps[v2] -= k2 as u16;
            out.add_term(Monomial(exps), c * ExactRational::from_integer(factor));
        }
        out
    }

    /// Simultaneous substitution of every variable by a polynomial of `target`.
    /// `images[i]` replaces variable `i`.
    pub fn substitute(&self, target: &Arc<VariableUniverse>, images: &[SparsePoly]) -> Result<SparsePoly> {
        if images.len() != self.universe.len() {
            return Err(Error::OutOfRange(format!(
                "substitution needs {} images, got {}",
                self.universe.len(),
                images.len()
            )));
        }
        if images.iter().any(|p| !same_universe(&p.universe, target)) {
            return Err(Error::UniverseMismatch);
        }
        // cache powers of each image
        let mut powers: Vec<Vec<SparsePoly>> = images
            .iter()
            .map(|p| vec![SparsePoly::one(target), p.clone()])
            .collect();
        let mut out = SparsePoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = SparsePoly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e];
                if t.is_zero() {
                    break;
                }
            }
            for (tm, tc) in t.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(out)
    }

    /// Substitute a subset of variables inside the same universe.
    pub fn substitute_some(&self, bindings: &[(usize, SparsePoly)]) -> Result<SparsePoly> {
        let u = self.universe.clone();
        let mut images: Vec<SparsePoly> = (0..u.len()).map(|i| SparsePoly::var(&u, i)).collect();
        for (v, p) in bindings {
            if *v >= u.len() {
                return Err(Error::OutOfRange(format!("variable index {v}")));
            }
            images[*v] = p.clone();
        }
        self.substitute(&u, &images)
    }

    /// Degree in the x variables and in the remaining variables.
    pub fn bidegree(&self) -> Option<Bidegree> {
        if self.is_zero() {
            return Some(Bidegree::Any);
        }
        let mut found: Option<(u32, u32)> = None;
        for m in self.terms.keys() {
            let (mut a, mut x) = (0u32, 0u32);
            for (i, &e) in m.0.iter().enumerate() {
                if self.universe.is_x(i) {
                    x += e as u32;
                } else {
                    a += e as u32;
                }
            }
            match found {
                None => found = Some((a, x)),
                Some(f) if f != (a, x) => return None,
                _ => {}
            }
        }
        found.map(|(a, x)| Bidegree::Exact(a, x))
    }

    /// Common x-degree of all terms, `None` if the polynomial is not
    /// homogeneous in x (or is zero).
    pub fn x_order(&self) -> Option<u32> {
        let (i1, i2) = self.universe.x_vars()?;
        let mut found = None;
        for m in self.terms.keys() {
            let n = m.0[i1] as u32 + m.0[i2] as u32;
            match found {
                None => found = Some(n),
                Some(f) if f != n => return None,
                _ => {}
            }
        }
        found
    }

    /// Weighted degree of each term under `weights`; `None` unless all agree.
    pub fn isobaric_weight(&self, weights: &[i64]) -> Option<i64> {
        let mut found = None;
        for m in self.terms.keys() {
            let w: i64 = m.0.iter().zip(weights).map(|(&e, &w)| e as i64 * w).sum();
            match found {
                None => found = Some(w),
                Some(f) if f != w => return None,
                _ => {}
            }
        }
        found
    }

    /// Move the polynomial into another universe by variable name. Fails if a
    /// variable with nonzero exponent has no counterpart.
    pub fn rename_into(&self, target: &Arc<VariableUniverse>) -> Result<SparsePoly> {
        let map: Vec<Option<usize>> = self
            .universe
            .names
            .iter()
            .map(|n| target.index.get(n).copied())
            .collect();
        let mut out = SparsePoly::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0u16; target.len()];
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let j = map[i].ok_or_else(|| Error::UnknownVariable(self.universe.names[i].clone()))?;
                exps[j] += e;
            }
            out.add_term(Monomial(exps.into_boxed_slice()), c.clone());
        }
        Ok(out)
    }

    /// Parse the canonical text form, e.g. `3/2*a0^2*x1 - a1*x2 + 5`.
    pub fn parse(universe: &Arc<VariableUniverse>, text: &str) -> Result<SparsePoly> {
        parse_poly(universe, text)
    }
}

impl<'a> Add<&'a SparsePoly> for &'a SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &'a SparsePoly) -> SparsePoly {
        self.try_add(rhs).expect("universe mismatch in polynomial addition")
    }
}

impl<'a> Sub<&'a SparsePoly> for &'a SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &'a SparsePoly) -> SparsePoly {
        self.try_sub(rhs).expect("universe mismatch in polynomial subtraction")
    }
}

impl<'a> Mul<&'a SparsePoly> for &'a SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &'a SparsePoly) -> SparsePoly {
        self.try_mul(rhs).expect("universe mismatch in polynomial multiplication")
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        self.scale(&-ExactRational::one())
    }
}

impl fmt::Display for SparsePoly {
    /// Terms in descending order; coefficients as `num/den` (denominator
    /// omitted when it is 1), monomials as `a3^2*x1^4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let factors: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        self.universe.names[i].clone()
                    } else {
                        format!("{}^{}", self.universe.names[i], e)
                    }
                })
                .collect();
            if factors.is_empty() {
                f.write_str(&rational::to_compact_string(&mag))?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", rational::to_compact_string(&mag))?;
                }
                f.write_str(&factors.join("*"))?;
            }
        }
        Ok(())
    }
}

fn parse_poly(universe: &Arc<VariableUniverse>, text: &str) -> Result<SparsePoly> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    // split into signed terms at top-level + and -
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut negative = false;
    for (i, ch) in s.char_indices() {
        if (ch == '+' || ch == '-') && !(i > 0 && s[..i].ends_with('^')) {
            if i > 0 {
                if cur.is_empty() {
                    return Err(Error::Parse(format!("dangling sign in `{text}`")));
                }
                terms.push((negative, std::mem::take(&mut cur)));
            }
            negative = ch == '-';
        } else {
            cur.push(ch);
        }
    }
    if cur.is_empty() {
        return Err(Error::Parse(format!("dangling sign in `{text}`")));
    }
    terms.push((negative, cur));

    let mut out = SparsePoly::zero(universe);
    for (neg, body) in terms {
        let mut coeff = ExactRational::one();
        let mut exps = vec![0u16; universe.len()];
        for factor in body.split('*') {
            if factor.is_empty() {
                return Err(Error::Parse(format!("empty factor in `{text}`")));
            }
            if factor.starts_with(|c: char| c.is_ascii_digit()) {
                coeff *= rational::parse_rational(factor)?;
            } else {
                let (name, e) = match factor.split_once('^') {
                    Some((n, e)) => (
                        n,
                        e.parse::<u16>()
                            .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?,
                    ),
                    None => (factor, 1),
                };
                exps[universe.index_of(name)?] += e;
            }
        }
        if neg {
            coeff = -coeff;
        }
        out.add_term(Monomial(exps.into_boxed_slice()), coeff);
    }
    Ok(out)
}
