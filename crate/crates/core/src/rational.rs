//! Exact rational scalars and the integer combinatorics used throughout.
//!
//! Every coefficient in the engine is an [`ExactRational`], which is kept in
//! lowest terms with a positive denominator after every operation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type ExactRational = BigRational;

pub fn rat(num: i64, den: i64) -> ExactRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> ExactRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn from_bigint(n: BigInt) -> ExactRational {
    BigRational::from_integer(n)
}

/// Binomial coefficient with the convention that it vanishes outside
/// `0 <= k <= n`.
pub fn binom(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn binom_q(n: i64, k: i64) -> ExactRational {
    from_bigint(binom(n, k))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Falling factorial `n (n-1) ... (n-k+1)`; zero when `k > n`.
pub fn falling(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i))
}

/// `num/den` form used in JSON output, e.g. `5/2`, `-11/28`, `3/1`.
pub fn to_fraction_string(r: &ExactRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Compact form used inside polynomial text: the denominator is dropped when it is 1.
pub fn to_compact_string(r: &ExactRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        to_fraction_string(r)
    }
}

pub fn parse_rational(s: &str) -> Result<ExactRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(BigRational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(from_bigint(n))
        }
    }
}

/// Least common multiple of the denominators.
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a ExactRational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Reduce `r` modulo a prime `p`. Returns `None` when `p` divides the denominator.
pub fn reduce_mod(r: &ExactRational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let num = r.numer().mod_floor(&pb);
    let den = r.denom().mod_floor(&pb);
    if den.is_zero() {
        return None;
    }
    let num: u64 = num.try_into().ok()?;
    let den: u64 = den.try_into().ok()?;
    Some(crate::linalg::modular::mul_mod(
        num,
        crate::linalg::modular::inv_mod(den, p),
        p,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms() {
        let r = rat(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(to_fraction_string(&r), "-3/2");
        assert_eq!(to_fraction_string(&int(0)), "0/1");
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(6, 2), BigInt::from(15));
        assert_eq!(binom(3, 5), BigInt::zero());
        assert_eq!(binom(-1, 0), BigInt::zero());
        assert_eq!(binom(20, 10), BigInt::from(184756));
        assert_eq!(falling(5, 2), BigInt::from(20));
        assert_eq!(falling(2, 3), BigInt::zero());
    }

    #[test]
    fn parse_round_trip() {
        for s in ["5/2", "-11/28", "7", "0"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(to_compact_string(&r), s);
        }
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn modular_reduction() {
        let p = 1_000_000_007;
        let r = rat(1, 2);
        let h = reduce_mod(&r, p).unwrap();
        assert_eq!(h * 2 % p, 1);
        assert_eq!(reduce_mod(&rat(1, 7), 7), None);
    }
}
