//! Exact rational scalars and the integer combinatorics behind them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Renders `num/den`, or just `num` when the denominator is one.
pub fn format(q: &Rational) -> String {
    q.to_string()
}

pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `x (x-1) … (x-j+1)`, i.e. `x! / (x-j)!`; zero when `j > x`.
pub fn falling(x: u64, j: u64) -> BigInt {
    if j > x {
        return BigInt::zero();
    }
    ((x - j + 1)..=x).fold(BigInt::one(), |acc, k| acc * k)
}

/// Binomial coefficient `C(n, k)` for non-negative `n`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Generalized binomial `C(top, k) = top (top-1) … (top-k+1) / k!` for any
/// integer `top`.
pub fn binomial_general(top: i64, k: u64) -> Rational {
    let mut num = BigInt::one();
    for i in 0..k as i64 {
        num *= top - i;
    }
    Rational::new(num, factorial(k))
}

/// Random rational with numerator in `[-9, 9]` and denominator in `[1, 9]`.
pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    frac(rng.gen_range(-9..=9), rng.gen_range(1..=9))
}

/// Random nonzero rational with the same ranges as [`random`].
pub fn random_nonzero<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    loop {
        let q = random(rng);
        if !q.is_zero() {
            return q;
        }
    }
}

/// Serde adapter storing a [`Rational`] as its `num/den` string.
pub mod serde_str {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_and_parse() {
        assert_eq!(format(&frac(22, 21)), "22/21");
        assert_eq!(format(&frac(-4, 2)), "-2");
        assert_eq!(format(&frac(6, -8)), "-3/4");
        assert_eq!(parse("12/7").unwrap(), frac(12, 7));
        assert_eq!(parse(" -2 ").unwrap(), int(-2));
        assert_eq!(parse("4/6").unwrap(), frac(2, 3));
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn combinatorics() {
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(falling(5, 2), BigInt::from(20));
        assert_eq!(falling(2, 3), BigInt::zero());
        assert_eq!(binomial(6, 3), BigInt::from(20));
        assert_eq!(binomial(3, 4), BigInt::zero());
        assert_eq!(binomial_general(5, 2), int(10));
        assert_eq!(binomial_general(-1, 3), int(-1));
    }
}
