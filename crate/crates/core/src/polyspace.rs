//! Homogeneous bivariate polynomials and the sl2 action on them.
//!
//! `V_d` is realized as the span of `x^d, x^(d-1) y, …, y^d`. A [`HomPoly`]
//! stores the `d + 1` coefficients densely, entry `a` being the coefficient of
//! `x^(d-a) y^a`. The degree is part of the value: the zero polynomial of `V_3`
//! and the zero polynomial of `V_5` are different and cannot be added.
//!
//! sl2 acts through the derivations `e = x ∂/∂y`, `f = y ∂/∂x` and
//! `h = x ∂/∂x - y ∂/∂y`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{arg_err, Error, Result};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variable {
    X,
    Y,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sl2Generator {
    E,
    F,
    H,
}

impl Sl2Generator {
    pub const ALL: [Sl2Generator; 3] = [Sl2Generator::E, Sl2Generator::F, Sl2Generator::H];
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomPoly {
    degree: usize,
    coeffs: Vec<Rational>,
}

impl HomPoly {
    pub fn zero(degree: usize) -> Self {
        HomPoly {
            degree,
            coeffs: vec![Rational::zero(); degree + 1],
        }
    }

    pub fn from_coeffs(degree: usize, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() != degree + 1 {
            return arg_err(format!(
                "a degree-{degree} polynomial needs {} coefficients, got {}",
                degree + 1,
                coeffs.len()
            ));
        }
        Ok(HomPoly { degree, coeffs })
    }

    pub fn from_ints(degree: usize, coeffs: &[i64]) -> Result<Self> {
        Self::from_coeffs(degree, coeffs.iter().map(|&c| rational::int(c)).collect())
    }

    /// Constant polynomial `c` in `V_0`.
    pub fn constant(c: Rational) -> Self {
        HomPoly {
            degree: 0,
            coeffs: vec![c],
        }
    }

    /// Uniformly random element of `V_degree` with small rational coefficients.
    pub fn random<R: Rng + ?Sized>(degree: usize, rng: &mut R) -> Self {
        HomPoly {
            degree,
            coeffs: (0..=degree).map(|_| rational::random(rng)).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.degree + 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^(d-a) y^a`.
    pub fn coeff(&self, a: usize) -> &Rational {
        &self.coeffs[a]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Indices `a` with a nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(a, _)| a)
    }

    fn check_same_degree(&self, other: &HomPoly) -> Result<()> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &HomPoly) -> Result<HomPoly> {
        self.check_same_degree(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(HomPoly {
            degree: self.degree,
            coeffs,
        })
    }

    pub fn try_sub(&self, other: &HomPoly) -> Result<HomPoly> {
        self.check_same_degree(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(HomPoly {
            degree: self.degree,
            coeffs,
        })
    }

    /// `self += scale * other`.
    pub fn add_scaled(&mut self, scale: &Rational, other: &HomPoly) -> Result<()> {
        self.check_same_degree(other)?;
        if scale.is_zero() {
            return Ok(());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a += scale * b;
            }
        }
        Ok(())
    }

    pub fn scale(&self, c: &Rational) -> HomPoly {
        HomPoly {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn neg(&self) -> HomPoly {
        HomPoly {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    /// Ordinary product; lands in `V_(n+m)`.
    pub fn mul(&self, other: &HomPoly) -> HomPoly {
        let mut out = HomPoly::zero(self.degree + other.degree);
        for (a, p) in self.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (b, q) in other.coeffs.iter().enumerate() {
                if !q.is_zero() {
                    out.coeffs[a + b] += p * q;
                }
            }
        }
        out
    }

    /// Clears denominators: returns integer coefficients `c` and a positive
    /// `den` with `self = c / den`.
    pub(crate) fn integer_parts(&self) -> (Vec<BigInt>, BigInt) {
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| num_integer::lcm(acc, c.denom().clone()));
        let ints = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        (ints, den)
    }
}

impl fmt::Display for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree;
        let mut first = true;
        for (a, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match (d - a, a) {
                (0, 0) => String::new(),
                (px, 0) => power("x", px),
                (0, py) => power("y", py),
                (px, py) => format!("{}{}", power("x", px), power("y", py)),
            };
            let sign = if c < &Rational::zero() { "-" } else { "+" };
            let mag = if c < &Rational::zero() { -c } else { c.clone() };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else if mag.is_integer() {
                write!(f, "{mag}{mono}")?;
            } else {
                write!(f, "({mag}){mono}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn power(var: &str, e: usize) -> String {
    if e == 1 {
        var.to_string()
    } else {
        format!("{var}^{e}")
    }
}

#[derive(Serialize, Deserialize)]
struct HomPolyDoc {
    degree: usize,
    coeffs: Vec<String>,
}

impl Serialize for HomPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        HomPolyDoc {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(rational::format).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HomPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = HomPolyDoc::deserialize(d)?;
        let coeffs = doc
            .coeffs
            .iter()
            .map(|s| rational::parse(s))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        HomPoly::from_coeffs(doc.degree, coeffs).map_err(serde::de::Error::custom)
    }
}

/// The basis vector `x^(d-a) y^a` of `V_d`.
pub fn monomial(d: usize, a: usize) -> Result<HomPoly> {
    if a > d {
        return arg_err(format!("monomial index {a} out of range for degree {d}"));
    }
    let mut p = HomPoly::zero(d);
    p.coeffs[a] = Rational::one();
    Ok(p)
}

/// Exact partial derivative. The derivative of a degree-0 polynomial is the
/// degree-0 zero polynomial.
pub fn diff(p: &HomPoly, variable: Variable) -> HomPoly {
    let d = p.degree;
    if d == 0 {
        return HomPoly::zero(0);
    }
    let mut out = HomPoly::zero(d - 1);
    match variable {
        Variable::X => {
            for a in 0..d {
                let c = &p.coeffs[a];
                if !c.is_zero() {
                    out.coeffs[a] = c * rational::int((d - a) as i64);
                }
            }
        }
        Variable::Y => {
            for a in 1..=d {
                let c = &p.coeffs[a];
                if !c.is_zero() {
                    out.coeffs[a - 1] = c * rational::int(a as i64);
                }
            }
        }
    }
    out
}

/// Action of an sl2 generator as a differential operator. Preserves degree.
pub fn act(g: Sl2Generator, p: &HomPoly) -> HomPoly {
    let d = p.degree;
    let mut out = HomPoly::zero(d);
    for (a, c) in p.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        match g {
            // x ∂/∂y : x^(d-a) y^a -> a x^(d-a+1) y^(a-1)
            Sl2Generator::E => {
                if a > 0 {
                    out.coeffs[a - 1] += c * rational::int(a as i64);
                }
            }
            // y ∂/∂x : x^(d-a) y^a -> (d-a) x^(d-a-1) y^(a+1)
            Sl2Generator::F => {
                if a < d {
                    out.coeffs[a + 1] += c * rational::int((d - a) as i64);
                }
            }
            Sl2Generator::H => {
                out.coeffs[a] = c * rational::int(d as i64 - 2 * a as i64);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn poly(d: usize, c: &[i64]) -> HomPoly {
        HomPoly::from_ints(d, c).unwrap()
    }

    #[test]
    fn monomial_basis() {
        assert_eq!(monomial(3, 0).unwrap(), poly(3, &[1, 0, 0, 0]));
        assert_eq!(monomial(2, 1).unwrap(), poly(2, &[0, 1, 0]));
        assert_eq!(monomial(0, 0).unwrap(), poly(0, &[1]));
        assert!(matches!(monomial(2, 3), Err(Error::Argument(_))));
    }

    #[test]
    fn partial_derivatives() {
        // d/dx x^2 = 2x
        assert_eq!(diff(&poly(2, &[1, 0, 0]), Variable::X), poly(1, &[2, 0]));
        // d/dx y^2 = 0 in V_1
        let z = diff(&poly(2, &[0, 0, 1]), Variable::X);
        assert!(z.is_zero());
        assert_eq!(z.degree(), 1);
        // d/dx x^2 y = 2xy
        assert_eq!(diff(&poly(3, &[0, 1, 0, 0]), Variable::X), poly(2, &[0, 2, 0]));
        assert_eq!(diff(&poly(0, &[5]), Variable::Y), HomPoly::zero(0));
    }

    #[test]
    fn generator_action() {
        for d in 0..6 {
            let top = monomial(d, 0).unwrap();
            assert_eq!(act(Sl2Generator::H, &top), top.scale(&int(d as i64)));
            assert!(act(Sl2Generator::E, &top).is_zero());
        }
        // e(y^3) = 3xy^2
        assert_eq!(act(Sl2Generator::E, &poly(3, &[0, 0, 0, 1])), poly(3, &[0, 0, 3, 0]));
        assert!(act(Sl2Generator::F, &poly(3, &[0, 0, 0, 1])).is_zero());
    }

    #[test]
    fn cross_degree_addition_fails() {
        let p = HomPoly::zero(2);
        let q = HomPoly::zero(3);
        assert_eq!(
            p.try_add(&q),
            Err(Error::DegreeMismatch {
                expected: 2,
                found: 3
            })
        );
        assert!(HomPoly::from_coeffs(2, vec![int(1)]).is_err());
    }

    #[test]
    fn display() {
        let p = HomPoly::from_coeffs(2, vec![int(1), frac(-1, 2), int(3)]).unwrap();
        assert_eq!(p.to_string(), "x^2 - (1/2)xy + 3y^2");
        assert_eq!(HomPoly::zero(4).to_string(), "0");
    }

    #[test]
    fn integer_parts_recombine() {
        let p = HomPoly::from_coeffs(2, vec![frac(1, 2), frac(-2, 3), int(4)]).unwrap();
        let (ints, den) = p.integer_parts();
        assert_eq!(den, BigInt::from(6));
        assert_eq!(ints, vec![BigInt::from(3), BigInt::from(-4), BigInt::from(24)]);
    }

    #[test]
    fn serde_shape() {
        let p = HomPoly::from_coeffs(1, vec![frac(7, 5), int(-2)]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"degree":1,"coeffs":["7/5","-2"]}"#);
        let back: HomPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<HomPoly>(r#"{"degree":2,"coeffs":["1"]}"#).is_err());
    }
}
