//! Gordan identities among iterated transvections.
//!
//! For `f ∈ V_m`, `g ∈ V_n`, `h ∈ V_p` and exponents `(α1, α2, α3)` the bracket
//!
//! ```text
//! Σ_i C(n-α1-α3, i) C(α2, i) / C(m+n-2α3-i+1, i) · ((f,g)_(α3+i), h)_(α1+α2-i)
//!   + (-1)^(α1+1) Σ_i C(p-α1-α2, i) C(α3, i) / C(m+p-2α2-i+1, i) · ((f,h)_(α2+i), g)_(α1+α3-i)
//! ```
//!
//! vanishes whenever `α1+α2 ≤ p`, `α2+α3 ≤ m`, `α3+α1 ≤ n` and
//! (`α1 = 0` or `α2+α3 = m`). Nothing here assumes that: brackets are always
//! evaluated, so the identity can serve as an independent check on the
//! transvection code and on the Jacobi machinery.

use std::fmt;

use num_traits::{One, Zero};

use crate::chainspec::ChainTuple;
use crate::error::{arg_err, Error, Result};
use crate::polyspace::HomPoly;
use crate::rational::{binomial_general, frac, Rational};
use crate::transvection::transvection;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GordanSpec {
    /// `(m, n, p)`: degrees of the first, second and third argument.
    pub degrees: [usize; 3],
    pub exponents: [usize; 3],
}

/// Which pair is transvected first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pairing {
    /// `((f, g)_inner, h)_outer`
    FirstSecond,
    /// `((f, h)_inner, g)_outer`
    FirstThird,
}

/// One term `coeff · ((·,·)_inner, ·)_outer` of an expanded bracket.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GordanTerm {
    pub coeff: Rational,
    pub pairing: Pairing,
    pub inner: usize,
    pub outer: usize,
}

impl fmt::Display for GordanTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = match self.pairing {
            Pairing::FirstSecond => ("g", "h"),
            Pairing::FirstThird => ("h", "g"),
        };
        write!(f, "{}·((f,{a})_{},{b})_{}", self.coeff, self.inner, self.outer)
    }
}

impl GordanSpec {
    pub fn new(degrees: [usize; 3], exponents: [usize; 3]) -> Self {
        GordanSpec { degrees, exponents }
    }

    /// All three arguments of degree `n`.
    pub fn equal(n: usize, exponents: [usize; 3]) -> Self {
        GordanSpec::new([n, n, n], exponents)
    }

    pub fn hypothesis(&self) -> bool {
        let [m, n, p] = self.degrees;
        let [a1, a2, a3] = self.exponents;
        a1 + a2 <= p && a2 + a3 <= m && a3 + a1 <= n && (a1 == 0 || a2 + a3 == m)
    }

    /// Symbolic expansion, dropping terms with zero coefficient.
    pub fn expand(&self) -> Result<Vec<GordanTerm>> {
        let [m, n, p] = self.degrees.map(|d| d as i64);
        let [a1, a2, a3] = self.exponents.map(|a| a as i64);
        let mut terms = Vec::new();
        let mut push = |num: Rational, den: Rational, pairing, inner: i64, outer: i64| -> Result<()> {
            if num.is_zero() {
                return Ok(());
            }
            if den.is_zero() {
                return arg_err(format!("vanishing denominator binomial in Gordan bracket {self:?}"));
            }
            terms.push(GordanTerm {
                coeff: num / den,
                pairing,
                inner: inner as usize,
                outer: outer as usize,
            });
            Ok(())
        };
        for i in 0..=a2 {
            let iu = i as u64;
            let num = binomial_general(n - a1 - a3, iu) * binomial_general(a2, iu);
            let den = binomial_general(m + n - 2 * a3 - i + 1, iu);
            push(num, den, Pairing::FirstSecond, a3 + i, a1 + a2 - i)?;
        }
        let sign = if a1 % 2 == 0 { -Rational::one() } else { Rational::one() };
        for i in 0..=a3 {
            let iu = i as u64;
            let num = &sign * binomial_general(p - a1 - a2, iu) * binomial_general(a3, iu);
            let den = binomial_general(m + p - 2 * a2 - i + 1, iu);
            push(num, den, Pairing::FirstThird, a2 + i, a1 + a3 - i)?;
        }
        Ok(terms)
    }
}

fn check_degree(expected: usize, p: &HomPoly) -> Result<()> {
    if p.degree() != expected {
        return Err(Error::DegreeMismatch {
            expected,
            found: p.degree(),
        });
    }
    Ok(())
}

/// Evaluates the bracket exactly. A term whose transvection order exceeds the
/// available degrees is an argument error.
pub fn gordan_bracket(f: &HomPoly, g: &HomPoly, h: &HomPoly, spec: &GordanSpec) -> Result<HomPoly> {
    let [m, n, p] = spec.degrees;
    check_degree(m, f)?;
    check_degree(n, g)?;
    check_degree(p, h)?;
    let mut acc: Option<HomPoly> = None;
    for term in spec.expand()? {
        let (second, third) = match term.pairing {
            Pairing::FirstSecond => (g, h),
            Pairing::FirstThird => (h, g),
        };
        let inner = transvection(f, second, term.inner)?;
        let value = transvection(&inner, third, term.outer)?;
        match acc.as_mut() {
            Some(a) => a.add_scaled(&term.coeff, &value)?,
            None => acc = Some(value.scale(&term.coeff)),
        }
    }
    // every term has degree m + n + p - 2(α1 + α2 + α3)
    let total = m + n + p;
    let drop = 2 * spec.exponents.iter().sum::<usize>();
    Ok(acc.unwrap_or_else(|| HomPoly::zero(total.saturating_sub(drop))))
}

/// The bracket with degrees read off the arguments.
pub fn bracket(f: &HomPoly, g: &HomPoly, h: &HomPoly, exponents: [usize; 3]) -> Result<HomPoly> {
    let spec = GordanSpec::new([f.degree(), g.degree(), h.degree()], exponents);
    gordan_bracket(f, g, h, &spec)
}

/// `Σ_cyc [f,g,h] - Σ_cyc [g,f,h]` for three forms of equal degree.
pub fn gordan_star(f: &HomPoly, g: &HomPoly, h: &HomPoly, exponents: [usize; 3]) -> Result<HomPoly> {
    check_degree(f.degree(), g)?;
    check_degree(f.degree(), h)?;
    let mut acc = bracket(f, g, h, exponents)?;
    acc.add_scaled(&Rational::one(), &bracket(g, h, f, exponents)?)?;
    acc.add_scaled(&Rational::one(), &bracket(h, f, g, exponents)?)?;
    for (a, b, c) in [(g, f, h), (f, h, g), (h, g, f)] {
        acc.add_scaled(&-Rational::one(), &bracket(a, b, c, exponents)?)?;
    }
    Ok(acc)
}

/// Position of the degree-`2n-2` argument in a mixed bracket.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MixedPosition {
    First,
    Second,
    Third,
}

impl MixedPosition {
    fn index(self) -> usize {
        match self {
            MixedPosition::First => 0,
            MixedPosition::Second => 1,
            MixedPosition::Third => 2,
        }
    }
}

/// Bracket whose arguments have degrees `n, n` and `2n-2`, the latter in
/// position `which`.
pub fn gordan_mixed(
    args: [&HomPoly; 3],
    which: MixedPosition,
    exponents: [usize; 3],
) -> Result<HomPoly> {
    let w = which.index();
    let n = args[(w + 1) % 3].degree();
    if n == 0 {
        return arg_err("mixed brackets need n ≥ 1");
    }
    for (i, a) in args.iter().enumerate() {
        check_degree(if i == w { 2 * n - 2 } else { n }, a)?;
    }
    bracket(args[0], args[1], args[2], exponents)
}

/// Six-term combination for `f, g ∈ V_n`, `h ∈ V_(2n-2)`:
/// `[f,g,h]_3 - [g,f,h]_3 + [g,h,f]_2 - [h,g,f]_1 + [h,f,g]_1 - [f,h,g]_2`.
pub fn gordan_mixed_star(f: &HomPoly, g: &HomPoly, h: &HomPoly, exponents: [usize; 3]) -> Result<HomPoly> {
    use MixedPosition::*;
    let parts: [(i64, [&HomPoly; 3], MixedPosition); 6] = [
        (1, [f, g, h], Third),
        (-1, [g, f, h], Third),
        (1, [g, h, f], Second),
        (-1, [h, g, f], First),
        (1, [h, f, g], First),
        (-1, [f, h, g], Second),
    ];
    let mut acc = Combination::new();
    for (sign, args, pos) in parts {
        acc.add(sign, 1, gordan_mixed(args, pos, exponents)?)?;
    }
    acc.finish()
}

/// Families whose Jacobi identity reduces to a combination of Gordan
/// brackets. The family parameter is written `n` throughout.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReplayFamily {
    /// `(n, 1, 0)`, `n ≥ 1`
    N10,
    /// `(n, 1, 1)`, `n ≥ 2`
    N11,
    /// `(n, 1, 3)`, `n ≥ 3`
    N13,
    /// `(n, 3, 1)`, `n ≥ 4`
    N31,
    /// `(4n, 2n+1, 4n-3)`, `n ≥ 2`
    Mod0,
    /// `(4n+1, 2n+1, 4n)`, `n ≥ 0`
    Mod1,
    /// `(4n+2, 2n+1, 4n+1)`, `n ≥ 0`
    Mod2,
    /// `(4n+3, 2n+1, 4n+3)`, `n ≥ 1`
    Mod3,
    /// `(4n+4, 2n+1, 4n+3)`, `n ≥ 1`
    Mod4,
    /// `(n, 1, 0, 0)`, `n ≥ 1`
    N100,
    /// `(n, 1, 0, 2)`, `n ≥ 2`
    N102,
    /// `(n, 1, 1, 1)`, `n ≥ 2`
    N111,
}

impl ReplayFamily {
    pub const ALL: [ReplayFamily; 12] = [
        ReplayFamily::N10,
        ReplayFamily::N11,
        ReplayFamily::N13,
        ReplayFamily::N31,
        ReplayFamily::Mod0,
        ReplayFamily::Mod1,
        ReplayFamily::Mod2,
        ReplayFamily::Mod3,
        ReplayFamily::Mod4,
        ReplayFamily::N100,
        ReplayFamily::N102,
        ReplayFamily::N111,
    ];

    pub fn min_n(self) -> i64 {
        use ReplayFamily::*;
        match self {
            N10 | N100 => 1,
            N11 | Mod0 | N102 | N111 => 2,
            N13 => 3,
            N31 => 4,
            Mod1 | Mod2 => 0,
            Mod3 | Mod4 => 1,
        }
    }

    pub fn tuple(self, n: i64) -> ChainTuple {
        use ReplayFamily::*;
        let entries = match self {
            N10 => vec![n, 1, 0],
            N11 => vec![n, 1, 1],
            N13 => vec![n, 1, 3],
            N31 => vec![n, 3, 1],
            Mod0 => vec![4 * n, 2 * n + 1, 4 * n - 3],
            Mod1 => vec![4 * n + 1, 2 * n + 1, 4 * n],
            Mod2 => vec![4 * n + 2, 2 * n + 1, 4 * n + 1],
            Mod3 => vec![4 * n + 3, 2 * n + 1, 4 * n + 3],
            Mod4 => vec![4 * n + 4, 2 * n + 1, 4 * n + 3],
            N100 => vec![n, 1, 0, 0],
            N102 => vec![n, 1, 0, 2],
            N111 => vec![n, 1, 1, 1],
        };
        ChainTuple::new(entries).expect("non-empty")
    }

    /// Four-module families take `f, g ∈ m_1` and `h ∈ m_2`; the others take
    /// three forms of `m_1`.
    pub fn is_mixed(self) -> bool {
        matches!(self, ReplayFamily::N100 | ReplayFamily::N102 | ReplayFamily::N111)
    }

    /// Expected `α_224 α_112 / (α_123 α_134)` for the four-module families.
    pub fn alpha(self, n: i64) -> Option<Rational> {
        match self {
            ReplayFamily::N100 => Some(Rational::zero()),
            ReplayFamily::N102 => Some(frac(4 * (4 * n - 3), 3 * (3 * n - 2))),
            ReplayFamily::N111 => Some(frac(2 * n - 2, 3 * n - 4)),
            _ => None,
        }
    }

    /// Evaluates the family's bracket combination on `f, g, h`.
    pub fn combination(self, n: i64, f: &HomPoly, g: &HomPoly, h: &HomPoly) -> Result<HomPoly> {
        use ReplayFamily::*;
        if n < self.min_n() {
            return arg_err(format!("{self:?} needs n ≥ {}", self.min_n()));
        }
        let u = |x: i64| x as usize;
        let mut acc = Combination::new();
        match self {
            N10 => {
                acc.add(1, 1, bracket(f, g, h, [0, 0, 1])?)?;
                acc.add(-1, 1, bracket(h, g, f, [0, 0, 1])?)?;
            }
            N11 => {
                for (a, b, c) in [(f, g, h), (g, f, h), (h, g, f)] {
                    acc.add(1, 1, bracket(a, b, c, [0, 1, 1])?)?;
                }
            }
            N13 if n == 3 => acc.add(1, 1, gordan_star(f, g, h, [1, 1, 2])?)?,
            N13 => {
                acc.add(1, 1, gordan_star(f, g, h, [0, 1, 3])?)?;
                let c = frac(7 * n - 9, 4 * n - 6);
                acc.add_q(-&c, bracket(f, g, h, [0, 2, 2])?)?;
                acc.add_q(c.clone(), bracket(g, f, h, [0, 2, 2])?)?;
                acc.add_q(c, bracket(h, g, f, [0, 2, 2])?)?;
            }
            N31 => {
                for (a, b, c) in [(f, g, h), (g, f, h), (h, g, f)] {
                    acc.add(1, 1, bracket(a, b, c, [0, 2, 2])?)?;
                }
            }
            Mod0 => {
                acc.add(1, 1, gordan_star(f, g, h, [u(2 * n - 2), u(2 * n + 2), u(2 * n - 2)])?)?;
                acc.add(-2, 1, gordan_star(f, g, h, [u(2 * n - 2), u(2 * n + 1), u(2 * n - 1)])?)?;
            }
            Mod1 => acc.add(1, 1, gordan_star(f, g, h, [u(2 * n), u(2 * n + 1), u(2 * n)])?)?,
            Mod2 => acc.add(1, 1, gordan_star(f, g, h, [u(2 * n), u(2 * n + 1), u(2 * n + 1)])?)?,
            Mod3 => {
                acc.add(1, 1, gordan_star(f, g, h, [u(2 * n - 1), u(2 * n), u(2 * n + 3)])?)?;
                acc.add(4 * n + 3, 2 * n, gordan_star(f, g, h, [u(2 * n - 1), u(2 * n + 3), u(2 * n)])?)?;
            }
            Mod4 => {
                let a = gordan_star(f, g, h, [u(2 * n - 2), u(2 * n + 4), u(2 * n)])?;
                let b = gordan_star(f, g, h, [u(2 * n - 2), u(2 * n), u(2 * n + 4)])?;
                let c = gordan_star(f, g, h, [u(2 * n - 2), u(2 * n + 3), u(2 * n + 1)])?;
                let k = frac(3 * (n + 2) * (2 * n + 3) * (7 * n + 10), 4 * n * (4 * n + 1) * (6 * n + 7));
                let l = frac(5 * (n + 2), 7 * n + 10);
                acc.add(1, 1, a.clone())?;
                acc.add(-1, 1, b)?;
                acc.add_q(-&k, a)?;
                acc.add_q(k * l, c)?;
            }
            N100 => acc.add(1, 1, gordan_mixed([f, g, h], MixedPosition::Third, [0, 0, 0])?)?,
            N102 => {
                use MixedPosition::*;
                let e = [0, 2, 0];
                acc.add(1, 1, gordan_mixed([h, f, g], First, e)?)?;
                acc.add(1, 1, gordan_mixed([f, h, g], Second, e)?)?;
                acc.add(-1, 1, gordan_mixed([h, g, f], First, e)?)?;
                acc.add(-1, 1, gordan_mixed([g, h, f], Second, e)?)?;
                let c = frac(14 * n - 18, 9 * n - 12);
                acc.add_q(c.clone(), gordan_mixed([f, g, h], Third, e)?)?;
                acc.add_q(-c, gordan_mixed([g, f, h], Third, e)?)?;
                let k = frac((n - 1) * (2 * n - 4), (3 * n - 4) * (3 * n - 2));
                acc.add_q(k, mixed_g(n, f, g, h)?)?;
            }
            N111 => acc.add(1, 1, mixed_g(n, f, g, h)?)?,
        }
        acc.finish()
    }
}

/// `(2n-3)/(n-1) [h,f,g,n,0,1,1]_1 + [g,h,f,n,0,1,1]_2 + [f,g,h,n,0,1,1]_3`.
fn mixed_g(n: i64, f: &HomPoly, g: &HomPoly, h: &HomPoly) -> Result<HomPoly> {
    use MixedPosition::*;
    let e = [0, 1, 1];
    let mut acc = Combination::new();
    acc.add(2 * n - 3, n - 1, gordan_mixed([h, f, g], First, e)?)?;
    acc.add(1, 1, gordan_mixed([g, h, f], Second, e)?)?;
    acc.add(1, 1, gordan_mixed([f, g, h], Third, e)?)?;
    acc.finish()
}

struct Combination(Option<HomPoly>);

impl Combination {
    fn new() -> Self {
        Combination(None)
    }

    fn add(&mut self, num: i64, den: i64, p: HomPoly) -> Result<()> {
        self.add_q(frac(num, den), p)
    }

    fn add_q(&mut self, c: Rational, p: HomPoly) -> Result<()> {
        match self.0.as_mut() {
            Some(a) => a.add_scaled(&c, &p),
            None => {
                self.0 = Some(p.scale(&c));
                Ok(())
            }
        }
    }

    fn finish(self) -> Result<HomPoly> {
        self.0.ok_or_else(|| Error::Argument("empty bracket combination".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyspace::monomial;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn term(c: Rational, pairing: Pairing, inner: usize, outer: usize) -> GordanTerm {
        GordanTerm { coeff: c, pairing, inner, outer }
    }

    #[test]
    fn expansion_of_001() {
        let t = GordanSpec::equal(5, [0, 0, 1]).expand().unwrap();
        assert_eq!(
            t,
            vec![
                term(frac(1, 1), Pairing::FirstSecond, 1, 0),
                term(frac(-1, 1), Pairing::FirstThird, 0, 1),
                term(frac(-1, 2), Pairing::FirstThird, 1, 0),
            ]
        );
    }

    #[test]
    fn expansion_of_011() {
        // ((f,g)_1,h)_1 + ½((f,g)_2,h)_0 - ((f,h)_1,g)_1 - ½((f,h)_2,g)_0
        let t = GordanSpec::equal(6, [0, 1, 1]).expand().unwrap();
        let want = vec![
            term(frac(1, 1), Pairing::FirstSecond, 1, 1),
            term(frac(1, 2), Pairing::FirstSecond, 2, 0),
            term(frac(-1, 1), Pairing::FirstThird, 1, 1),
            term(frac(-1, 2), Pairing::FirstThird, 2, 0),
        ];
        assert_eq!(t, want);
    }

    #[test]
    fn trivial_exponents_vanish() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = HomPoly::random(3, &mut rng);
        let g = HomPoly::random(2, &mut rng);
        let h = HomPoly::random(4, &mut rng);
        assert!(gordan_bracket(&f, &g, &h, &GordanSpec::new([3, 2, 4], [0, 0, 0])).unwrap().is_zero());
    }

    #[test]
    fn hypothesis_flags() {
        assert!(GordanSpec::equal(3, [0, 1, 1]).hypothesis());
        assert!(GordanSpec::equal(3, [1, 1, 2]).hypothesis());
        assert!(!GordanSpec::equal(3, [1, 1, 1]).hypothesis());
        assert!(!GordanSpec::equal(3, [0, 2, 2]).hypothesis());
    }

    #[test]
    fn degree_mismatch_is_reported() {
        let f = monomial(3, 0).unwrap();
        let g = monomial(2, 0).unwrap();
        assert!(matches!(
            gordan_bracket(&f, &g, &f, &GordanSpec::equal(3, [0, 0, 0])),
            Err(Error::DegreeMismatch { .. })
        ));
    }
}
