//! Transvections `(·,·)_k : V_n × V_m → V_(n+m-2k)` and Clebsch-Gordan
//! bookkeeping.
//!
//! With `f ∈ V_n` and `g ∈ V_m`,
//!
//! ```text
//! (f, g)_k = (m-k)!/m! · (n-k)!/n! · Σ_{i=0..k} (-1)^i C(k,i) ∂^k f/∂x^(k-i)∂y^i · ∂^k g/∂x^i∂y^(k-i)
//! ```
//!
//! Up to a scalar this is the only sl2-invariant bilinear map
//! `V_n ⊗ V_m → V_(n+m-2k)`, and it satisfies `(g, f)_k = (-1)^k (f, g)_k`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{arg_err, Result};
use crate::polyspace::HomPoly;
use crate::rational::{binomial, falling, Rational};

/// Clebsch-Gordan decomposition `V_n ⊗ V_m ≅ ⊕_k V_(n+m-2k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CgDecomposition {
    pub left_degree: usize,
    pub right_degree: usize,
    /// Degrees `n+m-2k` for `k = 0..=min(n, m)`, strictly decreasing.
    pub components: Vec<usize>,
}

pub fn cg_components(n: usize, m: usize) -> CgDecomposition {
    CgDecomposition {
        left_degree: n,
        right_degree: m,
        components: (0..=n.min(m)).map(|k| n + m - 2 * k).collect(),
    }
}

/// Degrees of the irreducible summands of `Λ² V_n` (the odd-`k` summands of
/// `V_n ⊗ V_n`).
pub fn wedge_components(n: usize) -> Vec<usize> {
    if n == 0 {
        return Vec::new();
    }
    (0..=(n - 1) / 2).map(|k| 2 * n - 4 * k - 2).collect()
}

/// Returns the transvection order `k` when `V_p` occurs in `V_n ⊗ V_m`
/// (multiplicity one), `None` when it does not occur (multiplicity zero).
pub fn invariant_product_multiplicity(n: usize, m: usize, p: usize) -> Option<usize> {
    if p > n + m || !(n + m - p).is_multiple_of(2) {
        return None;
    }
    let k = (n + m - p) / 2;
    (k <= n.min(m)).then_some(k)
}

/// `n!/(n-k)! · m!/(m-k)!`, the reciprocal of the transvection prefactor.
pub fn prefactor_denominator(n: usize, m: usize, k: usize) -> BigInt {
    falling(n as u64, k as u64) * falling(m as u64, k as u64)
}

/// Integer part of `(x^(n-a) y^a, x^(m-b) y^b)_k`; the coefficient is this
/// value divided by [`prefactor_denominator`]. The result is a multiple of the
/// single monomial with index `a + b - k`.
pub fn monomial_transvection_numerator(n: usize, a: usize, m: usize, b: usize, k: usize) -> BigInt {
    let (n, a, m, b, k) = (n as u64, a as u64, m as u64, b as u64, k as u64);
    let mut acc = BigInt::zero();
    for i in 0..=k {
        if k - i > n - a || i > a || i > m - b || k - i > b {
            continue;
        }
        let term = binomial(k, i)
            * falling(n - a, k - i)
            * falling(a, i)
            * falling(m - b, i)
            * falling(b, k - i);
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Transvection of two basis monomials: `Some((index, coeff))` such that
/// `(x^(n-a) y^a, x^(m-b) y^b)_k = coeff · x^(n+m-2k-index) y^index`, or `None`
/// when the product vanishes for index reasons.
pub fn monomial_transvection(
    n: usize,
    a: usize,
    m: usize,
    b: usize,
    k: usize,
) -> Result<Option<(usize, Rational)>> {
    if a > n || b > m {
        return arg_err(format!("monomial index out of range: ({a} of {n}, {b} of {m})"));
    }
    if k > n.min(m) {
        return arg_err(format!("transvection order {k} exceeds min({n}, {m})"));
    }
    if a + b < k || a + b - k > n + m - 2 * k {
        return Ok(None);
    }
    let num = monomial_transvection_numerator(n, a, m, b, k);
    Ok(Some((
        a + b - k,
        Rational::new(num, prefactor_denominator(n, m, k)),
    )))
}

/// The transvection `(f, g)_k`. Orders outside `0..=min(deg f, deg g)` are an
/// error: the map is undefined there, not zero.
pub fn transvection(f: &HomPoly, g: &HomPoly, k: usize) -> Result<HomPoly> {
    let (n, m) = (f.degree(), g.degree());
    if k > n.min(m) {
        return arg_err(format!(
            "transvection order {k} exceeds min({n}, {m})"
        ));
    }
    let out_degree = n + m - 2 * k;
    if f.is_zero() || g.is_zero() {
        return Ok(HomPoly::zero(out_degree));
    }

    let (fi, fden) = f.integer_parts();
    let (gi, gden) = g.integer_parts();
    let mut acc = vec![BigInt::zero(); out_degree + 1];
    let (n64, m64, k64) = (n as u64, m as u64, k as u64);

    // ∂^k f / ∂x^(k-i) ∂y^i and ∂^k g / ∂x^i ∂y^(k-i), as (index, value) lists.
    let mut df: Vec<(usize, BigInt)> = Vec::with_capacity(n + 1);
    let mut dg: Vec<(usize, BigInt)> = Vec::with_capacity(m + 1);
    for i in 0..=k64 {
        df.clear();
        for (a, c) in fi.iter().enumerate() {
            let a64 = a as u64;
            if c.is_zero() || k64 - i > n64 - a64 || i > a64 {
                continue;
            }
            df.push((a - i as usize, c * falling(n64 - a64, k64 - i) * falling(a64, i)));
        }
        if df.is_empty() {
            continue;
        }
        dg.clear();
        for (b, c) in gi.iter().enumerate() {
            let b64 = b as u64;
            if c.is_zero() || i > m64 - b64 || k64 - i > b64 {
                continue;
            }
            dg.push((
                b - (k - i as usize),
                c * falling(m64 - b64, i) * falling(b64, k64 - i),
            ));
        }
        if dg.is_empty() {
            continue;
        }
        let weight = binomial(k64, i);
        let negative = i % 2 == 1;
        for (ra, va) in &df {
            let scaled = va * &weight;
            for (rb, vb) in &dg {
                let term = &scaled * vb;
                if negative {
                    acc[ra + rb] -= term;
                } else {
                    acc[ra + rb] += term;
                }
            }
        }
    }

    let den = fden * gden * prefactor_denominator(n, m, k);
    let coeffs = acc
        .into_iter()
        .map(|c| Rational::new(c, den.clone()))
        .collect();
    HomPoly::from_coeffs(out_degree, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyspace::monomial;
    use crate::rational::int;

    fn x_pow(d: usize) -> HomPoly {
        monomial(d, 0).unwrap()
    }
    fn y_pow(d: usize) -> HomPoly {
        monomial(d, d).unwrap()
    }

    #[test]
    fn order_zero_is_product() {
        let t = transvection(&x_pow(1), &y_pow(1), 0).unwrap();
        assert_eq!(t, monomial(2, 1).unwrap());
    }

    #[test]
    fn hand_evaluated_values() {
        // (x^2, y^2)_2 = (1/2)(1/2) · C(2,0) · 2 · 2 = 1
        assert_eq!(transvection(&x_pow(2), &y_pow(2), 2).unwrap(), HomPoly::constant(int(1)));
        assert_eq!(transvection(&y_pow(2), &x_pow(2), 2).unwrap(), HomPoly::constant(int(1)));
        assert_eq!(transvection(&x_pow(1), &y_pow(1), 1).unwrap(), HomPoly::constant(int(1)));
        assert_eq!(transvection(&y_pow(1), &x_pow(1), 1).unwrap(), HomPoly::constant(int(-1)));
    }

    #[test]
    fn inadmissible_order_is_an_error() {
        assert!(transvection(&x_pow(1), &y_pow(3), 2).is_err());
        assert!(monomial_transvection(1, 0, 3, 0, 2).is_err());
    }

    #[test]
    fn monomial_closed_form_matches_dense_formula() {
        for n in 0..=6 {
            for m in 0..=6 {
                for k in 0..=n.min(m) {
                    for a in 0..=n {
                        for b in 0..=m {
                            let dense = transvection(
                                &monomial(n, a).unwrap(),
                                &monomial(m, b).unwrap(),
                                k,
                            )
                            .unwrap();
                            match monomial_transvection(n, a, m, b, k).unwrap() {
                                Some((idx, c)) => {
                                    let mut expect = HomPoly::zero(n + m - 2 * k);
                                    expect.add_scaled(&c, &monomial(n + m - 2 * k, idx).unwrap()).unwrap();
                                    assert_eq!(dense, expect, "n={n} a={a} m={m} b={b} k={k}");
                                }
                                None => assert!(dense.is_zero()),
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn clebsch_gordan() {
        assert_eq!(cg_components(1, 1).components, vec![2, 0]);
        assert_eq!(cg_components(5, 0).components, vec![5]);
        assert_eq!(cg_components(3, 2).components, vec![5, 3, 1]);
        assert_eq!(wedge_components(1), vec![0]);
        assert_eq!(wedge_components(3), vec![4, 0]);
        assert!(wedge_components(0).is_empty());
    }

    #[test]
    fn multiplicity() {
        assert_eq!(invariant_product_multiplicity(4, 2, 4), Some(1));
        assert_eq!(invariant_product_multiplicity(4, 2, 5), None);
        assert_eq!(invariant_product_multiplicity(2, 2, 6), None);
        assert_eq!(invariant_product_multiplicity(4, 2, 2), Some(2));
        assert_eq!(invariant_product_multiplicity(4, 2, 0), None);
    }
}
