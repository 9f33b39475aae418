//! Monomial-level Jacobi evaluation over precomputed transvection tables.
//!
//! Every table stores the integer numerators of `(x^(n-a) y^a, x^(m-b) y^b)_k`;
//! the shared denominator is [`prefactor_denominator`]. All terms of one Jacobi
//! component carry the same product of denominators, so vanishing can be
//! decided on numerators alone. The kernels are generic over the scalar so the
//! same code runs modulo a prime (fast screening) and over the integers
//! (exact confirmation).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::chainspec::{ModuleLayout, Skeleton, SlotIndex};
use crate::rational::Rational;
use crate::transvection::{monomial_transvection_numerator, prefactor_denominator};

pub(crate) trait Scalar: Clone + Send + Sync + Sized {
    fn zero() -> Self;
    fn vanishes(&self) -> bool;
    fn from_bigint(v: &BigInt) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Row-major `(n+1) × (m+1)` numerators of the order-`k` transvection.
    fn numerator_table(n: usize, m: usize, k: usize) -> Vec<Self>;
}

/// Integers modulo the Mersenne prime `2^61 - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Fp(u64);

const P: u64 = (1 << 61) - 1;

impl Fp {
    fn new(v: u64) -> Self {
        Fp(v % P)
    }

    fn reduce(v: u128) -> u64 {
        let lo = (v as u64) & P;
        let hi = (v >> 61) as u64;
        let s = lo + (hi & P) + (hi >> 61);
        let s = (s & P) + (s >> 61);
        if s >= P {
            s - P
        } else {
            s
        }
    }

    fn pow(self, mut e: u64) -> Fp {
        let (mut acc, mut b) = (Fp(1), self);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        acc
    }

    fn inv(self) -> Fp {
        self.pow(P - 2)
    }
}

impl Scalar for Fp {
    fn zero() -> Self {
        Fp(0)
    }

    fn vanishes(&self) -> bool {
        self.0 == 0
    }

    fn from_bigint(v: &BigInt) -> Self {
        let r = v.mod_floor(&BigInt::from(P));
        Fp(r.to_u64().expect("residue fits"))
    }

    fn add(&self, o: &Self) -> Self {
        let s = self.0 + o.0;
        Fp(if s >= P { s - P } else { s })
    }

    fn sub(&self, o: &Self) -> Self {
        Fp(if self.0 >= o.0 { self.0 - o.0 } else { self.0 + P - o.0 })
    }

    fn mul(&self, o: &Self) -> Self {
        Fp(Fp::reduce(self.0 as u128 * o.0 as u128))
    }

    fn numerator_table(n: usize, m: usize, k: usize) -> Vec<Self> {
        let top = n.max(m).max(k) + 1;
        let mut fact = vec![Fp(1); top];
        for i in 1..top {
            fact[i] = fact[i - 1].mul(&Fp::new(i as u64));
        }
        let mut inv = vec![Fp(1); top];
        inv[top - 1] = fact[top - 1].inv();
        for i in (1..top).rev() {
            inv[i - 1] = inv[i].mul(&Fp::new(i as u64));
        }
        let mut out = Vec::with_capacity((n + 1) * (m + 1));
        for a in 0..=n {
            for b in 0..=m {
                // C(k,i) (n-a)!/(n-a-k+i)! a!/(a-i)! (m-b)!/(m-b-i)! b!/(b-k+i)!
                let mut acc = Fp(0);
                for i in 0..=k {
                    if k - i > n - a || i > a || i > m - b || k - i > b {
                        continue;
                    }
                    let term = inv[i]
                        .mul(&inv[k - i])
                        .mul(&inv[n - a + i - k])
                        .mul(&inv[a - i])
                        .mul(&inv[m - b - i])
                        .mul(&inv[b + i - k]);
                    acc = if i % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
                }
                if !acc.vanishes() {
                    acc = acc
                        .mul(&fact[k])
                        .mul(&fact[n - a])
                        .mul(&fact[a])
                        .mul(&fact[m - b])
                        .mul(&fact[b]);
                }
                out.push(acc);
            }
        }
        out
    }
}

impl Scalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }

    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }

    fn from_bigint(v: &BigInt) -> Self {
        v.clone()
    }

    fn add(&self, o: &Self) -> Self {
        self + o
    }

    fn sub(&self, o: &Self) -> Self {
        self - o
    }

    fn mul(&self, o: &Self) -> Self {
        self * o
    }

    fn numerator_table(n: usize, m: usize, k: usize) -> Vec<Self> {
        let mut out = Vec::with_capacity((n + 1) * (m + 1));
        for a in 0..=n {
            for b in 0..=m {
                out.push(monomial_transvection_numerator(n, a, m, b, k));
            }
        }
        out
    }
}

/// Numerators of one product slot `m_i × m_j → m_k` on basis monomials.
pub(crate) struct Table<S> {
    left: usize,
    right: usize,
    order: usize,
    /// Common denominator of the entries.
    den: BigInt,
    data: Vec<S>,
}

impl<S: Scalar> Table<S> {
    pub(crate) fn new(left: usize, right: usize, order: usize) -> Self {
        Table {
            left,
            right,
            order,
            den: prefactor_denominator(left, right, order),
            data: S::numerator_table(left, right, order),
        }
    }

    /// Table for slot `(i, j, k)`, `None` when the slot has no admissible order.
    pub(crate) fn for_slot(layout: &ModuleLayout, skeleton: &Skeleton, slot: SlotIndex) -> Option<Self> {
        let s = skeleton.get(slot)?;
        let order = s.order?;
        Some(Table::new(layout.degree(slot.i), layout.degree(slot.j), order))
    }

    pub(crate) fn den(&self) -> &BigInt {
        &self.den
    }

    /// Numerator for monomials `a`, `b` together with the output index.
    fn get(&self, a: usize, b: usize) -> Option<(usize, &S)> {
        let out = (a + b).checked_sub(self.order)?;
        if out > self.left + self.right - 2 * self.order {
            return None;
        }
        Some((out, &self.data[a * (self.right + 1) + b]))
    }
}

/// `(u, (v, w)_inner)_outer` on monomials, as a numerator.
fn nested<S: Scalar>(inner: &Table<S>, outer: &Table<S>, u: usize, v: usize, w: usize) -> Option<S> {
    let (mid, iv) = inner.get(v, w)?;
    if iv.vanishes() {
        return None;
    }
    let (_, ov) = outer.get(u, mid)?;
    if ov.vanishes() {
        return None;
    }
    Some(ov.mul(iv))
}

fn accumulate<S: Scalar>(acc: &mut S, term: Option<S>) {
    if let Some(t) = term {
        *acc = acc.add(&t);
    }
}

/// Cyclic sum `Σ (u, (v, w)_inner)_outer` over the three rotations of `(a, b, c)`.
fn cyclic<S: Scalar>(inner: &Table<S>, outer: &Table<S>, a: usize, b: usize, c: usize) -> S {
    let mut acc = S::zero();
    accumulate(&mut acc, nested(inner, outer, a, b, c));
    accumulate(&mut acc, nested(inner, outer, b, c, a));
    accumulate(&mut acc, nested(inner, outer, c, a, b));
    acc
}

/// The `m_1 ⊕ m_2 ⊕ m_3` part of a chain: products `112` and `123`.
pub(crate) struct T3<S> {
    d1: usize,
    t112: Table<S>,
    t123: Table<S>,
}

impl<S: Scalar> T3<S> {
    pub(crate) fn new(layout: &ModuleLayout, skeleton: &Skeleton) -> Option<Self> {
        Some(T3 {
            d1: layout.degree(1),
            t112: Table::for_slot(layout, skeleton, SlotIndex::new(1, 1, 2))?,
            t123: Table::for_slot(layout, skeleton, SlotIndex::new(1, 2, 3))?,
        })
    }

    /// First monomial triple `a ≤ b ≤ c` of `m_1` whose Jacobi sum with all
    /// required products set to one does not vanish.
    pub(crate) fn first_failure(&self) -> Option<[usize; 3]> {
        let d = self.d1;
        for a in 0..=d {
            for b in a..=d {
                for c in b..=d {
                    if !cyclic(&self.t112, &self.t123, a, b, c).vanishes() {
                        return Some([a, b, c]);
                    }
                }
            }
        }
        None
    }
}

/// One equation of the four-module analysis: exponents of the monomials and
/// the coefficients of the unknown products, scaled to a common denominator.
pub(crate) struct Row<S> {
    pub(crate) exponents: [usize; 3],
    pub(crate) coeffs: [S; 2],
}

/// `(u, v, w) ∈ m_1 × m_1 × m_2` equations, projected to `m_4`.
///
/// Unknowns are `s = α_112 α_123 α_134`-weighted term `E1` and `q` for `E2`:
/// `E1 = (u,(v,w)_123)_134 - (v,(u,w)_123)_134`, `E2 = (w,(u,v)_112)_224`.
/// Columns are rescaled so that the true equation is `E1 · s + E2 · q = 0`
/// up to one positive factor per row.
pub(crate) fn mixed_rows<S: Scalar>(layout: &ModuleLayout, skeleton: &Skeleton) -> Option<Vec<Row<S>>> {
    let t112 = Table::<S>::for_slot(layout, skeleton, SlotIndex::new(1, 1, 2))?;
    let t123 = Table::<S>::for_slot(layout, skeleton, SlotIndex::new(1, 2, 3))?;
    let t134 = Table::<S>::for_slot(layout, skeleton, SlotIndex::new(1, 3, 4))?;
    let t224 = skeleton
        .get(SlotIndex::new(2, 2, 4))
        .filter(|s| !s.is_forced_zero())
        .and_then(|_| Table::<S>::for_slot(layout, skeleton, SlotIndex::new(2, 2, 4)));
    let (d1, d2) = (layout.degree(1), layout.degree(2));
    // E1 has denominator D123 D134, E2 has D112 D224.
    let (scale1, scale2) = match &t224 {
        Some(t) => (
            S::from_bigint(&(t112.den() * t.den())),
            S::from_bigint(&(t123.den() * t134.den())),
        ),
        None => (S::from_bigint(&BigInt::from(1)), S::zero()),
    };
    let mut rows = Vec::new();
    for a in 0..=d1 {
        for b in a..=d1 {
            for c in 0..=d2 {
                let mut e1 = S::zero();
                accumulate(&mut e1, nested(&t123, &t134, a, b, c));
                if let Some(t) = nested(&t123, &t134, b, a, c) {
                    e1 = e1.sub(&t);
                }
                let e2 = match &t224 {
                    Some(t) => nested(&t112, t, c, a, b).unwrap_or_else(S::zero),
                    None => S::zero(),
                };
                if e1.vanishes() && e2.vanishes() {
                    continue;
                }
                rows.push(Row {
                    exponents: [a, b, c],
                    coeffs: [e1.mul(&scale1), e2.mul(&scale2)],
                });
            }
        }
    }
    Some(rows)
}

/// `(u, v, w) ∈ m_1^3` equations projected to `m_4`: the cyclic sums through
/// `m_2` (`A`, weight `X = α_112 α_124`) and through `m_3` (`B`, weight
/// `Y = α_113 α_134`). Columns follow `[X, Y]` restricted to the slots that
/// can be nonzero; `None` when neither can.
pub(crate) fn top_rows<S: Scalar>(
    layout: &ModuleLayout,
    skeleton: &Skeleton,
) -> Option<(Vec<SlotIndex>, Vec<Vec<S>>)> {
    let live = |s: SlotIndex| skeleton.get(s).is_some_and(|p| !p.is_forced_zero());
    let t112 = Table::<S>::for_slot(layout, skeleton, SlotIndex::new(1, 1, 2))?;
    let t134 = Table::<S>::for_slot(layout, skeleton, SlotIndex::new(1, 3, 4))?;
    let through2 = live(SlotIndex::new(1, 2, 4))
        .then(|| Table::<S>::for_slot(layout, skeleton, SlotIndex::new(1, 2, 4)))
        .flatten();
    let through3 = live(SlotIndex::new(1, 1, 3))
        .then(|| Table::<S>::for_slot(layout, skeleton, SlotIndex::new(1, 1, 3)))
        .flatten();
    let mut columns = Vec::new();
    if through2.is_some() {
        columns.push(SlotIndex::new(1, 2, 4));
    }
    if through3.is_some() {
        columns.push(SlotIndex::new(1, 1, 3));
    }
    if columns.is_empty() {
        return None;
    }
    // A has denominator D112 D124, B has D113 D134.
    let (sa, sb) = match (&through2, &through3) {
        (Some(t124), Some(t113)) => (
            S::from_bigint(&(t113.den() * t134.den())),
            S::from_bigint(&(t112.den() * t124.den())),
        ),
        _ => (S::from_bigint(&BigInt::from(1)), S::from_bigint(&BigInt::from(1))),
    };
    let d1 = layout.degree(1);
    let mut rows = Vec::new();
    for a in 0..=d1 {
        for b in a..=d1 {
            for c in b..=d1 {
                let mut row = Vec::with_capacity(2);
                if let Some(t124) = &through2 {
                    row.push(cyclic(&t112, t124, a, b, c).mul(&sa));
                }
                if let Some(t113) = &through3 {
                    row.push(cyclic(t113, &t134, a, b, c).mul(&sb));
                }
                if row.iter().any(|x| !x.vanishes()) {
                    rows.push(row);
                }
            }
        }
    }
    Some((columns, rows))
}

/// Rank of a two-column system, at most 2.
pub(crate) fn rank2<S: Scalar>(rows: &[Row<S>]) -> usize {
    let mut first: Option<&[S; 2]> = None;
    for r in rows {
        match first {
            None => first = Some(&r.coeffs),
            Some(f) => {
                let minor = f[0].mul(&r.coeffs[1]).sub(&f[1].mul(&r.coeffs[0]));
                if !minor.vanishes() {
                    return 2;
                }
            }
        }
    }
    usize::from(first.is_some())
}

pub(crate) fn to_rational(v: &BigInt) -> Rational {
    Rational::from_integer(v.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let a = Fp::new(P - 1);
        assert_eq!(a.add(&Fp(1)), Fp(0));
        assert_eq!(Fp(0).sub(&Fp(1)), a);
        assert_eq!(a.mul(&a), Fp(1));
        assert_eq!(Fp(12345).mul(&Fp(12345).inv()), Fp(1));
        assert_eq!(Fp::from_bigint(&BigInt::from(-1)), a);
    }

    #[test]
    fn prime_table_matches_integer_table() {
        for (n, m, k) in [(3, 4, 2), (6, 6, 3), (8, 5, 5), (12, 20, 7)] {
            let exact = <BigInt as Scalar>::numerator_table(n, m, k);
            let modp = Fp::numerator_table(n, m, k);
            for (e, p) in exact.iter().zip(&modp) {
                assert_eq!(Fp::from_bigint(e), *p);
            }
        }
    }
}
