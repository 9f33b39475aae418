//! Explicit structure constants for `sl2 ⊕ m_1 ⊕ … ⊕ m_t`.
//!
//! The basis is `e, h, f` followed by the monomials of each module in index
//! order, each module by ascending `y`-exponent; the label of
//! `x^(d-a) y^a ∈ m_i` is `m<i>_<a>`. Constants are stored for index pairs
//! `p < q` only, so antisymmetry holds by construction.

mod export;
mod series;

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::SeedableRng;
use rayon::prelude::*;

use crate::chainspec::{alpha_skeleton, layout, step1_admissible, ChainTuple, ModuleLayout};
use crate::error::{Error, Result};
use crate::jacobi::{nil_bracket, AlphaAssignment};
use crate::polyspace::{act, monomial, HomPoly, Sl2Generator};
use crate::rational::{self, Rational};

pub use export::{export_dot, export_json, import_json};
pub use series::{lower_central_series, SeriesReport};

/// Sparse vector: `(basis index, coefficient)` with increasing indices and no
/// zero coefficients.
pub type Sparse = Vec<(usize, Rational)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisVector {
    pub label: String,
    /// 0 for `sl2`, `i` for `m_i`.
    pub level: usize,
    /// `y`-exponent for module vectors.
    pub exponent: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainAlgebra {
    tuple: ChainTuple,
    layout: ModuleLayout,
    alphas: AlphaAssignment,
    basis: Vec<BasisVector>,
    /// Index of the first basis vector of `m_i` at position `i`; position 0 is `sl2`.
    offsets: Vec<usize>,
    constants: BTreeMap<(usize, usize), Sparse>,
}

const E: usize = 0;
const H: usize = 1;
const F: usize = 2;

fn basis_for(layout: &ModuleLayout) -> (Vec<BasisVector>, Vec<usize>) {
    let mut basis: Vec<BasisVector> = ["e", "h", "f"]
        .iter()
        .map(|l| BasisVector {
            label: l.to_string(),
            level: 0,
            exponent: None,
        })
        .collect();
    let mut offsets = vec![0];
    for i in 1..=layout.t() {
        offsets.push(basis.len());
        for a in 0..=layout.degree(i) {
            basis.push(BasisVector {
                label: format!("m{i}_{a}"),
                level: i,
                exponent: Some(a),
            });
        }
    }
    (basis, offsets)
}

fn to_sparse(offset: usize, p: &HomPoly) -> Sparse {
    p.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(a, c)| (offset + a, c.clone()))
        .collect()
}

fn add_into(acc: &mut BTreeMap<usize, Rational>, c: &Rational, v: &[(usize, Rational)]) {
    for (i, x) in v {
        let e = acc.entry(*i).or_insert_with(Rational::zero);
        *e += c * x;
        if e.is_zero() {
            acc.remove(i);
        }
    }
}

impl ChainAlgebra {
    /// Builds the algebra after checking the tuple and the assignment against
    /// the product skeleton.
    pub fn build(tuple: &ChainTuple, alphas: &AlphaAssignment) -> Result<Self> {
        let adm = step1_admissible(tuple);
        if !adm.is_admissible() {
            let msgs: Vec<String> = adm.violations.iter().map(ToString::to_string).collect();
            return Err(Error::Inadmissible(msgs.join("; ")));
        }
        let layout = layout(tuple)?;
        alphas.validate(&alpha_skeleton(&layout))?;
        Self::assemble(tuple, layout, alphas)
    }

    fn assemble(tuple: &ChainTuple, layout: ModuleLayout, alphas: &AlphaAssignment) -> Result<Self> {
        let (basis, offsets) = basis_for(&layout);
        let n = basis.len();
        let mut alg = ChainAlgebra {
            tuple: tuple.clone(),
            layout,
            alphas: alphas.clone(),
            basis,
            offsets,
            constants: BTreeMap::new(),
        };
        let rows: Vec<Vec<((usize, usize), Sparse)>> = (0..n)
            .into_par_iter()
            .map(|p| {
                ((p + 1)..n)
                    .map(|q| Ok(((p, q), alg.evaluate_pair(p, q)?)))
                    .filter(|r: &Result<((usize, usize), Sparse)>| r.as_ref().map_or(true, |(_, v)| !v.is_empty()))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        alg.constants = rows.into_iter().flatten().collect();
        alg.check_grading()?;
        Ok(alg)
    }

    /// Assembles an algebra from stored constants without recomputing them.
    pub(crate) fn from_parts(
        tuple: ChainTuple,
        alphas: AlphaAssignment,
        constants: BTreeMap<(usize, usize), Sparse>,
    ) -> Result<Self> {
        let layout = layout(&tuple)?;
        let (basis, offsets) = basis_for(&layout);
        for ((p, q), v) in &constants {
            if p >= q || *q >= basis.len() || v.iter().any(|(i, _)| *i >= basis.len()) {
                return Err(Error::Structural(format!("bad structure constant entry ({p}, {q})")));
            }
        }
        Ok(ChainAlgebra {
            tuple,
            layout,
            alphas,
            basis,
            offsets,
            constants,
        })
    }

    fn module_of(&self, p: usize) -> Option<(usize, usize)> {
        let b = &self.basis[p];
        b.exponent.map(|a| (b.level, a))
    }

    /// `[b_p, b_q]` from the defining clauses, for `p < q`.
    fn evaluate_pair(&self, p: usize, q: usize) -> Result<Sparse> {
        let unit = |i: usize, c: i64| vec![(i, rational::int(c))];
        match (self.module_of(p), self.module_of(q)) {
            (None, None) => Ok(match (p, q) {
                (E, H) => unit(E, -2),
                (E, F) => unit(H, 1),
                (H, F) => unit(F, -2),
                _ => unreachable!("p < q within sl2"),
            }),
            (None, Some((i, a))) => {
                let g = match p {
                    E => Sl2Generator::E,
                    H => Sl2Generator::H,
                    _ => Sl2Generator::F,
                };
                let u = monomial(self.layout.degree(i), a)?;
                Ok(to_sparse(self.offsets[i], &act(g, &u)))
            }
            (Some((i, a)), Some((j, b))) => {
                let u = monomial(self.layout.degree(i), a)?;
                let v = monomial(self.layout.degree(j), b)?;
                let r = nil_bracket(&self.layout, &self.alphas, &u, i, &v, j)?;
                let mut out = Sparse::new();
                for (k, poly) in r.components() {
                    out.extend(to_sparse(self.offsets[k], poly));
                }
                Ok(out)
            }
            (Some(_), None) => unreachable!("sl2 comes first in the basis"),
        }
    }

    fn check_grading(&self) -> Result<()> {
        for ((p, q), v) in &self.constants {
            let (a, b) = (self.basis[*p].level, self.basis[*q].level);
            for (r, _) in v {
                let c = self.basis[*r].level;
                let ok = if a == 0 || b == 0 { c == a.max(b) } else { c >= a + b };
                if !ok {
                    return Err(Error::Structural(format!(
                        "[{}, {}] has a component at level {c}",
                        self.basis[*p].label, self.basis[*q].label
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn tuple(&self) -> &ChainTuple {
        &self.tuple
    }

    pub fn layout(&self) -> &ModuleLayout {
        &self.layout
    }

    pub fn alphas(&self) -> &AlphaAssignment {
        &self.alphas
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisVector] {
        &self.basis
    }

    /// Stored constants `[b_p, b_q]` for `p < q`, nonzero entries only.
    pub fn constants(&self) -> &BTreeMap<(usize, usize), Sparse> {
        &self.constants
    }

    /// Basis index of `x^(d-a) y^a ∈ m_i`.
    pub fn index_of(&self, module: usize, exponent: usize) -> Option<usize> {
        if module == 0 || module > self.layout.t() || exponent > self.layout.degree(module) {
            return None;
        }
        Some(self.offsets[module] + exponent)
    }

    /// The dense coordinate vector of `p ∈ m_i`.
    pub fn embed(&self, module: usize, p: &HomPoly) -> Result<Vec<Rational>> {
        let start = self
            .index_of(module, 0)
            .ok_or_else(|| Error::Argument(format!("no module m{module}")))?;
        if p.degree() != self.layout.degree(module) {
            return Err(Error::DegreeMismatch {
                expected: self.layout.degree(module),
                found: p.degree(),
            });
        }
        let mut v = vec![Rational::zero(); self.dimension()];
        for (a, c) in p.coeffs().iter().enumerate() {
            v[start + a] = c.clone();
        }
        Ok(v)
    }

    pub fn basis_vector(&self, p: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dimension()];
        v[p] = Rational::one();
        v
    }

    /// `[b_p, b_q]` for any pair, derived from the stored half.
    pub fn bracket_basis(&self, p: usize, q: usize) -> Sparse {
        match p.cmp(&q) {
            std::cmp::Ordering::Equal => Sparse::new(),
            std::cmp::Ordering::Less => self.constants.get(&(p, q)).cloned().unwrap_or_default(),
            std::cmp::Ordering::Greater => self
                .constants
                .get(&(q, p))
                .map(|v| v.iter().map(|(i, c)| (*i, -c.clone())).collect())
                .unwrap_or_default(),
        }
    }

    fn bracket_sparse(&self, x: &[(usize, Rational)], y: &[(usize, Rational)]) -> Sparse {
        let mut acc = BTreeMap::new();
        for (p, a) in x {
            for (q, b) in y {
                if p == q {
                    continue;
                }
                let (lo, hi, sign) = if p < q { (*p, *q, a * b) } else { (*q, *p, -(a * b)) };
                if let Some(v) = self.constants.get(&(lo, hi)) {
                    add_into(&mut acc, &sign, v);
                }
            }
        }
        acc.into_iter().collect()
    }

    /// Bilinear bracket of two dense coordinate vectors.
    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>> {
        let n = self.dimension();
        if x.len() != n || y.len() != n {
            return Err(Error::Argument(format!(
                "elements must have {n} coordinates (got {} and {})",
                x.len(),
                y.len()
            )));
        }
        let sparse = |v: &[Rational]| -> Sparse {
            v.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect()
        };
        let mut out = vec![Rational::zero(); n];
        for (i, c) in self.bracket_sparse(&sparse(x), &sparse(y)) {
            out[i] = c;
        }
        Ok(out)
    }

    /// `[[b_p, b_q], b_r] + [[b_r, b_p], b_q] + [[b_q, b_r], b_p]`.
    pub fn jacobi_basis(&self, p: usize, q: usize, r: usize) -> Sparse {
        let one = Rational::one();
        let mut acc = BTreeMap::new();
        for (a, b, c) in [(p, q, r), (r, p, q), (q, r, p)] {
            let ab = self.bracket_basis(a, b);
            add_into(&mut acc, &one, &self.bracket_sparse(&ab, &[(c, one.clone())]));
        }
        acc.into_iter().collect()
    }

    /// Checks the Jacobi identity on every basis triple `p < q < r` and audits
    /// antisymmetry on random elements.
    pub fn verify(&self) -> VerifyReport {
        let n = self.dimension();
        let per_p: Vec<(usize, Vec<FailingTriple>)> = (0..n)
            .into_par_iter()
            .map(|p| {
                let mut count = 0;
                let mut fails = Vec::new();
                for q in (p + 1)..n {
                    for r in (q + 1)..n {
                        count += 1;
                        let res = self.jacobi_basis(p, q, r);
                        if !res.is_empty() {
                            fails.push(FailingTriple {
                                basis: [p, q, r],
                                labels: [p, q, r].map(|i| self.basis[i].label.clone()),
                                residual: res,
                            });
                        }
                    }
                }
                (count, fails)
            })
            .collect();
        let triples_checked = per_p.iter().map(|(c, _)| c).sum();
        let failing_triples: Vec<FailingTriple> = per_p.into_iter().flat_map(|(_, f)| f).collect();
        VerifyReport {
            antisymmetry_ok: self.antisymmetry_audit(100),
            jacobi_ok: failing_triples.is_empty(),
            triples_checked,
            failing_triples,
        }
    }

    /// `[x, y] = -[y, x]` and `[x, x] = 0` on `samples` seeded random pairs.
    pub fn antisymmetry_audit(&self, samples: usize) -> bool {
        let mut rng = StdRng::seed_from_u64(0x5eed);
        let n = self.dimension();
        (0..samples).all(|_| {
            let x: Vec<Rational> = (0..n).map(|_| rational::random(&mut rng)).collect();
            let y: Vec<Rational> = (0..n).map(|_| rational::random(&mut rng)).collect();
            let xy = self.bracket(&x, &y).expect("dimensions match");
            let yx = self.bracket(&y, &x).expect("dimensions match");
            let xx = self.bracket(&x, &x).expect("dimensions match");
            xy.iter().zip(&yx).all(|(a, b)| (a + b).is_zero()) && xx.iter().all(Zero::is_zero)
        })
    }

    /// `Σ_(s ≥ k) dim m_s`.
    pub fn predicted_power_dim(&self, k: usize) -> usize {
        (k..=self.layout.t()).map(|s| self.layout.dim(s)).sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FailingTriple {
    pub basis: [usize; 3],
    pub labels: [String; 3],
    pub residual: Sparse,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub antisymmetry_ok: bool,
    pub jacobi_ok: bool,
    pub triples_checked: usize,
    /// In basis order.
    pub failing_triples: Vec<FailingTriple>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.antisymmetry_ok && self.jacobi_ok
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn unit(t: &[i64]) -> ChainAlgebra {
        let tuple = ChainTuple::new(t.to_vec()).unwrap();
        let l = layout(&tuple).unwrap();
        let a = AlphaAssignment::unit_required(&alpha_skeleton(&l));
        ChainAlgebra::build(&tuple, &a).unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!(unit(&[1, 1, 0]).dimension(), 8);
        assert_eq!(unit(&[2, 1, 1]).dimension(), 12);
    }

    #[test]
    fn sl2_relations() {
        let g = unit(&[1, 1, 0]);
        assert_eq!(g.bracket_basis(E, F), vec![(H, int(1))]);
        assert_eq!(g.bracket_basis(H, E), vec![(E, int(2))]);
        assert_eq!(g.bracket_basis(H, F), vec![(F, int(-2))]);
        // [h, x^d] = d x^d
        let top = g.index_of(1, 0).unwrap();
        assert_eq!(g.bracket_basis(H, top), vec![(top, int(1))]);
        // m_t is central in the nilradical
        let a = g.index_of(3, 0).unwrap();
        let b = g.index_of(3, 1).unwrap();
        assert!(g.bracket_basis(a, b).is_empty());
    }

    #[test]
    fn valid_algebra_verifies() {
        let r = unit(&[2, 1, 1]).verify();
        assert!(r.ok(), "{:?}", r.failing_triples.first());
        assert_eq!(r.triples_checked, 12 * 11 * 10 / 6);
    }

    #[test]
    fn counterexample_fails() {
        let g = unit(&[4, 1, 2]);
        let r = g.verify();
        assert!(!r.jacobi_ok);
        let x4 = g.index_of(1, 0).unwrap();
        let yx3 = g.index_of(1, 1).unwrap();
        let y2x2 = g.index_of(1, 2).unwrap();
        assert!(r.failing_triples.iter().any(|f| f.basis == [x4, yx3, y2x2]));
    }

    #[test]
    fn rejects_bad_input() {
        let tuple = ChainTuple::from([3, 2, 1]);
        assert!(matches!(
            ChainAlgebra::build(&tuple, &AlphaAssignment::new()),
            Err(Error::Inadmissible(_))
        ));
        let tuple = ChainTuple::from([2, 1, 1]);
        assert!(matches!(
            ChainAlgebra::build(&tuple, &AlphaAssignment::new()),
            Err(Error::Skeleton { .. })
        ));
        let g = unit(&[2, 1, 1]);
        assert!(g.bracket(&[int(1)], &[int(1)]).is_err());
    }
}
