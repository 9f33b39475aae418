//! Jacobi residuals on chained nilradicals and the tuple checkers.
//!
//! The nilradical `n = m_1 ⊕ … ⊕ m_t` carries the bracket
//! `[u, v] = Σ_k α_ijk (u, v)_(c_ijk)` for `u ∈ m_i`, `v ∈ m_j`, `i ≤ j`, landing in
//! `m_k` with `k ≥ i + j`. A tuple is a chain exactly when some assignment of
//! the `α` with every required slot nonzero makes all Jacobi residuals vanish.
//! Products with `sl2` are equivariant by construction, so only triples inside
//! the nilradical need checking, and by multilinearity only basis monomials.

mod checkers;
mod kernel;
pub mod linear;
mod search;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::chainspec::{
    alpha_skeleton, c_index, layout, step1_admissible, ChainTuple, ModuleLayout, Skeleton,
    SlotIndex, SlotStatus, Violation,
};
use crate::error::{arg_err, Error, Result};
use crate::polyspace::{monomial, HomPoly};
use crate::rational::{self, Rational};
use crate::transvection::transvection;

pub use checkers::{check_chain_t3, check_chain_t4, check_tuple};
pub use linear::{solve_linear_alpha, LinearSystem, SolutionSpace};
pub use search::{search, search_with, SearchOptions};

/// Structure scalars `α_ijk`; absent slots are zero.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AlphaAssignment(BTreeMap<SlotIndex, Rational>);

impl AlphaAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Every required slot of the skeleton set to one, everything else zero.
    pub fn unit_required(skeleton: &Skeleton) -> Self {
        let mut a = Self::new();
        for s in skeleton.required() {
            a.set(s, Rational::one());
        }
        a
    }

    pub fn set(&mut self, slot: SlotIndex, value: Rational) {
        if value.is_zero() {
            self.0.remove(&slot);
        } else {
            self.0.insert(slot, value);
        }
    }

    pub fn with(mut self, slot: SlotIndex, value: Rational) -> Self {
        self.set(slot, value);
        self
    }

    pub fn get(&self, slot: SlotIndex) -> Rational {
        self.0.get(&slot).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero entries in slot order.
    pub fn iter(&self) -> impl Iterator<Item = (SlotIndex, &Rational)> {
        self.0.iter().map(|(s, v)| (*s, v))
    }

    /// Rejects nonzero values on forced-zero or unknown slots and zero values
    /// on required slots.
    pub fn validate(&self, skeleton: &Skeleton) -> Result<()> {
        for (slot, _) in self.iter() {
            match skeleton.get(slot) {
                None => {
                    return Err(Error::Skeleton {
                        slot: slot.to_string(),
                        reason: "no such product slot in this layout".into(),
                    })
                }
                Some(p) => {
                    if let SlotStatus::ForcedZero(reason) = p.status {
                        return Err(Error::Skeleton {
                            slot: slot.to_string(),
                            reason: format!("forced zero ({reason}) but assigned a nonzero value"),
                        });
                    }
                }
            }
        }
        for slot in skeleton.required() {
            if self.get(slot).is_zero() {
                return Err(Error::Skeleton {
                    slot: slot.to_string(),
                    reason: "required slot is zero".into(),
                });
            }
        }
        Ok(())
    }

    /// JSON object `{"112": "1", …}` of the nonzero entries.
    pub fn to_json(&self) -> Value {
        Value::Object(
            self.iter()
                .map(|(s, v)| (s.to_string(), Value::String(rational::format(v))))
                .collect(),
        )
    }
}

impl fmt::Display for AlphaAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(s, v)| format!("α{s}={v}")).collect();
        f.write_str(&parts.join(", "))
    }
}

/// Element of the nilradical, one polynomial per module index.
#[derive(Debug, Clone, Default)]
pub struct GradedElement {
    parts: BTreeMap<usize, HomPoly>,
}

impl GradedElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(module: usize, p: HomPoly) -> Self {
        let mut e = Self::zero();
        if !p.is_zero() {
            e.parts.insert(module, p);
        }
        e
    }

    pub fn component(&self, module: usize) -> Option<&HomPoly> {
        self.parts.get(&module)
    }

    /// Nonzero components in module order.
    pub fn components(&self) -> impl Iterator<Item = (usize, &HomPoly)> {
        self.parts.iter().filter(|(_, p)| !p.is_zero()).map(|(i, p)| (*i, p))
    }

    pub fn is_zero(&self) -> bool {
        self.parts.values().all(HomPoly::is_zero)
    }

    pub fn add_scaled(&mut self, module: usize, c: &Rational, p: &HomPoly) -> Result<()> {
        if c.is_zero() || p.is_zero() {
            return Ok(());
        }
        match self.parts.get_mut(&module) {
            Some(q) => q.add_scaled(c, p)?,
            None => {
                self.parts.insert(module, p.scale(c));
            }
        }
        Ok(())
    }

    pub fn add_element(&mut self, c: &Rational, other: &GradedElement) -> Result<()> {
        for (i, p) in other.components() {
            self.add_scaled(i, c, p)?;
        }
        Ok(())
    }
}

impl PartialEq for GradedElement {
    fn eq(&self, other: &Self) -> bool {
        self.components().eq(other.components())
    }
}

impl fmt::Display for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components().map(|(i, p)| format!("m{i}: {p}")).collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join("; "))
        }
    }
}

impl Serialize for GradedElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: BTreeMap<String, &HomPoly> =
            self.components().map(|(i, p)| (i.to_string(), p)).collect();
        v.serialize(s)
    }
}

fn check_module(layout: &ModuleLayout, module: usize, p: &HomPoly) -> Result<()> {
    if module == 0 || module > layout.t() {
        return arg_err(format!("module index {module} outside 1..={}", layout.t()));
    }
    if p.degree() != layout.degree(module) {
        return Err(Error::DegreeMismatch {
            expected: layout.degree(module),
            found: p.degree(),
        });
    }
    Ok(())
}

/// `[u, v]` for `u ∈ m_i`, `v ∈ m_j` with `i ≤ j`.
pub fn nil_bracket(
    layout: &ModuleLayout,
    alphas: &AlphaAssignment,
    u: &HomPoly,
    i: usize,
    v: &HomPoly,
    j: usize,
) -> Result<GradedElement> {
    check_module(layout, i, u)?;
    check_module(layout, j, v)?;
    if i > j {
        return arg_err(format!("nil_bracket expects i ≤ j, got ({i}, {j})"));
    }
    let mut out = GradedElement::zero();
    for k in (i + j)..=layout.t() {
        let slot = SlotIndex::new(i, j, k);
        let a = alphas.get(slot);
        if a.is_zero() {
            continue;
        }
        let Some(c) = c_index(layout, i, j, k)? else {
            return Err(Error::Skeleton {
                slot: slot.to_string(),
                reason: "no admissible transvection order".into(),
            });
        };
        if i == j && c % 2 == 0 {
            return Err(Error::Skeleton {
                slot: slot.to_string(),
                reason: "even transvection on equal modules is not skew".into(),
            });
        }
        out.add_scaled(k, &a, &transvection(u, v, c)?)?;
    }
    Ok(out)
}

/// Bilinear extension of [`nil_bracket`] to arbitrary graded elements, using
/// `[v, u] = -[u, v]` when the left index is larger.
pub fn graded_bracket(
    layout: &ModuleLayout,
    alphas: &AlphaAssignment,
    x: &GradedElement,
    y: &GradedElement,
) -> Result<GradedElement> {
    let mut out = GradedElement::zero();
    for (i, u) in x.components() {
        for (j, v) in y.components() {
            if i <= j {
                out.add_element(&Rational::one(), &nil_bracket(layout, alphas, u, i, v, j)?)?;
            } else {
                out.add_element(&-Rational::one(), &nil_bracket(layout, alphas, v, j, u, i)?)?;
            }
        }
    }
    Ok(out)
}

/// `[u,[v,w]] + [v,[w,u]] + [w,[u,v]]` for `u ∈ m_i`, `v ∈ m_j`, `w ∈ m_k`.
pub fn jacobi_residual(
    layout: &ModuleLayout,
    alphas: &AlphaAssignment,
    (u, i): (&HomPoly, usize),
    (v, j): (&HomPoly, usize),
    (w, k): (&HomPoly, usize),
) -> Result<GradedElement> {
    check_module(layout, i, u)?;
    check_module(layout, j, v)?;
    check_module(layout, k, w)?;
    if i + j + k > layout.t() {
        return Ok(GradedElement::zero());
    }
    let x = GradedElement::single(i, u.clone());
    let y = GradedElement::single(j, v.clone());
    let z = GradedElement::single(k, w.clone());
    let mut out = graded_bracket(layout, alphas, &x, &graded_bracket(layout, alphas, &y, &z)?)?;
    out.add_element(&Rational::one(), &graded_bracket(layout, alphas, &y, &graded_bracket(layout, alphas, &z, &x)?)?)?;
    out.add_element(&Rational::one(), &graded_bracket(layout, alphas, &z, &graded_bracket(layout, alphas, &x, &y)?)?)?;
    Ok(out)
}

/// Basis monomial `x^(d-a) y^a` of module `m_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct BasisMonomial {
    pub module: usize,
    /// Exponent `a` of `y`.
    pub exponent: usize,
}

impl BasisMonomial {
    pub fn poly(&self, layout: &ModuleLayout) -> Result<HomPoly> {
        if self.module == 0 || self.module > layout.t() {
            return arg_err(format!("module index {} outside 1..={}", self.module, layout.t()));
        }
        monomial(layout.degree(self.module), self.exponent)
    }
}

impl fmt::Display for BasisMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m{}[y^{}]", self.module, self.exponent)
    }
}

/// Monomial triple with a nonzero Jacobi residual under a specific assignment.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub alphas: AlphaAssignment,
    pub triple: [BasisMonomial; 3],
    pub residual: GradedElement,
}

impl Witness {
    /// Evaluates the residual of the stored triple from scratch.
    pub fn recompute(&self, layout: &ModuleLayout) -> Result<GradedElement> {
        let [a, b, c] = self.triple;
        jacobi_residual(
            layout,
            &self.alphas,
            (&a.poly(layout)?, a.module),
            (&b.poly(layout)?, b.module),
            (&c.poly(layout)?, c.module),
        )
    }

    /// Builds a witness, returning `None` if the residual actually vanishes.
    pub(crate) fn evaluate(
        layout: &ModuleLayout,
        alphas: AlphaAssignment,
        triple: [BasisMonomial; 3],
    ) -> Result<Option<Witness>> {
        let mut w = Witness {
            alphas,
            triple,
            residual: GradedElement::zero(),
        };
        w.residual = w.recompute(layout)?;
        Ok((!w.residual.is_zero()).then_some(w))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "alphas": self.alphas.to_json(),
            "triple": self.triple,
            "residual": self.residual,
        })
    }
}

/// A product relation `Π numerator = value · Π denominator`. When the
/// denominator product is nonzero this pins `value` as the ratio.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioConstraint {
    /// The slot the relation determines once the others are chosen.
    pub slot: SlotIndex,
    pub value: Rational,
    pub numerator: [SlotIndex; 2],
    pub denominator: [SlotIndex; 2],
}

impl RatioConstraint {
    pub fn holds(&self, alphas: &AlphaAssignment) -> bool {
        let prod = |s: &[SlotIndex; 2]| alphas.get(s[0]) * alphas.get(s[1]);
        prod(&self.numerator) == &self.value * prod(&self.denominator)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "slot": self.slot.to_string(),
            "value": rational::format(&self.value),
            "numerator": self.numerator.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "denominator": self.denominator.iter().map(ToString::to_string).collect::<Vec<_>>(),
        })
    }
}

/// What a valid verdict says about the structure scalars.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AlphaConstraintSet {
    /// Slots that must vanish, by the skeleton or by the Jacobi identity.
    pub zeros: BTreeSet<SlotIndex>,
    /// Slots the Jacobi identity leaves unconstrained.
    pub free: BTreeSet<SlotIndex>,
    pub required_nonzero: BTreeSet<SlotIndex>,
    pub ratios: Vec<RatioConstraint>,
}

impl AlphaConstraintSet {
    pub fn satisfied_by(&self, alphas: &AlphaAssignment) -> bool {
        self.zeros.iter().all(|s| alphas.get(*s).is_zero())
            && self.required_nonzero.iter().all(|s| !alphas.get(*s).is_zero())
            && self.ratios.iter().all(|r| r.holds(alphas))
    }

    /// Completes an assignment from chosen required and free values, solving
    /// each ratio for its slot. `None` when a ratio cannot be solved (its
    /// other numerator slot is zero).
    pub fn instantiate(
        &self,
        mut pick: impl FnMut(SlotIndex, bool) -> Rational,
    ) -> Option<AlphaAssignment> {
        let mut a = AlphaAssignment::new();
        for s in &self.required_nonzero {
            a.set(*s, pick(*s, true));
        }
        for s in &self.free {
            a.set(*s, pick(*s, false));
        }
        for r in &self.ratios {
            let other = if r.numerator[0] == r.slot { r.numerator[1] } else { r.numerator[0] };
            let den = a.get(other);
            if den.is_zero() {
                return None;
            }
            let v = &r.value * a.get(r.denominator[0]) * a.get(r.denominator[1]) / den;
            a.set(r.slot, v);
        }
        Some(a)
    }

    /// Required slots at one, free slots at zero, ratio slots solved.
    pub fn representative(&self) -> AlphaAssignment {
        self.instantiate(|_, required| if required { Rational::one() } else { Rational::zero() })
            .expect("ratio slots are solved against required slots")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Valid {
        constraints: AlphaConstraintSet,
        /// The assignment the verdict was established with.
        alphas: AlphaAssignment,
    },
    Inadmissible(Vec<Violation>),
    JacobiFailure(Witness),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainVerdict {
    pub tuple: ChainTuple,
    pub layout: Option<ModuleLayout>,
    pub outcome: Outcome,
}

impl ChainVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self.outcome, Outcome::Valid { .. })
    }

    pub fn constraints(&self) -> Option<&AlphaConstraintSet> {
        match &self.outcome {
            Outcome::Valid { constraints, .. } => Some(constraints),
            _ => None,
        }
    }

    pub fn alphas(&self) -> Option<&AlphaAssignment> {
        match &self.outcome {
            Outcome::Valid { alphas, .. } => Some(alphas),
            Outcome::JacobiFailure(w) => Some(&w.alphas),
            Outcome::Inadmissible(_) => None,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.outcome {
            Outcome::JacobiFailure(w) => Some(w),
            _ => None,
        }
    }

    pub fn violations(&self) -> &[Violation] {
        match &self.outcome {
            Outcome::Inadmissible(v) => v,
            _ => &[],
        }
    }

    /// For valid four-module chains, the normalized ratio
    /// `α_224 α_112 / (α_123 α_134)`; zero when slot 224 is forced zero.
    pub fn alpha_ratio(&self) -> Option<Rational> {
        let c = self.constraints()?;
        let slot = SlotIndex::new(2, 2, 4);
        if let Some(r) = c.ratios.iter().find(|r| r.slot == slot) {
            return Some(r.value.clone());
        }
        (self.tuple.len() == 4 && c.zeros.contains(&slot)).then(Rational::zero)
    }

    pub fn to_json(&self) -> Value {
        let modules: Vec<Value> = self
            .layout
            .iter()
            .flat_map(|l| l.degrees().iter().map(|d| json!({"degree": d, "dim": d + 1})))
            .collect();
        let set = |s: Option<&BTreeSet<SlotIndex>>| -> Vec<String> {
            s.into_iter().flatten().map(ToString::to_string).collect()
        };
        let forced: Vec<String> = match &self.layout {
            Some(l) => alpha_skeleton(l)
                .iter()
                .filter(|s| s.is_forced_zero())
                .map(|s| s.index.to_string())
                .collect(),
            None => Vec::new(),
        };
        let c = self.constraints();
        json!({
            "tuple": self.tuple.entries(),
            "valid": self.is_valid(),
            "modules": modules,
            "alphas": self.alphas().map_or(Value::Null, AlphaAssignment::to_json),
            "forced_zero": forced,
            "zero": set(c.map(|c| &c.zeros)),
            "free": set(c.map(|c| &c.free)),
            "ratios": c.map_or(Vec::new(), |c| c.ratios.iter().map(RatioConstraint::to_json).collect()),
            "violations": self.violations().iter().map(ToString::to_string).collect::<Vec<_>>(),
            "witness": self.witness().map_or(Value::Null, Witness::to_json),
            "alpha_ratio": self.alpha_ratio().map_or(Value::Null, |r| Value::String(rational::format(&r))),
        })
    }
}

pub(crate) fn inadmissible(tuple: &ChainTuple) -> Option<ChainVerdict> {
    let adm = step1_admissible(tuple);
    if adm.is_admissible() {
        return None;
    }
    Some(ChainVerdict {
        tuple: tuple.clone(),
        layout: layout(tuple).ok(),
        outcome: Outcome::Inadmissible(adm.violations),
    })
}

/// All monomial triples `(i ≤ j ≤ k, i + j + k ≤ t)` in a fixed order, with
/// exponents nondecreasing inside equal modules.
pub fn monomial_triples(layout: &ModuleLayout) -> Vec<[BasisMonomial; 3]> {
    let t = layout.t();
    let mut out = Vec::new();
    for i in 1..=t {
        for j in i..=t {
            for k in j..=t {
                if i + j + k > t {
                    continue;
                }
                for a in 0..=layout.degree(i) {
                    let b0 = if j == i { a } else { 0 };
                    for b in b0..=layout.degree(j) {
                        let c0 = if k == j { b } else { 0 };
                        for c in c0..=layout.degree(k) {
                            out.push([
                                BasisMonomial { module: i, exponent: a },
                                BasisMonomial { module: j, exponent: b },
                                BasisMonomial { module: k, exponent: c },
                            ]);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Checks a tuple under one explicit assignment by evaluating every monomial
/// Jacobi residual on polynomials. Works for any `t`; slow but independent of
/// the table kernels.
pub fn check_chain_general(tuple: &ChainTuple, alphas: &AlphaAssignment) -> Result<ChainVerdict> {
    if let Some(v) = inadmissible(tuple) {
        return Ok(v);
    }
    let layout = layout(tuple)?;
    let skeleton = alpha_skeleton(&layout);
    alphas.validate(&skeleton)?;
    for triple in monomial_triples(&layout) {
        if let Some(w) = Witness::evaluate(&layout, alphas.clone(), triple)? {
            return Ok(ChainVerdict {
                tuple: tuple.clone(),
                layout: Some(layout),
                outcome: Outcome::JacobiFailure(w),
            });
        }
    }
    let mut constraints = AlphaConstraintSet::default();
    for s in skeleton.iter() {
        match s.status {
            SlotStatus::ForcedZero(_) => {
                constraints.zeros.insert(s.index);
            }
            SlotStatus::Required => {
                constraints.required_nonzero.insert(s.index);
            }
            SlotStatus::Candidate => {}
        }
    }
    Ok(ChainVerdict {
        tuple: tuple.clone(),
        layout: Some(layout),
        outcome: Outcome::Valid {
            constraints,
            alphas: alphas.clone(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn tuple(t: &[i64]) -> ChainTuple {
        ChainTuple::new(t.to_vec()).unwrap()
    }

    #[test]
    fn counterexample_residual() {
        // (4, 1, 2): J(x^4, y x^3, y^2 x^2) = 1/10 · x^6 in m3
        let t = tuple(&[4, 1, 2]);
        let l = layout(&t).unwrap();
        let a = AlphaAssignment::unit_required(&alpha_skeleton(&l));
        let r = jacobi_residual(
            &l,
            &a,
            (&monomial(4, 0).unwrap(), 1),
            (&monomial(4, 1).unwrap(), 1),
            (&monomial(4, 2).unwrap(), 1),
        )
        .unwrap();
        let expect = monomial(6, 0).unwrap().scale(&frac(1, 10));
        assert_eq!(r, GradedElement::single(3, expect));
    }

    #[test]
    fn bracket_rejects_bad_input() {
        let l = layout(&tuple(&[2, 1, 1])).unwrap();
        let a = AlphaAssignment::unit_required(&alpha_skeleton(&l));
        let p = monomial(2, 0).unwrap();
        assert!(nil_bracket(&l, &a, &p, 2, &p, 1).is_err());
        assert!(matches!(
            nil_bracket(&l, &a, &monomial(3, 0).unwrap(), 1, &p, 1),
            Err(Error::DegreeMismatch { .. })
        ));
        let bad = a.clone().with(SlotIndex::new(1, 1, 3), int(1));
        // c_113 = (2+2-2)/2 = 1 is admissible, so this is allowed
        assert!(nil_bracket(&l, &bad, &p, 1, &p, 1).is_ok());
    }

    #[test]
    fn validation() {
        let l = layout(&tuple(&[4, 1, 0])).unwrap();
        let sk = alpha_skeleton(&l);
        let unit = AlphaAssignment::unit_required(&sk);
        assert!(unit.validate(&sk).is_ok());
        let missing = unit.clone().with(SlotIndex::new(1, 1, 2), int(0));
        assert!(matches!(missing.validate(&sk), Err(Error::Skeleton { .. })));
        // c_113 = (4 + 4 - 10)/2 < 0
        let forced = unit.with(SlotIndex::new(1, 1, 3), int(3));
        assert!(matches!(forced.validate(&sk), Err(Error::Skeleton { .. })));
    }

    #[test]
    fn general_checker_small_cases() {
        let t = tuple(&[2, 1, 0]);
        let l = layout(&t).unwrap();
        let a = AlphaAssignment::unit_required(&alpha_skeleton(&l));
        assert!(check_chain_general(&t, &a).unwrap().is_valid());

        let t = tuple(&[3, 1, 2]);
        let l = layout(&t).unwrap();
        let a = AlphaAssignment::unit_required(&alpha_skeleton(&l));
        let v = check_chain_general(&t, &a).unwrap();
        let w = v.witness().expect("not a chain");
        assert_eq!(w.recompute(&l).unwrap(), w.residual);

        let v = check_chain_general(&tuple(&[3, 2, 0]), &AlphaAssignment::new()).unwrap();
        assert!(matches!(v.outcome, Outcome::Inadmissible(_)));
    }

    #[test]
    fn triple_enumeration() {
        let l = layout(&tuple(&[1, 1, 0])).unwrap();
        // m1 = V_1, m2 = V_0, m3 = V_0: only (1,1,1) with a ≤ b ≤ c
        assert_eq!(monomial_triples(&l).len(), 4);
    }
}
