//! Tuple checkers for three and four modules.
//!
//! Both run the table kernels modulo a prime first and confirm over the
//! integers, so every verdict is exact. Failing triples are re-evaluated on
//! polynomials to produce the witness.

use num_bigint::BigInt;
use num_traits::Zero;

use super::kernel::{mixed_rows, rank2, to_rational, top_rows, Fp, Row, Scalar, T3};
use super::linear::{solve_linear_alpha, LinearSystem};
use super::{
    check_chain_general, inadmissible, AlphaAssignment, AlphaConstraintSet, BasisMonomial,
    ChainVerdict, Outcome, RatioConstraint, Witness,
};
use crate::chainspec::{alpha_skeleton, layout, ChainTuple, ModuleLayout, Skeleton, SlotIndex, SlotStatus};
use crate::error::{arg_err, Error, Result};
use crate::rational::Rational;

const S112: SlotIndex = SlotIndex::new(1, 1, 2);
const S113: SlotIndex = SlotIndex::new(1, 1, 3);
const S123: SlotIndex = SlotIndex::new(1, 2, 3);
const S124: SlotIndex = SlotIndex::new(1, 2, 4);
const S134: SlotIndex = SlotIndex::new(1, 3, 4);
const S224: SlotIndex = SlotIndex::new(2, 2, 4);

fn kernel_mismatch(tuple: &ChainTuple) -> Error {
    Error::Structural(format!(
        "table kernel and polynomial evaluation disagree on {tuple}"
    ))
}

fn m1_triple(t: [usize; 3]) -> [BasisMonomial; 3] {
    t.map(|e| BasisMonomial { module: 1, exponent: e })
}

/// Failing `m_1` triple of the three-module prefix under unit products.
fn t3_failure(layout: &ModuleLayout, skeleton: &Skeleton, exact: bool) -> Result<Option<[usize; 3]>> {
    let missing = || Error::Structural("required products 112/123 have no admissible order".into());
    let fast = T3::<Fp>::new(layout, skeleton).ok_or_else(missing)?;
    if let Some(t) = fast.first_failure() {
        return Ok(Some(t));
    }
    if !exact {
        return Ok(None);
    }
    Ok(T3::<BigInt>::new(layout, skeleton).ok_or_else(missing)?.first_failure())
}

/// Skeleton-derived defaults: forced zeros, required slots, and everything
/// else free.
fn base_constraints(skeleton: &Skeleton) -> AlphaConstraintSet {
    let mut c = AlphaConstraintSet::default();
    for s in skeleton.iter() {
        match s.status {
            SlotStatus::ForcedZero(_) => {
                c.zeros.insert(s.index);
            }
            SlotStatus::Required => {
                c.required_nonzero.insert(s.index);
            }
            SlotStatus::Candidate => {
                c.free.insert(s.index);
            }
        }
    }
    c
}

fn valid(tuple: &ChainTuple, layout: ModuleLayout, constraints: AlphaConstraintSet) -> ChainVerdict {
    let alphas = constraints.representative();
    ChainVerdict {
        tuple: tuple.clone(),
        layout: Some(layout),
        outcome: Outcome::Valid { constraints, alphas },
    }
}

fn failure(tuple: &ChainTuple, layout: &ModuleLayout, alphas: AlphaAssignment, triple: [BasisMonomial; 3]) -> Result<ChainVerdict> {
    let w = Witness::evaluate(layout, alphas, triple)?.ok_or_else(|| kernel_mismatch(tuple))?;
    Ok(ChainVerdict {
        tuple: tuple.clone(),
        layout: Some(layout.clone()),
        outcome: Outcome::JacobiFailure(w),
    })
}

/// Decides a three-module tuple. Only `α_112 α_123` enters the Jacobi
/// identity, so a valid tuple is valid for every nonzero choice.
pub fn check_chain_t3(tuple: &ChainTuple) -> Result<ChainVerdict> {
    if tuple.len() != 3 {
        return arg_err(format!("check_chain_t3 needs a 3-tuple, got {tuple}"));
    }
    if let Some(v) = inadmissible(tuple) {
        return Ok(v);
    }
    let layout = layout(tuple)?;
    let skeleton = alpha_skeleton(&layout);
    if let Some(t) = t3_failure(&layout, &skeleton, true)? {
        let alphas = AlphaAssignment::unit_required(&skeleton);
        return failure(tuple, &layout, alphas, m1_triple(t));
    }
    Ok(valid(tuple, layout, base_constraints(&skeleton)))
}

/// Decides a four-module tuple and solves for the products that the Jacobi
/// identity ties together.
pub fn check_chain_t4(tuple: &ChainTuple) -> Result<ChainVerdict> {
    if tuple.len() != 4 {
        return arg_err(format!("check_chain_t4 needs a 4-tuple, got {tuple}"));
    }
    if let Some(v) = inadmissible(tuple) {
        return Ok(v);
    }
    let layout4 = layout(tuple)?;
    let skeleton = alpha_skeleton(&layout4);
    let unit = AlphaAssignment::unit_required(&skeleton);

    let layout3 = layout(&tuple.prefix(3))?;
    if let Some(t) = t3_failure(&layout3, &alpha_skeleton(&layout3), true)? {
        return failure(tuple, &layout4, unit, m1_triple(t));
    }

    let mut constraints = base_constraints(&skeleton);

    // m1 × m1 × m2 into m4: s·E1 + q·E2 = 0 with s = α123 α134, q = α112 α224.
    let rows: Vec<Row<BigInt>> = mixed_rows(&layout4, &skeleton)
        .ok_or_else(|| Error::Structural("required products have no admissible order".into()))?;
    let mixed_triple = |r: &Row<BigInt>| {
        let [a, b, c] = r.exponents;
        [
            BasisMonomial { module: 1, exponent: a },
            BasisMonomial { module: 1, exponent: b },
            BasisMonomial { module: 2, exponent: c },
        ]
    };
    let slot224_live = skeleton.get(S224).is_some_and(|s| !s.is_forced_zero());
    if !slot224_live {
        if let Some(r) = rows.iter().find(|r| !r.coeffs[0].is_zero()) {
            return failure(tuple, &layout4, unit, mixed_triple(r));
        }
    } else {
        let mut system = LinearSystem::new(2);
        for r in &rows {
            system.push(r.coeffs.iter().map(to_rational).collect())?;
        }
        let sol = solve_linear_alpha(&system);
        if !sol.admits_nonzero(0) {
            // No admissible α: pick it from the first equation that sees q.
            let alpha = rows
                .iter()
                .find(|r| !r.coeffs[1].is_zero())
                .map(|r| -to_rational(&r.coeffs[0]) / to_rational(&r.coeffs[1]))
                .unwrap_or_else(Rational::zero);
            let bad = rows
                .iter()
                .find(|r| !(to_rational(&r.coeffs[0]) + &alpha * to_rational(&r.coeffs[1])).is_zero())
                .ok_or_else(|| kernel_mismatch(tuple))?;
            let alphas = unit.with(S224, alpha);
            return failure(tuple, &layout4, alphas, mixed_triple(bad));
        }
        if let Some(ratio) = sol.ratio(1, 0) {
            constraints.free.remove(&S224);
            if ratio.is_zero() {
                constraints.zeros.insert(S224);
            } else {
                constraints.ratios.push(RatioConstraint {
                    slot: S224,
                    value: ratio,
                    numerator: [S224, S112],
                    denominator: [S123, S134],
                });
            }
        }
    }

    // m1 × m1 × m1 into m4: X·A + Y·B = 0 with X = α112 α124, Y = α113 α134.
    if let Some((columns, rows)) = top_rows::<BigInt>(&layout4, &skeleton) {
        let mut system = LinearSystem::new(columns.len());
        for r in &rows {
            system.push(r.iter().map(to_rational).collect())?;
        }
        let sol = solve_linear_alpha(&system);
        for (c, slot) in columns.iter().enumerate() {
            if !sol.admits_nonzero(c) {
                constraints.free.remove(slot);
                constraints.zeros.insert(*slot);
            }
        }
        if columns.len() == 2 && sol.dimension() == 1 {
            if let Some(ratio) = sol.ratio(0, 1).filter(|r| !r.is_zero()) {
                constraints.free.remove(&S124);
                constraints.ratios.push(RatioConstraint {
                    slot: S124,
                    value: ratio,
                    numerator: [S124, S112],
                    denominator: [S134, S113],
                });
            }
        }
    }
    Ok(valid(tuple, layout4, constraints))
}

/// Mod-p rejection test for search: `false` means the tuple is certainly not
/// a chain; `true` means it needs the exact check.
pub(crate) fn screen(tuple: &ChainTuple) -> Result<bool> {
    if !crate::chainspec::step1_admissible(tuple).is_admissible() {
        return Ok(false);
    }
    let layout = layout(tuple)?;
    let skeleton = alpha_skeleton(&layout);
    match tuple.len() {
        3 => Ok(t3_failure(&layout, &skeleton, false)?.is_none()),
        4 => {
            let Some(rows) = mixed_rows::<Fp>(&layout, &skeleton) else {
                return Ok(false);
            };
            if skeleton.get(S224).is_some_and(|s| !s.is_forced_zero()) {
                Ok(rank2(&rows) < 2)
            } else {
                Ok(rows.iter().all(|r| r.coeffs[0].vanishes()))
            }
        }
        _ => Ok(true),
    }
}

/// Dispatches on the tuple length. Up to two modules every admissible tuple
/// is a chain; longer tuples need an explicit assignment and
/// [`check_chain_general`].
pub fn check_tuple(tuple: &ChainTuple) -> Result<ChainVerdict> {
    match tuple.len() {
        1 | 2 => {
            if let Some(v) = inadmissible(tuple) {
                return Ok(v);
            }
            let l = layout(tuple)?;
            let alphas = AlphaAssignment::unit_required(&alpha_skeleton(&l));
            check_chain_general(tuple, &alphas)
        }
        3 => check_chain_t3(tuple),
        4 => check_chain_t4(tuple),
        t => arg_err(format!(
            "no automatic checker for {t} modules; supply an explicit assignment"
        )),
    }
}
