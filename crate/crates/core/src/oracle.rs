//! Batch suites cross-checking the layers against each other.
//!
//! - [`gordan_suite`]: every Gordan bracket satisfying the hypothesis vanishes
//!   on random forms.
//! - [`replay_suite`]: each family's bracket combination vanishes, and so does
//!   the Jacobi residual on the same forms.
//! - [`equivalence_suite`]: the general checker agrees with the specialized
//!   ones, including on the constraints they report.
//!
//! All randomness is seeded, so reports are reproducible.

use rand::rngs::StdRng;
use rand::SeedableRng;
use rayon::prelude::*;

use num_traits::{One, Zero};

use crate::chainspec::{admissible_tuples, alpha_skeleton, layout, ChainTuple, SlotIndex, SlotStatus};
use crate::error::{arg_err, Result};
use crate::gordan::{gordan_bracket, GordanSpec, ReplayFamily};
use crate::jacobi::{
    check_chain_general, check_chain_t3, check_chain_t4, jacobi_residual, AlphaAssignment, ChainVerdict,
};
use crate::polyspace::HomPoly;
use crate::rational::{self, Rational};

/// Default seed for every suite.
pub const SEED: u64 = 7;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GordanReport {
    /// Degree/exponent combinations satisfying the hypothesis.
    pub cases: usize,
    pub evaluations: usize,
    /// Human-readable descriptions of nonzero results or evaluation errors.
    pub failures: Vec<String>,
}

impl GordanReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn spec_seed(seed: u64, d: [usize; 3]) -> u64 {
    seed ^ ((d[0] as u64) << 40 | (d[1] as u64) << 20 | d[2] as u64)
}

/// Evaluates every hypothesis-satisfying bracket with degrees `≤ max_degree`
/// on `samples` random triples of forms.
pub fn gordan_suite(max_degree: usize, samples: usize, seed: u64) -> GordanReport {
    let mut triples = Vec::new();
    for m in 0..=max_degree {
        for n in 0..=max_degree {
            for p in 0..=max_degree {
                triples.push([m, n, p]);
            }
        }
    }
    let parts: Vec<(usize, usize, Vec<String>)> = triples
        .par_iter()
        .map(|&d| {
            let specs: Vec<GordanSpec> = (0..=d[2])
                .flat_map(|a1| (0..=d[0]).flat_map(move |a2| (0..=d[1]).map(move |a3| [a1, a2, a3])))
                .map(|e| GordanSpec::new(d, e))
                .filter(GordanSpec::hypothesis)
                .collect();
            let mut rng = StdRng::seed_from_u64(spec_seed(seed, d));
            let mut failures = Vec::new();
            let mut evaluations = 0;
            for _ in 0..samples {
                let [f, g, h] = d.map(|k| HomPoly::random(k, &mut rng));
                for spec in &specs {
                    evaluations += 1;
                    match gordan_bracket(&f, &g, &h, spec) {
                        Ok(r) if r.is_zero() => {}
                        Ok(r) => failures.push(format!(
                            "degrees {:?} exponents {:?}: nonzero result {r}",
                            spec.degrees, spec.exponents
                        )),
                        Err(e) => failures.push(format!(
                            "degrees {:?} exponents {:?}: {e}",
                            spec.degrees, spec.exponents
                        )),
                    }
                }
            }
            failures.dedup_by(|a, b| a.split(':').next() == b.split(':').next());
            (specs.len(), evaluations, failures)
        })
        .collect();
    GordanReport {
        cases: parts.iter().map(|p| p.0).sum(),
        evaluations: parts.iter().map(|p| p.1).sum(),
        failures: parts.into_iter().flat_map(|p| p.2).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplayReport {
    /// `(family, n)` pairs replayed.
    pub instances: usize,
    pub failures: Vec<String>,
}

impl ReplayReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn replay_one(family: ReplayFamily, n: i64, samples: usize, seed: u64) -> Result<Vec<String>> {
    let tuple = family.tuple(n);
    let mut failures = Vec::new();
    let verdict = if tuple.len() == 3 { check_chain_t3(&tuple)? } else { check_chain_t4(&tuple)? };
    let Some(alphas) = verdict.alphas().filter(|_| verdict.is_valid()) else {
        return Ok(vec![format!("{family:?} at n = {n}: {tuple} is not a chain")]);
    };
    if let Some(expected) = family.alpha(n) {
        if verdict.alpha_ratio() != Some(expected.clone()) {
            failures.push(format!(
                "{family:?} at n = {n}: ratio {:?}, expected {expected}",
                verdict.alpha_ratio().map(|r| rational::format(&r))
            ));
        }
    }
    let l = layout(&tuple)?;
    let third = if family.is_mixed() { 2 } else { 1 };
    let mut rng = StdRng::seed_from_u64(seed ^ (n as u64) << 8);
    for _ in 0..samples {
        let f = HomPoly::random(l.degree(1), &mut rng);
        let g = HomPoly::random(l.degree(1), &mut rng);
        let h = HomPoly::random(l.degree(third), &mut rng);
        let combo = family.combination(n, &f, &g, &h)?;
        if !combo.is_zero() {
            failures.push(format!("{family:?} at n = {n}: combination is {combo}"));
        }
        let res = jacobi_residual(&l, alphas, (&f, 1), (&g, 1), (&h, third))?;
        if !res.is_zero() {
            failures.push(format!("{family:?} at n = {n}: Jacobi residual is {res}"));
        }
    }
    failures.dedup();
    Ok(failures)
}

/// Replays every family for `min_n ≤ n ≤ max_n` on `samples` random inputs.
pub fn replay_suite(max_n: i64, samples: usize, seed: u64) -> Result<ReplayReport> {
    let jobs: Vec<(ReplayFamily, i64)> = ReplayFamily::ALL
        .iter()
        .flat_map(|&f| (f.min_n()..=max_n).map(move |n| (f, n)))
        .collect();
    let parts: Vec<Vec<String>> = jobs
        .par_iter()
        .map(|&(f, n)| replay_one(f, n, samples, seed))
        .collect::<Result<_>>()?;
    Ok(ReplayReport {
        instances: jobs.len(),
        failures: parts.into_iter().flatten().collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub tuples: usize,
    pub valid: usize,
    pub mismatches: Vec<String>,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn general_valid(tuple: &ChainTuple, alphas: &AlphaAssignment) -> Result<bool> {
    Ok(check_chain_general(tuple, alphas)?.is_valid())
}

/// Assignment with every non-forced slot random and nonzero.
fn random_assignment(tuple: &ChainTuple, rng: &mut StdRng) -> Result<AlphaAssignment> {
    let skeleton = alpha_skeleton(&layout(tuple)?);
    let mut a = AlphaAssignment::new();
    for s in skeleton.iter().filter(|s| !s.is_forced_zero()) {
        a.set(s.index, rational::random_nonzero(rng));
    }
    Ok(a)
}

fn compare(tuple: &ChainTuple, special: &ChainVerdict, rng: &mut StdRng) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut note = |m: String| out.push(format!("{tuple}: {m}"));
    let Some(constraints) = special.constraints() else {
        // Invalid: the general checker must reject the witness assignment and
        // a random one.
        if let Some(w) = special.witness() {
            if general_valid(tuple, &w.alphas)? {
                note(format!("general accepts the witness assignment {}", w.alphas));
            }
            let r = random_assignment(tuple, rng)?;
            if general_valid(tuple, &r)? {
                note(format!("general accepts random assignment {r}"));
            }
        }
        return Ok(out);
    };

    let rep = special.alphas().expect("valid verdicts carry an assignment");
    if !general_valid(tuple, rep)? {
        note(format!("general rejects the representative {rep}"));
    }
    for _ in 0..2 {
        let pick = |_: SlotIndex, _: bool| rational::random_nonzero(rng);
        match constraints.instantiate(pick) {
            Some(a) if !general_valid(tuple, &a)? => note(format!("general rejects instance {a}")),
            Some(_) => {}
            None => note("constraints cannot be instantiated".into()),
        }
    }

    // Every constraint beyond the skeleton must be necessary.
    let skeleton = alpha_skeleton(&layout(tuple)?);
    let forced = |s: SlotIndex| skeleton.get(s).is_some_and(|p| p.is_forced_zero());
    let base = constraints
        .instantiate(|_, required| if required { Rational::one() } else { Rational::zero() })
        .expect("representative exists");
    for &s in constraints.zeros.iter().filter(|s| !forced(**s)) {
        if general_valid(tuple, &base.clone().with(s, Rational::one()))? {
            note(format!("slot {s} is reported zero but may be nonzero"));
        }
    }
    for r in &constraints.ratios {
        let ones = constraints
            .instantiate(|_, _| Rational::one())
            .expect("ratio partners are nonzero");
        let bumped = ones.get(r.slot) + Rational::one();
        if general_valid(tuple, &ones.clone().with(r.slot, bumped))? {
            note(format!("ratio on slot {} is not enforced", r.slot));
        }
    }
    for s in skeleton.iter() {
        if matches!(s.status, SlotStatus::Required) != constraints.required_nonzero.contains(&s.index) {
            note(format!("slot {} required status differs from the skeleton", s.index));
        }
    }
    Ok(out)
}

/// Runs the general checker against the specialized one for `t ∈ {3, 4}` on
/// every admissible tuple with `n1 ≤ max_n1`.
pub fn equivalence_suite(t: usize, max_n1: i64, seed: u64) -> Result<EquivalenceReport> {
    let check: fn(&ChainTuple) -> Result<ChainVerdict> = match t {
        3 => check_chain_t3,
        4 => check_chain_t4,
        _ => return arg_err(format!("equivalence suite supports t = 3 or 4, got {t}")),
    };
    let tuples = admissible_tuples(t, max_n1);
    let parts: Vec<(bool, Vec<String>)> = tuples
        .par_iter()
        .enumerate()
        .map(|(i, tuple)| {
            let mut rng = StdRng::seed_from_u64(seed.wrapping_add(i as u64));
            let v = check(tuple)?;
            Ok((v.is_valid(), compare(tuple, &v, &mut rng)?))
        })
        .collect::<Result<_>>()?;
    Ok(EquivalenceReport {
        tuples: tuples.len(),
        valid: parts.iter().filter(|p| p.0).count(),
        mismatches: parts.into_iter().flat_map(|p| p.1).collect(),
    })
}
