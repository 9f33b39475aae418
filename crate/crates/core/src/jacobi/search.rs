//! Exhaustive search over tuples with `n1` up to a cap.
//!
//! Candidates are the tuples passing the admissibility check. Four-module
//! candidates only extend valid three-module tuples, since a chain's prefix
//! is again a chain. Tuples are independent work items; the merged result is
//! sorted, so output does not depend on scheduling.

use rayon::prelude::*;

use super::checkers::{check_chain_t3, check_chain_t4, screen};
use super::ChainVerdict;
use crate::chainspec::{admissible_tuples, layout, ChainTuple};
use crate::error::{arg_err, Result};

#[derive(Debug, Clone, Default)]
pub struct SearchOptions {
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
}

fn extensions(prefix: &ChainTuple) -> Result<Vec<ChainTuple>> {
    let l = layout(prefix)?;
    let bound = prefix.n(1).min(l.degree(3) as i64);
    Ok((0..=bound).map(|n4| prefix.extended(n4)).collect())
}

fn run(tuples: Vec<ChainTuple>, check: fn(&ChainTuple) -> Result<ChainVerdict>) -> Result<Vec<ChainVerdict>> {
    let verdicts: Vec<Option<ChainVerdict>> = tuples
        .par_iter()
        .map(|t| -> Result<Option<ChainVerdict>> {
            if !screen(t)? {
                return Ok(None);
            }
            let v = check(t)?;
            Ok(v.is_valid().then_some(v))
        })
        .collect::<Result<_>>()?;
    let mut out: Vec<ChainVerdict> = verdicts.into_iter().flatten().collect();
    out.sort_by(|a, b| a.tuple.cmp(&b.tuple));
    Ok(out)
}

fn search_inner(t: usize, n1_max: i64) -> Result<Vec<ChainVerdict>> {
    match t {
        3 => run(admissible_tuples(3, n1_max), check_chain_t3),
        4 => {
            let base = search_inner(3, n1_max)?;
            let mut cands = Vec::new();
            for v in &base {
                cands.extend(extensions(&v.tuple)?);
            }
            run(cands, check_chain_t4)
        }
        _ => arg_err(format!("search supports t = 3 or 4, got {t}")),
    }
}

/// All valid tuples of length `t ∈ {3, 4}` with `1 ≤ n1 ≤ n1_max`, sorted
/// lexicographically.
pub fn search(t: usize, n1_max: i64) -> Result<Vec<ChainVerdict>> {
    search_inner(t, n1_max)
}

/// [`search`] on a dedicated pool of `options.workers` threads.
pub fn search_with(t: usize, n1_max: i64, options: &SearchOptions) -> Result<Vec<ChainVerdict>> {
    match options.workers {
        None => search_inner(t, n1_max),
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w.max(1))
                .build()
                .map_err(|e| crate::error::Error::Argument(format!("thread pool: {e}")))?;
            pool.install(|| search_inner(t, n1_max))
        }
    }
}
