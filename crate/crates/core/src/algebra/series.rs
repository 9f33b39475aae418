//! Lower central series of the nilradical, computed by exact spans.

use num_traits::Zero;

use super::ChainAlgebra;
use crate::error::{Error, Result};
use crate::jacobi::LinearSystem;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesReport {
    /// `dim n^1, dim n^2, …`, ending with the first zero.
    pub dims: Vec<usize>,
    /// `dim n^k / n^(k+1)` for each nonzero quotient.
    pub general_type: Vec<usize>,
}

/// Computes `n^(k+1) = [n, n^k]` from the structure constants and checks
/// that `n^k = m_k ⊕ … ⊕ m_t` at every step.
pub fn lower_central_series(alg: &ChainAlgebra) -> Result<SeriesReport> {
    let n = alg.dimension();
    let nil: Vec<usize> = (3..n).collect();
    let mut current: Vec<Vec<Rational>> = nil.iter().map(|&p| alg.basis_vector(p)).collect();
    let mut dims = vec![current.len()];
    let mut k = 1;
    while !current.is_empty() {
        if dims[k - 1] != alg.predicted_power_dim(k) {
            return Err(Error::Structural(format!(
                "n^{k} has dimension {} but the grading predicts {}",
                dims[k - 1],
                alg.predicted_power_dim(k)
            )));
        }
        let mut span = LinearSystem::new(n);
        'outer: for &p in &nil {
            for v in &current {
                let w = alg.bracket(&alg.basis_vector(p), v)?;
                if w.iter().all(Zero::is_zero) {
                    continue;
                }
                span.push(w)?;
                if span.rank() == n {
                    break 'outer;
                }
            }
        }
        current = span.rows().to_vec();
        dims.push(current.len());
        k += 1;
    }
    let general_type = dims.windows(2).map(|w| w[0] - w[1]).collect();
    Ok(SeriesReport { dims, general_type })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chainspec::{alpha_skeleton, layout, ChainTuple};
    use crate::jacobi::AlphaAssignment;

    fn series(t: [i64; 3]) -> SeriesReport {
        let tuple = ChainTuple::from(t);
        let a = AlphaAssignment::unit_required(&alpha_skeleton(&layout(&tuple).unwrap()));
        lower_central_series(&ChainAlgebra::build(&tuple, &a).unwrap()).unwrap()
    }

    #[test]
    fn small_series() {
        assert_eq!(series([2, 1, 1]).dims, vec![9, 6, 3, 0]);
        let r = series([1, 1, 0]);
        assert_eq!(r.general_type, vec![2, 1, 2]);
        assert_eq!(r.dims, vec![5, 3, 2, 0]);
    }
}
