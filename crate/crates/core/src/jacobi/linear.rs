//! Exact row reduction for the homogeneous systems that pin down products of
//! structure scalars.

use num_traits::{One, Zero};

use crate::error::{arg_err, Result};
use crate::rational::Rational;

/// Homogeneous linear system `Σ_c row[c] · x_c = 0`, kept in reduced row
/// echelon form as rows are pushed. Redundant rows are dropped on arrival, so
/// long streams of equations stay cheap.
#[derive(Debug, Clone)]
pub struct LinearSystem {
    unknowns: usize,
    /// Reduced rows, each with a leading one at `pivots[r]`.
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl LinearSystem {
    pub fn new(unknowns: usize) -> Self {
        LinearSystem {
            unknowns,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// The reduced rows; their span is the span of every row pushed so far.
    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// Adds one equation. Returns `true` when it raised the rank.
    pub fn push(&mut self, mut row: Vec<Rational>) -> Result<bool> {
        if row.len() != self.unknowns {
            return arg_err(format!(
                "equation has {} coefficients, system has {} unknowns",
                row.len(),
                self.unknowns
            ));
        }
        if self.rows.len() == self.unknowns {
            return Ok(false);
        }
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if row[p].is_zero() {
                continue;
            }
            let factor = row[p].clone();
            for (x, y) in row.iter_mut().zip(r) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
        let Some(p) = row.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let lead = row[p].clone();
        for x in row.iter_mut() {
            *x /= &lead;
        }
        // back-substitute into the existing rows
        for r in self.rows.iter_mut() {
            if r[p].is_zero() {
                continue;
            }
            let factor = r[p].clone();
            for (x, y) in r.iter_mut().zip(&row) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, row);
        Ok(true)
    }
}

/// Solution set of a homogeneous system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolutionSpace {
    ZeroOnly,
    /// A basis of the null space; every solution is a combination of these.
    Parametric { basis: Vec<Vec<Rational>> },
}

impl SolutionSpace {
    pub fn dimension(&self) -> usize {
        match self {
            SolutionSpace::ZeroOnly => 0,
            SolutionSpace::Parametric { basis } => basis.len(),
        }
    }

    /// For a one-dimensional solution space, the fixed ratio `x_a / x_b`
    /// (`None` when `x_b` vanishes on the line or the space is not a line).
    pub fn ratio(&self, a: usize, b: usize) -> Option<Rational> {
        match self {
            SolutionSpace::Parametric { basis } if basis.len() == 1 => {
                let v = &basis[0];
                (!v[b].is_zero()).then(|| &v[a] / &v[b])
            }
            _ => None,
        }
    }

    /// Whether some solution has a nonzero `x_c`.
    pub fn admits_nonzero(&self, c: usize) -> bool {
        match self {
            SolutionSpace::ZeroOnly => false,
            SolutionSpace::Parametric { basis } => basis.iter().any(|v| !v[c].is_zero()),
        }
    }
}

/// Null space of the system by exact row reduction.
pub fn solve_linear_alpha(system: &LinearSystem) -> SolutionSpace {
    let n = system.unknowns;
    let free: Vec<usize> = (0..n).filter(|c| !system.pivots.contains(c)).collect();
    if free.is_empty() {
        return SolutionSpace::ZeroOnly;
    }
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (row, &p) in system.rows.iter().zip(&system.pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect();
    SolutionSpace::Parametric { basis }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn system(unknowns: usize, rows: &[&[i64]]) -> LinearSystem {
        let mut s = LinearSystem::new(unknowns);
        for r in rows {
            s.push(r.iter().map(|&x| int(x)).collect()).unwrap();
        }
        s
    }

    #[test]
    fn zero_only() {
        assert_eq!(solve_linear_alpha(&system(1, &[&[2]])), SolutionSpace::ZeroOnly);
        assert_eq!(
            solve_linear_alpha(&system(2, &[&[1, 2], &[3, 4]])),
            SolutionSpace::ZeroOnly
        );
    }

    #[test]
    fn single_ratio() {
        let sol = solve_linear_alpha(&system(2, &[&[3, -5], &[6, -10], &[0, 0]]));
        assert_eq!(sol.dimension(), 1);
        assert_eq!(sol.ratio(0, 1), Some(frac(5, 3)));
        assert_eq!(sol.ratio(1, 0), Some(frac(3, 5)));
    }

    #[test]
    fn free_and_degenerate() {
        let sol = solve_linear_alpha(&system(2, &[&[0, 0]]));
        assert_eq!(sol.dimension(), 2);
        assert_eq!(sol.ratio(0, 1), None);
        // x = 0 forced, y free
        let sol = solve_linear_alpha(&system(2, &[&[4, 0]]));
        assert_eq!(sol.dimension(), 1);
        assert!(!sol.admits_nonzero(0));
        assert!(sol.admits_nonzero(1));
        assert_eq!(sol.ratio(0, 1), Some(int(0)));
    }

    #[test]
    fn three_unknowns() {
        // x + y + z = 0, x - y = 0  ->  (1, 1, -2)
        let s = system(3, &[&[1, 1, 1], &[1, -1, 0]]);
        assert_eq!(s.rank(), 2);
        let sol = solve_linear_alpha(&s);
        assert_eq!(sol.ratio(2, 0), Some(int(-2)));
        assert!(s.clone().push(vec![int(1)]).is_err());
    }
}
