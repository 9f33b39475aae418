//! Exact-arithmetic engine for sl2-chained Lie algebras.
//!
//! An sl2-chained Lie algebra is `sl2 ⊕ m1 ⊕ … ⊕ mt` where every `mi` is an
//! irreducible sl2-module realized as binary forms of a fixed degree and the
//! products between modules are scalar multiples of transvections. Its ideals
//! form the chain `0 < mt < m(t-1) ⊕ mt < … < m1 ⊕ … ⊕ mt < g`.
//!
//! The crate is layered bottom-up:
//!
//! - [`polyspace`]: homogeneous bivariate polynomials over the rationals and the
//!   sl2 action by differential operators.
//! - [`transvection`]: the invariant bilinear maps `(f, g)_k` and
//!   Clebsch-Gordan bookkeeping.
//! - [`chainspec`]: tuple arithmetic, module layouts and the product skeleton.
//! - [`jacobi`]: Jacobi residuals, tuple checkers for t = 3, 4 and general t,
//!   and the exhaustive search driver.
//! - [`gordan`]: Gordan identities, used as an independent oracle.
//! - [`algebra`]: explicit structure constants, whole-algebra verification,
//!   lower central series and JSON/DOT export.
//! - [`oracle`]: batch suites cross-checking the layers against each other.

pub mod algebra;
pub mod chainspec;
mod error;
pub mod gordan;
pub mod jacobi;
pub mod oracle;
pub mod polyspace;
pub mod rational;
pub mod transvection;

pub use error::{Error, Result};
pub use rational::Rational;
