//! # furstenberg-lab
//!
//! A desk-scale computational laboratory for the multiplicative semigroup
//! `S = {2^j 3^k}` and its random Bernoulli-selector analogue `T`.
//!
//! The crate is organized around nine layers:
//!
//! - [`numerics`] / [`fixed`]: exact big-integer and fixed-point arithmetic,
//!   modular powers, and cached high-precision constants (`log 2`, `log 3`,
//!   `alpha = log2/log3`, the growth constant `C = sqrt(2 log2 log3)`, the
//!   irrationality exponent `rho = 4.117` with its derived exponents).
//! - [`semigroup`]: streaming enumeration of S in increasing order, the
//!   two-term counting law, the n-th-term law with residuals, relative gaps
//!   with their scaled columns, and the consecutive-pair test at continued-
//!   fraction convergents.
//! - [`diophantine`]: certified continued fraction of `alpha`, distance-to-
//!   integer scans, exact star/interval discrepancy, the Erdős–Turán
//!   majorant, and the Koksma inequality over an analytic shape catalogue.
//! - [`orbits`]: Weyl sums over integer sets (fixed-point and exact-rational
//!   routes), base-6 Moran points witnessing non-equidistribution, and
//!   empirical Khinchin averages.
//! - [`rajchman`]: the block-random probability measure with vanishing
//!   Fourier coefficients supported on non-normal numbers — product-formula
//!   coefficients, block decay profiles, sampling, summability partial sums,
//!   and Moran dimension bounds.
//! - [`thinsets`]: quasi-independence and dissociation testers, shortest
//!   relation search, greedy quasi-independent extraction, the arithmetic-
//!   progression mesh statistic, and extraction-density tables.
//! - [`fourier`]: sparse trigonometric polynomials, L^p/sup norms, periodic
//!   conditional expectations, martingale differences and square functions,
//!   Burkholder ratio checks, Λ(p)/Paley statistics, and Salem–Zygmund
//!   Monte Carlo.
//! - [`selectors`]: the random set `T` with `P(k in T) = log k / k`,
//!   prefix-stable sampling, concentration, gap laws, Hartman statistics,
//!   relation scans, and extraction witnesses.
//! - [`cli`]: the `furstenberg-lab` binary surface with reproducible seeds
//!   and CSV/JSON emission.
//!
//! All randomness is counter-based (see [`rng`]); identical configurations
//! and seeds produce byte-identical outputs.

pub mod cli;
pub mod csvout;
pub mod diophantine;
pub mod error;
pub mod fixed;
pub mod fourier;
pub mod numerics;
pub mod orbits;
pub mod rajchman;
pub mod rng;
pub mod selectors;
pub mod semigroup;
pub mod thinsets;

pub use error::{Error, Result};
