//! Exact arithmetic for the counting functions `cφ_N` of colored generalized Frobenius partitions.
//!
//! The crate computes the generating function `cφ_N = f_θ / (q;q)^N` by lattice
//! point counting, the partition-side main term `Σ_{d|N} (N/d) P(N n/d² - (N²-d²)/(24d²))`,
//! the residual cusp form between them, and the Eisenstein expansions that tie
//! the two together. Gauss sums of the quadratic form θ and the cusp constants
//! that feed the Eisenstein decomposition are evaluated in closed form and
//! checked against brute-force sums.
//!
//! - [`exact`]: rationals and the radical system `r·i^m·√s`
//! - [`qseries`]: truncated power series with exact rational coefficients
//! - [`characters`]: Kronecker symbols, sign constants, Bernoulli numbers, divisor sums
//! - [`gauss`]: quadratic Gauss sums `G_m(a, c)`, oracles and closed forms
//! - [`theta`]: theta series of θ and the `cφ_N` series
//! - [`eta`]: eta quotients, cusp data, partition numbers, `𝒱_r`
//! - [`eisenstein`]: Eisenstein parts and the aggregate coefficient `𝒰(n)`
//! - [`verify`]: end-to-end identity checks and [`verify::VerificationReport`]

pub mod arith;
pub mod characters;
pub mod eisenstein;
pub mod error;
pub mod eta;
pub mod exact;
pub mod gauss;
pub mod qseries;
pub mod theta;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{IQuarterRadical, Rational};
pub use qseries::QSeries;
