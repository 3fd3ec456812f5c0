use thiserror::Error;

/// Errors raised by argument validation and internal invariant checks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("N={0} is not squarefree")]
    NotSquarefree(i64),
    #[error("N={0} is not coprime to 6")]
    NotCoprimeToSix(i64),
    #[error("modulus {0} must be a positive odd integer")]
    NotOddPositive(i64),
    #[error("{d} does not divide {n}")]
    NotDivisor { d: i64, n: i64 },
    #[error("{0} is not prime")]
    NotPrime(i64),
    #[error("arguments {0:?} are not pairwise coprime")]
    NotCoprime(Vec<i64>),
    #[error("constant term is zero; shift the series before inverting")]
    ZeroConstantTerm,
    #[error("brute force would sum {terms} terms, above the guard of {guard}")]
    GuardExceeded { terms: u128, guard: u128 },
    #[error("eta quotient prefix (N^2-d^2)/(24d) is not integral for N={n}, d={d}")]
    NonIntegralPrefix { n: i64, d: i64 },
    #[error("orbit of 0 under C_{p} reached 1 at step {step}, before step {limit}")]
    OrbitHitOne { p: i64, step: i64, limit: i64 },
    #[error("{0}")]
    OutOfRange(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
