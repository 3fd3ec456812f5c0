//! Quadratic Gauss sums `G_m(a, c) = Σ_{x ∈ (ℤ/c)^m} e(a θ_m(x) / c)` for the
//! form `θ_m(x) = Σ x_i² + Σ_{i<j} x_i x_j`.
//!
//! [`brute_force_g`] is a floating-point oracle. Everything else is exact:
//! the one-step reduction in the number of variables at a prime modulus, the
//! chain it produces, and the closed forms that the chain collapses to.

use num_complex::Complex64;
use num_integer::Integer;
use rayon::prelude::*;
use std::f64::consts::PI;

use crate::arith::{check_divides, check_odd_squarefree, factorize, is_prime, mod_inverse};
use crate::characters::{epsilon, kronecker};
use crate::error::{Error, Result};
use crate::exact::{int, IQuarterRadical};

/// Largest number of terms [`brute_force_g`] will enumerate.
pub const BRUTE_FORCE_GUARD: u128 = 10_000_000;

/// `θ_m(x)` via `2θ = (Σx)² + Σx²`.
pub fn theta_form(x: &[i64]) -> i64 {
    let s: i64 = x.iter().sum();
    let ss: i64 = x.iter().map(|v| v * v).sum();
    (s * s + ss) / 2
}

/// The sum `G_dim(a, c)` with `gcd(a, c) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GaussSumQuery {
    pub dim: usize,
    pub a: i64,
    pub c: i64,
}

impl GaussSumQuery {
    pub fn new(dim: usize, a: i64, c: i64) -> Result<Self> {
        if c < 1 {
            return Err(Error::OutOfRange(format!("modulus c={c} must be positive")));
        }
        if a.gcd(&c) != 1 {
            return Err(Error::NotCoprime(vec![a, c]));
        }
        Ok(Self { dim, a, c })
    }

    /// Number of tuples the oracle would enumerate.
    pub fn terms(&self) -> u128 {
        (self.c as u128).saturating_pow(self.dim as u32)
    }
}

fn check_guard(c: i64, dim: usize) -> Result<()> {
    let terms = (c as u128).saturating_pow(dim as u32);
    if terms > BRUTE_FORCE_GUARD {
        return Err(Error::GuardExceeded {
            terms,
            guard: BRUTE_FORCE_GUARD,
        });
    }
    Ok(())
}

/// Histogram of `θ_dim(x) - R x_dim² mod c` over `(ℤ/c)^dim`.
fn theta_histogram(dim: usize, c: i64, r: i64) -> Vec<u64> {
    let c = c as usize;
    if dim == 0 {
        let mut h = vec![0u64; c];
        h[0] = 1;
        return h;
    }
    let r = r.rem_euclid(c as i64) as usize;
    // Fix the last coordinate per task and walk the others as an odometer.
    // Bumping x_i from v to v+1 changes θ by s + v + 1 where s = Σx.
    (0..c)
        .into_par_iter()
        .map(|top| {
            let mut h = vec![0u64; c];
            let inner = dim - 1;
            let mut x = vec![0usize; inner];
            let mut s = top % c;
            let mut theta = (top * top % c + c - r * (top * top % c) % c) % c;
            let total = c.pow(inner as u32);
            for _ in 0..total {
                h[theta] += 1;
                for xi in x.iter_mut() {
                    theta = (theta + s + *xi + 1) % c;
                    s = (s + 1) % c;
                    *xi += 1;
                    if *xi < c {
                        break;
                    }
                    *xi = 0;
                }
            }
            h
        })
        .reduce(
            || vec![0u64; c],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        )
}

fn sum_histogram(h: &[u64], a: i64, c: i64) -> Complex64 {
    h.iter()
        .enumerate()
        .filter(|(_, &n)| n > 0)
        .map(|(r, &n)| {
            let phase = 2.0 * PI * ((a.rem_euclid(c) * r as i64) % c) as f64 / c as f64;
            Complex64::from_polar(n as f64, phase)
        })
        .sum()
}

/// Floating-point value of `G_dim(a, c)` by direct enumeration.
pub fn brute_force_g(q: &GaussSumQuery) -> Result<Complex64> {
    check_guard(q.c, q.dim)?;
    let h = theta_histogram(q.dim, q.c, 0);
    Ok(sum_histogram(&h, q.a, q.c))
}

/// Floating-point value of `Σ_{x ∈ (ℤ/p)^dim} e(a(θ_dim(x) - R x_dim²)/p)`.
pub fn brute_force_shifted(dim: usize, a: i64, p: i64, r: i64) -> Result<Complex64> {
    GaussSumQuery::new(dim, a, p)?;
    check_guard(p, dim)?;
    let h = theta_histogram(dim, p, r);
    Ok(sum_histogram(&h, a, p))
}

/// Absolute tolerance for comparing an oracle value with an exact `w`.
pub fn oracle_tolerance(q: &GaussSumQuery, w: &IQuarterRadical) -> f64 {
    let scale = (q.c as f64).powf(q.dim as f64 / 2.0);
    1e-6 * scale.max(w.approx().norm())
}

/// True when the oracle agrees with `w` to within [`oracle_tolerance`].
pub fn oracle_agrees(q: &GaussSumQuery, w: &IQuarterRadical) -> Result<bool> {
    Ok((brute_force_g(q)? - w.approx()).norm() <= oracle_tolerance(q, w))
}

/// Splits `G_dim(γ, αβ)` into `G_dim(βγ, α) · G_dim(αγ, β)`.
pub fn multiplicativity_split(
    dim: usize,
    gamma: i64,
    alpha: i64,
    beta: i64,
) -> Result<(GaussSumQuery, GaussSumQuery)> {
    let coprime = alpha.gcd(&beta) == 1 && alpha.gcd(&gamma) == 1 && beta.gcd(&gamma) == 1;
    if !coprime || alpha < 1 || beta < 1 {
        return Err(Error::NotCoprime(vec![alpha, beta, gamma]));
    }
    Ok((
        GaussSumQuery::new(dim, beta * gamma, alpha)?,
        GaussSumQuery::new(dim, alpha * gamma, beta)?,
    ))
}

fn check_odd_prime(p: i64) -> Result<()> {
    if p % 2 == 0 || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

/// `C_p(R) = 1/(4(1-R)) mod p`, or `None` when `R ≡ 1`.
pub fn c_map(p: i64, r: i64) -> Option<i64> {
    mod_inverse(4 * (1 - r).rem_euclid(p), p)
}

/// The iterate `C_p^t(0)` for `0 ≤ t ≤ p - 2`.
pub fn orbit_c(p: i64, t: i64) -> Result<i64> {
    check_odd_prime(p)?;
    if !(0..=p - 2).contains(&t) {
        return Err(Error::OutOfRange(format!(
            "orbit step t={t} outside 0..={}",
            p - 2
        )));
    }
    let mut r = 0;
    for step in 0..t {
        r = c_map(p, r).ok_or(Error::OrbitHitOne { p, step, limit: t })?;
    }
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionCase {
    /// `R ≡ 1` and at most two variables: the sum is `p`.
    Terminal,
    /// `R ≡ 1` with more than two variables: `p · G_{dim-2}(a, p)`.
    DropTwo,
    /// `R ≢ 1`: one variable is completed away.
    DropOne,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    pub case: ReductionCase,
    pub factor: IQuarterRadical,
    /// Shift for the remaining sum; `None` when terminal.
    pub next_r: Option<i64>,
    pub next_dim: usize,
}

/// One step of removing variables from the shifted sum
/// `Σ e(a(θ_dim(x) - R x_dim²)/p)`.
pub fn reduce_once(dim: usize, a: i64, p: i64, r: i64) -> Result<ReductionStep> {
    check_odd_prime(p)?;
    GaussSumQuery::new(dim, a, p)?;
    if dim == 0 {
        return Err(Error::OutOfRange("cannot reduce the empty sum".into()));
    }
    let r = r.rem_euclid(p);
    if r == 1 {
        let factor = IQuarterRadical::from_int(p);
        return Ok(if dim <= 2 {
            ReductionStep {
                case: ReductionCase::Terminal,
                factor,
                next_r: None,
                next_dim: 0,
            }
        } else {
            ReductionStep {
                case: ReductionCase::DropTwo,
                factor,
                next_r: Some(0),
                next_dim: dim - 2,
            }
        });
    }
    let symbol = kronecker((a.rem_euclid(p) * (1 - r)).rem_euclid(p), p);
    let factor =
        epsilon(p)? * IQuarterRadical::sqrt(int(p))? * IQuarterRadical::from_int(symbol as i64);
    Ok(ReductionStep {
        case: ReductionCase::DropOne,
        factor,
        next_r: c_map(p, r),
        next_dim: dim - 1,
    })
}

/// Iterates [`reduce_once`] from `R = 0` to an exact value of `G_dim(a, p)`.
pub fn reduction_chain(
    dim: usize,
    a: i64,
    p: i64,
) -> Result<(IQuarterRadical, Vec<ReductionStep>)> {
    let mut value = IQuarterRadical::one();
    let mut steps = Vec::new();
    let (mut dim, mut r) = (dim, 0);
    while dim > 0 {
        let step = reduce_once(dim, a, p, r)?;
        value = &value * &step.factor;
        dim = step.next_dim;
        let next_r = step.next_r;
        steps.push(step);
        match next_r {
            Some(next) => r = next,
            None => break,
        }
    }
    Ok((value, steps))
}

/// `i^{(p-p²)/2} (a|p) p^{p/2}`, with `p^{p/2}` stored as `p^{(p-1)/2} √p`.
fn prop_factor(a: i64, p: i64) -> Result<IQuarterRadical> {
    Ok(IQuarterRadical::i_pow((p - p * p) / 2)
        * IQuarterRadical::from_int(kronecker(a, p) as i64)
        * IQuarterRadical::from_int(p).pow(((p - 1) / 2) as u32)
        * IQuarterRadical::sqrt(int(p))?)
}

/// `G_m(a, p)` for `m ≥ p - 1`: the closed factor, and the leftover sum
/// `G_{m-p}(a, p)` it multiplies when `m > p`.
pub fn closed_form_g_prime(
    m: usize,
    a: i64,
    p: i64,
) -> Result<(IQuarterRadical, Option<GaussSumQuery>)> {
    check_odd_prime(p)?;
    GaussSumQuery::new(m, a, p)?;
    if (m as i64) < p - 1 {
        return Err(Error::OutOfRange(format!(
            "closed form needs m ≥ p-1, got m={m}, p={p}"
        )));
    }
    let factor = prop_factor(a, p)?;
    let rest = (m as i64 > p).then(|| GaussSumQuery {
        dim: m - p as usize,
        a,
        c: p,
    });
    Ok((factor, rest))
}

/// Exact `G_dim(a, c)` for odd squarefree `c`, by splitting `c` into primes
/// and running the reduction chain at each.
pub fn gauss_sum_exact(q: &GaussSumQuery) -> Result<IQuarterRadical> {
    check_odd_squarefree(q.c)?;
    let primes: Vec<i64> = factorize(q.c as u64)
        .into_iter()
        .map(|(p, _)| p as i64)
        .collect();
    let mut value = IQuarterRadical::one();
    for p in primes {
        let (g, _) = reduction_chain(q.dim, (q.a % p) * ((q.c / p) % p), p)?;
        value = &value * &g;
    }
    Ok(value)
}

/// `G_{N-1}(a, d) = (a|d) i^{(N-Nd)/2} d^{N/2}` for `d | N`.
pub fn closed_form_g_full(n: i64, a: i64, d: i64) -> Result<IQuarterRadical> {
    check_odd_squarefree(n)?;
    check_divides(d, n)?;
    GaussSumQuery::new((n - 1) as usize, a, d)?;
    Ok(IQuarterRadical::from_int(kronecker(a, d) as i64)
        * IQuarterRadical::i_pow((n - n * d) / 2)
        * IQuarterRadical::from_int(d).pow(((n - 1) / 2) as u32)
        * IQuarterRadical::sqrt(int(d))?)
}

/// `G_{N-1}(a, d)` as `∏_{p|d} G_{N-1}(a d/p, p)` with each prime factor
/// `i^{(N-Np)/2} (a d/p | p) p^{N/2}`.
pub fn closed_form_g_full_by_primes(n: i64, a: i64, d: i64) -> Result<IQuarterRadical> {
    check_odd_squarefree(n)?;
    check_divides(d, n)?;
    GaussSumQuery::new((n - 1) as usize, a, d)?;
    let mut value = IQuarterRadical::one();
    for (p, _) in factorize(d as u64) {
        let p = p as i64;
        value = value
            * IQuarterRadical::i_pow((n - n * p) / 2)
            * IQuarterRadical::from_int(kronecker(a * (d / p), p) as i64)
            * IQuarterRadical::from_int(p).pow(((n - 1) / 2) as u32)
            * IQuarterRadical::sqrt(int(p))?;
    }
    Ok(value)
}

/// `B(d, N) = ∏_{p|d} i^{(N-Np)/2} (d/p | p) / i^{(N-Nd)/2}`.
pub fn b_constant(d: i64, n: i64) -> Result<IQuarterRadical> {
    check_odd_squarefree(n)?;
    check_divides(d, n)?;
    let mut value = IQuarterRadical::one();
    for (p, _) in factorize(d as u64) {
        let p = p as i64;
        value = value
            * IQuarterRadical::i_pow((n - n * p) / 2)
            * IQuarterRadical::from_int(kronecker(d / p, p) as i64);
    }
    Ok(&value / &IQuarterRadical::i_pow((n - n * d) / 2))
}

/// Checks `G_{N-1}(a, d) = (a|d) G_{N-1}(1, d)` with the oracle.
pub fn galois_twist_check(n: i64, a: i64, d: i64) -> Result<bool> {
    check_divides(d, n)?;
    let dim = (n - 1) as usize;
    let twisted = GaussSumQuery::new(dim, a, d)?;
    let plain = GaussSumQuery::new(dim, 1, d)?;
    let lhs = brute_force_g(&twisted)?;
    let rhs = brute_force_g(&plain)? * kronecker(a, d) as f64;
    let tol = 1e-6 * (d as f64).powf(dim as f64 / 2.0).max(rhs.norm());
    Ok((lhs - rhs).norm() <= tol)
}

/// `∏_{t=1}^{p-2} ((1 - C^{t-1}(0)) | p)`.
pub fn orbit_symbol_product(p: i64) -> Result<i8> {
    let mut prod = 1i8;
    for t in 1..=p - 2 {
        prod *= kronecker((1 - orbit_c(p, t - 1)?).rem_euclid(p), p);
    }
    Ok(prod)
}
