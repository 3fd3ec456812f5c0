//! Representation numbers of `θ_{N-1}`, the quotient `cφ_N`, and the
//! constant terms of the theta series at the cusps `1/d`.

use num_bigint::{BigInt, BigUint};
use num_integer::Roots;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::arith::{check_divides, check_level};
use crate::error::{Error, Result};
use crate::exact::{rat, IQuarterRadical, Rational};
use crate::gauss::closed_form_g_full;
use crate::qseries::QSeries;

/// Counts of lattice points of `ℤ^{N-1}` by `θ_{N-1}` value, built one
/// coordinate at a time over the state `(s, ss) = (Σx, Σx²)`.
#[derive(Clone, Debug)]
pub struct ThetaFormProfile {
    level: i64,
    dim: usize,
    n_max: usize,
    /// `counts[n]` is the number of `x` with `θ(x) = n`.
    counts: Vec<BigUint>,
}

impl ThetaFormProfile {
    pub fn new(n: i64, n_max: usize) -> Result<Self> {
        check_level(n)?;
        let dim = (n - 1) as usize;
        let counts = match theta_counts::<u128>(dim, n_max) {
            Some(c) => c.into_iter().map(BigUint::from).collect(),
            None => theta_counts::<BigUint>(dim, n_max).expect("unbounded counts cannot overflow"),
        };
        Ok(Self {
            level: n,
            dim,
            n_max,
            counts,
        })
    }

    pub fn level(&self) -> i64 {
        self.level
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn series(&self) -> QSeries {
        QSeries::from_bigints(
            self.counts.iter().cloned().map(BigInt::from).collect(),
            self.n_max,
        )
        .expect("length matches truncation")
    }
}

trait Count: Clone + Send + Sync {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn one() -> Self;
    /// `self += other`, or `false` on overflow.
    fn add_assign_checked(&mut self, other: &Self) -> bool;
}

impl Count for u128 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn one() -> Self {
        1
    }
    fn add_assign_checked(&mut self, other: &Self) -> bool {
        match self.checked_add(*other) {
            Some(v) => {
                *self = v;
                true
            }
            None => false,
        }
    }
}

impl Count for BigUint {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn one() -> Self {
        BigUint::from(1u8)
    }
    fn add_assign_checked(&mut self, other: &Self) -> bool {
        *self += other;
        true
    }
}

/// Dense DP table indexed by `ss * width + (s + offset)`.
fn theta_counts<C: Count>(dim: usize, n_max: usize) -> Option<Vec<C>> {
    let mut out = vec![C::zero(); n_max + 1];
    if dim == 0 {
        out[0] = C::one();
        return Some(out);
    }
    let two_n = 2 * n_max;
    let vmax = (two_n as u64).sqrt() as i64;
    // Cauchy-Schwarz: s² ≤ dim·ss ≤ dim·2nMax.
    let smax = ((dim * two_n) as u64).sqrt() as i64;
    let width = (2 * smax + 1) as usize;
    let idx = |ss: usize, s: i64| ss * width + (s + smax) as usize;
    let mut table = vec![C::zero(); (two_n + 1) * width];
    table[idx(0, 0)] = C::one();
    // 2θ of any completion of a state with k coordinates left is at least
    // ss + s²/(k+1), so such states are dropped once that exceeds 2·nMax.
    let keep = |ss: usize, s: i64, left: usize| {
        let k1 = (left + 1) as i128;
        k1 * ss as i128 + (s as i128) * (s as i128) <= two_n as i128 * k1
    };
    for layer in 0..dim {
        let left = dim - layer - 1;
        let prev = &table;
        let rows: Option<Vec<Vec<C>>> = (0..=two_n)
            .into_par_iter()
            .map(|ss| {
                let mut row = vec![C::zero(); width];
                for s in -smax..=smax {
                    if !keep(ss, s, left) {
                        continue;
                    }
                    let cell = &mut row[(s + smax) as usize];
                    for v in -vmax..=vmax {
                        let v2 = (v * v) as usize;
                        if v2 > ss {
                            continue;
                        }
                        let ps = s - v;
                        if ps.abs() > smax {
                            continue;
                        }
                        let src = &prev[idx(ss - v2, ps)];
                        if !src.is_zero() && !cell.add_assign_checked(src) {
                            return None;
                        }
                    }
                }
                Some(row)
            })
            .collect();
        table = rows?.concat();
    }
    for ss in 0..=two_n {
        for s in -smax..=smax {
            let c = &table[idx(ss, s)];
            if c.is_zero() {
                continue;
            }
            let twice = (s * s) as usize + ss;
            if twice <= two_n && !out[twice / 2].add_assign_checked(c) {
                return None;
            }
        }
    }
    Some(out)
}

/// `Σ_{x ∈ ℤ^{N-1}} q^{θ_{N-1}(x)}` up to `q^{nMax}`.
pub fn theta_series(n: i64, n_max: usize) -> Result<QSeries> {
    Ok(ThetaFormProfile::new(n, n_max)?.series())
}

/// `cφ_N = θ-series / (q;q)_∞^N`; every coefficient must be a nonnegative integer.
pub fn cphi_series(n: i64, n_max: usize) -> Result<QSeries> {
    let theta = theta_series(n, n_max)?;
    cphi_from_theta(&theta, n)
}

pub(crate) fn cphi_from_theta(theta: &QSeries, n: i64) -> Result<QSeries> {
    let n_max = theta.trunc();
    let euler_n = QSeries::euler_product(n_max).pow(n as u32);
    let cphi = theta.mul(&euler_n.inverse(n_max)?);
    for (k, c) in cphi.to_vec().iter().enumerate() {
        if !c.is_integer() || c.is_negative() {
            return Err(Error::Invariant(format!(
                "cphi_{n}({k}) = {c} is not a nonnegative integer"
            )));
        }
    }
    Ok(cphi)
}

/// `[θ-series]_{1/d} = i^{(1-Nd)/2} √(d/N)`.
pub fn theta_cusp_constant(n: i64, d: i64) -> Result<IQuarterRadical> {
    check_level(n)?;
    check_divides(d, n)?;
    Ok(IQuarterRadical::i_pow((1 - n * d) / 2) * IQuarterRadical::sqrt(rat(d, n))?)
}

/// The same constant as `(-i/d)^{(N-1)/2} G_{N-1}(1, d) / √N`.
pub fn theta_cusp_constant_via_gauss(n: i64, d: i64) -> Result<IQuarterRadical> {
    check_level(n)?;
    check_divides(d, n)?;
    let k = ((n - 1) / 2) as u32;
    let minus_i_over_d = IQuarterRadical::i_pow(3) * IQuarterRadical::from_rational(rat(1, d));
    let g = closed_form_g_full(n, 1, d)?;
    let root_n = IQuarterRadical::sqrt(Rational::from_integer(n.into()))?;
    Ok(&(minus_i_over_d.pow(k) * g) / &root_n)
}
