//! Eisenstein parts of the theta series, the eta quotients and the partition
//! series, all in weight `(N-1)/2` with character `χ_N`, and the aggregate
//! coefficient `𝒰(n)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{check_divides, factorize};
use crate::characters::{chi, generalized_bernoulli, kronecker, twisted_sigma, CharacterContext};
use crate::error::{Error, Result};
use crate::exact::{int, rat, Rational};
use crate::qseries::QSeries;

/// Per-level data shared by all Eisenstein expansions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EisensteinProfile {
    ctx: CharacterContext,
    weight: u32,
    bernoulli: Rational,
    /// `(d, C(d, N), (N/d)^{(N-3)/2} (1-N)/B)` for every `d | N`.
    per_divisor: Vec<(i64, i8, Rational)>,
}

impl EisensteinProfile {
    pub fn new(n: i64) -> Result<Self> {
        let ctx = CharacterContext::new(n)?;
        if n < 5 {
            return Err(Error::OutOfRange(format!(
                "Eisenstein expansions need weight (N-1)/2 ≥ 2, got N={n}"
            )));
        }
        let weight = ((n - 1) / 2) as u32;
        let bernoulli = generalized_bernoulli(weight, n)?;
        if bernoulli.is_zero() {
            return Err(Error::Invariant(format!("B_({weight}, chi_{n}) vanishes")));
        }
        let base = int(1 - n) / &bernoulli;
        let per_divisor = ctx
            .divisors()
            .iter()
            .map(|&d| {
                let power = Rational::from_integer(BigInt::from(n / d).pow(weight - 1));
                Ok((d, ctx.const_c(d)?, power * &base))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            ctx,
            weight,
            bernoulli,
            per_divisor,
        })
    }

    pub fn level(&self) -> i64 {
        self.ctx.modulus()
    }

    /// `(N-1)/2`.
    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// Index `(N-3)/2` of the divisor sums.
    pub fn sigma_index(&self) -> u32 {
        self.weight - 1
    }

    /// `B_{(N-1)/2, χ_N}`.
    pub fn bernoulli(&self) -> &Rational {
        &self.bernoulli
    }

    /// `(1-N)/B_{(N-1)/2, χ_N}`.
    pub fn normalization(&self) -> Rational {
        int(1 - self.level()) / &self.bernoulli
    }

    pub fn per_divisor(&self) -> &[(i64, i8, Rational)] {
        &self.per_divisor
    }

    fn entry(&self, d: i64) -> Result<&(i64, i8, Rational)> {
        check_divides(d, self.level())?;
        Ok(self
            .per_divisor
            .iter()
            .find(|e| e.0 == d)
            .expect("every divisor is stored"))
    }

    fn sigma_series(
        &self,
        d: i64,
        n_max: usize,
        scale: &Rational,
        constant: Rational,
    ) -> Result<QSeries> {
        let n = self.level();
        let mut coeffs = vec![constant];
        for m in 1..=n_max as u64 {
            let sigma = twisted_sigma(self.sigma_index(), n, d, m)?;
            coeffs.push(scale * Rational::from_integer(sigma));
        }
        QSeries::from_coeffs(coeffs, n_max)
    }

    /// `χ_{N/d}(0) + (N/d | d) C(d,N) (d/N) (1-N)/B Σ σ(χ_{N/d}, χ_d; n) q^n`.
    pub fn eta_expansion(&self, d: i64, n_max: usize) -> Result<QSeries> {
        let n = self.level();
        let (_, c, _) = *self.entry(d)?;
        let scale = int((kronecker(n / d, d) * c) as i64) * rat(d, n) * self.normalization();
        self.sigma_series(d, n_max, &scale, int(chi(n / d, 0) as i64))
    }

    /// `χ_{N/d}(0) + C(d,N) (N/d)^{(N-3)/2} (1-N)/B Σ σ(χ_{N/d}, χ_d; n) q^n`.
    pub fn partition_expansion(&self, d: i64, n_max: usize) -> Result<QSeries> {
        let n = self.level();
        let (_, c, power) = self.entry(d)?;
        let scale = int(*c as i64) * power;
        self.sigma_series(d, n_max, &scale, int(chi(n / d, 0) as i64))
    }

    /// `1 + Σ_{n≥1} 𝒰(n) q^n`.
    pub fn theta_expansion(&self, n_max: usize) -> Result<QSeries> {
        let mut coeffs = vec![Rational::one()];
        for m in 1..=n_max as u64 {
            coeffs.push(self.curly_u(m)?);
        }
        QSeries::from_coeffs(coeffs, n_max)
    }

    /// `𝒰(n) = (1-N)/B Σ_{d|N} C(d,N) (N/d)^{(N-3)/2} σ(χ_{N/d}, χ_d; n)`.
    pub fn curly_u(&self, m: u64) -> Result<Rational> {
        if m == 0 {
            return Err(Error::OutOfRange("U(n) needs n ≥ 1".into()));
        }
        let mut total = Rational::zero();
        for (d, c, power) in &self.per_divisor {
            let sigma = twisted_sigma(self.sigma_index(), self.level(), *d, m)?;
            total += int(*c as i64) * power * Rational::from_integer(sigma);
        }
        Ok(total)
    }

    /// `𝒰(n)` from its factorization over the primes dividing `n` and `N`.
    pub fn curly_u_factored(&self, m: u64) -> Result<Rational> {
        if m == 0 {
            return Err(Error::OutOfRange("U(n) needs n ≥ 1".into()));
        }
        let n = self.level();
        let k = self.sigma_index();
        let sign8 = kronecker(-8, n) as i64;
        let pk = |p: u64, e: u32| Rational::from_integer(BigInt::from(p).pow(k * e));
        let fac = factorize(m);

        let mut value =
            int(sign8) * self.normalization() * Rational::from_integer(BigInt::from(n).pow(k));
        for &(p, e) in &fac {
            if n % p as i64 == 0 {
                value *= pk(p, e);
            } else {
                let x = pk(p, 1);
                let c = int(chi(n, p as i64) as i64);
                let numer = num_traits::pow(x.clone(), e as usize + 1)
                    - num_traits::pow(c.clone(), e as usize + 1);
                value *= numer / (x - c);
            }
        }
        for &s in self.ctx.prime_factors() {
            let mut inner = int(sign8) * int(self.ctx.const_c(s)? as i64) / pk(s as u64, 1);
            for &(p, e) in &fac {
                let pe = (p as i64).pow(e);
                if s % p as i64 == 0 {
                    inner *= int(chi(n / s, pe) as i64) / pk(p, e);
                } else {
                    inner *= int(chi(s, pe) as i64);
                }
            }
            value *= Rational::one() + inner;
        }
        Ok(value)
    }

    /// `(-8|N) (1-N)/B N^{(N-3)/2}`, which must be positive.
    pub fn prefactor_sign_value(&self) -> Rational {
        int(kronecker(-8, self.level()) as i64)
            * self.normalization()
            * Rational::from_integer(BigInt::from(self.level()).pow(self.sigma_index()))
    }

    /// `min_{n ∈ [lo, hi]} 𝒰(n) / n^{(N-3)/2}`.
    pub fn growth_floor(&self, lo: u64, hi: u64) -> Result<Rational> {
        let mut best: Option<Rational> = None;
        for m in lo.max(1)..=hi {
            let r =
                self.curly_u(m)? / Rational::from_integer(BigInt::from(m).pow(self.sigma_index()));
            if best.as_ref().is_none_or(|b| &r < b) {
                best = Some(r);
            }
        }
        best.ok_or_else(|| Error::OutOfRange(format!("empty window [{lo}, {hi}]")))
    }
}

/// `1 + Σ 𝒰(n) q^n` for level `N`.
pub fn eisenstein_theta_expansion(n: i64, n_max: usize) -> Result<QSeries> {
    EisensteinProfile::new(n)?.theta_expansion(n_max)
}

/// Eisenstein part of `η^N((N/d)z)/η(dz)`.
pub fn eisenstein_eta_expansion(n: i64, d: i64, n_max: usize) -> Result<QSeries> {
    EisensteinProfile::new(n)?.eta_expansion(d, n_max)
}

/// Eisenstein part of `(N/d)(q;q)_∞^N Σ P(Nn/d² - (N²-d²)/(24d²)) q^n`.
pub fn eisenstein_partition_expansion(n: i64, d: i64, n_max: usize) -> Result<QSeries> {
    EisensteinProfile::new(n)?.partition_expansion(d, n_max)
}

/// `𝒰(n)` at level `N`.
pub fn curly_u(n: i64, m: u64) -> Result<Rational> {
    EisensteinProfile::new(n)?.curly_u(m)
}
