//! Real characters `χ_a(b) = ((-1)^{(a-1)/2} a | b)`, the sign constants
//! `ε_c`, `A(d,N)`, `C(d,N)`, Gauss sums `W(χ_d)`, generalized Bernoulli
//! numbers and twisted divisor sums.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{check_divides, check_level, check_odd_squarefree, divisors, prime_factors};
use crate::error::{Error, Result};
use crate::exact::{int, IQuarterRadical, Rational};
use crate::qseries::QSeries;

/// Largest Bernoulli index accepted by [`generalized_bernoulli`].
pub const BERNOULLI_INDEX_BOUND: u32 = 64;

/// Kronecker symbol `(a | b)` on all of `ℤ × ℤ`.
pub fn kronecker(a: i64, b: i64) -> i8 {
    if b == 0 {
        return if a.abs() == 1 { 1 } else { 0 };
    }
    let mut sign = 1i8;
    let mut b = b;
    if b < 0 {
        b = -b;
        if a < 0 {
            sign = -sign;
        }
    }
    let twos = b.trailing_zeros();
    if twos > 0 {
        if a % 2 == 0 {
            return 0;
        }
        b >>= twos;
        if twos % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            sign = -sign;
        }
    }
    sign * jacobi(a.rem_euclid(b), b)
}

/// Jacobi symbol for odd positive `n` and `0 ≤ a < n`.
fn jacobi(mut a: i64, mut n: i64) -> i8 {
    debug_assert!(n > 0 && n % 2 == 1 && (0..n).contains(&a));
    let mut t = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// `(-1)^{(a-1)/2} a` for odd `a`, the discriminant behind `χ_a`.
pub fn signed_discriminant(a: i64) -> i64 {
    if a.rem_euclid(4) == 1 {
        a
    } else {
        -a
    }
}

/// `χ_a(b)` for odd positive `a`. `χ_1(0) = 1` and `χ_a(0) = 0` for `a > 1`.
pub fn chi(a: i64, b: i64) -> i8 {
    kronecker(signed_discriminant(a), b)
}

/// `ε_c`: `1` if `c ≡ 1 (mod 4)`, `i` if `c ≡ 3 (mod 4)`.
pub fn epsilon(c: i64) -> Result<IQuarterRadical> {
    if c % 2 == 0 {
        return Err(Error::NotOddPositive(c));
    }
    Ok(IQuarterRadical::i_pow(if c.rem_euclid(4) == 1 {
        0
    } else {
        1
    }))
}

/// `A(d, N) = (-1)^{(d+1)(N/d-1)/4} ε_{N/d}`, tabulated by `d, N mod 4`.
pub fn const_a(d: i64, n: i64) -> Result<IQuarterRadical> {
    check_level(n)?;
    check_divides(d, n)?;
    let i_exp = match (d % 4, n % 4) {
        (3, 1) => 1,
        (1, 3) => 3,
        _ => 0,
    };
    Ok(IQuarterRadical::i_pow(i_exp))
}

/// `C(d, N) = i^{(1-Nd)/2} / A(d, N)`, which is always `±1`.
pub fn const_c(d: i64, n: i64) -> Result<i8> {
    let a = const_a(d, n)?;
    let value = &IQuarterRadical::i_pow((1 - n * d) / 2) / &a;
    match value.as_rational() {
        Some(r) if r.is_one() => Ok(1),
        Some(r) if (-r).is_one() => Ok(-1),
        _ => Err(Error::Invariant(format!("C({d},{n}) = {value} is not ±1"))),
    }
}

/// The Kronecker-symbol form `(-8|N)(8|d)(-4|d)^{(N-1)/2}` of `C(d, N)`.
pub fn const_c_kronecker(d: i64, n: i64) -> Result<i8> {
    check_level(n)?;
    check_divides(d, n)?;
    let power = if ((n - 1) / 2) % 2 == 0 {
        1
    } else {
        kronecker(-4, d)
    };
    Ok(kronecker(-8, n) * kronecker(8, d) * power)
}

/// `W(χ_d) = ε_d √d` for odd squarefree `d`.
pub fn gauss_w_chi(d: i64) -> Result<IQuarterRadical> {
    check_odd_squarefree(d)?;
    Ok(&epsilon(d)? * &IQuarterRadical::sqrt(int(d))?)
}

/// Generalized Bernoulli number `B_{k,χ_N}` from the generating function
/// `Σ_{a=1}^N χ_N(a) t e^{at} / (e^{Nt} - 1)`, expanded as an exact series in `t`.
pub fn generalized_bernoulli(k: u32, n: i64) -> Result<Rational> {
    check_odd_squarefree(n)?;
    if k > BERNOULLI_INDEX_BOUND {
        return Err(Error::OutOfRange(format!(
            "Bernoulli index {k} exceeds bound {BERNOULLI_INDEX_BOUND}"
        )));
    }
    let trunc = k as usize;
    let mut factorials = vec![BigInt::one()];
    for j in 1..=trunc + 1 {
        let next = &factorials[j - 1] * BigInt::from(j);
        factorials.push(next);
    }
    // Σ_a χ(a) e^{at} = Σ_j (Σ_a χ(a) a^j) t^j / j!
    let numer: Vec<Rational> = (0..=trunc)
        .map(|j| {
            let power_sum: BigInt = (1..=n)
                .map(|a| BigInt::from(chi(n, a)) * BigInt::from(a).pow(j as u32))
                .sum();
            Rational::new(power_sum, factorials[j].clone())
        })
        .collect();
    // (e^{Nt} - 1)/t = Σ_j N^{j+1} t^j / (j+1)!
    let denom: Vec<Rational> = (0..=trunc)
        .map(|j| Rational::new(BigInt::from(n).pow(j as u32 + 1), factorials[j + 1].clone()))
        .collect();
    let numer = QSeries::from_coeffs(numer, trunc)?;
    let denom = QSeries::from_coeffs(denom, trunc)?;
    let series = numer.mul(&denom.inverse(trunc)?);
    Ok(series.coeff(trunc).unwrap() * Rational::from_integer(factorials[trunc].clone()))
}

/// `σ_k(χ_{N/d}, χ_d; m) = Σ_{t|m} χ_{N/d}(m/t) χ_d(t) t^k`.
pub fn twisted_sigma(k: u32, n: i64, d: i64, m: u64) -> Result<BigInt> {
    check_odd_squarefree(n)?;
    check_divides(d, n)?;
    if m == 0 {
        return Err(Error::OutOfRange("twisted divisor sum needs m ≥ 1".into()));
    }
    let outer = n / d;
    let mut total = BigInt::zero();
    for t in divisors(m) {
        let s = chi(outer, (m / t) as i64) * chi(d, t as i64);
        if s != 0 {
            let term = BigInt::from(t).pow(k);
            if s > 0 {
                total += term;
            } else {
                total -= term;
            }
        }
    }
    Ok(total)
}

/// A validated level `N` (squarefree, coprime to 6) with its divisor data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterContext {
    modulus: i64,
    divisors: Vec<i64>,
    prime_factors: Vec<i64>,
}

impl CharacterContext {
    pub fn new(n: i64) -> Result<Self> {
        check_level(n)?;
        Ok(Self {
            modulus: n,
            divisors: divisors(n as u64).into_iter().map(|d| d as i64).collect(),
            prime_factors: prime_factors(n as u64)
                .into_iter()
                .map(|p| p as i64)
                .collect(),
        })
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn divisors(&self) -> &[i64] {
        &self.divisors
    }

    pub fn prime_factors(&self) -> &[i64] {
        &self.prime_factors
    }

    /// `χ_N(b)`.
    pub fn chi(&self, b: i64) -> i8 {
        chi(self.modulus, b)
    }

    pub fn const_a(&self, d: i64) -> Result<IQuarterRadical> {
        const_a(d, self.modulus)
    }

    pub fn const_c(&self, d: i64) -> Result<i8> {
        const_c(d, self.modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use num_complex::Complex64;
    use std::f64::consts::PI;

    fn legendre_euler(a: i64, p: i64) -> i8 {
        let mut r = 1i64;
        let base = a.rem_euclid(p);
        for _ in 0..(p - 1) / 2 {
            r = r * base % p;
        }
        match r {
            0 => 0,
            1 => 1,
            _ => -1,
        }
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(5, 2), -1);
        assert_eq!(chi(5, 2), -1);
        for b in -20..20 {
            assert_eq!(chi(1, b), 1);
        }
        for a in -30..30 {
            assert_eq!(kronecker(a, 1), 1);
        }
        assert_eq!(chi(1, 0), 1);
        assert_eq!(chi(5, 0), 0);
        assert_eq!(kronecker(-1, -1), -1);
        assert_eq!(kronecker(3, -1), 1);
        assert_eq!(kronecker(2, 4), 0);
        assert_eq!(kronecker(-8, 5), -1);
    }

    #[test]
    fn kronecker_matches_euler_criterion() {
        for p in [3i64, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            for a in -60..60 {
                assert_eq!(kronecker(a, p), legendre_euler(a, p), "({a}|{p})");
            }
        }
    }

    #[test]
    fn kronecker_is_multiplicative() {
        for a in -25i64..25 {
            for b in -25i64..25 {
                for c in -12i64..12 {
                    // the sign convention at -1 breaks multiplicativity through 0
                    if b == 0 || c == 0 {
                        continue;
                    }
                    assert_eq!(kronecker(a, b * c), kronecker(a, b) * kronecker(a, c));
                    assert_eq!(kronecker(b * c, a), kronecker(b, a) * kronecker(c, a));
                }
            }
        }
    }

    #[test]
    fn chi_factors_over_primes() {
        for n in [15i64, 35, 77] {
            let ps = prime_factors(n as u64);
            for b in 1..=200 {
                let prod: i8 = ps.iter().map(|&p| chi(p as i64, b)).product();
                assert_eq!(chi(n, b), prod, "chi_{n}({b})");
            }
        }
    }

    #[test]
    fn epsilon_values() {
        assert_eq!(epsilon(3).unwrap(), IQuarterRadical::i_pow(1));
        assert_eq!(epsilon(5).unwrap(), IQuarterRadical::one());
        assert!(epsilon(4).is_err());
        for p in [3i64, 5, 7, 11, 13, 17, 19, 23] {
            let rhs = IQuarterRadical::i_pow((1 - p) / 2)
                * IQuarterRadical::from_int(kronecker((p + 1) / 2, p) as i64);
            assert_eq!(epsilon(p).unwrap(), rhs, "p={p}");
        }
    }

    fn a_formula(d: i64, n: i64) -> IQuarterRadical {
        let e = (d + 1) * (n / d - 1) / 4;
        let sign = if e % 2 == 0 { 1 } else { -1 };
        IQuarterRadical::from_int(sign) * epsilon(n / d).unwrap()
    }

    #[test]
    fn constants_a_and_c() {
        assert_eq!(const_a(1, 5).unwrap(), IQuarterRadical::one());
        assert_eq!(const_a(5, 35).unwrap(), -IQuarterRadical::i_pow(1));
        assert_eq!(const_c(5, 5).unwrap(), 1);
        assert_eq!(const_c_kronecker(5, 5).unwrap(), 1);
        for n in [1i64, 5, 7, 11, 13, 35, 55, 77, 91, 143, 385, 1001] {
            for d in divisors(n as u64).into_iter().map(|d| d as i64) {
                assert_eq!(const_a(d, n).unwrap(), a_formula(d, n), "A({d},{n})");
                assert_eq!(
                    const_c(d, n).unwrap(),
                    const_c_kronecker(d, n).unwrap(),
                    "C({d},{n})"
                );
            }
        }
        assert_eq!(const_a(2, 5), Err(Error::NotDivisor { d: 2, n: 5 }));
    }

    fn brute_w(d: i64) -> Complex64 {
        (1..=d)
            .map(|a| Complex64::from_polar(chi(d, a) as f64, 2.0 * PI * a as f64 / d as f64))
            .sum()
    }

    #[test]
    fn gauss_w_values() {
        assert_eq!(
            gauss_w_chi(5).unwrap(),
            IQuarterRadical::sqrt(int(5)).unwrap()
        );
        assert_eq!(
            gauss_w_chi(3).unwrap(),
            IQuarterRadical::new(int(1), 1, int(3)).unwrap()
        );
        // splitting over primes: W(χ_pq) = (-1)^{(p-1)(q-1)/4} W(χ_p) W(χ_q)
        let via_primes =
            IQuarterRadical::from_int(-1) * gauss_w_chi(3).unwrap() * gauss_w_chi(7).unwrap();
        assert_eq!(gauss_w_chi(21).unwrap(), via_primes);
        let via_primes = gauss_w_chi(3).unwrap() * gauss_w_chi(5).unwrap();
        assert_eq!(gauss_w_chi(15).unwrap(), via_primes);
        for d in [1i64, 3, 5, 7, 11, 13, 15, 21, 35, 55, 77, 105] {
            let exact = gauss_w_chi(d).unwrap().approx();
            assert!((exact - brute_w(d)).norm() < 1e-9, "W(chi_{d})");
        }
        assert!(gauss_w_chi(9).is_err());
    }

    /// Classical Bernoulli numbers from Σ_{j≤m} C(m+1, j) B_j = 0 (B_1 = -1/2).
    fn classical_bernoulli(upto: usize) -> Vec<Rational> {
        let mut b: Vec<Rational> = vec![int(1)];
        for m in 1..=upto {
            let mut acc = Rational::zero();
            let mut binom = BigInt::one();
            for (j, bj) in b.iter().enumerate() {
                acc += Rational::from_integer(binom.clone()) * bj;
                binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
            }
            b.push(-acc / Rational::from_integer(BigInt::from(m + 1)));
        }
        b
    }

    /// `B_{k,χ} = N^{k-1} Σ_a χ(a) B_k(a/N)` with Bernoulli polynomials.
    fn bernoulli_by_polynomials(k: usize, n: i64) -> Rational {
        let b = classical_bernoulli(k);
        let mut total = Rational::zero();
        for a in 1..=n {
            let x = rat(a, n);
            let mut poly = Rational::zero();
            let mut binom = BigInt::one();
            for (j, bj) in b.iter().enumerate().take(k + 1) {
                poly +=
                    Rational::from_integer(binom.clone()) * bj * num_traits::pow(x.clone(), k - j);
                binom = binom * BigInt::from(k - j) / BigInt::from(j + 1);
            }
            total += Rational::from_integer(chi(n, a).into()) * poly;
        }
        let scale = if k == 0 {
            rat(1, n)
        } else {
            Rational::from_integer(BigInt::from(n).pow(k as u32 - 1))
        };
        total * scale
    }

    #[test]
    fn bernoulli_at_trivial_character() {
        let mut expected = classical_bernoulli(10);
        expected[1] = rat(1, 2);
        for (k, e) in expected.iter().enumerate() {
            assert_eq!(&generalized_bernoulli(k as u32, 1).unwrap(), e, "B_{k}");
        }
    }

    #[test]
    fn bernoulli_matches_polynomial_form() {
        for n in [5i64, 7, 11, 13, 35] {
            for k in 0..=((n as usize - 1) / 2 + 2) {
                assert_eq!(
                    generalized_bernoulli(k as u32, n).unwrap(),
                    bernoulli_by_polynomials(k, n),
                    "B_({k}, chi_{n})"
                );
            }
        }
        assert_eq!(generalized_bernoulli(2, 5).unwrap(), rat(4, 5));
        assert!(generalized_bernoulli(65, 5).is_err());
    }

    #[test]
    fn twisted_sigma_examples() {
        assert_eq!(twisted_sigma(1, 5, 5, 1).unwrap(), BigInt::one());
        // χ_5(2) χ_1(1) + χ_5(1) χ_1(2) 2 = -1 + 2
        assert_eq!(twisted_sigma(1, 5, 1, 2).unwrap(), BigInt::one());
        assert_eq!(twisted_sigma(1, 5, 5, 2).unwrap(), BigInt::from(1 - 2));
    }

    #[test]
    fn twisted_sigma_scaling_law() {
        for (n, d) in [(35i64, 5i64), (13, 13), (35, 7), (77, 11), (5, 1)] {
            let m = (n / d) as u64;
            let k = ((n - 3) / 2) as u32;
            for j in 1u64..40 {
                let lhs = twisted_sigma(k, n, d, j * m).unwrap();
                let rhs = BigInt::from(chi(d, m as i64))
                    * BigInt::from(m).pow(k)
                    * twisted_sigma(k, n, d, j).unwrap();
                assert_eq!(lhs, rhs, "(N,d)=({n},{d}), n={j}");
            }
        }
    }

    #[test]
    fn twisted_sigma_multiplicative() {
        let mut pairs = 0;
        for m in 1u64..60 {
            for j in 1u64..60 {
                if num_integer::Integer::gcd(&m, &j) != 1 {
                    continue;
                }
                pairs += 1;
                let (n, d) = [(5i64, 1i64), (5, 5), (35, 5), (35, 7), (13, 1)][pairs % 5];
                let k = ((n - 3) / 2) as u32;
                assert_eq!(
                    twisted_sigma(k, n, d, m * j).unwrap(),
                    twisted_sigma(k, n, d, m).unwrap() * twisted_sigma(k, n, d, j).unwrap()
                );
            }
        }
        assert!(pairs > 200);
    }

    #[test]
    fn reciprocity_product_is_one() {
        for n in [5i64, 7, 11, 13, 35, 55, 77, 91, 143, 1001] {
            for d in divisors(n as u64).into_iter().map(|d| d as i64) {
                assert_eq!(kronecker(n / d, d) * chi(d, n / d), 1, "N={n}, d={d}");
            }
        }
    }

    #[test]
    fn context_validation() {
        let ctx = CharacterContext::new(35).unwrap();
        assert_eq!(ctx.divisors(), &[1, 5, 7, 35]);
        assert_eq!(ctx.prime_factors(), &[5, 7]);
        assert_eq!(CharacterContext::new(25), Err(Error::NotSquarefree(25)));
        assert_eq!(CharacterContext::new(21), Err(Error::NotCoprimeToSix(21)));
    }
}
