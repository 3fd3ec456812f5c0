//! Eta quotients `η^N((N/d)z) / η(dz)`, their orders and constant terms at
//! the cusps `1/c`, partition numbers and the coefficients `𝒱_r(n)` of
//! `(q;q)_∞^{-r}`.

use std::sync::RwLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{check_divides, check_level};
use crate::characters::kronecker;
use crate::error::{Error, Result};
use crate::exact::{rat, IQuarterRadical, Rational};
use crate::qseries::QSeries;

/// The quotient `η^N((N/d)z) / η(dz)` for `d | N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EtaQuotientSpec {
    level: i64,
    d: i64,
    prefix: usize,
}

impl EtaQuotientSpec {
    pub fn new(n: i64, d: i64) -> Result<Self> {
        check_level(n)?;
        check_divides(d, n)?;
        let num = n * n - d * d;
        if num % (24 * d) != 0 {
            return Err(Error::NonIntegralPrefix { n, d });
        }
        Ok(Self {
            level: n,
            d,
            prefix: (num / (24 * d)) as usize,
        })
    }

    pub fn level(&self) -> i64 {
        self.level
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// `(N² - d²)/(24d)`, the power of `q` in front of the products.
    pub fn prefix_exponent(&self) -> usize {
        self.prefix
    }
}

/// `q^{(N²-d²)/(24d)} (q^{N/d};q^{N/d})_∞^N / (q^d;q^d)_∞` up to `q^{nMax}`.
pub fn eta_quotient_series(spec: &EtaQuotientSpec, n_max: usize) -> Result<QSeries> {
    let n = spec.level;
    let d = spec.d;
    if spec.prefix > n_max {
        return QSeries::new(spec.prefix, n_max, Vec::new());
    }
    let body_trunc = n_max - spec.prefix;
    let numer = QSeries::euler_product_dilated((n / d) as usize, body_trunc).pow(n as u32);
    let denom = QSeries::euler_product_dilated(d as usize, body_trunc).inverse(body_trunc)?;
    Ok(numer.mul(&denom).shift(spec.prefix))
}

/// Order of vanishing of the quotient at the cusp `1/c`, in the local
/// parameter of width `N/c`:
/// `(N/(24c)) (d² gcd(N/d, c)² - gcd(d, c)²) / d`.
pub fn vanishing_order(n: i64, d: i64, c: i64) -> Result<Rational> {
    check_level(n)?;
    check_divides(d, n)?;
    check_divides(c, n)?;
    let g1 = (n / d).gcd(&c);
    let g2 = d.gcd(&c);
    Ok(rat(n, 24 * c) * rat(d * d * g1 * g1 - g2 * g2, d))
}

/// Constant term of the quotient at the cusp `1/c`: for `c = d` it is
/// `(N/d | d) i^{(1-Nd)/2} (d/N)^{N/2}`, and it vanishes otherwise.
pub fn eta_cusp_constant(n: i64, d: i64, c: i64) -> Result<IQuarterRadical> {
    check_level(n)?;
    check_divides(d, n)?;
    check_divides(c, n)?;
    if c != d {
        return Ok(IQuarterRadical::zero());
    }
    let ratio = rat(d, n);
    Ok(IQuarterRadical::from_int(kronecker(n / d, d) as i64)
        * IQuarterRadical::i_pow((1 - n * d) / 2)
        * IQuarterRadical::from_rational(num_traits::pow(ratio.clone(), ((n - 1) / 2) as usize))
        * IQuarterRadical::sqrt(ratio)?)
}

static PARTITIONS: RwLock<Vec<BigInt>> = RwLock::new(Vec::new());

fn ensure_partitions(n: usize) {
    if PARTITIONS.read().unwrap().len() > n {
        return;
    }
    let target = (2 * n).max(256);
    let table = QSeries::euler_product(target)
        .inverse(target)
        .expect("Euler product has constant term 1")
        .to_bigints()
        .expect("partition numbers are integers");
    let mut guard = PARTITIONS.write().unwrap();
    if guard.len() < table.len() {
        *guard = table;
    }
}

/// `P(n)` for a nonnegative integer.
pub fn partition_count(n: usize) -> BigInt {
    ensure_partitions(n);
    PARTITIONS.read().unwrap()[n].clone()
}

/// `P(x)` on the rationals: the partition number for integral `x ≥ 0`, else 0.
pub fn partition_p(x: &Rational) -> BigInt {
    if !x.is_integer() || x.is_negative() {
        return BigInt::zero();
    }
    match x.to_integer().to_usize() {
        Some(n) => partition_count(n),
        None => panic!("partition argument {x} is too large"),
    }
}

/// `nMax`-prefix of `Σ P(m) q^m`.
pub fn partition_series(n_max: usize) -> QSeries {
    ensure_partitions(n_max);
    let table = PARTITIONS.read().unwrap();
    QSeries::from_bigints(table[..=n_max].to_vec(), n_max).expect("length matches")
}

/// Argument `Nn/d² - (N²-d²)/(24d²)` of the partition term.
pub fn partition_argument(n: i64, d: i64, m: u64) -> Rational {
    Rational::new(
        BigInt::from(24 * n) * BigInt::from(m) - BigInt::from(n * n - d * d),
        BigInt::from(24 * d * d),
    )
}

/// `(N/d) · P(Nn/d² - (N²-d²)/(24d²))`.
pub fn scaled_partition_term(n: i64, d: i64, m: u64) -> Result<BigInt> {
    check_divides(d, n)?;
    Ok(BigInt::from(n / d) * partition_p(&partition_argument(n, d, m)))
}

/// Coefficients of `(q;q)_∞^{-r}` up to `q^{nMax}`.
pub fn v_r(r: u32, n_max: usize) -> QSeries {
    if r == 1 {
        return partition_series(n_max);
    }
    QSeries::euler_product(n_max)
        .pow(r)
        .inverse(n_max)
        .expect("constant term 1")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::divisors;
    use crate::exact::int;

    fn brute_partitions(n: usize) -> u64 {
        fn count(rem: usize, max_part: usize) -> u64 {
            if rem == 0 {
                return 1;
            }
            (1..=max_part.min(rem)).map(|p| count(rem - p, p)).sum()
        }
        count(n, n)
    }

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn spec_prefix() {
        assert_eq!(EtaQuotientSpec::new(5, 5).unwrap().prefix_exponent(), 0);
        assert_eq!(EtaQuotientSpec::new(5, 1).unwrap().prefix_exponent(), 1);
        assert_eq!(EtaQuotientSpec::new(35, 5).unwrap().prefix_exponent(), 10);
        assert!(EtaQuotientSpec::new(35, 3).is_err());
        for n in [5i64, 7, 11, 13, 35, 55, 77, 143, 385] {
            for d in divisors(n as u64) {
                assert!(EtaQuotientSpec::new(n, d as i64).is_ok());
            }
        }
    }

    #[test]
    fn eta_series_examples() {
        let s = eta_quotient_series(&EtaQuotientSpec::new(5, 5).unwrap(), 30).unwrap();
        let direct = QSeries::euler_product(30)
            .pow(5)
            .mul(&QSeries::euler_product_dilated(5, 30).inverse(30).unwrap());
        assert_eq!(s, direct);
        assert_eq!(s.coeff(0), Some(int(1)));

        let s = eta_quotient_series(&EtaQuotientSpec::new(5, 1).unwrap(), 30).unwrap();
        let direct = QSeries::euler_product_dilated(5, 29)
            .pow(5)
            .mul(&QSeries::euler_product(29).inverse(29).unwrap())
            .shift(1);
        assert_eq!(s, direct);
        assert_eq!(s.leading_exponent(), Some(1));

        let tiny = eta_quotient_series(&EtaQuotientSpec::new(35, 1).unwrap(), 10).unwrap();
        assert!(tiny.is_zero());
        assert_eq!(tiny.trunc(), 10);
    }

    #[test]
    fn u_identity_at_full_divisor() {
        for n in [5i64, 7, 13] {
            let s = eta_quotient_series(&EtaQuotientSpec::new(n, n).unwrap(), 60).unwrap();
            let rhs = QSeries::euler_product(60).pow(n as u32).mul(
                &partition_series(60 / n as usize)
                    .dilate(n as usize)
                    .truncate(60),
            );
            assert_eq!(s, rhs);
        }
    }

    #[test]
    fn u_operator_gives_partition_terms() {
        let n_max = 100;
        for n in [5i64, 7, 13] {
            for d in divisors(n as u64).into_iter().map(|d| d as i64) {
                let m = (n / d) as usize;
                let spec = EtaQuotientSpec::new(n, d).unwrap();
                let lhs = eta_quotient_series(&spec, n_max * m).unwrap().u_operator(m);
                let terms: Vec<BigInt> = (0..=n_max as u64)
                    .map(|k| partition_p(&partition_argument(n, d, k)))
                    .collect();
                let rhs = QSeries::euler_product(n_max)
                    .pow(n as u32)
                    .mul(&QSeries::from_bigints(terms, n_max).unwrap());
                assert_eq!(lhs, rhs, "N={n} d={d}");
            }
        }
    }

    #[test]
    fn leading_power_is_prefix() {
        for n in [5i64, 7, 11, 13] {
            for d in divisors(n as u64).into_iter().map(|d| d as i64) {
                let spec = EtaQuotientSpec::new(n, d).unwrap();
                let s = eta_quotient_series(&spec, 40).unwrap();
                assert_eq!(s.leading_exponent(), Some(spec.prefix_exponent()));
            }
        }
    }

    #[test]
    fn vanishing_order_examples() {
        assert_eq!(vanishing_order(35, 5, 7).unwrap(), int(51));
        assert_eq!(vanishing_order(5, 1, 5).unwrap(), int(1));
        assert_eq!(vanishing_order(5, 5, 5).unwrap(), int(0));
        assert!(vanishing_order(35, 5, 3).is_err());
        for n in [5i64, 7, 11, 13, 35, 55, 77] {
            let divs: Vec<i64> = divisors(n as u64).into_iter().map(|d| d as i64).collect();
            for &d in &divs {
                for &c in &divs {
                    let v = vanishing_order(n, d, c).unwrap();
                    assert!(!v.is_negative());
                    assert_eq!(v.is_zero(), c == d, "N={n} d={d} c={c}");
                }
                let prefix = EtaQuotientSpec::new(n, d).unwrap().prefix_exponent();
                assert_eq!(vanishing_order(n, d, n).unwrap(), int(prefix as i64));
            }
        }
    }

    #[test]
    fn cusp_constant_examples() {
        assert_eq!(eta_cusp_constant(5, 5, 5).unwrap(), IQuarterRadical::one());
        assert!(eta_cusp_constant(5, 1, 5).unwrap().is_zero());
        let expected = IQuarterRadical::new(rat(-1, 125), 0, int(5)).unwrap();
        assert_eq!(eta_cusp_constant(5, 1, 1).unwrap(), expected);
    }

    #[test]
    fn partition_values() {
        assert_eq!(partition_p(&int(4)), big(5));
        assert_eq!(partition_p(&rat(1, 5)), big(0));
        assert_eq!(partition_p(&int(6)), big(11));
        assert_eq!(partition_p(&int(-3)), big(0));
        assert_eq!(partition_count(100), "190569292".parse::<BigInt>().unwrap());
        assert_eq!(partition_count(1000).to_string().len(), 32);
        for n in 0..=30 {
            assert_eq!(partition_count(n), big(brute_partitions(n) as i64));
        }
    }

    #[test]
    fn scaled_terms() {
        assert_eq!(scaled_partition_term(5, 1, 1).unwrap(), big(25));
        assert_eq!(scaled_partition_term(5, 5, 1).unwrap(), big(0));
        assert_eq!(scaled_partition_term(13, 13, 26).unwrap(), big(2));
        assert_eq!(scaled_partition_term(35, 5, 1).unwrap(), big(0));
        assert_eq!(scaled_partition_term(13, 1, 1).unwrap(), big(143));
    }

    #[test]
    fn v_r_values() {
        let v1 = v_r(1, 20);
        for n in 0..=20 {
            assert_eq!(
                v1.coeff(n),
                Some(Rational::from_integer(partition_count(n)))
            );
        }
        assert_eq!(v_r(2, 5).coeff(2), Some(int(5)));
        let v0 = v_r(0, 10);
        assert_eq!(v0, QSeries::one(10));
        assert_eq!(v_r(3, 30), v_r(1, 30).pow(3));
    }
}
