//! Truncated formal power series in `q` with exact rational coefficients.
//!
//! A [`QSeries`] knows the coefficients of `q^n` for `n ≤ trunc` and nothing
//! beyond. Every operation returns only the coefficients it can guarantee from
//! its inputs, so truncation error never leaks into reported values.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::Rational;

#[derive(Clone, Debug)]
pub struct QSeries {
    valuation: usize,
    trunc: usize,
    /// `coeffs[j]` is the coefficient of `q^(valuation + j)`; the vector has
    /// length `trunc - valuation + 1`, or is empty when `valuation > trunc`.
    coeffs: Vec<Rational>,
}

impl QSeries {
    /// Series `q^valuation · Σ coeffs[j] q^j`, known up to `q^trunc`.
    /// Missing trailing coefficients are zero; excess ones are rejected.
    pub fn new(valuation: usize, trunc: usize, mut coeffs: Vec<Rational>) -> Result<Self> {
        let len = (trunc + 1).saturating_sub(valuation);
        if coeffs.len() > len {
            return Err(Error::OutOfRange(format!(
                "{} coefficients given for valuation {valuation} and trunc {trunc}",
                coeffs.len()
            )));
        }
        coeffs.resize(len, Rational::zero());
        Ok(Self {
            valuation,
            trunc,
            coeffs,
        })
    }

    fn from_parts(valuation: usize, trunc: usize, coeffs: Vec<Rational>) -> Self {
        debug_assert_eq!(coeffs.len(), (trunc + 1).saturating_sub(valuation));
        Self {
            valuation,
            trunc,
            coeffs,
        }
    }

    /// `Σ coeffs[n] q^n` known up to `q^trunc`.
    pub fn from_coeffs(coeffs: Vec<Rational>, trunc: usize) -> Result<Self> {
        Self::new(0, trunc, coeffs)
    }

    pub fn from_ints(coeffs: &[i64], trunc: usize) -> Result<Self> {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
            trunc,
        )
    }

    pub fn from_bigints(coeffs: Vec<BigInt>, trunc: usize) -> Result<Self> {
        Self::from_coeffs(
            coeffs.into_iter().map(Rational::from_integer).collect(),
            trunc,
        )
    }

    pub fn zero(trunc: usize) -> Self {
        Self::from_parts(0, trunc, vec![Rational::zero(); trunc + 1])
    }

    pub fn one(trunc: usize) -> Self {
        Self::constant(Rational::one(), trunc)
    }

    pub fn constant(c: Rational, trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        s.coeffs[0] = c;
        s
    }

    pub fn valuation(&self) -> usize {
        self.valuation
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    /// Coefficient of `q^n`, or `None` when `n` is beyond the truncation.
    pub fn coeff(&self, n: usize) -> Option<Rational> {
        if n > self.trunc {
            None
        } else if n < self.valuation {
            Some(Rational::zero())
        } else {
            Some(self.coeffs[n - self.valuation].clone())
        }
    }

    /// Dense coefficients of `q^0 ..= q^trunc`.
    pub fn to_vec(&self) -> Vec<Rational> {
        (0..=self.trunc).map(|n| self.coeff(n).unwrap()).collect()
    }

    /// Integer coefficients of `q^0 ..= q^trunc`, if all are integral.
    pub fn to_bigints(&self) -> Option<Vec<BigInt>> {
        self.to_vec()
            .into_iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// True when every known coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Index of the first nonzero known coefficient.
    pub fn leading_exponent(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|j| j + self.valuation)
    }

    /// Forgets coefficients above `q^t`.
    pub fn truncate(&self, t: usize) -> Self {
        if t >= self.trunc {
            return self.clone();
        }
        let len = (t + 1).saturating_sub(self.valuation);
        Self::from_parts(self.valuation, t, self.coeffs[..len].to_vec())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_parts(
            self.valuation,
            self.trunc,
            self.coeffs.iter().map(|x| x * c).collect(),
        )
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        Self::from_parts(self.valuation + k, self.trunc + k, self.coeffs.clone())
    }

    /// Substitutes `q ↦ q^m`. Coefficients strictly between the images of the
    /// known range are known zeros, so the result is exact up to
    /// `m·(trunc+1) - 1`.
    pub fn dilate(&self, m: usize) -> Self {
        assert!(m >= 1, "dilate by zero");
        let trunc = m * (self.trunc + 1) - 1;
        let valuation = m * self.valuation;
        let mut coeffs = vec![Rational::zero(); trunc + 1 - valuation];
        for (j, c) in self.coeffs.iter().enumerate() {
            coeffs[m * j] = c.clone();
        }
        Self::from_parts(valuation, trunc, coeffs)
    }

    /// Product, exact up to `min(a.trunc + b.valuation, b.trunc + a.valuation)`.
    pub fn mul(&self, other: &Self) -> Self {
        let valuation = self.valuation + other.valuation;
        let trunc = (self.trunc + other.valuation).min(other.trunc + self.valuation);
        if valuation > trunc {
            return Self::from_parts(valuation, trunc, Vec::new());
        }
        let len = trunc - valuation + 1;
        let a = &self.coeffs[..len.min(self.coeffs.len())];
        let b = &other.coeffs[..len.min(other.coeffs.len())];
        let coeffs = if self.is_integral() && other.is_integral() {
            let ai: Vec<BigInt> = a.iter().map(|c| c.to_integer()).collect();
            let bi: Vec<BigInt> = b.iter().map(|c| c.to_integer()).collect();
            convolve_int(&ai, &bi, len)
                .into_iter()
                .map(Rational::from_integer)
                .collect()
        } else {
            convolve_rational(a, b, len)
        };
        Self::from_parts(valuation, trunc, coeffs)
    }

    /// `self^k` by repeated squaring; `self^0` is `1` known to `self.trunc`.
    pub fn pow(&self, k: u32) -> Self {
        let mut acc: Option<Self> = None;
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc.unwrap_or_else(|| Self::one(self.trunc))
    }

    /// Multiplicative inverse up to `min(trunc, self.trunc)` via
    /// `b_n = -(1/a_0) Σ_{j=1..n} a_j b_{n-j}`.
    pub fn inverse(&self, trunc: usize) -> Result<Self> {
        if self.valuation != 0 || self.coeffs.first().is_none_or(|c| c.is_zero()) {
            return Err(Error::ZeroConstantTerm);
        }
        let trunc = trunc.min(self.trunc);
        let support: Vec<usize> = (1..=trunc).filter(|&j| !self.coeffs[j].is_zero()).collect();
        let a0 = &self.coeffs[0];
        let unit_integral = self.is_integral() && a0.abs().is_one();
        let coeffs = if unit_integral {
            let a: Vec<BigInt> = self.coeffs[..=trunc]
                .iter()
                .map(|c| c.to_integer())
                .collect();
            let sign = a[0].clone();
            let mut b: Vec<BigInt> = Vec::with_capacity(trunc + 1);
            b.push(sign.clone());
            for n in 1..=trunc {
                let mut acc = BigInt::zero();
                for &j in support.iter().take_while(|&&j| j <= n) {
                    acc += &a[j] * &b[n - j];
                }
                b.push(-acc * &sign);
            }
            b.into_iter().map(Rational::from_integer).collect()
        } else {
            let inv0 = a0.recip();
            let mut b: Vec<Rational> = Vec::with_capacity(trunc + 1);
            b.push(inv0.clone());
            for n in 1..=trunc {
                let mut acc = Rational::zero();
                for &j in support.iter().take_while(|&&j| j <= n) {
                    acc += &self.coeffs[j] * &b[n - j];
                }
                b.push(-acc * &inv0);
            }
            b
        };
        Ok(Self::from_parts(0, trunc, coeffs))
    }

    /// The operator `U(m)`: `Σ a_n q^n ↦ Σ a_{nm} q^n`, known to `⌊trunc/m⌋`.
    pub fn u_operator(&self, m: usize) -> Self {
        assert!(m >= 1, "U(0) is undefined");
        let trunc = self.trunc / m;
        let valuation = self.valuation.div_ceil(m);
        let coeffs = (valuation..=trunc)
            .map(|n| self.coeff(n * m).unwrap())
            .collect::<Vec<_>>();
        Self::from_parts(valuation, trunc, coeffs)
    }

    /// `∏_{n=1}^{trunc} (1 - q^n)` up to `q^trunc`.
    pub fn euler_product(trunc: usize) -> Self {
        let coeffs = match euler_product_i128(trunc) {
            Some(c) => c
                .into_iter()
                .map(|x| Rational::from_integer(x.into()))
                .collect(),
            None => euler_product_big(trunc)
                .into_iter()
                .map(Rational::from_integer)
                .collect(),
        };
        Self::from_parts(0, trunc, coeffs)
    }

    /// `∏_{n≥1} (1 - q^{step·n})` up to `q^trunc`.
    pub fn euler_product_dilated(step: usize, trunc: usize) -> Self {
        Self::euler_product(trunc / step)
            .dilate(step)
            .truncate(trunc)
    }
}

fn euler_product_i128(trunc: usize) -> Option<Vec<i128>> {
    let mut c = vec![0i128; trunc + 1];
    c[0] = 1;
    for n in 1..=trunc {
        for i in (n..=trunc).rev() {
            c[i] = c[i].checked_sub(c[i - n])?;
        }
    }
    Some(c)
}

fn euler_product_big(trunc: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); trunc + 1];
    c[0] = BigInt::one();
    for n in 1..=trunc {
        for i in (n..=trunc).rev() {
            let prev = c[i - n].clone();
            c[i] -= prev;
        }
    }
    c
}

fn convolve_int(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    let small_a: Option<Vec<i64>> = a.iter().map(|x| x.to_i64()).collect();
    let small_b: Option<Vec<i64>> = b.iter().map(|x| x.to_i64()).collect();
    if let (Some(sa), Some(sb)) = (small_a, small_b) {
        // Products of i64 values summed in i128 cannot overflow for len < 2^62.
        let mut acc = vec![0i128; len];
        for (i, &x) in sa.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in sb.iter().enumerate().take(len - i) {
                acc[i + j] += x as i128 * y as i128;
            }
        }
        for (o, v) in out.iter_mut().zip(acc) {
            *o = v.into();
        }
        return out;
    }
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn convolve_rational(a: &[Rational], b: &[Rational], len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

impl PartialEq for QSeries {
    /// Semantic equality: same truncation and same known coefficients.
    fn eq(&self, other: &Self) -> bool {
        self.trunc == other.trunc && (0..=self.trunc).all(|n| self.coeff(n) == other.coeff(n))
    }
}

impl Eq for QSeries {}

impl Add for &QSeries {
    type Output = QSeries;

    fn add(self, other: &QSeries) -> QSeries {
        let trunc = self.trunc.min(other.trunc);
        let valuation = self.valuation.min(other.valuation);
        let coeffs = (valuation..=trunc)
            .map(|n| self.coeff(n).unwrap() + other.coeff(n).unwrap())
            .collect::<Vec<_>>();
        if valuation > trunc {
            return QSeries::from_parts(valuation, trunc, Vec::new());
        }
        QSeries::from_parts(valuation, trunc, coeffs)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;

    fn neg(self) -> QSeries {
        self.scale(&-Rational::one())
    }
}

impl Sub for &QSeries {
    type Output = QSeries;

    fn sub(self, other: &QSeries) -> QSeries {
        self + &(-other)
    }
}

impl Mul for &QSeries {
    type Output = QSeries;

    fn mul(self, other: &QSeries) -> QSeries {
        QSeries::mul(self, other)
    }
}

/// Renders an exact rational as `"num/den"`, or `"num"` for integers.
pub fn rational_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses the output of [`rational_string`].
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::OutOfRange(format!("malformed rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Exact rational rendered with `digits` decimals, rounded half away from zero.
pub fn decimal_string(r: &Rational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = r.abs() * Rational::from_integer(scale.clone());
    let rounded = (scaled + Rational::new(1.into(), 2.into()))
        .floor()
        .to_integer();
    let (whole, frac) = rounded.div_rem(&scale);
    let sign = if r.is_negative() && !rounded.is_zero() {
        "-"
    } else {
        ""
    };
    if digits == 0 {
        return format!("{sign}{whole}");
    }
    format!(
        "{sign}{whole}.{:0>width$}",
        frac.to_string(),
        width = digits as usize
    )
}

#[derive(Serialize, Deserialize)]
struct QSeriesJson {
    valuation: usize,
    trunc: usize,
    coeffs: Vec<[String; 2]>,
}

impl Serialize for QSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        QSeriesJson {
            valuation: self.valuation,
            trunc: self.trunc,
            coeffs: self
                .coeffs
                .iter()
                .map(|c| [c.numer().to_string(), c.denom().to_string()])
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = QSeriesJson::deserialize(deserializer)?;
        let coeffs = raw
            .coeffs
            .iter()
            .map(|[n, d]| parse_rational(&format!("{n}/{d}")))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        QSeries::new(raw.valuation, raw.trunc, coeffs).map_err(D::Error::custom)
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let n = self.valuation + j;
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag_s = rational_string(&mag);
            match n {
                0 => write!(f, "{mag_s}")?,
                _ if mag.is_one() => write!(f, "q^{n}")?,
                _ => write!(f, "{mag_s}*q^{n}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.trunc + 1)
    }
}
