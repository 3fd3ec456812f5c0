//! Exact rationals and the multiplicative value system `r·i^m·√s`.
//!
//! Every Gauss sum, Gauss sum of a character and cusp constant handled by the
//! crate is a rational multiple of `i^m·√s` with `s` a positive integer, so a
//! one-dimensional radical suffices; no cyclotomic field arithmetic is needed.

use std::fmt;
use std::ops::{Div, Mul, Neg};

use num_bigint::{BigInt, BigUint, Sign};
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Trial-division bound for square extraction.
const SQUARE_TRIAL_BOUND: u64 = 1_000_000;

/// Splits `n` as `root² · core` with `core` squarefree (up to the trial bound;
/// a cofactor free of small primes is only reduced when it is a perfect square).
fn split_square(n: &BigUint) -> (BigUint, BigUint) {
    let mut rest = n.clone();
    let mut root = BigUint::one();
    let mut core = BigUint::one();
    let mut p = 2u64;
    while p <= SQUARE_TRIAL_BOUND {
        let bp = BigUint::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut e = 0u32;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            e += 1;
        }
        if e > 0 {
            root *= bp.pow(e / 2);
            if e % 2 == 1 {
                core *= &bp;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > BigUint::one() {
        let s = rest.sqrt();
        if &s * &s == rest {
            root *= s;
        } else {
            core *= rest;
        }
    }
    (root, core)
}

/// Exact value `coeff · i^i_exp · √radicand`.
///
/// Normal form: `i_exp ∈ {0, 1}` (an `i²` is folded into the sign of
/// `coeff`), `radicand` is a squarefree positive integer, and zero is
/// `0 · i⁰ · √1`. Equality is field-wise on the normal form, which makes it
/// exact value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IQuarterRadical {
    coeff: Rational,
    i_exp: u8,
    radicand: BigInt,
}

impl IQuarterRadical {
    /// Builds and normalizes `coeff · i^i_exp · √radicand`. The radicand may be
    /// any non-negative rational.
    pub fn new(coeff: Rational, i_exp: i64, radicand: Rational) -> Result<Self> {
        if radicand.is_negative() {
            return Err(Error::OutOfRange(format!(
                "radicand {radicand} must be non-negative"
            )));
        }
        Ok(Self::normalized(coeff, i_exp, radicand))
    }

    fn normalized(mut coeff: Rational, i_exp: i64, radicand: Rational) -> Self {
        if coeff.is_zero() || radicand.is_zero() {
            return Self::zero();
        }
        let mut e = i_exp.rem_euclid(4) as u8;
        if e >= 2 {
            coeff = -coeff;
            e -= 2;
        }
        let num = radicand.numer().magnitude().clone();
        let den = radicand.denom().magnitude().clone();
        let (num_root, num_core) = split_square(&num);
        let (den_root, den_core) = split_square(&den);
        // sqrt(a/b) = (ra / (rb * cb)) * sqrt(ca * cb)
        let scale = Rational::new(
            BigInt::from_biguint(Sign::Plus, num_root),
            BigInt::from_biguint(Sign::Plus, den_root * &den_core),
        );
        coeff *= scale;
        Self {
            coeff,
            i_exp: e,
            radicand: BigInt::from_biguint(Sign::Plus, num_core * den_core),
        }
    }

    pub fn zero() -> Self {
        Self {
            coeff: Rational::zero(),
            i_exp: 0,
            radicand: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::normalized(r, 0, Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    /// `i^e` for any integer `e`.
    pub fn i_pow(e: i64) -> Self {
        Self::normalized(Rational::one(), e, Rational::one())
    }

    /// `√s` for a non-negative rational `s`.
    pub fn sqrt(s: Rational) -> Result<Self> {
        Self::new(Rational::one(), 0, s)
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn i_exp(&self) -> u8 {
        self.i_exp
    }

    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// The value as a rational, when it is one.
    pub fn as_rational(&self) -> Option<&Rational> {
        (self.i_exp == 0 && self.radicand.is_one()).then_some(&self.coeff)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // 1/(r i^m √s) = (1/(r s)) i^{-m} √s
        let s = Rational::from_integer(self.radicand.clone());
        Some(Self::normalized(
            (&self.coeff * &s).recip(),
            -(self.i_exp as i64),
            s,
        ))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// Floating-point value `(re, im)`.
    pub fn approx(&self) -> Complex64 {
        let magnitude =
            rational_to_f64(&self.coeff) * self.radicand.to_f64().unwrap_or(f64::INFINITY).sqrt();
        if self.i_exp == 0 {
            Complex64::new(magnitude, 0.0)
        } else {
            Complex64::new(0.0, magnitude)
        }
    }
}

/// Converts a rational to the nearest `f64` without overflowing on huge
/// numerators and denominators.
pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

impl Mul for &IQuarterRadical {
    type Output = IQuarterRadical;

    fn mul(self, rhs: &IQuarterRadical) -> IQuarterRadical {
        if self.is_zero() || rhs.is_zero() {
            return IQuarterRadical::zero();
        }
        // sqrt(s1) sqrt(s2) = g sqrt((s1/g)(s2/g)) for squarefree s1, s2
        let g = self.radicand.gcd(&rhs.radicand);
        let s = (&self.radicand / &g) * (&rhs.radicand / &g);
        IQuarterRadical::normalized(
            &self.coeff * &rhs.coeff * Rational::from_integer(g),
            self.i_exp as i64 + rhs.i_exp as i64,
            Rational::from_integer(s),
        )
    }
}

impl Mul for IQuarterRadical {
    type Output = IQuarterRadical;

    fn mul(self, rhs: IQuarterRadical) -> IQuarterRadical {
        &self * &rhs
    }
}

impl Div for &IQuarterRadical {
    type Output = IQuarterRadical;

    /// Panics on division by zero.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &IQuarterRadical) -> IQuarterRadical {
        self * &rhs.inverse().expect("division by zero radical")
    }
}

impl Div for IQuarterRadical {
    type Output = IQuarterRadical;

    fn div(self, rhs: IQuarterRadical) -> IQuarterRadical {
        &self / &rhs
    }
}

impl Neg for IQuarterRadical {
    type Output = IQuarterRadical;

    fn neg(self) -> IQuarterRadical {
        IQuarterRadical {
            coeff: -self.coeff,
            ..self
        }
    }
}

impl fmt::Display for IQuarterRadical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors: Vec<String> = Vec::new();
        if self.i_exp == 1 {
            factors.push("i".into());
        }
        if !self.radicand.is_one() {
            factors.push(format!("sqrt({})", self.radicand));
        }
        let tail = factors.join("*");
        if tail.is_empty() {
            write!(f, "{}", self.coeff)
        } else if self.coeff.is_one() {
            f.write_str(&tail)
        } else if (-&self.coeff).is_one() {
            write!(f, "-{tail}")
        } else {
            write!(f, "{}*{tail}", self.coeff)
        }
    }
}
