//! Exact checks of the identity
//! `θ-series = (q;q)_∞^N Σ_{d|N} (N/d) Σ_n P(Nn/d² - (N²-d²)/(24d²)) q^n + C(z)`
//! and the facts about the remainder `C(z)` and `b = C / (q;q)_∞^N`.
//!
//! The residual is always the difference of two independently computed
//! series (lattice counts against eta/partition products), never routed
//! through the Eisenstein expansions.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{check_level, divisors, prime_factors};
use crate::eisenstein::EisensteinProfile;
use crate::error::{Error, Result};
use crate::eta::scaled_partition_term;
use crate::exact::{int, rat, Rational};
use crate::qseries::{decimal_string, parse_rational, rational_string, QSeries};
use crate::theta::{cphi_from_theta, theta_series};

/// Prefix marking checks that are reported but never fail a run.
pub const DIAGNOSTIC_PREFIX: &str = "diagnostic.";

/// Digits used when rendering ratios.
pub const RATIO_DIGITS: u32 = 12;

/// Levels at which the residual vanishes identically.
pub const KOLITSCH_LEVELS: [i64; 3] = [5, 7, 11];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, pass: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.to_string(),
            pass,
            detail: detail.into(),
        }
    }

    pub fn is_diagnostic(&self) -> bool {
        self.name.starts_with(DIAGNOSTIC_PREFIX)
    }
}

/// `Σ_{d|N} (N/d) P(Nn/d² - (N²-d²)/(24d²))` for `n ≤ nMax`.
pub fn main_sum_series(n: i64, n_max: usize) -> Result<QSeries> {
    check_level(n)?;
    let divs = divisors(n as u64);
    let coeffs = (0..=n_max as u64)
        .map(|m| {
            divs.iter()
                .map(|&d| scaled_partition_term(n, d as i64, m))
                .sum::<Result<BigInt>>()
        })
        .collect::<Result<Vec<_>>>()?;
    QSeries::from_bigints(coeffs, n_max)
}

fn residual_from_parts(theta: &QSeries, main: &QSeries, n: i64) -> QSeries {
    let euler_n = QSeries::euler_product(theta.trunc()).pow(n as u32);
    theta - &euler_n.mul(main)
}

/// `C(z) = θ-series - (q;q)_∞^N · Σ_n mainSum(n) q^n`.
pub fn residual_cusp_form(n: i64, n_max: usize) -> Result<QSeries> {
    let theta = theta_series(n, n_max)?;
    Ok(residual_from_parts(&theta, &main_sum_series(n, n_max)?, n))
}

/// `b = C(z) / (q;q)_∞^N`, so that `cφ_N(n) = mainSum(n) + b(n)`.
pub fn b_coefficients(n: i64, n_max: usize) -> Result<QSeries> {
    let residual = residual_cusp_form(n, n_max)?;
    divide_by_euler_power(&residual, n)
}

fn divide_by_euler_power(s: &QSeries, n: i64) -> Result<QSeries> {
    let euler_n = QSeries::euler_product(s.trunc()).pow(n as u32);
    Ok(s.mul(&euler_n.inverse(s.trunc())?))
}

/// `q (q^13;q^13)_∞ / (q;q)_∞²` up to `q^{nMax}`.
pub fn cwy13_series(n_max: usize) -> QSeries {
    if n_max == 0 {
        return QSeries::zero(0);
    }
    let t = n_max - 1;
    let numer = QSeries::euler_product_dilated(13, t);
    let denom = QSeries::euler_product(t)
        .pow(2)
        .inverse(t)
        .expect("constant term 1");
    numer.mul(&denom).shift(1)
}

fn first_difference(a: &QSeries, b: &QSeries) -> Option<usize> {
    (0..=a.trunc().min(b.trunc())).find(|&k| a.coeff(k) != b.coeff(k))
}

/// Ratio between `b` at level 13 and `q(q^13;q^13)_∞/(q;q)_∞²`.
pub const CWY13_NORMALIZATION: i64 = 26;

fn cwy13_check(b: &QSeries) -> Check {
    let expected = cwy13_series(b.trunc()).scale(&int(CWY13_NORMALIZATION));
    match first_difference(b, &expected) {
        None => Check::new(
            "cwy13",
            true,
            format!("b(n) = 26·[q^n] q(q^13;q^13)/(q;q)^2 for n ≤ {}", b.trunc()),
        ),
        Some(k) => Check::new(
            "cwy13",
            false,
            format!(
                "first mismatch at n={k}: b={} expected {}",
                rational_string(&b.coeff(k).unwrap()),
                rational_string(&expected.coeff(k).unwrap())
            ),
        ),
    }
}

/// Checks the level-13 identity `b(n) = 26 [q^n] q(q^13;q^13)_∞/(q;q)_∞²`.
pub fn verify_cwy13(n_max: usize) -> Result<Check> {
    Ok(cwy13_check(&b_coefficients(13, n_max)?))
}

/// `⌈k [SL₂(ℤ) : Γ₀(N)] / 12⌉` with `k = (N-1)/2`, index `N ∏_{p|N} (1 + 1/p)`.
pub fn sturm_bound(n: i64) -> Result<u64> {
    check_level(n)?;
    let mut index = int(n);
    for p in prime_factors(n as u64) {
        index *= rat(p as i64 + 1, p as i64);
    }
    let bound = int((n - 1) / 2) * index / int(12);
    Ok(bound.ceil().to_integer().to_u64().expect("small bound"))
}

fn kolitsch_check(n: i64, residual: &QSeries, cphi: &QSeries, main: &QSeries) -> Result<Check> {
    let sturm = sturm_bound(n)?;
    if let Some(k) = residual.leading_exponent() {
        return Ok(Check::new(
            "kolitsch",
            false,
            format!(
                "residual coefficient at n={k} is {}",
                rational_string(&residual.coeff(k).unwrap())
            ),
        ));
    }
    if let Some(k) = first_difference(cphi, main) {
        return Ok(Check::new(
            "kolitsch",
            false,
            format!("cphi_{n}({k}) differs from the partition sum"),
        ));
    }
    Ok(Check::new(
        "kolitsch",
        true,
        format!(
            "residual vanishes for n ≤ {} (Sturm bound {sturm}); cphi_{n}(1) = {}",
            residual.trunc(),
            cphi.coeff(1)
                .map(|c| rational_string(&c))
                .unwrap_or_else(|| "-".into())
        ),
    ))
}

/// For `N ∈ {5, 7, 11}` and `nMax ≥ 50`: the residual is identically zero and
/// `cφ_N(n)` equals the partition sum for every `n ≤ nMax`.
pub fn verify_kolitsch(n: i64, n_max: usize) -> Result<Check> {
    if !KOLITSCH_LEVELS.contains(&n) {
        return Err(Error::OutOfRange(format!("N={n} is not one of 5, 7, 11")));
    }
    if n_max < 50 {
        return Err(Error::OutOfRange(format!("nMax={n_max} is below 50")));
    }
    let theta = theta_series(n, n_max)?;
    let main = main_sum_series(n, n_max)?;
    let residual = residual_from_parts(&theta, &main, n);
    kolitsch_check(n, &residual, &cphi_from_theta(&theta, n)?, &main)
}

/// Gaps between nonzero `b(n)` and whether the top half `[nMax/2, nMax]`
/// has a nonzero entry. Consistent with, but not a proof of, eventual
/// nonvanishing.
pub fn nonvanishing_scan(n: i64, b: &QSeries) -> Result<Check> {
    if KOLITSCH_LEVELS.contains(&n) || n == 1 {
        return Err(Error::OutOfRange(format!("N={n} has vanishing residual")));
    }
    let nonzero: Vec<usize> = (1..=b.trunc())
        .filter(|&k| !b.coeff(k).unwrap().is_zero())
        .collect();
    let largest_gap = nonzero.windows(2).map(|w| w[1] - w[0]).max().unwrap_or(0);
    let top = nonzero.iter().any(|&k| 2 * k >= b.trunc());
    Ok(Check::new(
        "diagnostic.nonvanishing",
        top,
        format!(
            "{} nonzero b(n) for 1 ≤ n ≤ {}; largest gap {largest_gap}; nonzero in top half: {top}",
            nonzero.len(),
            b.trunc()
        ),
    ))
}

/// Points `(n, cφ_N(n) / mainSum(n))` for `1 ≤ n ≤ nMax`, and the `n` skipped
/// because the partition sum vanishes.
pub fn asymptotic_ratios(cphi: &QSeries, main: &QSeries) -> (Vec<(u64, Rational)>, Vec<u64>) {
    let mut points = Vec::new();
    let mut skipped = Vec::new();
    for k in 1..=cphi.trunc().min(main.trunc()) {
        let m = main.coeff(k).unwrap();
        if m.is_zero() {
            skipped.push(k as u64);
        } else {
            points.push((k as u64, cphi.coeff(k).unwrap() / m));
        }
    }
    (points, skipped)
}

fn ratio_at(points: &[(u64, Rational)], n: u64) -> Option<&Rational> {
    points.iter().find(|(k, _)| *k == n).map(|(_, r)| r)
}

/// Trend of `r(n) = cφ_N(n)/mainSum(n)` toward 1 between `⌈nMax/4⌉` and `nMax`.
pub fn ratio_trend_check(
    n: i64,
    n_max: usize,
    points: &[(u64, Rational)],
    tol: &Rational,
) -> Check {
    let one = Rational::one();
    if KOLITSCH_LEVELS.contains(&n) || n == 1 {
        let exact = points.iter().all(|(_, r)| r == &one);
        return Check::new(
            "asymptotic-trend",
            exact,
            format!("r(n) = 1 exactly for all {} points: {exact}", points.len()),
        );
    }
    let name = if n == 13 && n_max >= 200 {
        "asymptotic-trend"
    } else {
        "diagnostic.asymptotic-trend"
    };
    let early = (n_max as u64).div_ceil(4);
    let (Some(r_end), Some(r_early)) = (ratio_at(points, n_max as u64), ratio_at(points, early))
    else {
        return Check::new(name, false, format!("no ratio at n={early} or n={n_max}"));
    };
    let dev_end = (r_end - &one).abs();
    let dev_early = (r_early - &one).abs();
    let pass = &dev_end < tol && dev_end < dev_early;
    Check::new(
        name,
        pass,
        format!(
            "|r({n_max})-1| = {} (tolerance {}), |r({early})-1| = {}",
            decimal_string(&dev_end, RATIO_DIGITS),
            decimal_string(tol, RATIO_DIGITS),
            decimal_string(&dev_early, RATIO_DIGITS)
        ),
    )
}

/// Expected `b(1)` where it is known in closed form.
pub fn expected_b1(n: i64) -> Option<i64> {
    match n {
        13 => Some(26),
        17 => Some(170),
        19 => Some(266),
        23 => Some(506),
        _ if n >= 29 => Some(n * n),
        _ => None,
    }
}

/// `b(1)` from the `q¹` coefficient of the theta series and series division.
pub fn b1_value(n: i64) -> Result<Rational> {
    let b = b_coefficients(n, 2)?;
    Ok(b.coeff(1).unwrap())
}

fn growth_diagnostic(n: i64, residual: &QSeries) -> Check {
    let lo = 20usize;
    let hi = residual.trunc();
    let exponent = (n - 1) as f64 / 4.0 + 0.75;
    let worst = (lo..=hi)
        .map(|k| {
            let c = crate::exact::rational_to_f64(&residual.coeff(k).unwrap()).abs();
            (k, c / (k as f64).powf(exponent))
        })
        .fold(None, |acc: Option<(usize, f64)>, x| match acc {
            Some(a) if a.1 >= x.1 => Some(a),
            _ => Some(x),
        });
    let detail = match worst {
        Some((k, v)) => format!("max |C(n)|/n^{exponent:.2} over [{lo}, {hi}] is {v:.6e} at n={k}"),
        None => format!("window [{lo}, {hi}] is empty"),
    };
    Check::new("diagnostic.growth", true, detail)
}

fn integrality_diagnostic(n: i64, n_max: usize) -> Result<Check> {
    let profile = EisensteinProfile::new(n)?;
    let u = profile.theta_expansion(n_max)?;
    let bad = (1..=n_max).find(|&k| !u.coeff(k).unwrap().is_integer());
    Ok(Check::new(
        "diagnostic.u-integrality",
        bad.is_none(),
        match bad {
            None => format!("U(n) integral for 1 ≤ n ≤ {n_max}"),
            Some(k) => format!(
                "U({k}) = {} is not integral",
                rational_string(&u.coeff(k).unwrap())
            ),
        },
    ))
}

/// Tunable thresholds for [`verify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Bound on `|r(nMax) - 1|` in the trend check.
    pub ratio_tolerance: Rational,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            ratio_tolerance: rat(1, 10),
        }
    }
}

/// Everything [`verify`] computed for one `(N, nMax)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    #[serde(rename = "N")]
    pub level: i64,
    #[serde(rename = "nMax")]
    pub n_max: usize,
    pub checks: Vec<Check>,
    #[serde(with = "rational_list")]
    pub b: Vec<Rational>,
    #[serde(with = "decimal_pairs")]
    pub ratios: Vec<(u64, Rational)>,
    #[serde(with = "rational_list")]
    pub residual: Vec<Rational>,
    #[serde(skip)]
    pub cphi: Vec<Rational>,
    #[serde(skip)]
    pub main_sum: Vec<Rational>,
}

impl VerificationReport {
    /// True when every non-diagnostic check passed.
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass || c.is_diagnostic())
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// CSV rows `n, cphi, mainSum, b`.
    pub fn csv_rows(&self) -> Vec<[String; 4]> {
        (0..=self.n_max)
            .map(|k| {
                [
                    k.to_string(),
                    self.cphi.get(k).map(rational_string).unwrap_or_default(),
                    self.main_sum
                        .get(k)
                        .map(rational_string)
                        .unwrap_or_default(),
                    rational_string(&self.b[k]),
                ]
            })
            .collect()
    }
}

mod rational_list {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(rational_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        use serde::de::Error as _;
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| parse_rational(s).map_err(D::Error::custom))
            .collect()
    }
}

mod decimal_pairs {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        v: &[(u64, Rational)],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|(n, r)| (n, decimal_string(r, RATIO_DIGITS))))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<(u64, Rational)>, D::Error> {
        use serde::de::Error as _;
        Vec::<(u64, String)>::deserialize(d)?
            .into_iter()
            .map(|(n, s)| parse_decimal(&s).map(|r| (n, r)).map_err(D::Error::custom))
            .collect()
    }
}

/// Parses a plain decimal such as `-1.250` into an exact rational.
pub fn parse_decimal(s: &str) -> Result<Rational> {
    let bad = || Error::OutOfRange(format!("malformed decimal {s:?}"));
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty()
        || !whole
            .bytes()
            .chain(frac.bytes())
            .all(|b| b.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits: BigInt = format!("{whole}{frac}").parse().map_err(|_| bad())?;
    let value = Rational::new(digits, BigInt::from(10u32).pow(frac.len() as u32));
    Ok(if neg { -value } else { value })
}

/// Runs every check that applies to `N` at truncation `nMax`.
pub fn verify(n: i64, n_max: usize, options: &VerifyOptions) -> Result<VerificationReport> {
    check_level(n)?;
    let theta = theta_series(n, n_max)?;
    let main = main_sum_series(n, n_max)?;
    let residual = residual_from_parts(&theta, &main, n);
    let cphi = cphi_from_theta(&theta, n)?;
    let b = divide_by_euler_power(&residual, n)?;
    let mut checks = Vec::new();

    let sum = &main + &b;
    checks.push(match first_difference(&cphi, &sum) {
        None => Check::new(
            "main-identity",
            true,
            format!("cphi_{n}(n) = mainSum(n) + b(n) for n ≤ {n_max}"),
        ),
        Some(k) => Check::new("main-identity", false, format!("mismatch at n={k}")),
    });
    checks.push(Check::new(
        "residual-constant-term",
        residual.coeff(0).unwrap().is_zero(),
        format!("C(0) = {}", rational_string(&residual.coeff(0).unwrap())),
    ));
    if n_max >= 1 {
        let c1 = cphi.coeff(1).unwrap();
        checks.push(Check::new(
            "cphi-first-coefficient",
            c1 == int(n * n),
            format!("cphi_{n}(1) = {}, N² = {}", rational_string(&c1), n * n),
        ));
    }

    let vanishing_expected = n == 1 || KOLITSCH_LEVELS.contains(&n);
    if KOLITSCH_LEVELS.contains(&n) {
        checks.push(kolitsch_check(n, &residual, &cphi, &main)?);
    } else if n_max >= 1 {
        let vanishes = residual.is_zero();
        checks.push(Check::new(
            "residual-classification",
            vanishes == vanishing_expected,
            match residual.leading_exponent() {
                Some(k) => format!("first nonzero residual coefficient at n={k}"),
                None => format!("residual vanishes for n ≤ {n_max}"),
            },
        ));
    }
    if n == 13 {
        checks.push(cwy13_check(&b));
    }
    if let (Some(expected), true) = (expected_b1(n), n_max >= 1) {
        let got = b.coeff(1).unwrap();
        checks.push(Check::new(
            "b1-table",
            got == int(expected),
            format!("b(1) = {}, expected {expected}", rational_string(&got)),
        ));
    }
    if !vanishing_expected {
        checks.push(nonvanishing_scan(n, &b)?);
    }

    let (ratios, skipped) = asymptotic_ratios(&cphi, &main);
    if n_max >= 1 {
        checks.push(ratio_trend_check(
            n,
            n_max,
            &ratios,
            &options.ratio_tolerance,
        ));
    }
    checks.push(Check::new(
        "diagnostic.ratio-skips",
        true,
        if skipped.is_empty() {
            "no points skipped".to_string()
        } else {
            format!("mainSum(n) = 0, ratio undefined, at n = {skipped:?}")
        },
    ));
    checks.push(Check::new(
        "diagnostic.sturm",
        n_max as u64 >= sturm_bound(n)?,
        format!("Sturm bound {} for weight {}", sturm_bound(n)?, (n - 1) / 2),
    ));
    if !vanishing_expected {
        checks.push(growth_diagnostic(n, &residual));
    }
    if n >= 5 {
        checks.push(integrality_diagnostic(n, n_max)?);
    }
    checks.push(Check::new(
        "diagnostic.scope",
        true,
        "finite truncation cannot decide that b(n) is nonzero infinitely often, nor the \
         pole structure of the level-p analogues for p ≥ 17; the former is only \
         sampled by diagnostic.nonvanishing",
    ));

    Ok(VerificationReport {
        level: n,
        n_max,
        checks,
        b: b.to_vec(),
        ratios,
        residual: residual.to_vec(),
        cphi: cphi.to_vec(),
        main_sum: main.to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sturm_examples() {
        assert_eq!(sturm_bound(5).unwrap(), 1);
        assert_eq!(sturm_bound(7).unwrap(), 2);
        assert_eq!(sturm_bound(11).unwrap(), 5);
        assert_eq!(sturm_bound(1).unwrap(), 0);
    }

    #[test]
    fn main_sum_small_values() {
        let m5 = main_sum_series(5, 3).unwrap();
        assert_eq!(m5.coeff(1), Some(int(25)));
        let m13 = main_sum_series(13, 1).unwrap();
        assert_eq!(m13.coeff(1), Some(int(143)));
        assert_eq!(main_sum_series(1, 5).unwrap().to_vec()[5], int(7));
    }

    #[test]
    fn kolitsch_levels_vanish() {
        for n in KOLITSCH_LEVELS {
            assert!(residual_cusp_form(n, 60).unwrap().is_zero());
            assert!(verify_kolitsch(n, 60).unwrap().pass);
        }
        assert!(verify_kolitsch(13, 60).is_err());
        assert!(verify_kolitsch(5, 10).is_err());
        assert!(residual_cusp_form(1, 30).unwrap().is_zero());
    }

    #[test]
    fn level_13() {
        let r = residual_cusp_form(13, 20).unwrap();
        assert_eq!(r.coeff(0), Some(int(0)));
        assert!(!r.is_zero());
        assert_eq!(b_coefficients(13, 20).unwrap().coeff(1), Some(int(26)));
        assert!(verify_cwy13(40).unwrap().pass);
        assert!(verify_cwy13(0).unwrap().pass);
        // the normalization is forced by b(1) = 26 against a(1) = 1
        assert_eq!(cwy13_series(2).coeff(1), Some(int(1)));
        assert_eq!(b_coefficients(13, 2).unwrap().coeff(2), Some(int(52)));
    }

    #[test]
    fn cwy13_first_terms() {
        // q(1 + 2q + 5q² + ...) from 1/(q;q)² with (q^13;q^13) invisible below q^13
        let s = cwy13_series(5);
        assert_eq!(
            s.to_vec(),
            vec![int(0), int(1), int(2), int(5), int(10), int(20)]
        );
    }

    #[test]
    fn b1_values() {
        for n in [13i64, 17, 19, 23, 29, 31] {
            assert_eq!(b1_value(n).unwrap(), int(expected_b1(n).unwrap()), "N={n}");
        }
    }

    #[test]
    fn ratios_at_13() {
        let theta = theta_series(13, 8).unwrap();
        let cphi = cphi_from_theta(&theta, 13).unwrap();
        let main = main_sum_series(13, 8).unwrap();
        let (points, skipped) = asymptotic_ratios(&cphi, &main);
        assert!(skipped.is_empty());
        assert_eq!(points[0], (1, rat(169, 143)));
        assert_eq!(decimal_string(&points[0].1, 12), "1.181818181818");
    }

    #[test]
    fn report_for_level_5() {
        let report = verify(5, 60, &VerifyOptions::default()).unwrap();
        assert!(report.all_pass(), "{:#?}", report.checks);
        assert!(report.check("kolitsch").unwrap().pass);
        assert!(report.ratios.iter().all(|(_, r)| r.is_one()));
        let names: Vec<&str> = report.checks.iter().map(|c| c.name.as_str()).collect();
        let mut dedup = names.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(names.len(), dedup.len());
        assert_eq!(report.b.len(), 61);
        assert_eq!(report.residual.len(), 61);
    }

    #[test]
    fn report_json_round_trip() {
        let report = verify(13, 30, &VerifyOptions::default()).unwrap();
        let text = serde_json::to_string(&report).unwrap();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["N"], 13);
        assert_eq!(value["nMax"], 30);
        assert_eq!(value["b"][1], "26");
        assert_eq!(value["ratios"][0][0], 1);
        assert_eq!(value["ratios"][0][1], "1.181818181818");
        let back: VerificationReport = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
        assert_eq!(back.checks, report.checks);
        assert_eq!(back.b, report.b);
    }

    #[test]
    fn decimal_parsing() {
        assert_eq!(parse_decimal("1.250").unwrap(), rat(5, 4));
        assert_eq!(parse_decimal("-0.5").unwrap(), rat(-1, 2));
        assert_eq!(parse_decimal("3").unwrap(), int(3));
        assert!(parse_decimal("1.2.3").is_err());
        assert!(parse_decimal("").is_err());
    }
}
