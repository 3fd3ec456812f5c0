//! The `cphi` command line: expansions, Gauss sums, Bernoulli numbers and
//! verification reports, as text, CSV or JSON on standard out.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use frobenius_core::arith::{divisors, is_squarefree};
use frobenius_core::characters::generalized_bernoulli;
use frobenius_core::eisenstein::eisenstein_theta_expansion;
use frobenius_core::eta::{eta_quotient_series, scaled_partition_term, v_r, EtaQuotientSpec};
use frobenius_core::gauss::{
    brute_force_g, closed_form_g_full, gauss_sum_exact, GaussSumQuery, BRUTE_FORCE_GUARD,
};
use frobenius_core::qseries::{decimal_string, parse_rational, rational_string, QSeries};
use frobenius_core::theta::{
    cphi_series, theta_cusp_constant, theta_cusp_constant_via_gauss, theta_series,
};
use frobenius_core::verify::{
    asymptotic_ratios, b1_value, expected_b1, main_sum_series, parse_decimal, verify,
    verify_kolitsch, VerifyOptions, KOLITSCH_LEVELS, RATIO_DIGITS,
};
use frobenius_core::{Error, Rational};
use num_traits::Zero;
use serde_json::{json, Value};

/// Exit status for a run whose checks all passed.
pub const EXIT_OK: i32 = 0;
/// Exit status when a verification check fails.
pub const EXIT_CHECK_FAILED: i32 = 1;
/// Exit status for usage and validation errors.
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "cphi",
    version,
    about = "Exact q-series computations for colored Frobenius partition counts"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeriesKind {
    Theta,
    Cphi,
    Eta,
    EisensteinTheta,
    Partition,
    Vr,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    B1,
    Kolitsch,
    CuspConstants,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the coefficients of a q-series up to q^nmax.
    Expand {
        #[arg(long, value_enum)]
        series: SeriesKind,
        #[arg(long = "N")]
        n: i64,
        /// Divisor of N, required for `eta`; restricts `partition` to one divisor.
        #[arg(long)]
        d: Option<i64>,
        /// Power of (q;q)^-1 for `vr`; defaults to N.
        #[arg(long)]
        r: Option<u32>,
        #[arg(long, default_value_t = 200)]
        nmax: usize,
    },
    /// Evaluate G_dim(a, c) by the exact reduction and, when small enough, by brute force.
    Gauss {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        a: i64,
        #[arg(long)]
        c: i64,
    },
    /// The generalized Bernoulli number B_{k, chi_N}.
    Bernoulli {
        #[arg(long)]
        k: u32,
        #[arg(long = "N")]
        n: i64,
    },
    /// Full verification report for one level.
    Verify {
        #[arg(long = "N")]
        n: i64,
        #[arg(long, default_value_t = 200)]
        nmax: usize,
        /// Bound on |r(nmax) - 1| in the trend check, as a decimal or fraction.
        #[arg(long, default_value = "0.1")]
        ratio_tol: String,
    },
    /// cphi_N(n) divided by the partition sum, for 1 <= n <= nmax.
    Ratios {
        #[arg(long = "N")]
        n: i64,
        #[arg(long, default_value_t = 200)]
        nmax: usize,
    },
    /// Tabulate b(1), the vanishing residuals, or the theta cusp constants.
    Table {
        #[arg(long, value_enum)]
        which: TableKind,
        /// Levels to tabulate; each table has its own default.
        #[arg(long = "N", value_delimiter = ',')]
        n: Vec<i64>,
        #[arg(long, default_value_t = 200)]
        nmax: usize,
    },
}

/// A failure that ends the run with a message on standard error.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Invariant(_) => EXIT_CHECK_FAILED,
            _ => EXIT_USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self {
            code: EXIT_CHECK_FAILED,
            message: format!("write failed: {e}"),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

fn emit(out: &mut dyn Write, format: Format, value: &Value, table: &Table) -> Result<(), Failure> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, value).map_err(std::io::Error::from)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            let csv_err = |e: csv::Error| Failure {
                code: EXIT_CHECK_FAILED,
                message: format!("csv: {e}"),
            };
            w.write_record(&table.header).map_err(csv_err)?;
            for row in &table.rows {
                w.write_record(row).map_err(csv_err)?;
            }
            w.flush()?;
        }
        Format::Text => {
            let widths: Vec<usize> = (0..table.header.len())
                .map(|i| {
                    table
                        .rows
                        .iter()
                        .map(|r| r[i].len())
                        .chain([table.header[i].len()])
                        .max()
                        .unwrap()
                })
                .collect();
            let line = |cells: Vec<&str>| {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            };
            writeln!(out, "{}", line(table.header.clone()))?;
            for row in &table.rows {
                writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
            }
        }
    }
    Ok(())
}

fn level_from_divisor(n: i64, d: Option<i64>) -> Result<i64, Failure> {
    let d = d.ok_or_else(|| usage("--d is required for this series"))?;
    if d < 1 || n % d != 0 {
        return Err(Error::NotDivisor { d, n }.into());
    }
    Ok(d)
}

fn expand_series(
    kind: SeriesKind,
    n: i64,
    d: Option<i64>,
    r: Option<u32>,
    n_max: usize,
) -> Result<QSeries, Failure> {
    Ok(match kind {
        SeriesKind::Theta => theta_series(n, n_max)?,
        SeriesKind::Cphi => cphi_series(n, n_max)?,
        SeriesKind::Eta => {
            let d = level_from_divisor(n, d)?;
            eta_quotient_series(&EtaQuotientSpec::new(n, d)?, n_max)?
        }
        SeriesKind::EisensteinTheta => eisenstein_theta_expansion(n, n_max)?,
        SeriesKind::Partition => match d {
            None => main_sum_series(n, n_max)?,
            Some(_) => {
                let d = level_from_divisor(n, d)?;
                let coeffs = (0..=n_max as u64)
                    .map(|m| scaled_partition_term(n, d, m))
                    .collect::<frobenius_core::Result<Vec<_>>>()?;
                QSeries::from_bigints(coeffs, n_max)?
            }
        },
        SeriesKind::Vr => {
            let r = match r {
                Some(r) => r,
                None => {
                    u32::try_from(n).map_err(|_| usage(format!("r={n} must be nonnegative")))?
                }
            };
            v_r(r, n_max)
        }
    })
}

fn series_name(kind: SeriesKind) -> &'static str {
    match kind {
        SeriesKind::Theta => "theta",
        SeriesKind::Cphi => "cphi",
        SeriesKind::Eta => "eta",
        SeriesKind::EisensteinTheta => "eisenstein-theta",
        SeriesKind::Partition => "partition",
        SeriesKind::Vr => "vr",
    }
}

fn parse_tolerance(s: &str) -> Result<Rational, Failure> {
    let value = parse_decimal(s)
        .or_else(|_| parse_rational(s))
        .map_err(|_| usage(format!("--ratio-tol {s:?} is not a decimal or fraction")))?;
    if value <= Rational::zero() {
        return Err(usage(format!("--ratio-tol {s} must be positive")));
    }
    Ok(value)
}

/// Runs one parsed command, writing its output to `out`. Returns the exit status.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let format = cli.format;
    match &cli.command {
        Command::Expand {
            series,
            n,
            d,
            r,
            nmax,
        } => {
            let s = expand_series(*series, *n, *d, *r, *nmax)?;
            let coeffs: Vec<String> = s.to_vec().iter().map(rational_string).collect();
            let value = json!({
                "series": series_name(*series),
                "N": n,
                "d": d,
                "nMax": nmax,
                "coeffs": coeffs,
            });
            let rows = coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| vec![k.to_string(), c.clone()])
                .collect();
            emit(
                out,
                format,
                &value,
                &Table {
                    header: vec!["n", "coeff"],
                    rows,
                },
            )?;
            Ok(EXIT_OK)
        }
        Command::Gauss { dim, a, c } => gauss(out, format, *dim, *a, *c),
        Command::Bernoulli { k, n } => {
            let b = generalized_bernoulli(*k, *n)?;
            let value = json!({"k": k, "N": n, "value": rational_string(&b)});
            let rows = vec![vec![k.to_string(), n.to_string(), rational_string(&b)]];
            emit(
                out,
                format,
                &value,
                &Table {
                    header: vec!["k", "N", "value"],
                    rows,
                },
            )?;
            Ok(EXIT_OK)
        }
        Command::Verify { n, nmax, ratio_tol } => {
            let options = VerifyOptions {
                ratio_tolerance: parse_tolerance(ratio_tol)?,
            };
            let report = verify(*n, *nmax, &options)?;
            match format {
                Format::Json => {
                    serde_json::to_writer_pretty(&mut *out, &report)
                        .map_err(std::io::Error::from)?;
                    writeln!(out)?;
                }
                Format::Csv => {
                    let rows = report.csv_rows().into_iter().map(Vec::from).collect();
                    emit(
                        out,
                        format,
                        &Value::Null,
                        &Table {
                            header: vec!["n", "cphi", "mainSum", "b"],
                            rows,
                        },
                    )?;
                }
                Format::Text => {
                    writeln!(out, "N={} nMax={}", report.level, report.n_max)?;
                    for c in &report.checks {
                        let tag = match (c.pass, c.is_diagnostic()) {
                            (true, _) => "pass",
                            (false, true) => "note",
                            (false, false) => "FAIL",
                        };
                        writeln!(out, "{tag}  {}: {}", c.name, c.detail)?;
                    }
                    let verdict = if report.all_pass() {
                        "all checks pass"
                    } else {
                        "some checks failed"
                    };
                    writeln!(out, "{verdict}")?;
                }
            }
            Ok(if report.all_pass() {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }
        Command::Ratios { n, nmax } => {
            let cphi = cphi_series(*n, *nmax)?;
            let main = main_sum_series(*n, *nmax)?;
            let (points, skipped) = asymptotic_ratios(&cphi, &main);
            let decimals: Vec<(u64, String)> = points
                .iter()
                .map(|(k, r)| (*k, decimal_string(r, RATIO_DIGITS)))
                .collect();
            let value = json!({"N": n, "nMax": nmax, "ratios": decimals, "skipped": skipped});
            let rows = points
                .iter()
                .zip(&decimals)
                .map(|((k, r), (_, dec))| vec![k.to_string(), dec.clone(), rational_string(r)])
                .collect();
            emit(
                out,
                format,
                &value,
                &Table {
                    header: vec!["n", "ratio", "exact"],
                    rows,
                },
            )?;
            Ok(EXIT_OK)
        }
        Command::Table { which, n, nmax } => table(out, format, *which, n, *nmax),
    }
}

fn gauss(out: &mut dyn Write, format: Format, dim: usize, a: i64, c: i64) -> Result<i32, Failure> {
    let q = GaussSumQuery::new(dim, a, c)?;
    let exact = if c % 2 == 1 && is_squarefree(c as u64) {
        Some(gauss_sum_exact(&q)?)
    } else {
        None
    };
    let level = dim as i64 + 1;
    let closed =
        if level % 2 == 1 && level % 3 != 0 && is_squarefree(level as u64) && level % c == 0 {
            Some(closed_form_g_full(level, a, c)?)
        } else {
            None
        };
    let oracle = if q.terms() <= BRUTE_FORCE_GUARD {
        Some(brute_force_g(&q)?)
    } else {
        None
    };
    let reference = closed.as_ref().or(exact.as_ref());
    let agrees = match (reference, oracle) {
        (Some(w), Some(z)) => {
            let tol = 1e-6 * (c as f64).powf(dim as f64 / 2.0).max(w.approx().norm());
            Some((z - w.approx()).norm() <= tol)
        }
        _ => None,
    };
    let complex = |z: num_complex::Complex64| format!("{:.9} {:+.9}i", z.re, z.im);
    let value = json!({
        "dim": dim,
        "a": a,
        "c": c,
        "exact": exact.as_ref().map(|w| w.to_string()),
        "closedForm": closed.as_ref().map(|w| w.to_string()),
        "oracle": oracle.map(|z| [z.re, z.im]),
        "agrees": agrees,
    });
    let show = |s: Option<String>| s.unwrap_or_else(|| "-".to_string());
    let rows = vec![
        vec![
            "exact".to_string(),
            show(exact.as_ref().map(|w| w.to_string())),
        ],
        vec![
            "closed-form".to_string(),
            show(closed.as_ref().map(|w| w.to_string())),
        ],
        vec![
            "approx".to_string(),
            show(reference.map(|w| complex(w.approx()))),
        ],
        vec!["oracle".to_string(), show(oracle.map(complex))],
        vec!["agrees".to_string(), show(agrees.map(|b| b.to_string()))],
    ];
    emit(
        out,
        format,
        &value,
        &Table {
            header: vec!["quantity", "value"],
            rows,
        },
    )?;
    Ok(if agrees == Some(false) {
        EXIT_CHECK_FAILED
    } else {
        EXIT_OK
    })
}

fn table(
    out: &mut dyn Write,
    format: Format,
    which: TableKind,
    levels: &[i64],
    n_max: usize,
) -> Result<i32, Failure> {
    let mut failed = false;
    let (header, rows, value) = match which {
        TableKind::B1 => {
            let levels = if levels.is_empty() {
                vec![13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
            } else {
                levels.to_vec()
            };
            let mut rows = Vec::new();
            let mut entries = Vec::new();
            for &n in &levels {
                let b1 = b1_value(n)?;
                let expected = expected_b1(n);
                let ok = expected.is_none_or(|e| b1 == Rational::from_integer(e.into()));
                failed |= !ok;
                let shown = expected
                    .map(|e| e.to_string())
                    .unwrap_or_else(|| "-".into());
                rows.push(vec![
                    n.to_string(),
                    rational_string(&b1),
                    shown.clone(),
                    ok.to_string(),
                ]);
                entries.push(
                    json!({"N": n, "b1": rational_string(&b1), "expected": expected, "pass": ok}),
                );
            }
            (vec!["N", "b1", "expected", "pass"], rows, json!(entries))
        }
        TableKind::Kolitsch => {
            let levels = if levels.is_empty() {
                KOLITSCH_LEVELS.to_vec()
            } else {
                levels.to_vec()
            };
            let mut rows = Vec::new();
            let mut entries = Vec::new();
            for &n in &levels {
                let check = verify_kolitsch(n, n_max)?;
                failed |= !check.pass;
                rows.push(vec![
                    n.to_string(),
                    check.pass.to_string(),
                    check.detail.clone(),
                ]);
                entries.push(
                    json!({"N": n, "nMax": n_max, "pass": check.pass, "detail": check.detail}),
                );
            }
            (vec!["N", "pass", "detail"], rows, json!(entries))
        }
        TableKind::CuspConstants => {
            let levels = if levels.is_empty() {
                vec![35]
            } else {
                levels.to_vec()
            };
            let mut rows = Vec::new();
            let mut entries = Vec::new();
            for &n in &levels {
                frobenius_core::arith::check_level(n)?;
                for d in divisors(n as u64).into_iter().map(|d| d as i64) {
                    let direct = theta_cusp_constant(n, d)?;
                    let via = theta_cusp_constant_via_gauss(n, d)?;
                    let ok = direct == via;
                    failed |= !ok;
                    rows.push(vec![
                        n.to_string(),
                        d.to_string(),
                        direct.to_string(),
                        via.to_string(),
                        ok.to_string(),
                    ]);
                    entries.push(json!({
                        "N": n, "d": d, "direct": direct.to_string(), "viaGauss": via.to_string(), "pass": ok,
                    }));
                }
            }
            (
                vec!["N", "d", "direct", "viaGauss", "pass"],
                rows,
                json!(entries),
            )
        }
    };
    emit(out, format, &value, &Table { header, rows })?;
    Ok(if failed { EXIT_CHECK_FAILED } else { EXIT_OK })
}
