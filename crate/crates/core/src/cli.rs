//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::curve::{CurveKit, CurveParams, CurveSeries};
use crate::error::{Error, Result};
use crate::nplication::{classical_oracle, kit_order_for, n_plication, PsiPoly};
use crate::series::{BSeries, HurwitzReport, LSeries};
use crate::sigma::SigmaKit;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const MAX_ORDER_VAR: &str = "SIGMA_FORGE_MAX_ORDER";
const DEFAULT_MAX_ORDER: i64 = 64;

#[derive(Parser, Debug)]
#[command(
    name = "sigma-forge",
    version,
    about = "Exact power series of the Weierstrass sigma function of y^2 + (mu1 x + mu3) y = x^3 + mu2 x^2 + mu4 x + mu6"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Expand one series of the pipeline.
    Expand {
        #[arg(long, value_enum)]
        target: Target,
        #[command(flatten)]
        common: Common,
    },
    /// sigma(u), coefficients in Hurwitz form.
    Sigma {
        /// Expand in the local parameter t instead of u.
        #[arg(long)]
        in_t: bool,
        #[command(flatten)]
        common: Common,
    },
    /// wp(u), or wp'(u) with --prime.
    Wp {
        #[arg(long)]
        prime: bool,
        #[command(flatten)]
        common: Common,
    },
    /// The n-plication polynomial psi_n in (x, y).
    Division {
        #[arg(long)]
        n: u32,
        /// Use the division-polynomial recurrence instead of sigma.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Run identity and integrality checks; exit 1 if any fails.
    Check {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// Truncation order N.
    #[arg(long, default_value_t = 10)]
    order: i64,
    /// Numeric curve coefficients "mu1,mu2,mu3,mu4,mu6" as integers or p/q.
    #[arg(long)]
    mu: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the result here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Target {
    S,
    X,
    Y,
    Omega,
    Eta,
    Tprime,
    Q,
    UOfT,
    TOfU,
    P,
    Xi,
    Correction,
    R,
    Sigma,
    SigmaT,
    Sigma2,
    Sigma2Uv,
    Wp,
    WpPrime,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Suite {
    Fs,
    Dup,
    Inversion,
    Curve,
    Integrality,
    Weights,
    Reflection,
    TwoVar,
    All,
}

/// Something that can be printed in all three formats.
enum Output {
    Series { series: LSeries, hurwitz: bool },
    Bivariate(BSeries),
    Psi(PsiPoly),
}

impl Output {
    fn render(&self, format: Format) -> Result<String> {
        Ok(match (self, format) {
            (Output::Series { series, .. }, Format::Json) => pretty(&series.to_json()),
            (Output::Series { series, hurwitz: true }, Format::Text) => series.to_hurwitz_text()?,
            (Output::Series { series, hurwitz: true }, Format::Latex) => series.to_hurwitz_latex()?,
            (Output::Series { series, .. }, Format::Text) => series.to_string(),
            (Output::Series { series, .. }, Format::Latex) => series.to_latex(),
            (Output::Bivariate(b), Format::Json) => pretty(&b.to_json()),
            (Output::Bivariate(b), Format::Text) => b.to_string(),
            (Output::Bivariate(b), Format::Latex) => b.to_latex(),
            (Output::Psi(p), Format::Json) => pretty(&p.to_json()),
            (Output::Psi(p), Format::Text) => p.to_string(),
            (Output::Psi(p), Format::Latex) => p.to_latex(),
        })
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values always serialize")
}

fn max_order() -> i64 {
    std::env::var(MAX_ORDER_VAR).ok().and_then(|v| v.parse().ok()).unwrap_or(DEFAULT_MAX_ORDER)
}

struct Config {
    params: CurveParams,
    order: i64,
    format: Format,
    output: Option<PathBuf>,
}

fn config(common: Common) -> Result<Config> {
    let cap = max_order();
    if common.order < 1 || common.order > cap {
        return Err(Error::Range(format!("--order must be in 1..={cap}, got {}", common.order)));
    }
    let params = match &common.mu {
        Some(s) => CurveParams::parse_list(s)?,
        None => CurveParams::symbolic(),
    };
    Ok(Config { params, order: common.order, format: common.format, output: common.output })
}

fn truncated(s: &LSeries, n: i64) -> Result<LSeries> {
    if s.prec() < n {
        return Err(Error::Precision { needed: n, have: s.prec() });
    }
    Ok(s.truncate(n))
}

fn truncated_b(s: BSeries, n: i64) -> Result<BSeries> {
    if s.prec() < n {
        return Err(Error::Precision { needed: n, have: s.prec() });
    }
    Ok(s.truncate(n))
}

fn expand(cfg: &Config, target: Target) -> Result<Output> {
    let n = cfg.order;
    let curve_series = |which| -> Result<Output> {
        let kit = CurveKit::new(&cfg.params, n.max(2))?;
        Ok(Output::Series { series: truncated(kit.series(which), n)?, hurwitz: false })
    };
    let plain = |s: &LSeries| -> Result<Output> { Ok(Output::Series { series: truncated(s, n)?, hurwitz: false }) };
    let sigma_kit = |order: i64| SigmaKit::new(&cfg.params, order);
    match target {
        Target::S => curve_series(CurveSeries::S),
        Target::X => curve_series(CurveSeries::X),
        Target::Y => curve_series(CurveSeries::Y),
        Target::Omega => curve_series(CurveSeries::Omega),
        Target::Eta => curve_series(CurveSeries::Eta),
        Target::Tprime => curve_series(CurveSeries::TPrime),
        Target::Q => curve_series(CurveSeries::Q),
        Target::UOfT => curve_series(CurveSeries::UOfT),
        Target::TOfU => plain(CurveKit::new(&cfg.params, n.max(2))?.t_of_u()),
        Target::P => Ok(Output::Bivariate(truncated_b(CurveKit::new(&cfg.params, n.max(2))?.p().clone(), n)?)),
        Target::Xi => {
            let kit = CurveKit::new(&cfg.params, n.max(2) + 2)?;
            Ok(Output::Bivariate(truncated_b(crate::sigma::xi_regular(&kit)?, n)?))
        }
        Target::Correction => {
            let kit = CurveKit::new(&cfg.params, n.max(2) + 2)?;
            Ok(Output::Bivariate(truncated_b(crate::sigma::third_kind_correction(&kit)?, n)?))
        }
        Target::R => Ok(Output::Bivariate(truncated_b(sigma_kit(n + 2)?.r_series()?, n)?)),
        Target::Sigma => Ok(Output::Series { series: truncated(sigma_kit(n)?.sigma(), n)?, hurwitz: true }),
        Target::Sigma2 => Ok(Output::Series { series: truncated(sigma_kit(n)?.sigma_sq(), n)?, hurwitz: true }),
        Target::SigmaT => plain(&sigma_kit(n)?.sigma_in_t()?),
        Target::Sigma2Uv => Ok(Output::Bivariate(truncated_b(sigma_kit(n + 2)?.sigma_sq_two_var()?, n)?)),
        Target::Wp => plain(sigma_kit(n + 3)?.wp()),
        Target::WpPrime => plain(sigma_kit(n + 4)?.wp_prime()),
    }
}

fn check(cfg: &Config, suite: Suite, out: &mut String) -> Result<bool> {
    let kit = SigmaKit::new(&cfg.params, cfg.order)?;
    let ids = kit.identities();
    let selected: Vec<(&str, Result<()>)> = match suite {
        Suite::Fs => vec![("Frobenius-Stickelberger", ids.frobenius_stickelberger())],
        Suite::Dup => vec![("duplication", ids.duplication())],
        Suite::Inversion => vec![("inversion", ids.inversion())],
        Suite::Curve => vec![("curve relation", ids.curve_relation())],
        Suite::Integrality => vec![("integrality", ids.integrality())],
        Suite::Weights => vec![("weights", ids.weights())],
        Suite::Reflection => vec![("reflection", ids.reflection())],
        Suite::TwoVar => vec![("two-variable product", ids.two_variable())],
        Suite::All => {
            let report = ids.run(true);
            let pass = report.all_pass();
            render_checks(cfg.format, report.outcomes.iter().map(|o| (o.name, o.result.clone())).collect(), out);
            return Ok(pass);
        }
    };
    let rows: Vec<(&str, std::result::Result<(), String>)> =
        selected.into_iter().map(|(name, r)| (name, r.map_err(|e| e.to_string()))).collect();
    let pass = rows.iter().all(|(_, r)| r.is_ok());
    render_checks(cfg.format, rows, out);
    if suite == Suite::Integrality && cfg.format == Format::Text {
        let sq = HurwitzReport::of(kit.sigma_sq())?;
        let s = HurwitzReport::of(kit.sigma())?;
        out.push_str(&format!("sigma^2: {sq}\nsigma: {s}\n"));
    }
    Ok(pass)
}

fn render_checks(format: Format, rows: Vec<(&str, std::result::Result<(), String>)>, out: &mut String) {
    match format {
        Format::Json => {
            let items: Vec<serde_json::Value> = rows
                .iter()
                .map(|(name, r)| match r {
                    Ok(()) => json!({"check": name, "pass": true}),
                    Err(e) => json!({"check": name, "pass": false, "detail": e}),
                })
                .collect();
            out.push_str(&pretty(&serde_json::Value::Array(items)));
            out.push('\n');
        }
        _ => {
            for (name, r) in rows {
                match r {
                    Ok(()) => out.push_str(&format!("PASS {name}\n")),
                    Err(e) => out.push_str(&format!("FAIL {name}: {e}\n")),
                }
            }
        }
    }
}

fn execute(command: Command) -> Result<(String, Option<PathBuf>, bool)> {
    match command {
        Command::Expand { target, common } => {
            let cfg = config(common)?;
            let text = expand(&cfg, target)?.render(cfg.format)?;
            Ok((text + "\n", cfg.output, true))
        }
        Command::Sigma { in_t, common } => {
            let cfg = config(common)?;
            let target = if in_t { Target::SigmaT } else { Target::Sigma };
            let text = expand(&cfg, target)?.render(cfg.format)?;
            Ok((text + "\n", cfg.output, true))
        }
        Command::Wp { prime, common } => {
            let cfg = config(common)?;
            let target = if prime { Target::WpPrime } else { Target::Wp };
            let text = expand(&cfg, target)?.render(cfg.format)?;
            Ok((text + "\n", cfg.output, true))
        }
        Command::Division { n, oracle, common } => {
            let cfg = config(common)?;
            if n == 0 || i64::from(n) * i64::from(n) > max_order() {
                return Err(Error::Range(format!("--n must be in 1..=sqrt({}), got {n}", max_order())));
            }
            let psi = if oracle {
                classical_oracle(n, &cfg.params)?
            } else {
                let kit = SigmaKit::new(&cfg.params, kit_order_for(n))?;
                n_plication(&kit, n)?
            };
            let text = Output::Psi(psi).render(cfg.format)?;
            Ok((text + "\n", cfg.output, true))
        }
        Command::Check { suite, common } => {
            let cfg = config(common)?;
            let mut text = String::new();
            let pass = check(&cfg, suite, &mut text)?;
            Ok((text, cfg.output, pass))
        }
    }
}

fn is_usage(e: &Error) -> bool {
    matches!(e, Error::Parse(_) | Error::Range(_))
}

/// Runs the CLI with the given arguments (including the program name),
/// writing results to `out` (unless `--output` is given) and diagnostics to `err`.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match execute(cli.command) {
        Ok((text, path, pass)) => {
            let written = match path {
                Some(p) => {
                    std::fs::write(&p, text.as_bytes()).map_err(|e| format!("cannot write {}: {e}", p.display()))
                }
                None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: {e}");
                return EXIT_CHECK_FAILED;
            }
            if pass {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            }
        }
        Err(e) if is_usage(&e) => {
            let _ = writeln!(err, "error: {e}\n\nRun with --help for usage.");
            EXIT_USAGE
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_CHECK_FAILED
        }
    }
}

/// [`run_with`] on the process's stdout and stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}
