//! Command-line front end: argument parsing, table and report emission.
//!
//! Every subcommand is a thin wrapper around library calls. Output is
//! deterministic: fixed formatting and fixed summation orders, so identical
//! invocations produce identical bytes. Exit codes follow
//! [`Error::exit_code`]: 0 ok, 2 usage, 3 certification, 4 numerical.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::json;

use crate::ball::{bits_for_digits, PrecReal};
use crate::criterion::analyze;
use crate::error::{Error, Result};
use crate::generator::{a_sequence, example2_y_coeff, GeneratorSpec};
use crate::hyper::constants::{certify, constants_with};
use crate::sing::psi::{asym_an_scaled, sing_a_from};
use crate::sing::{asym_bn_scaled, bootstrap_psi, kappa};
use crate::walk::{b_sequence, bn_scaled, bn_scaled_table, saddle_quadrature};

/// Version of every JSON document this module writes.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeqWhich {
    A,
    B,
    Catalan,
    Example2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConvergeWhich {
    A,
    B,
}

/// Settings shared by all subcommands.
#[derive(Clone, Debug, Args)]
pub struct RunConfig {
    /// Working precision in decimal digits (at least 30).
    #[arg(long, global = true, default_value_t = 60)]
    pub digits: u32,
    /// Largest n computed with exact big integers (at least 10).
    #[arg(long = "exact-limit", global = true, default_value_t = 500)]
    pub exact_limit: usize,
    /// Output format; tables default to csv, reports to json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for library-internal parallelism.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { digits: 60, exact_limit: 500, format: None, out: None, threads: None }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.digits < 30 {
            return Err(Error::Usage(format!("--digits must be at least 30, got {}", self.digits)));
        }
        if self.exact_limit < 10 {
            return Err(Error::Usage(format!("--exact-limit must be at least 10, got {}", self.exact_limit)));
        }
        if self.threads == Some(0) {
            return Err(Error::Usage("--threads must be positive".into()));
        }
        Ok(())
    }

    fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    fn json_only(&self, cmd: &str) -> Result<()> {
        if self.format == Some(Format::Csv) {
            return Err(Error::Usage(format!("{cmd} writes json only")));
        }
        Ok(())
    }
}

#[derive(Debug, Parser)]
#[command(name = "g2trees", version, about = "Exact and asymptotic enumeration of G2 invariants and triangulations")]
pub struct Cli {
    #[command(flatten)]
    pub cfg: RunConfig,
    #[command(subcommand)]
    pub cmd: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact sequence values `n,value` for n = 0..=N.
    Seq {
        #[arg(long, value_enum)]
        which: SeqWhich,
        #[arg(long)]
        n: usize,
    },
    /// Certified constants with both routes, as json.
    Constants {
        /// Perturb one closed form to exercise the failure path.
        #[arg(long, hide = true)]
        corrupt: Option<String>,
    },
    /// Exact or scaled values against the asymptotic formula.
    Converge {
        #[arg(long, value_enum)]
        which: ConvergeWhich,
        #[arg(long = "n-max")]
        n_max: usize,
        #[arg(long, default_value_t = 7)]
        order: usize,
    },
    /// Sharpness analysis of a generator file or built-in name.
    Criterion {
        /// Path to a generator file.
        spec: Option<PathBuf>,
        /// One of catalan, binary, example2, g2.
        #[arg(long, conflicts_with = "spec")]
        builtin: Option<String>,
    },
    /// Contour quadrature of `b_n / 7^n` against the walk count.
    Saddle {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 64)]
        grid: usize,
    },
    /// Table `i,numerator,denominator` of the rational κ_i.
    Kappa {
        #[arg(long = "i-max", default_value_t = 15)]
        i_max: usize,
    },
    /// Singular expansions of ψ and A: γ, C, η, log coefficient, M.
    Expansion,
}

/// Text to emit plus an optional failure that decides the exit code after
/// the text is written.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub failure: Option<Error>,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, failure: None }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

fn rows_to_output(cfg: &RunConfig, header: &[&str], rows: &[Vec<String>], meta: serde_json::Value) -> String {
    match cfg.format_or(Format::Csv) {
        Format::Csv => {
            let mut s = header.join(",");
            s.push('\n');
            for r in rows {
                s.push_str(&r.join(","));
                s.push('\n');
            }
            s
        }
        Format::Json => {
            let objs: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    serde_json::Value::Object(header.iter().zip(r).map(|(h, v)| (h.to_string(), json!(v))).collect())
                })
                .collect();
            let mut doc = meta;
            doc["schema_version"] = json!(SCHEMA_VERSION);
            doc["rows"] = json!(objs);
            to_json(&doc)
        }
    }
}

/// Exact `y_0..y_n` (or `a_n`, `b_n`) as decimal strings.
pub fn sequence(which: SeqWhich, n: usize, cfg: &RunConfig) -> Result<Vec<BigRational>> {
    if n > cfg.exact_limit {
        return Err(Error::ExactLimit { n, limit: cfg.exact_limit });
    }
    let ints = |v: Vec<BigInt>| v.into_iter().map(BigRational::from_integer).collect();
    Ok(match which {
        SeqWhich::B => ints(b_sequence(n)),
        SeqWhich::A => ints(a_sequence(n)?),
        SeqWhich::Catalan => GeneratorSpec::catalan().y_coeffs(n)?,
        SeqWhich::Example2 => (0..=n).map(example2_y_coeff).collect(),
    })
}

pub fn cmd_seq(which: SeqWhich, n: usize, cfg: &RunConfig) -> Result<Outcome> {
    let v = sequence(which, n, cfg)?;
    let rows: Vec<Vec<String>> = v.iter().enumerate().map(|(i, x)| vec![i.to_string(), x.to_string()]).collect();
    let name = format!("{which:?}").to_lowercase();
    Ok(Outcome::ok(rows_to_output(cfg, &["n", "value"], &rows, json!({ "which": name }))))
}

pub fn cmd_constants(corrupt: Option<&str>, cfg: &RunConfig) -> Result<Outcome> {
    cfg.json_only("constants")?;
    let recs = constants_with(cfg.digits, corrupt)?;
    let sig = cfg.digits as usize;
    let doc = json!({
        "schema_version": SCHEMA_VERSION,
        "digits": cfg.digits,
        "certified": recs.iter().all(|r| r.routes_agree()),
        "constants": recs.iter().map(|r| r.to_json(sig)).collect::<Vec<_>>(),
    });
    let failure = certify(&recs).err();
    Ok(Outcome { text: to_json(&doc), failure })
}

/// `10, 20, 50, 100, 200, 500, …` up to `n_max`, plus `n_max` itself.
pub fn geometric_grid(n_max: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut decade = 10usize;
    'outer: loop {
        for m in [1, 2, 5] {
            let n = decade * m;
            if n >= n_max {
                break 'outer;
            }
            out.push(n);
        }
        decade *= 10;
    }
    out.push(n_max);
    out
}

/// One row of the convergence table: `n`, the exact or scaled value of
/// `b_n/7^n` (or `a_n/ρ^n`), the asymptotic prediction, and
/// `value/prediction - 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvergeRow {
    pub n: usize,
    pub value: f64,
    pub asymptotic: f64,
    pub rel_error: f64,
}

pub fn converge_rows(which: ConvergeWhich, n_max: usize, order: usize, cfg: &RunConfig) -> Result<Vec<ConvergeRow>> {
    if n_max < 10 {
        return Err(Error::Usage(format!("--n-max must be at least 10, got {n_max}")));
    }
    let prec = bits_for_digits(cfg.digits);
    let grid = geometric_grid(n_max);
    match which {
        ConvergeWhich::B => {
            if !(7..=crate::sing::MAX_ORDER).contains(&order) {
                return Err(Error::Usage(format!("--order must lie in 7..={}", crate::sing::MAX_ORDER)));
            }
            let exact_top = n_max.min(cfg.exact_limit);
            let exact = b_sequence(exact_top);
            let scaled = if n_max > cfg.exact_limit { bn_scaled_table(n_max) } else { Vec::new() };
            grid.iter()
                .map(|&n| {
                    let value = if n <= exact_top {
                        let q = BigRational::new(exact[n].clone(), BigInt::from(7).pow(n as u32));
                        PrecReal::from_rational(&q, prec)
                    } else {
                        PrecReal::from_rational(&BigRational::from_float(scaled[n]).unwrap_or_default(), prec)
                    };
                    let asym = asym_bn_scaled(n, order, prec)?;
                    Ok(ConvergeRow {
                        n,
                        value: value.to_f64(),
                        asymptotic: asym.to_f64(),
                        rel_error: value.div(&asym).to_f64() - 1.0,
                    })
                })
                .collect()
        }
        ConvergeWhich::A => {
            if order != 7 {
                return Err(Error::Usage("the formula for a_n has only the leading term; use --order 7".into()));
            }
            if n_max > cfg.exact_limit {
                return Err(Error::ExactLimit { n: n_max, limit: cfg.exact_limit });
            }
            let a = a_sequence(n_max)?;
            let a_exp = sing_a_from(&bootstrap_psi(cfg.digits)?)?;
            grid.iter()
                .map(|&n| {
                    let value = PrecReal::from_int(a[n].clone(), prec).div(&a_exp.rho.powi(n as u32));
                    let asym = asym_an_scaled(n, &a_exp)?;
                    Ok(ConvergeRow {
                        n,
                        value: value.to_f64(),
                        asymptotic: asym.to_f64(),
                        rel_error: value.div(&asym).to_f64() - 1.0,
                    })
                })
                .collect()
        }
    }
}

pub fn cmd_converge(which: ConvergeWhich, n_max: usize, order: usize, cfg: &RunConfig) -> Result<Outcome> {
    let rows: Vec<Vec<String>> = converge_rows(which, n_max, order, cfg)?
        .into_iter()
        .map(|r| vec![r.n.to_string(), sci(r.value), sci(r.asymptotic), sci(r.rel_error)])
        .collect();
    let name = format!("{which:?}").to_lowercase();
    Ok(Outcome::ok(rows_to_output(
        cfg,
        &["n", "exact_or_scaled", "asymptotic", "rel_error"],
        &rows,
        json!({ "which": name, "order": order, "exact_limit": cfg.exact_limit }),
    )))
}

pub fn cmd_criterion(spec: Option<&std::path::Path>, builtin: Option<&str>, cfg: &RunConfig) -> Result<Outcome> {
    cfg.json_only("criterion")?;
    let gen = match (spec, builtin) {
        (Some(path), None) => GeneratorSpec::parse(&std::fs::read_to_string(path)?, cfg.digits)?,
        (None, Some(name)) => GeneratorSpec::builtin(name, cfg.digits)?,
        _ => return Err(Error::Usage("give a generator file or --builtin NAME".into())),
    };
    let report = analyze(&gen, cfg.digits)?;
    let mut doc = serde_json::to_value(report.to_json(cfg.digits as usize / 2)).expect("serializable");
    doc["schema_version"] = json!(SCHEMA_VERSION);
    doc["kind"] = json!(gen.kind());
    Ok(Outcome::ok(to_json(&doc)))
}

pub fn cmd_saddle(n: usize, grid: usize, cfg: &RunConfig) -> Result<Outcome> {
    if grid < 64 {
        return Err(Error::Usage(format!("--grid must be at least 64, got {grid}")));
    }
    let q = saddle_quadrature(n, grid)?;
    let dp = bn_scaled(n);
    let rel = (q.value - dp) / dp;
    let row = vec![n.to_string(), sci(q.value), sci(dp), sci(rel)];
    Ok(Outcome::ok(rows_to_output(
        cfg,
        &["n", "quadrature", "dp", "rel_diff"],
        &[row],
        json!({ "grid": q.grid, "imag": sci(q.imag) }),
    )))
}

pub fn cmd_kappa(i_max: usize, cfg: &RunConfig) -> Result<Outcome> {
    let k = kappa(i_max)?;
    let rows: Vec<Vec<String>> = k
        .iter()
        .enumerate()
        .map(|(j, q)| vec![(7 + j).to_string(), q.numer().to_string(), q.denom().to_string()])
        .collect();
    Ok(Outcome::ok(rows_to_output(cfg, &["i", "numerator", "denominator"], &rows, json!({}))))
}

#[derive(Serialize)]
struct Ball {
    value: String,
    radius: String,
}

fn ball(x: &PrecReal, sig: usize) -> Ball {
    Ball { value: x.to_decimal(sig), radius: x.radius_string() }
}

pub fn cmd_expansion(cfg: &RunConfig) -> Result<Outcome> {
    cfg.json_only("expansion")?;
    let psi = bootstrap_psi(cfg.digits)?;
    let a = sing_a_from(&psi)?;
    let sig = cfg.digits as usize;
    let doc = json!({
        "schema_version": SCHEMA_VERSION,
        "digits": cfg.digits,
        "gamma": psi.gamma.iter().map(|g| ball(g, sig)).collect::<Vec<_>>(),
        "C": ball(&psi.c, sig),
        "eta": a.eta.iter().map(|e| ball(e, sig)).collect::<Vec<_>>(),
        "log_coeff": ball(&a.log_coeff, sig),
        "M": ball(&a.m, sig),
    });
    Ok(Outcome::ok(to_json(&doc)))
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome> {
    let cfg = &cli.cfg;
    cfg.validate()?;
    if let Some(t) = cfg.threads {
        // A second call in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    match &cli.cmd {
        Command::Seq { which, n } => cmd_seq(*which, *n, cfg),
        Command::Constants { corrupt } => cmd_constants(corrupt.as_deref(), cfg),
        Command::Converge { which, n_max, order } => cmd_converge(*which, *n_max, *order, cfg),
        Command::Criterion { spec, builtin } => cmd_criterion(spec.as_deref(), builtin.as_deref(), cfg),
        Command::Saddle { n, grid } => cmd_saddle(*n, *grid, cfg),
        Command::Kappa { i_max } => cmd_kappa(*i_max, cfg),
        Command::Expansion => cmd_expansion(cfg),
    }
}

fn emit(cfg: &RunConfig, text: &str) -> Result<()> {
    match &cfg.out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

/// Parses `args`, runs, writes output and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            if let Err(e) = emit(&cli.cfg, &outcome.text) {
                eprintln!("error: {e}");
                return e.exit_code();
            }
            match outcome.failure {
                Some(e) => {
                    eprintln!("error: {e}");
                    e.exit_code()
                }
                None => 0,
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Runs a command line in-process and returns `(exit code, output text)`;
/// output goes to the returned string even when `--out` is absent.
pub fn run_to_string<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => return (if e.use_stderr() { 2 } else { 0 }, e.to_string()),
    };
    match run(&cli) {
        Ok(o) => {
            let code = o.failure.as_ref().map_or(0, Error::exit_code);
            let mut text = o.text;
            if let Some(e) = o.failure {
                let _ = writeln!(text, "# error: {e}");
            }
            (code, text)
        }
        Err(e) => (e.exit_code(), format!("error: {e}\n")),
    }
}
