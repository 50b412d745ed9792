//! Command-line front end: enumeration, verification, suites and tables.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use qplab::harness::{
    list_identities, lookup, run_suite, verify_with, IdentityInstance, Mode, ModeKind, Params,
    RunOptions, Suite, Summary, VerificationReport, DEFAULT_POINTS, DEFAULT_SEED,
};
use qplab::partition::{enumerate, gf_enumerated, PartitionConstraints, Stat, WeightKind};
use qplab::tables::{reproduce, TableName};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Environment variable consulted when a rational-point run has no --seed.
pub const SEED_ENV: &str = "QPLAB_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "qplab",
    version,
    about = "Exact partition generating functions and identity verification"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Output::Text, global = true)]
    pub output: Output,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate partitions under constraints.
    Enumerate(EnumerateArgs),
    /// Verify one identity instance.
    Verify(VerifyArgs),
    /// Run a named suite of instances.
    Suite(SuiteArgs),
    /// Reproduce a worked table (table2, table6, table7, table8).
    Table(TableArgs),
    /// List the registered identities.
    List,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    List,
    Count,
    Gf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Weight {
    /// q^norm
    Q,
    /// q^norm t^i z^j
    Qtz,
    /// q^norm t^BG-rank
    Bg,
    /// q^norm z^alternating-sum
    Alt,
    /// a^#a b^#b c^#c d^#d
    Boulet,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub max_part: Option<u32>,
    #[arg(long)]
    pub max_parts: Option<u32>,
    #[arg(long)]
    pub min_part: Option<u32>,
    /// Exact norm.
    #[arg(long, conflicts_with = "max_norm")]
    pub norm: Option<u32>,
    #[arg(long)]
    pub max_norm: Option<u32>,
    #[arg(long)]
    pub distinct: bool,
    /// Parts differ by at least 2, and consecutive odd parts by more than 2.
    #[arg(long, conflicts_with = "distinct")]
    pub gollnitz_gap: bool,
    /// Statistic filters `key=value[,key=value...]`; keys i, j, m, bg, alt, c1mod4, c3mod4, odd, parts.
    #[arg(long, value_name = "KEY=VALUE", value_delimiter = ',', value_parser = parse_filter)]
    pub filter: Vec<(Stat, i64)>,
    #[arg(long, value_enum, default_value_t = Emit::List)]
    pub emit: Emit,
    /// Monomial weight for `--emit gf`.
    #[arg(long, value_enum)]
    pub weight: Option<Weight>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub id: String,
    /// Parameter `name=value`; repeatable.
    #[arg(long = "param", value_name = "NAME=VALUE", value_parser = parse_param)]
    pub params: Vec<(String, i64)>,
    /// exact, truncated[:CUTOFF] or rational[:POINTS:SEED]; defaults per identity.
    #[arg(long)]
    pub mode: Option<String>,
    /// Truncation grade.
    #[arg(long, conflicts_with_all = ["points", "seed"])]
    pub cutoff: Option<i64>,
    /// Number of rational points.
    #[arg(long)]
    pub points: Option<u32>,
    /// Seed for rational points; falls back to QPLAB_SEED, then 182.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Write the JSON report to this path.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Negate the leading closed-form term to check the harness notices.
    #[arg(long)]
    pub inject_fault: bool,
}

#[derive(Debug, Args)]
pub struct SuiteArgs {
    /// smoke, default or full.
    #[arg(long, default_value = "default")]
    pub name: String,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Negate the leading closed-form term of every instance of this identity.
    #[arg(long, value_name = "ID")]
    pub inject_fault: Option<String>,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    pub name: String,
}

fn parse_filter(s: &str) -> Result<(Stat, i64), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected KEY=VALUE, got {s:?}"))?;
    let stat: Stat = k
        .trim()
        .parse()
        .map_err(|e: qplab::partition::PartitionError| e.to_string())?;
    let value = v
        .trim()
        .parse()
        .map_err(|_| format!("filter value {v:?} is not an integer"))?;
    Ok((stat, value))
}

fn parse_param(s: &str) -> Result<(String, i64), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected NAME=VALUE, got {s:?}"))?;
    if k.is_empty() {
        return Err(format!("empty parameter name in {s:?}"));
    }
    let value = v
        .parse()
        .map_err(|_| format!("parameter value {v:?} is not an integer"))?;
    Ok((k.to_string(), value))
}

/// A failure that maps to the usage exit code.
#[derive(Debug)]
pub struct UsageError(pub String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type CliResult = Result<u8, UsageError>;

pub fn run(cli: Cli, out: &mut dyn Write) -> CliResult {
    match cli.command {
        Command::Enumerate(a) => cmd_enumerate(a, cli.output, out),
        Command::Verify(a) => cmd_verify(a, cli.output, out),
        Command::Suite(a) => cmd_suite(a, cli.output, out),
        Command::Table(a) => cmd_table(a, cli.output, out),
        Command::List => cmd_list(cli.output, out),
    }
}

fn cmd_enumerate(a: EnumerateArgs, output: Output, out: &mut dyn Write) -> CliResult {
    if a.weight.is_some() && a.emit != Emit::Gf {
        return Err(UsageError("--weight only applies to --emit gf".into()));
    }
    let mut c = PartitionConstraints::new();
    if let Some(v) = a.max_part {
        c = c.max_part(v);
    }
    if let Some(v) = a.max_parts {
        c = c.max_parts(v);
    }
    if let Some(v) = a.min_part {
        c = c.min_part(v);
    }
    if let Some(v) = a.norm {
        c = c.fixed_norm(v);
    }
    if let Some(v) = a.max_norm {
        c = c.max_norm(v);
    }
    if a.distinct {
        c = c.distinct();
    }
    if a.gollnitz_gap {
        c = c.gollnitz_gap();
    }
    for (i, &(stat, _)) in a.filter.iter().enumerate() {
        if a.filter[..i].iter().any(|&(s, _)| s == stat) {
            return Err(UsageError(format!("filter {stat} given more than once")));
        }
    }
    for &(stat, v) in &a.filter {
        c = c.filter(stat, v);
    }
    let parts = enumerate(&c)?;
    match a.emit {
        Emit::List => {
            if output == Output::Json {
                let all: Vec<_> = parts.collect();
                writeln!(out, "{}", json!({ "count": all.len(), "partitions": all }))?;
            } else {
                for p in parts {
                    writeln!(out, "{p}")?;
                }
            }
        }
        Emit::Count => {
            let n = parts.count();
            if output == Output::Json {
                writeln!(out, "{}", json!({ "count": n }))?;
            } else {
                writeln!(out, "{n}")?;
            }
        }
        Emit::Gf => {
            let (name, kind) = match a.weight.unwrap_or(Weight::Q) {
                Weight::Q => ("q", WeightKind::Norm),
                Weight::Qtz => ("qtz", WeightKind::NormIJ),
                Weight::Bg => ("bg", WeightKind::NormBg),
                Weight::Alt => ("alt", WeightKind::NormAlt),
                Weight::Boulet => ("boulet", WeightKind::Boulet),
            };
            let gf = gf_enumerated(&c, &kind)?;
            if output == Output::Json {
                writeln!(out, "{}", json!({ "weight": name, "gf": gf.to_string() }))?;
            } else {
                writeln!(out, "{gf}")?;
            }
        }
    }
    Ok(EXIT_PASS)
}

fn env_seed() -> Result<Option<u64>, UsageError> {
    match std::env::var(SEED_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| UsageError(format!("{SEED_ENV}={s:?} is not an unsigned integer"))),
        Err(_) => Ok(None),
    }
}

/// Resolves `--mode`, `--cutoff`, `--points` and `--seed` into one mode.
fn resolve_mode(a: &VerifyArgs, params: &Params) -> Result<Mode, UsageError> {
    let rational_flags = a.points.is_some() || a.seed.is_some();
    let rational = |points: Option<u32>, seed: Option<u64>| -> Result<Mode, UsageError> {
        Ok(Mode::RationalPoints {
            count: points.unwrap_or(DEFAULT_POINTS),
            seed: match seed {
                Some(s) => s,
                None => env_seed()?.unwrap_or(DEFAULT_SEED),
            },
        })
    };
    let default_cutoff = || lookup(&a.id).and_then(|e| e.default_cutoff).unwrap_or(14);
    let conflict = |flag: &str, mode: &str| {
        UsageError(format!("{flag} cannot be combined with --mode {mode}"))
    };
    match a.mode.as_deref() {
        None => {
            if let Some(c) = a.cutoff {
                Ok(Mode::Truncated(c))
            } else if rational_flags {
                rational(a.points, a.seed)
            } else {
                match lookup(&a.id).map(|e| e.default_mode(params)) {
                    Some(Mode::RationalPoints { count, .. }) => rational(Some(count), None),
                    Some(m) => Ok(m),
                    None => Ok(Mode::Exact),
                }
            }
        }
        Some("exact") => {
            if a.cutoff.is_some() {
                return Err(conflict("--cutoff", "exact"));
            }
            if rational_flags {
                return Err(conflict("--points/--seed", "exact"));
            }
            Ok(Mode::Exact)
        }
        Some("truncated") => {
            if rational_flags {
                return Err(conflict("--points/--seed", "truncated"));
            }
            Ok(Mode::Truncated(a.cutoff.unwrap_or_else(default_cutoff)))
        }
        Some("rational") => {
            if a.cutoff.is_some() {
                return Err(conflict("--cutoff", "rational"));
            }
            rational(a.points, a.seed)
        }
        Some(full) => {
            if a.cutoff.is_some() || rational_flags {
                return Err(UsageError(format!(
                    "--mode {full} already fixes its settings; drop --cutoff/--points/--seed"
                )));
            }
            Ok(full.parse()?)
        }
    }
}

fn exit_for(s: Summary) -> u8 {
    if s.error > 0 {
        EXIT_USAGE
    } else if s.fail > 0 {
        EXIT_FAIL
    } else {
        EXIT_PASS
    }
}

fn fmt_params(p: &Params) -> String {
    p.iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(",")
}

fn write_report_text(
    out: &mut dyn Write,
    r: &VerificationReport,
    detailed: bool,
) -> io::Result<()> {
    writeln!(
        out,
        "{} {} [{}]: {}",
        r.id,
        fmt_params(&r.params),
        r.mode,
        r.status
    )?;
    if let Some(e) = &r.error {
        writeln!(out, "  error: {e}")?;
    }
    if detailed {
        if let (Some(l), Some(rh)) = (&r.lhs, &r.rhs) {
            writeln!(out, "  lhs: {l}")?;
            writeln!(out, "  rhs: {rh}")?;
        }
        for c in &r.checks {
            writeln!(out, "  check {:?} ({:?}): {}", c.name, c.kind, c.status)?;
        }
    }
    if let Some(d) = &r.first_discrepancy {
        writeln!(
            out,
            "  first discrepancy in {:?} at {}: lhs {}, rhs {}",
            d.check, d.monomial, d.lhs, d.rhs
        )?;
    }
    Ok(())
}

#[derive(Serialize)]
struct ReportFile<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    suite: Option<String>,
    reports: &'a [VerificationReport],
    summary: Summary,
}

fn write_report_file(
    path: &PathBuf,
    suite: Option<String>,
    reports: &[VerificationReport],
) -> Result<(), UsageError> {
    let file = ReportFile {
        suite,
        reports,
        summary: Summary::of(reports),
    };
    fs::write(path, serde_json::to_string_pretty(&file)? + "\n")
        .map_err(|e| UsageError(format!("cannot write {}: {e}", path.display())))
}

fn cmd_verify(a: VerifyArgs, output: Output, out: &mut dyn Write) -> CliResult {
    let mut params = Params::new();
    for (k, v) in &a.params {
        if params.insert(k.clone(), *v).is_some() {
            return Err(UsageError(format!("parameter {k} given more than once")));
        }
    }
    let mode = resolve_mode(&a, &params)?;
    let inst = IdentityInstance {
        id: a.id.clone(),
        params,
        mode,
    };
    let opts = RunOptions {
        inject_fault: a.inject_fault.then(|| a.id.clone()),
    };
    let report = verify_with(&inst, &opts);
    if let Some(path) = &a.report {
        write_report_file(path, None, std::slice::from_ref(&report))?;
    }
    match output {
        Output::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?,
        Output::Text => write_report_text(out, &report, true)?,
    }
    Ok(exit_for(Summary::of(std::slice::from_ref(&report))))
}

fn cmd_suite(a: SuiteArgs, output: Output, out: &mut dyn Write) -> CliResult {
    let suite: Suite = a.name.parse()?;
    if let Some(id) = &a.inject_fault {
        if lookup(id).is_none() {
            return Err(UsageError(format!(
                "--inject-fault: unknown identity id {id:?}"
            )));
        }
    }
    let opts = RunOptions {
        inject_fault: a.inject_fault.clone(),
    };
    let result = run_suite(suite, a.jobs, &opts);
    if let Some(path) = &a.report {
        write_report_file(path, Some(result.suite.clone()), &result.reports)?;
    }
    match output {
        Output::Json => writeln!(out, "{}", serde_json::to_string_pretty(&result)?)?,
        Output::Text => {
            for r in &result.reports {
                write_report_text(out, r, false)?;
            }
            let s = result.summary;
            writeln!(
                out,
                "suite {}: {} pass, {} fail, {} error",
                result.suite, s.pass, s.fail, s.error
            )?;
        }
    }
    Ok(exit_for(result.summary))
}

fn cmd_table(a: TableArgs, output: Output, out: &mut dyn Write) -> CliResult {
    let name: TableName = a.name.parse()?;
    let t = reproduce(name)?;
    match output {
        Output::Json => writeln!(out, "{}", serde_json::to_string_pretty(&t)?)?,
        Output::Text => writeln!(out, "{t}")?,
    }
    Ok(if t.ok() { EXIT_PASS } else { EXIT_FAIL })
}

fn cmd_list(output: Output, out: &mut dyn Write) -> CliResult {
    let entries = list_identities();
    match output {
        Output::Json => writeln!(out, "{}", serde_json::to_string_pretty(entries)?)?,
        Output::Text => {
            for e in entries {
                let params: Vec<String> = e
                    .params
                    .iter()
                    .map(|p| {
                        let range = if p.max == i64::MAX {
                            format!("{}..", p.min)
                        } else {
                            format!("{}..={}", p.min, p.max)
                        };
                        format!("{}{}:{range}", p.name, if p.optional { "?" } else { "" })
                    })
                    .collect();
                let modes: Vec<&str> = e
                    .modes
                    .iter()
                    .map(|m| match m {
                        ModeKind::Exact => "exact",
                        ModeKind::Truncated => "truncated",
                        ModeKind::Rational => "rational",
                    })
                    .collect();
                writeln!(
                    out,
                    "{:<14} [{}] {{{}}} {}",
                    e.id,
                    modes.join(","),
                    params.join(" "),
                    e.anchor
                )?;
            }
        }
    }
    Ok(EXIT_PASS)
}
