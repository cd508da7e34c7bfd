//! The `genarc` command line.
//!
//! Exit status: 0 on success, 1 when a verification or table cell fails, 2 on
//! usage errors, 3 when a search ran out of budget before finishing.

pub mod tables;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::arcs::certificate::{parse_certificates, verify_certificate, SearchMode};
use crate::arcs::ArcKind;
use crate::bounds::{full_report, BoundReport, KnownValues};
use crate::gf::prime_power;
use crate::search::{self, SearchConfig};

pub use tables::{reproduce, Table, TableName};

pub const EXIT_OK: u8 = 0;
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

pub const CERT_DIR_ENV: &str = "GENARC_CERT_DIR";

#[derive(Debug, Parser)]
#[command(name = "genarc", version, about = "Arcs in finite projective planes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// m', m and m_g (searched) for small q.
    Table1(TableArgs),
    /// Lower bounds for t(2,q) with searched t(2,q), q <= 11.
    Table2(TableArgs),
    /// Lower bounds for t(2,q), 13 <= q <= 31.
    Table3(TableArgs),
    /// ceil(t0) with searched t_v(2,q) and t(2,q).
    Table4(TableArgs),
    /// ceil(t1), ceil(t2) with searched t_g(2,q).
    Table5(TableArgs),
    /// ceil(t1), ceil(t2) for 13 <= q <= 31.
    Table6(TableArgs),
    /// Exhaustive search for one q, kind and mode.
    Search(SearchArgs),
    /// Re-verify certificate files.
    Verify(VerifyArgs),
    /// Every bound value for a range of q.
    Bounds(BoundsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    Csv,
    Json,
    #[default]
    Text,
}

/// A set of plane orders: `7`, `2..8`, `2..=8` or `5,7,9`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSpec(pub Vec<u32>);

impl FromStr for QSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let num = |t: &str| t.trim().parse::<u32>().map_err(|_| format!("bad q value {t:?}"));
        let range = s.split_once("..=").or_else(|| s.split_once(".."));
        let qs = if let Some((a, b)) = range {
            let (a, b) = (num(a)?, num(b)?);
            if a > b {
                return Err(format!("empty range {s}"));
            }
            (a..=b).filter(|&q| prime_power(q).is_some()).collect()
        } else {
            let list = s.split(',').map(num).collect::<Result<Vec<_>, _>>()?;
            if let Some(bad) = list.iter().find(|&&q| prime_power(q).is_none()) {
                return Err(format!("{bad} is not a prime power"));
            }
            list
        };
        if qs.is_empty() {
            return Err(format!("no prime powers in {s}"));
        }
        Ok(QSpec(qs))
    }
}

#[derive(Debug, Clone, Args)]
pub struct QArgs {
    /// Plane order, list or range.
    #[arg(long)]
    pub q: Option<QSpec>,
    /// Range of plane orders; only prime powers are kept.
    #[arg(long = "q-range")]
    pub q_range: Option<QSpec>,
}

impl QArgs {
    fn values(&self) -> Option<Vec<u32>> {
        match (&self.q, &self.q_range) {
            (None, None) => None,
            (a, b) => {
                let mut v: Vec<u32> = a.iter().chain(b.iter()).flat_map(|s| s.0.clone()).collect();
                v.sort_unstable();
                v.dedup();
                Some(v)
            }
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct LimitArgs {
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    #[arg(long = "node-budget")]
    pub node_budget: Option<u64>,
    /// Wall-clock limit per search, in seconds.
    #[arg(long = "time-budget")]
    pub time_budget: Option<f64>,
    /// Quotient by the frame permutations.
    #[arg(long = "permutation-reduction")]
    pub permutation_reduction: bool,
    /// Directory for witness certificate bundles.
    #[arg(long, env = CERT_DIR_ENV)]
    pub certs: Option<PathBuf>,
}

impl LimitArgs {
    fn apply(&self, cfg: &mut SearchConfig) {
        cfg.worker_count = self.workers.max(1);
        cfg.node_budget = self.node_budget;
        cfg.time_budget = self.time_budget.map(Duration::from_secs_f64);
        cfg.permutation_reduction = self.permutation_reduction;
    }
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub qs: QArgs,
    #[command(flatten)]
    pub limits: LimitArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn parse_kind(s: &str) -> Result<ArcKind, String> {
    s.parse()
}

fn parse_mode(s: &str) -> Result<SearchMode, String> {
    s.parse()
}

#[derive(Debug, Clone, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub q: u32,
    #[arg(long, value_parser = parse_kind)]
    pub kind: ArcKind,
    #[arg(long, value_parser = parse_mode)]
    pub mode: SearchMode,
    /// Search without fixing the standard frame.
    #[arg(long)]
    pub unrestricted: bool,
    #[arg(long = "k-floor")]
    pub k_floor: Option<usize>,
    #[arg(long = "k-ceiling")]
    pub k_ceiling: Option<usize>,
    #[arg(long = "witness-cap", default_value_t = search::DEFAULT_WITNESS_CAP)]
    pub witness_cap: usize,
    #[command(flatten)]
    pub limits: LimitArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(required = true)]
    pub paths: Vec<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub qs: QArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Parses `args` (including the program name) and runs the command,
/// writing the report to `out` and diagnostics to `err`.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match execute(&cli.command, err) {
        Ok((report, code, target)) => match emit(&report, target.as_deref(), out) {
            Ok(()) => code,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                EXIT_USAGE
            }
        },
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

struct Failure(u8, String);

fn usage(msg: impl ToString) -> Failure {
    Failure(EXIT_USAGE, msg.to_string())
}

fn emit(report: &str, target: Option<&Path>, out: &mut dyn Write) -> std::io::Result<()> {
    match target {
        Some(path) => fs::write(path, report),
        None => out.write_all(report.as_bytes()),
    }
}

type Outcome = (String, u8, Option<PathBuf>);

fn execute(cmd: &Command, err: &mut dyn Write) -> Result<Outcome, Failure> {
    match cmd {
        Command::Table1(a) => cmd_table(TableName::Table1, a, err),
        Command::Table2(a) => cmd_table(TableName::Table2, a, err),
        Command::Table3(a) => cmd_table(TableName::Table3, a, err),
        Command::Table4(a) => cmd_table(TableName::Table4, a, err),
        Command::Table5(a) => cmd_table(TableName::Table5, a, err),
        Command::Table6(a) => cmd_table(TableName::Table6, a, err),
        Command::Search(a) => cmd_search(a, err),
        Command::Verify(a) => cmd_verify(a),
        Command::Bounds(a) => cmd_bounds(a),
    }
}

fn write_bundle(dir: &Path, name: &str, json: &str) -> Result<PathBuf, Failure> {
    fs::create_dir_all(dir).map_err(|e| usage(format!("{}: {e}", dir.display())))?;
    let path = dir.join(name);
    fs::write(&path, json).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Ok(path)
}

fn cmd_table(name: TableName, a: &TableArgs, err: &mut dyn Write) -> Result<Outcome, Failure> {
    let known = KnownValues::builtin();
    let qs = a.qs.values().unwrap_or_else(|| name.default_rows(&known));
    let mut cfg_template = SearchConfig::new(2, ArcKind::Arc, SearchMode::Max);
    a.limits.apply(&mut cfg_template);
    let table = reproduce(name, &qs, &cfg_template, &known).map_err(usage)?;
    if let Some(dir) = &a.limits.certs {
        for (file, json) in table.bundles() {
            let path = write_bundle(dir, &file, &json)?;
            let _ = writeln!(err, "wrote {}", path.display());
        }
    }
    let report = match a.output.format {
        Format::Text => table.render_text(),
        Format::Csv => table.render_csv(),
        Format::Json => table.render_json(),
    };
    let code = if table.budget_exhausted() {
        EXIT_BUDGET
    } else if table.mismatches() > 0 {
        EXIT_MISMATCH
    } else {
        EXIT_OK
    };
    Ok((report, code, a.output.out.clone()))
}

fn cmd_search(a: &SearchArgs, err: &mut dyn Write) -> Result<Outcome, Failure> {
    let mut cfg = SearchConfig::new(a.q, a.kind, a.mode);
    a.limits.apply(&mut cfg);
    cfg.fix_frame = !a.unrestricted;
    cfg.k_floor = a.k_floor;
    cfg.k_ceiling = a.k_ceiling;
    cfg.witness_cap = a.witness_cap.max(1);
    let result = search::run(&cfg).map_err(usage)?;
    if let Some(dir) = &a.limits.certs {
        let file = format!("search_q{}_{}_{}.json", a.q, a.kind, a.mode);
        let path = write_bundle(dir, &file, &result.bundle_json())?;
        let _ = writeln!(err, "wrote {}", path.display());
    }
    let report = match a.output.format {
        Format::Csv => format!("{}\n{}\n", search::SearchResult::CSV_HEADER, result.csv_row()),
        Format::Json => result.bundle_json() + "\n",
        Format::Text => {
            let mut s = format!("{result}\n");
            for w in &result.witnesses {
                s += &format!("  {}\n", w.points.join(" "));
            }
            s
        }
    };
    let code = if result.exhaustive { EXIT_OK } else { EXIT_BUDGET };
    Ok((report, code, a.output.out.clone()))
}

#[derive(serde::Serialize)]
struct Verdict {
    path: String,
    index: usize,
    q: Option<u32>,
    kind: Option<ArcKind>,
    k: Option<usize>,
    passed: bool,
    problems: Vec<String>,
}

fn cmd_verify(a: &VerifyArgs) -> Result<Outcome, Failure> {
    let mut verdicts = Vec::new();
    for path in &a.paths {
        let shown = path.display().to_string();
        let fail = |msg: String| Verdict {
            path: shown.clone(),
            index: 0,
            q: None,
            kind: None,
            k: None,
            passed: false,
            problems: vec![msg],
        };
        let certs = match fs::read_to_string(path) {
            Err(e) => {
                verdicts.push(fail(format!("unreadable: {e}")));
                continue;
            }
            Ok(text) => match parse_certificates(&text) {
                Err(e) => {
                    verdicts.push(fail(e.to_string()));
                    continue;
                }
                Ok(c) => c,
            },
        };
        for (index, cert) in certs.iter().enumerate() {
            verdicts.push(match verify_certificate(cert) {
                Ok(r) => Verdict {
                    path: shown.clone(),
                    index,
                    q: Some(r.q),
                    kind: Some(r.kind),
                    k: Some(r.k),
                    passed: r.passed(),
                    problems: r.problems,
                },
                Err(e) => Verdict {
                    index,
                    ..fail(e.to_string())
                },
            });
        }
    }
    let all_ok = verdicts.iter().all(|v| v.passed);
    let report = match a.output.format {
        Format::Json => serde_json::to_string_pretty(&verdicts).expect("verdicts serialize") + "\n",
        Format::Csv => {
            let mut s = String::from("path,index,q,kind,k,passed,problems\n");
            for v in &verdicts {
                s += &format!(
                    "{},{},{},{},{},{},\"{}\"\n",
                    v.path,
                    v.index,
                    v.q.map_or("-".into(), |q| q.to_string()),
                    v.kind.map_or("-".into(), |k| k.to_string()),
                    v.k.map_or("-".into(), |k| k.to_string()),
                    v.passed,
                    v.problems.join("; ").replace('"', "\"\"")
                );
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for v in &verdicts {
                let status = if v.passed { "PASS" } else { "FAIL" };
                let what = match (v.q, v.kind, v.k) {
                    (Some(q), Some(kind), Some(k)) => format!("q={q} {kind} k={k}"),
                    _ => "unparsed".to_string(),
                };
                s += &format!("{status} {}#{} {what}", v.path, v.index);
                if !v.problems.is_empty() {
                    s += &format!(": {}", v.problems.join("; "));
                }
                s.push('\n');
            }
            s
        }
    };
    let code = if all_ok { EXIT_OK } else { EXIT_MISMATCH };
    Ok((report, code, a.output.out.clone()))
}

fn cmd_bounds(a: &BoundsArgs) -> Result<Outcome, Failure> {
    let known = KnownValues::builtin();
    let qs = a.qs.values().ok_or_else(|| usage("bounds needs --q or --q-range"))?;
    let reports: Vec<BoundReport> = qs
        .iter()
        .map(|&q| full_report(q, &known))
        .collect::<Result<_, _>>()
        .map_err(usage)?;
    let report = match a.output.format {
        Format::Json => serde_json::to_string_pretty(&reports).expect("reports serialize") + "\n",
        Format::Csv | Format::Text => {
            let mut s = format!("{}\n", BoundReport::CSV_HEADER);
            for r in &reports {
                s += &r.csv_row();
                s.push('\n');
            }
            if a.output.format == Format::Text {
                for r in &reports {
                    for line in r.flags.iter().chain(&r.inconsistencies) {
                        s += &format!("# {line}\n");
                    }
                }
            }
            s
        }
    };
    let consistent = reports.iter().all(|r| r.inconsistencies.is_empty());
    Ok((report, if consistent { EXIT_OK } else { EXIT_MISMATCH }, a.output.out.clone()))
}

/// Entry point for the binary.
pub fn main() -> std::process::ExitCode {
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    std::process::ExitCode::from(run_with(std::env::args_os(), &mut out, &mut err))
}
