//! Command-line driver.
//!
//! Exit codes: 0 success, 1 verification failure, 2 excluded configuration,
//! 3 unsupported request (including malformed arguments).

pub mod config;
pub mod count;
pub mod report;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
use config::{exit_code, parse_twisted_type, CountLevel, Format, KappaClass, KappaSelector, RunConfig};

#[derive(Debug, Parser)]
#[command(name = "mckay", version, about = "Exact counts of Galois-fixed p'-characters of Borel subgroups and their labels")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Total and sigma-fixed counts for one group.
    Count(CountArgs),
    /// Run an invariant suite.
    Verify(VerifyArgs),
    /// Sweep a grid and emit CSV or JSON records.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
struct CountArgs {
    /// Lie type, optionally prefixed by the twist order (e.g. `C`, `2A`).
    #[arg(long = "type")]
    lie_type: String,
    #[arg(long)]
    rank: usize,
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    f: u32,
    /// Order of the diagram automorphism.
    #[arg(long)]
    w: Option<u32>,
    /// Single value of e; all of 0..=e-max when omitted.
    #[arg(long)]
    e: Option<u64>,
    /// Upper end of the e range (default 2f).
    #[arg(long)]
    e_max: Option<u64>,
    /// all, square, nonsquare, or an integer.
    #[arg(long, default_value = "all")]
    kappa: KappaSelector,
    #[arg(long, value_enum, ignore_case = true, default_value = "B")]
    level: CountLevel,
    /// Break counts down by central character.
    #[arg(long)]
    per_central: bool,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: verify::Suite,
    /// Print only the JSON summary.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct ReportArgs {
    /// Comma-separated types, optionally twisted (e.g. `A,C,2A`).
    #[arg(long)]
    types: String,
    /// Comma-separated ranks.
    #[arg(long)]
    ranks: String,
    /// Comma-separated prime powers.
    #[arg(long)]
    qs: String,
    /// Comma-separated levels among B, Bt, labels, classes.
    #[arg(long, default_value = "B")]
    levels: String,
    /// Comma-separated kappa classes among square, nonsquare.
    #[arg(long, default_value = "square,nonsquare")]
    kappa: String,
    #[arg(long)]
    e_max: Option<u64>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn split_list<T>(s: &str, parse: impl Fn(&str) -> Result<T, String>) -> Result<Vec<T>, String> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty()).map(parse).collect()
}

fn count_config(a: &CountArgs) -> Result<RunConfig, Error> {
    let (lie_type, prefix_w) = parse_twisted_type(&a.lie_type)?;
    let w = match (prefix_w, a.w) {
        (1, Some(w)) => w,
        (pw, Some(w)) if w != pw => {
            return Err(Error::InvalidArgument(format!("--type {} conflicts with --w {w}", a.lie_type)))
        }
        (pw, _) => pw,
    };
    let e_values = match a.e {
        Some(e) => vec![e],
        None => (0..=a.e_max.unwrap_or(2 * a.f as u64)).collect(),
    };
    Ok(RunConfig {
        lie_type,
        rank: a.rank,
        p: a.p,
        f: a.f,
        w,
        e_values,
        kappa: a.kappa,
        level: a.level,
        per_central_character: a.per_central,
        format: a.format,
    })
}

fn report_grid(a: &ReportArgs) -> Result<report::Grid, Error> {
    let invalid = Error::InvalidArgument;
    let types = split_list(&a.types, |s| parse_twisted_type(s).map_err(|e| e.to_string())).map_err(invalid)?;
    let ranks = split_list(&a.ranks, |s| s.parse().map_err(|_| format!("bad rank {s:?}"))).map_err(invalid)?;
    let qs = split_list(&a.qs, |s| s.parse().map_err(|_| format!("bad q {s:?}"))).map_err(invalid)?;
    let levels = split_list(&a.levels, |s| {
        <CountLevel as clap::ValueEnum>::from_str(s, true)
    })
    .map_err(invalid)?;
    let kappa_classes = split_list(&a.kappa, |s| match s.to_ascii_lowercase().as_str() {
        "square" => Ok(KappaClass::Square),
        "nonsquare" => Ok(KappaClass::Nonsquare),
        _ => Err(format!("bad kappa class {s:?}")),
    })
    .map_err(invalid)?;
    Ok(report::Grid { types, ranks, qs, levels, kappa_classes, e_max: a.e_max })
}

fn fail(err: &mut dyn Write, e: &Error) -> i32 {
    let _ = writeln!(err, "error: {e}");
    exit_code(e)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match cli.command {
        Command::Count(a) => {
            let report = count_config(&a).and_then(|cfg| count::compute(&cfg));
            match report {
                Ok(r) => {
                    let _ = write!(out, "{}", count::render(&r, a.format));
                    0
                }
                Err(e) => fail(err, &e),
            }
        }
        Command::Verify(a) => {
            let summary = verify::run(a.suite);
            if !a.json {
                for c in &summary.checks {
                    let status = serde_json::to_value(c.status).expect("serializable");
                    let status = status.as_str().unwrap_or("?");
                    let _ = writeln!(out, "{status:<4} {}/{} {}", c.suite, c.name, c.detail);
                }
            }
            let _ = writeln!(out, "{}", serde_json::to_string(&summary).expect("serializable"));
            if summary.ok() {
                0
            } else {
                1
            }
        }
        Command::Report(a) => {
            let result = report_grid(&a).and_then(|g| report::compute(&g));
            let r = match result {
                Ok(r) => r,
                Err(e) => return fail(err, &e),
            };
            for s in &r.skipped {
                let _ = writeln!(err, "skipped: {s}");
            }
            let text = match a.format {
                Format::Json => report::render_json(&r),
                _ => report::render_csv(&r),
            };
            match &a.output {
                Some(path) => match std::fs::write(path, text) {
                    Ok(()) => 0,
                    Err(e) => {
                        let _ = writeln!(err, "error: writing {}: {e}", path.display());
                        1
                    }
                },
                None => {
                    let _ = write!(out, "{text}");
                    0
                }
            }
        }
    }
}
