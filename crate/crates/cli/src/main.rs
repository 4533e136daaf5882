use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qkgr::expr::parse_class;
use qkgr::output::{report_csv, report_json, series_csv, series_json, to_text};
use qkgr::suites::{run, tasks, SuiteParams};
use qkgr_core::arith::rat_to_string;
use qkgr_core::kring::{pairing_equivariant, pairing_nonequivariant};
use qkgr_core::qseries::KIND_NAMES;
use qkgr_core::{GrassmannianCtx, NovikovSeries, SeriesKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(name = "qkgr", version, about = "Quantum K-theory series of Grassmannians and their identity checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for randomized specializations.
    #[arg(long, global = true, default_value_t = 20_240_601)]
    seed: u64,
    /// Decimal digits for the q-integral numerics.
    #[arg(long, global = true, default_value_t = 50)]
    precision: u32,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Output file (stdout if absent).
    #[arg(long, short, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for suites.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Include wall time in the report.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Coefficients of a series for |d| <= D.
    Series {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: usize,
        #[arg(long = "N")]
        big_n: usize,
        #[arg(long = "D")]
        max_total: u32,
        #[arg(long, allow_hyphen_values = true)]
        l: Option<i32>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long = "N")]
        big_n: Option<usize>,
        #[arg(long = "D")]
        max_total: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        l: Option<i32>,
    },
    /// Euler characteristic of a class on Gr(n, N).
    Pairing {
        #[arg(long)]
        n: usize,
        #[arg(long = "N")]
        big_n: usize,
        #[arg(long, allow_hyphen_values = true)]
        class: String,
        #[arg(long)]
        equivariant: bool,
    },
}

enum Outcome {
    Pass,
    Fail,
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn emit(cli: &Cli, text: &str) -> Result<(), String> {
    match &cli.out {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    }
}

fn echo(cli: &Cli) -> Value {
    let common = json!({ "seed": cli.seed, "precision": cli.precision });
    let mut v = match &cli.command {
        Command::Series { kind, n, big_n, max_total, l } => {
            json!({ "name": "series", "kind": kind, "n": n, "N": big_n, "D": max_total, "l": l })
        }
        Command::Verify { suite, n, big_n, max_total, l } => {
            json!({ "name": "verify", "suite": suite, "n": n, "N": big_n, "D": max_total, "l": l })
        }
        Command::Pairing { n, big_n, class, equivariant } => {
            json!({ "name": "pairing", "n": n, "N": big_n, "class": class, "equivariant": equivariant })
        }
    };
    v["seed"] = common["seed"].clone();
    v["precision"] = common["precision"].clone();
    v
}

fn execute(cli: &Cli, start: Instant) -> Result<Outcome, ExitCode> {
    let wall = || cli.timing.then(|| start.elapsed().as_secs_f64());
    match &cli.command {
        Command::Series { kind, n, big_n, max_total, l } => {
            let kind = SeriesKind::parse(kind, *l)
                .map_err(|_| usage(format!("unknown kind '{kind}'; expected one of {}", KIND_NAMES.join(", "))))?;
            let ctx = GrassmannianCtx::new(*n, *big_n).map_err(usage)?;
            let s = NovikovSeries::build(kind, ctx, *max_total).map_err(usage)?;
            let text = match cli.format.unwrap_or(Format::Json) {
                Format::Json => to_text(&series_json(&echo(cli), &s)),
                Format::Csv => series_csv(&s),
            };
            emit(cli, &text).map_err(usage)?;
            Ok(Outcome::Pass)
        }
        Command::Verify { suite, n, big_n, max_total, l } => {
            let params = SuiteParams {
                n: *n,
                big_n: *big_n,
                max_total: *max_total,
                level: *l,
                seed: cli.seed,
                precision: cli.precision,
            };
            let ts = tasks(suite, &params).map_err(usage)?;
            let jobs = cli.jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            let rep = run(ts, jobs).map_err(usage)?;
            let text = match cli.format.unwrap_or(Format::Json) {
                Format::Json => to_text(&report_json(&echo(cli), &rep, wall())),
                Format::Csv => report_csv(&rep),
            };
            emit(cli, &text).map_err(usage)?;
            Ok(if rep.all_pass() { Outcome::Pass } else { Outcome::Fail })
        }
        Command::Pairing { n, big_n, class, equivariant } => {
            let ctx = GrassmannianCtx::new(*n, *big_n).map_err(usage)?;
            let phi = parse_class(class, *n).map_err(usage)?;
            let chi = pairing_nonequivariant(&ctx, &phi).map_err(usage)?;
            let eq = if *equivariant { Some(pairing_equivariant(&ctx, &phi).map_err(usage)?) } else { None };
            let text = match cli.format {
                Some(Format::Json) => {
                    let mut v = json!({
                        "schema": qkgr::output::SCHEMA,
                        "version": qkgr::output::VERSION,
                        "command": echo(cli),
                        "chi": rat_to_string(&chi),
                    });
                    if let Some(e) = &eq {
                        v["equivariant"] = json!(e.to_string());
                    }
                    to_text(&v)
                }
                _ => {
                    let mut t = format!("{}\n", rat_to_string(&chi));
                    if let Some(e) = &eq {
                        t.push_str(&format!("equivariant: {e}\n"));
                    }
                    t
                }
            };
            emit(cli, &text).map_err(usage)?;
            Ok(Outcome::Pass)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = execute(&cli, start);
    eprintln!("wall time: {:.3} s", start.elapsed().as_secs_f64());
    match result {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(code) => code,
    }
}
