//! The `hirz` command line.
//!
//! Exit codes: 0 on success, 1 for malformed or inadmissible input, 2 for a
//! valid character outside what a classifier covers, 3 for internal errors
//! (including a failed `verify` sweep).

pub mod render;
pub mod request;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hirz_core::construction::{check_point, VerifyReport};
use hirz_core::Grid;
use rayon::prelude::*;
use serde_json::{json, Value};

use request::{evaluate, respond, C1Spec, CliError, Request, SurfaceSpec};

#[derive(Parser, Debug)]
#[command(name = "hirz", version, about = "Exact cohomology and classification of sheaves on Hirzebruch surfaces")]
struct Cli {
    /// Emit one JSON object per request instead of a table.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cohomology of the line bundle O(aE + bF).
    Lb {
        #[arg(long)]
        e: u32,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
    },
    /// Betti numbers of a general sheaf of the given character.
    Betti(CharArgs),
    /// Whether the general sheaf has more than one nonzero cohomology group.
    Special(CharArgs),
    /// Search for a Gaeta-type resolution.
    Gaeta {
        #[command(flatten)]
        ch: CharArgs,
        /// List every feasible twist in the search box.
        #[arg(long)]
        all: bool,
    },
    /// Whether the general sheaf is globally generated.
    Gg(GgArgs),
    /// Necessary and sufficient tests for ampleness.
    Ample(GgArgs),
    /// Evaluate a JSON array of requests.
    Batch {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "out")]
        output: Option<PathBuf>,
    },
    /// Cross-check Betti numbers against explicit direct-sum models.
    Verify {
        #[arg(long, value_enum, default_value = "small")]
        grid: GridName,
    },
}

#[derive(Args, Debug)]
struct CharArgs {
    #[arg(long)]
    e: u32,
    #[arg(long)]
    r: i64,
    /// `K,L` for c1 = K·E + L·F.
    #[arg(long, allow_hyphen_values = true)]
    c1: String,
    /// Exact rational, e.g. `-3/2`.
    #[arg(long, allow_hyphen_values = true)]
    ch2: String,
}

#[derive(Args, Debug)]
struct GgArgs {
    #[arg(long, value_enum, default_value = "fe")]
    surface: SurfaceName,
    /// Required on F_e.
    #[arg(long)]
    e: Option<u32>,
    #[arg(long)]
    r: i64,
    /// `K,L` on F_e, or the degree `D` on P2.
    #[arg(long, allow_hyphen_values = true)]
    c1: String,
    #[arg(long, allow_hyphen_values = true)]
    ch2: String,
    /// Report a non-nef slope as not globally generated instead of failing.
    #[arg(long)]
    lenient: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SurfaceName {
    Fe,
    P2,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GridName {
    Small,
    Full,
}

fn parse_pair(raw: &str) -> Result<[i64; 2], CliError> {
    let parts: Vec<&str> = raw.split(',').map(str::trim).collect();
    let bad = || CliError::Parse(format!("c1 must be K,L with integers, got {raw:?}"));
    match parts.as_slice() {
        [k, l] => Ok([k.parse().map_err(|_| bad())?, l.parse().map_err(|_| bad())?]),
        _ => Err(bad()),
    }
}

fn character_request(cmd: &str, ch: &CharArgs) -> Result<Request, CliError> {
    Ok(Request {
        cmd: cmd.to_string(),
        surface: SurfaceSpec::Fe { e: ch.e },
        rank: Some(ch.r),
        c1: C1Spec::Pair(parse_pair(&ch.c1)?),
        ch2: Some(ch.ch2.clone()),
        all: false,
        lenient: false,
    })
}

fn gg_request(cmd: &str, g: &GgArgs) -> Result<Request, CliError> {
    let (surface, c1) = match g.surface {
        SurfaceName::Fe => {
            let e = g.e.ok_or_else(|| CliError::Parse("--e is required on F_e".into()))?;
            (SurfaceSpec::Fe { e }, C1Spec::Pair(parse_pair(&g.c1)?))
        }
        SurfaceName::P2 => {
            let d = g.c1.trim().parse().map_err(|_| CliError::Parse(format!("c1 on P2 must be an integer, got {:?}", g.c1)))?;
            (SurfaceSpec::P2, C1Spec::Single(d))
        }
    };
    Ok(Request {
        cmd: cmd.to_string(),
        surface,
        rank: Some(g.r),
        c1,
        ch2: Some(g.ch2.clone()),
        all: false,
        lenient: g.lenient,
    })
}

/// The sweep grid: `--grid`, then `HIRZ_GRID` if set. The variable is either a
/// full grid description (`small`, `full`, optionally followed by
/// `:key=value,...`) or bare overrides applied to `--grid`.
pub fn resolve_grid(base: Grid, env: Option<&str>) -> Result<Grid, String> {
    match env.map(str::trim).filter(|s| !s.is_empty()) {
        None => Ok(base),
        Some(spec) if spec.starts_with("small") || spec.starts_with("full") => spec.parse(),
        Some(spec) => base.with_overrides(spec),
    }
}

/// Parallel sweep; the report does not depend on scheduling.
pub fn verify_grid(grid: &Grid) -> VerifyReport {
    let points = grid.points();
    let outcomes: Vec<_> = points.par_iter().map(|(s, v)| check_point(*s, v)).collect();
    let mut report = VerifyReport::default();
    for ((s, v), outcome) in points.iter().zip(outcomes) {
        report.record(*s, v, outcome);
    }
    report
}

/// Evaluates a batch in parallel, keeping input order.
pub fn run_batch(items: &[Value]) -> Vec<Value> {
    items.par_iter().map(respond).collect()
}

fn to_json_line(v: &Value) -> String {
    serde_json::to_string(v).expect("serializable") + "\n"
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let json = cli.json;
    let req = match &cli.command {
        Command::Lb { e, a, b } => Ok(Request {
            cmd: "lb".into(),
            surface: SurfaceSpec::Fe { e: *e },
            rank: None,
            c1: C1Spec::Pair([*a, *b]),
            ch2: None,
            all: false,
            lenient: false,
        }),
        Command::Betti(ch) => character_request("betti", ch),
        Command::Special(ch) => character_request("special", ch),
        Command::Gaeta { ch, all } => character_request("gaeta", ch).map(|r| Request { all: *all, ..r }),
        Command::Gg(g) => gg_request("gg", g),
        Command::Ample(g) => gg_request("ample", g),
        Command::Batch { input, output } => return batch(input, output.as_ref(), out, err),
        Command::Verify { grid } => return verify(*grid, json, out, err),
    };
    let result = req.and_then(|r| evaluate(&r).map(|rec| (r, rec)));
    match result {
        Ok((req, rec)) => {
            let text = if json { to_json_line(&rec.to_json()) } else { render::record(&req, &rec) };
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(e) => report_error(&e, json, out, err),
    }
}

fn report_error(e: &CliError, json: bool, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if json {
        let _ = out.write_all(to_json_line(&e.to_json()).as_bytes());
    }
    let _ = writeln!(err, "error [{}]: {e}", e.label());
    e.exit_code()
}

fn batch(input: &PathBuf, output: Option<&PathBuf>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let raw = match std::fs::read_to_string(input) {
        Ok(raw) => raw,
        Err(e) => {
            let _ = writeln!(err, "error: cannot read {}: {e}", input.display());
            return 1;
        }
    };
    let items: Vec<Value> = match serde_json::from_str(&raw) {
        Ok(items) => items,
        Err(e) => {
            let _ = writeln!(err, "error [Parse]: {} is not a JSON array: {e}", input.display());
            return 1;
        }
    };
    let responses = Value::Array(run_batch(&items));
    let text = serde_json::to_string_pretty(&responses).expect("serializable") + "\n";
    match output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
                return 1;
            }
        }
        None => {
            let _ = out.write_all(text.as_bytes());
        }
    }
    0
}

fn verify(name: GridName, json: bool, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let base = match name {
        GridName::Small => Grid::small(),
        GridName::Full => Grid::full(),
    };
    let env = std::env::var("HIRZ_GRID").ok();
    let grid = match resolve_grid(base, env.as_deref()) {
        Ok(g) => g,
        Err(e) => {
            let _ = writeln!(err, "error [Parse]: HIRZ_GRID: {e}");
            return 1;
        }
    };
    let report = verify_grid(&grid);
    let rate = format!("{:.4}", report.abstention_rate());
    if json {
        let failures: Vec<Value> = report
            .failures
            .iter()
            .map(|(s, v, why)| json!({ "surface": s.to_string(), "character": v.to_string(), "detail": why }))
            .collect();
        let summary = json!({
            "grid": grid.to_string(),
            "grid_size": report.grid_size,
            "matches": report.matches,
            "abstentions": report.abstentions,
            "unsupported": report.unsupported,
            "abstention_rate": rate,
            "failures": failures,
        });
        let _ = out.write_all(to_json_line(&summary).as_bytes());
    } else {
        let row = vec![
            ("grid".to_string(), grid.to_string()),
            ("points".to_string(), report.grid_size.to_string()),
            ("matches".to_string(), report.matches.to_string()),
            ("abstentions".to_string(), report.abstentions.to_string()),
            ("unsupported".to_string(), report.unsupported.to_string()),
            ("failures".to_string(), report.failures.len().to_string()),
            ("abstention_rate".to_string(), rate),
        ];
        let _ = out.write_all(render::table(&[row]).as_bytes());
        for (s, v, why) in report.failures.iter().take(20) {
            let _ = writeln!(out, "FAIL {v} on {s}: {why}");
        }
    }
    if report.passed() {
        0
    } else {
        3
    }
}
