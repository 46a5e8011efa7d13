//! `arsite`: command-line front end to the `arsite` library.
//!
//! JSON comes in through `--input <file>` or stdin and goes out on stdout.
//! Exit codes: 0 success, 1 domain error, 2 malformed input or flags; on
//! failure stdout carries a single-line JSON error object.

mod commands;
mod input;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use arsite::adelic::{AdelicError, DEFAULT_PRIME_BOUND};
use arsite::envelope::EnvError;
use arsite::json::ToJson;
use arsite::polygeom::PolyError;
use arsite::quadfield::FieldId;
use arsite::selftest;
use arsite::svg::{render_envelope, render_polygon};

#[derive(Parser)]
#[command(
    name = "arsite",
    version,
    about = "Polygon semirings, tropical duals, adelic modules and tensor experiments over class-number-one imaginary quadratic fields"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// d in {1, 2, 3, 7, 11, 19, 43, 67, 163}
    #[arg(long, global = true, default_value_t = 1)]
    field: u32,
    /// Rational primes up to this bound are considered
    #[arg(long, global = true, default_value_t = DEFAULT_PRIME_BOUND)]
    bound: u64,
    /// Maximum number of factors in a reduced-quotient witness search
    #[arg(long, global = true, default_value_t = 2)]
    witness_bound: usize,
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Also write the figure for the result to this file
    #[arg(long, global = true)]
    svg: Option<PathBuf>,
    /// Read JSON from this file instead of stdin
    #[arg(long, global = true)]
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Ring data of the field
    FieldInfo,
    /// Polygon calculator: union, minkowski, meet, scale, contains, decompose, ...
    Poly,
    /// Membership in the semiring generated by the h·D_K
    Member,
    /// Support-function transforms (d = 1)
    Dual,
    /// Prime ideals above rational primes up to --bound
    Primes,
    /// Valuation vectors and their modules
    Adele,
    /// Stalks and fibers of the structure sheaf
    Stalk,
    /// Formal tensor products of envelopes
    Tensor {
        #[command(subcommand)]
        op: TensorOp,
    },
    /// Standalone SVG of a polygon or an envelope
    Render {
        /// Overlay the generator decomposition found by the membership search
        #[arg(long)]
        overlay: bool,
    },
    /// Runs the invariant suite and prints a JSON-lines report
    Selftest {
        /// Worker threads; 0 uses the available parallelism
        #[arg(long, default_value_t = 0)]
        threads: usize,
        /// Restrict to the named groups
        #[arg(long)]
        group: Vec<String>,
        /// Print per-group wall times on stderr
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Subcommand)]
enum TensorOp {
    Normalize,
    Sep,
    Reduce,
    Experiment {
        #[arg(long, default_value_t = 100)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
}

#[derive(Debug)]
pub enum CliError {
    Malformed(String),
    Domain(String),
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<EnvError> for CliError {
    fn from(e: EnvError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<AdelicError> for CliError {
    fn from(e: AdelicError) -> Self {
        CliError::Domain(e.to_string())
    }
}

pub enum Output {
    Json(Value),
    Lines(String),
}

fn threads(n: usize) -> usize {
    if n > 0 {
        n
    } else {
        std::thread::available_parallelism().map_or(1, |n| n.get())
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<Value, CliError> {
    let text = match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| CliError::Malformed(format!("{}: {e}", p.display())))?,
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Malformed(e.to_string()))?;
            s
        }
    };
    serde_json::from_str(&text).map_err(|e| CliError::Malformed(format!("invalid JSON: {e}")))
}

fn write_svg(path: &Option<PathBuf>, svg: &str) -> Result<(), CliError> {
    if let Some(p) = path {
        std::fs::write(p, svg).map_err(|e| CliError::Domain(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

/// Runs one command; `Ok(false)` reports a failed check without an error.
fn run(cli: Cli, out: &mut impl Write) -> Result<bool, CliError> {
    let field = FieldId::new(cli.field).map_err(|e| CliError::Malformed(e.to_string()))?;
    let needs_input = !matches!(
        cli.cmd,
        Cmd::FieldInfo | Cmd::Primes | Cmd::Selftest { .. } | Cmd::Tensor { op: TensorOp::Experiment { .. } }
    );
    let v = if needs_input { read_input(&cli.input)? } else { Value::Null };
    let mut ok = true;
    let output = match cli.cmd {
        Cmd::FieldInfo => commands::field_info(field),
        Cmd::Poly => {
            let (o, p) = commands::poly(field, &v)?;
            if let Some(p) = p {
                write_svg(&cli.svg, &render_polygon(&p, None)?)?;
            }
            o
        }
        Cmd::Member => {
            let (m, p) = commands::member(field, &v)?;
            write_svg(&cli.svg, &render_polygon(&p, m.decomposition.as_ref())?)?;
            Output::Json(m.to_json())
        }
        Cmd::Dual => match commands::dual(field, &v)? {
            commands::Dual::Envelope(e) => {
                write_svg(&cli.svg, &render_envelope(&e))?;
                Output::Json(e.to_json())
            }
            commands::Dual::Polygon(p) => {
                write_svg(&cli.svg, &render_polygon(&p, None)?)?;
                Output::Json(p.to_json())
            }
            commands::Dual::Other(x) => Output::Json(x),
        },
        Cmd::Primes => commands::primes(field, cli.bound),
        Cmd::Adele => commands::adele(field, cli.bound, &v)?,
        Cmd::Stalk => {
            let (o, fig) = commands::stalk(field, &v)?;
            if let Some((p, dec)) = fig {
                write_svg(&cli.svg, &render_polygon(&p, dec.as_ref())?)?;
            }
            o
        }
        Cmd::Tensor { op } => match op {
            TensorOp::Normalize => commands::tensor_normalize(&v)?,
            TensorOp::Sep => commands::tensor_sep(&v)?,
            TensorOp::Reduce => commands::tensor_reduce(&v, cli.witness_bound)?,
            TensorOp::Experiment { samples, threads: t } => {
                let (o, consistent) = commands::tensor_experiment(samples, cli.seed, threads(t));
                ok = consistent;
                o
            }
        },
        Cmd::Render { overlay } => {
            let svg = commands::render(field, &v, overlay)?;
            match &cli.svg {
                Some(_) => {
                    write_svg(&cli.svg, &svg)?;
                    Output::Json(
                        json!({ "svg": cli.svg.as_ref().map(|p| p.display().to_string()), "bytes": svg.len() }),
                    )
                }
                None => Output::Lines(svg),
            }
        }
        Cmd::Selftest { threads: t, group, timings } => {
            if let Some(g) = group.iter().find(|g| !selftest::GROUPS.iter().any(|(n, _)| n == g)) {
                return Err(CliError::Malformed(format!("unknown selftest group \"{g}\"")));
            }
            let timed = selftest::run_timed(cli.seed, threads(t), &group);
            if timings {
                for (r, dt) in &timed {
                    eprintln!("{}", json!({ "group": r.name, "millis": dt.as_millis() as u64 }));
                }
            }
            let reports: Vec<_> = timed.into_iter().map(|(r, _)| r).collect();
            ok = reports.iter().all(selftest::GroupReport::passed);
            Output::Lines(selftest::render_report(cli.seed, &reports))
        }
    };
    let text = match output {
        Output::Json(v) => format!("{v}\n"),
        Output::Lines(s) => s,
    };
    out.write_all(text.as_bytes()).map_err(|e| CliError::Domain(e.to_string()))?;
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments").trim_start_matches("error: ");
            println!("{}", json!({ "error": "malformed", "message": first }));
            return ExitCode::from(2);
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match run(cli, &mut lock) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Malformed(m)) => {
            println!("{}", json!({ "error": "malformed", "message": m }));
            ExitCode::from(2)
        }
        Err(CliError::Domain(m)) => {
            println!("{}", json!({ "error": "domain", "message": m }));
            ExitCode::from(1)
        }
    }
}
