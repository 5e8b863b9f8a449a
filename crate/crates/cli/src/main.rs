//! `equimatch`: recognize, generate, enumerate and verify triangle-free
//! equimatchable graphs.
//!
//! Exit codes: 0 positive verdict, 1 negative verdict, 2 usage or input
//! error, 3 cross-check failure.

mod input;
mod report;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use equimatch::families::{enumerate_all, instantiate, FamilyError, FamilyId, FamilyParams};
use equimatch::graph::io::{to_graph6, Format};
use equimatch::matching::{is_factor_critical, Oracle, OracleError, DEFAULT_ORACLE_CEILING};
use equimatch::{classify, Graph};

use report::{EnumerateRecord, RecognizeRecord, VerifyRecord};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}: {1}")]
    Io(String, #[source] io::Error),
    #[error("{0}: no graph found")]
    NoGraphs(String),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("--cross-check needs max vertices {max} within the oracle ceiling {ceiling}")]
    CrossCheckCeiling { max: usize, ceiling: usize },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum InputFormat {
    Graph6,
    Edgelist,
    Auto,
}

impl From<InputFormat> for Format {
    fn from(f: InputFormat) -> Format {
        match f {
            InputFormat::Graph6 => Format::Graph6,
            InputFormat::Edgelist => Format::EdgeList,
            InputFormat::Auto => Format::Auto,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputMode {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "equimatch", version, about = "Triangle-free equimatchable graph recognition")]
struct Cli {
    /// Input format for graph sources.
    #[arg(long, global = true, value_enum, default_value_t = InputFormat::Auto)]
    format: InputFormat,
    /// Output style.
    #[arg(long, global = true, value_enum, default_value_t = OutputMode::Json)]
    output: OutputMode,
    /// Largest graph the exhaustive oracle will accept.
    #[arg(
        long,
        global = true,
        env = "EQUIMATCH_ORACLE_CEILING",
        default_value_t = DEFAULT_ORACLE_CEILING,
        value_parser = parse_ceiling
    )]
    oracle_ceiling: usize,
    /// Seed for randomized sampling. No current command samples.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify each input graph.
    Recognize {
        /// Path to read, or `-` for standard input. Graph6 input may hold
        /// one graph per line.
        #[arg(default_value = "-")]
        input: String,
    },
    /// Print the graph6 encoding of one family member.
    Generate {
        /// Family token such as c7, f11 or g21.
        family: FamilyId,
        /// Parameters as key=value, for example n=3 r=1.
        params: Vec<String>,
    },
    /// Stream every family member up to a vertex count.
    Enumerate {
        max_vertices: usize,
        /// Run the exhaustive oracle on every member; exit 3 if any fails.
        #[arg(long)]
        cross_check: bool,
    },
    /// Run the exhaustive matching oracle on each input graph.
    Verify {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Print each input graph as DOT.
    ExportDot {
        #[arg(default_value = "-")]
        input: String,
    },
}

/// Outcome of a command, ordered by exit-code precedence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Status {
    Positive = 0,
    Negative = 1,
    InputError = 2,
    CrossCheckFailed = 3,
}

fn parse_ceiling(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|e| format!("{e}"))?;
    Oracle::new(n).map(|o| o.ceiling()).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(status) => ExitCode::from(status as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(Status::InputError as u8)
        }
    }
}

fn run(cli: &Cli) -> Result<Status, CliError> {
    let mut out = io::stdout().lock();
    match &cli.command {
        Command::Recognize { input } => for_each_graph(cli, input, |g, index| {
            let c = classify(g);
            let rec = RecognizeRecord::new(g, &c, index);
            emit(&mut out, cli.output, &rec, RecognizeRecord::text)?;
            Ok(if c.verdict { Status::Positive } else { Status::Negative })
        }),
        Command::Generate { family, params } => {
            let p = FamilyParams::from_tokens(*family, params)?;
            write_line(&mut out, &to_graph6(&instantiate(&p)))?;
            Ok(Status::Positive)
        }
        Command::Enumerate {
            max_vertices,
            cross_check,
        } => enumerate(cli, &mut out, *max_vertices, *cross_check),
        Command::Verify { input } => {
            let oracle = Oracle::new(cli.oracle_ceiling)?;
            for_each_graph(cli, input, |g, index| {
                let rec = VerifyRecord::new(&oracle, g, index)?;
                emit(&mut out, cli.output, &rec, VerifyRecord::text)?;
                Ok(if rec.equimatchable { Status::Positive } else { Status::Negative })
            })
        }
        Command::ExportDot { input } => for_each_graph(cli, input, |g, _| {
            out.write_all(g.to_dot().as_bytes())
                .map_err(|e| CliError::Io("stdout".into(), e))?;
            Ok(Status::Positive)
        }),
    }
}

/// Runs `f` on every graph in `input`. Records carry an index when the
/// source holds more than one graph. Parse errors are reported and skipped.
fn for_each_graph(
    cli: &Cli,
    input: &str,
    mut f: impl FnMut(&Graph, Option<usize>) -> Result<Status, CliError>,
) -> Result<Status, CliError> {
    let graphs = input::read_graphs(input, cli.format.into())?;
    let bulk = graphs.len() > 1;
    let mut status = Status::Positive;
    for (i, parsed) in graphs.iter().enumerate() {
        let s = match parsed {
            Ok(g) => match f(g, bulk.then_some(i)) {
                Ok(s) => s,
                Err(e) if bulk => {
                    eprintln!("error: graph {i}: {e}");
                    Status::InputError
                }
                Err(e) => return Err(e),
            },
            Err(e) => {
                if bulk {
                    eprintln!("error: {input}: graph {i}: {e}");
                } else {
                    eprintln!("error: {input}: {e}");
                }
                Status::InputError
            }
        };
        status = status.max(s);
    }
    Ok(status)
}

fn enumerate(cli: &Cli, out: &mut impl Write, max: usize, cross_check: bool) -> Result<Status, CliError> {
    let oracle = Oracle::new(cli.oracle_ceiling)?;
    if cross_check && max > oracle.ceiling() {
        return Err(CliError::CrossCheckCeiling {
            max,
            ceiling: oracle.ceiling(),
        });
    }
    let mut status = Status::Positive;
    for (p, g) in enumerate_all(max)? {
        let mut rec = EnumerateRecord::new(&p, to_graph6(&g));
        if cross_check {
            rec.oracle_equimatchable = Some(oracle.is_equimatchable(&g)?);
            rec.factor_critical = Some(is_factor_critical(&g));
            rec.triangle_free = Some(g.is_triangle_free());
            if !rec.passes() {
                status = Status::CrossCheckFailed;
            }
        }
        emit(out, cli.output, &rec, EnumerateRecord::text)?;
    }
    Ok(status)
}

fn emit<T: Serialize>(
    out: &mut impl Write,
    mode: OutputMode,
    rec: &T,
    text: impl Fn(&T) -> String,
) -> Result<(), CliError> {
    let line = match mode {
        OutputMode::Json => serde_json::to_string(rec).expect("records serialize"),
        OutputMode::Text => text(rec),
    };
    write_line(out, &line)
}

fn write_line(out: &mut impl Write, line: &str) -> Result<(), CliError> {
    writeln!(out, "{line}").map_err(|e| CliError::Io("stdout".into(), e))
}
