//! Command-line front end: DIMACS in, SAT-competition style answer out.
//!
//! ```text
//! solver [--checked] [--time-limit <s>] [--trace] [--no-verify-model] <file.cnf|->
//! solver gen php <holes>
//! solver gen queens <n>
//! ```
//!
//! Exit status is 10 for SAT, 20 for UNSAT, 0 when the time limit was hit
//! and 1 for input errors.

mod generate;

pub use generate::{generate_pigeonhole, generate_queens};

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::PathBuf;
use std::thread;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand};

use crate::cnf::{parse_dimacs, CnfFormula, ParsedDimacs};
use crate::oracle::check_model;
use crate::search::{Search, SearchEvent, SolveResult};
use crate::state::SolverState;

pub const EXIT_SAT: i32 = 10;
pub const EXIT_UNSAT: i32 = 20;
pub const EXIT_UNKNOWN: i32 = 0;
pub const EXIT_ERROR: i32 = 1;

const MODEL_LITERALS_PER_LINE: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    Stdin,
    Path(PathBuf),
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub input: Input,
    pub checked_mode: bool,
    pub time_limit: Option<Duration>,
    pub trace_events: bool,
    pub verify_model: bool,
}

impl RunConfig {
    pub fn new(input: Input) -> Self {
        RunConfig {
            input,
            checked_mode: false,
            time_limit: None,
            trace_events: false,
            verify_model: true,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "solver",
    about = "DPLL SAT solver",
    args_conflicts_with_subcommands = true
)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,

    /// Recompute and assert all state invariants after every mutation
    #[arg(long)]
    checked: bool,

    /// Give up after this many seconds and answer `s UNKNOWN`
    #[arg(long, value_name = "s", value_parser = parse_time_limit)]
    time_limit: Option<Duration>,

    /// Print decisions, propagations and backtracks as `c` lines
    #[arg(long)]
    trace: bool,

    /// Skip re-checking SAT models before printing them
    #[arg(long)]
    no_verify_model: bool,

    /// DIMACS CNF file, or `-` for standard input
    input: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a generated instance to standard output as DIMACS
    Gen {
        #[command(subcommand)]
        family: Family,
    },
}

#[derive(Subcommand, Debug)]
enum Family {
    /// Pigeonhole instance with holes + 1 pigeons
    Php {
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        holes: u32,
    },
    /// N-queens instance
    Queens {
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
    },
}

fn parse_time_limit(s: &str) -> Result<Duration, String> {
    let secs: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if !(secs.is_finite() && secs > 0.0) {
        return Err("time limit must be a positive number of seconds".to_string());
    }
    Duration::try_from_secs_f64(secs).map_err(|e| e.to_string())
}

/// Parses `args` (including the program name) and runs the requested command
/// against the process's standard streams.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { 0 };
        }
    };
    let mut out = io::BufWriter::new(io::stdout());
    let mut err = io::stderr();

    if let Some(Command::Gen { family }) = cli.command {
        let formula = match family {
            Family::Php { holes } => generate_pigeonhole(holes as usize),
            Family::Queens { n } => generate_queens(n as usize),
        };
        return match out
            .write_all(formula.to_dimacs().as_bytes())
            .and_then(|()| out.flush())
        {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                EXIT_ERROR
            }
        };
    }

    let Some(path) = cli.input else {
        let _ = writeln!(
            err,
            "error: missing input file (use `-` for standard input)"
        );
        return EXIT_ERROR;
    };
    let input = if path.as_os_str() == "-" {
        Input::Stdin
    } else {
        Input::Path(path)
    };
    let config = RunConfig {
        input,
        checked_mode: cli.checked,
        time_limit: cli.time_limit,
        trace_events: cli.trace,
        verify_model: !cli.no_verify_model,
    };
    run(&config, &mut out, &mut err)
}

/// Reads the configured input and solves it.
pub fn run<W: Write + Send, E: Write + Send>(config: &RunConfig, out: &mut W, err: &mut E) -> i32 {
    let started = Instant::now();
    let parsed = match &config.input {
        Input::Stdin => parse_dimacs(io::stdin().lock()),
        Input::Path(path) => match File::open(path) {
            Ok(file) => parse_dimacs(BufReader::new(file)),
            Err(e) => {
                let _ = writeln!(err, "error: {}: {e}", path.display());
                return EXIT_ERROR;
            }
        },
    };
    finish(config, parsed, started, out, err)
}

/// Like [`run`] but reads DIMACS from `reader`, ignoring `config.input`.
pub fn run_reader<R, W, E>(config: &RunConfig, reader: R, out: &mut W, err: &mut E) -> i32
where
    R: BufRead,
    W: Write + Send,
    E: Write + Send,
{
    let started = Instant::now();
    finish(config, parse_dimacs(reader), started, out, err)
}

fn finish<W: Write + Send, E: Write + Send>(
    config: &RunConfig,
    parsed: Result<ParsedDimacs, crate::cnf::ParseError>,
    started: Instant,
    out: &mut W,
    err: &mut E,
) -> i32 {
    let parsed = match parsed {
        Ok(parsed) => parsed,
        Err(e) => {
            let source = match &config.input {
                Input::Stdin => "<stdin>".to_string(),
                Input::Path(p) => p.display().to_string(),
            };
            let _ = writeln!(err, "error: {source}: {e}");
            return EXIT_ERROR;
        }
    };
    for warning in &parsed.warnings {
        let _ = writeln!(err, "c warning: {warning}");
    }
    let formula = parsed.formula;
    let deadline = config.time_limit.map(|limit| started + limit);

    // Recursion depth is bounded by the variable count.
    let stack_size = (16 << 20) + formula.variables_count() * 1024;
    let status = thread::scope(|scope| {
        let handle = thread::Builder::new()
            .name("search".to_string())
            .stack_size(stack_size)
            .spawn_scoped(scope, || {
                solve_and_report(config, &formula, deadline, out, err)
            })
            .expect("failed to spawn search thread");
        match handle.join() {
            Ok(status) => status,
            Err(panic) => std::panic::resume_unwind(panic),
        }
    });
    match status {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

enum Outcome {
    Solved(SolveResult),
    TimedOut,
}

fn solve_and_report<W: Write, E: Write>(
    config: &RunConfig,
    formula: &CnfFormula,
    deadline: Option<Instant>,
    out: &mut W,
    err: &mut E,
) -> io::Result<i32> {
    let outcome = match SolverState::new(formula) {
        Err(_) => Outcome::Solved(SolveResult::Unsat),
        Ok(mut state) => {
            state.set_checked(config.checked_mode);
            let mut trace_error = None;
            let mut tracer = |_: &SolverState<'_>, event: &SearchEvent| {
                if matches!(event, SearchEvent::Enter { .. }) || trace_error.is_some() {
                    return;
                }
                if let Err(e) = writeln!(out, "c {event}") {
                    trace_error = Some(e);
                }
            };
            let mut search = Search::new();
            if config.trace_events {
                search = search.with_observer(&mut tracer);
            }
            if let Some(deadline) = deadline {
                search = search.with_deadline(deadline);
            }
            let result = search.solve(&mut state);
            if let Some(e) = trace_error {
                return Err(e);
            }
            match result {
                Ok(result) => Outcome::Solved(result),
                Err(_) => Outcome::TimedOut,
            }
        }
    };

    match outcome {
        Outcome::TimedOut => {
            writeln!(out, "s UNKNOWN")?;
            out.flush()?;
            Ok(EXIT_UNKNOWN)
        }
        Outcome::Solved(SolveResult::Unsat) => {
            writeln!(out, "s UNSATISFIABLE")?;
            out.flush()?;
            Ok(EXIT_UNSAT)
        }
        Outcome::Solved(SolveResult::Sat(model)) => {
            if config.verify_model && check_model(formula, &model) != Ok(true) {
                writeln!(err, "error: internal error: model failed verification")?;
                return Ok(EXIT_ERROR);
            }
            writeln!(out, "s SATISFIABLE")?;
            write_model(out, &model)?;
            out.flush()?;
            Ok(EXIT_SAT)
        }
    }
}

/// `v` lines with 1-based signed literals; the last one ends with `0`.
pub fn write_model<W: Write>(out: &mut W, model: &[bool]) -> io::Result<()> {
    let literals: Vec<String> = model
        .iter()
        .enumerate()
        .map(|(i, &value)| {
            if value {
                format!("{}", i + 1)
            } else {
                format!("-{}", i + 1)
            }
        })
        .collect();
    for chunk in literals.chunks(MODEL_LITERALS_PER_LINE) {
        writeln!(out, "v {}", chunk.join(" "))?;
    }
    writeln!(out, "v 0")
}
