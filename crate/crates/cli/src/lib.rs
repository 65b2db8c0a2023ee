//! Command-line front end for the multiplication library: multiply,
//! square, render squaring traces, count digit-level operations and run
//! the benchmark grid. All I/O goes through the streams handed to [`run`]
//! so the whole surface is testable in-process.
//!
//! Exit codes: 0 on success (including --help and --version), 2 for
//! argument or operand parse errors, 1 for internal failures such as a
//! benchmark cross-check mismatch, an I/O error, or a tripped invariant.

use std::fs::File;
use std::io::Write;
use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use nikmul::{
    bench_run, count_digit_procedure, emit_csv, metered_call, metered_nik_square,
    nik_square_traced, Algorithm, BaseCase, DigitProcedure, HybridConfig, Natural, OpCounts,
    DEFAULT_THRESHOLD_BITS,
};

/// Parses `argv` (program name first) and executes the chosen subcommand,
/// writing results to `out` and diagnostics to `err`. Returns the process
/// exit code instead of exiting, so tests can drive it directly.
pub fn run<O: Write, E: Write>(argv: &[String], out: &mut O, err: &mut E) -> u8 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render();
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{rendered}");
                0
            } else {
                let _ = write!(err, "{rendered}");
                2
            };
        }
    };

    // Algorithm-bug assertions inside the library panic; turn those into
    // exit code 1 with a diagnostic instead of a crash, keeping the
    // default hook from printing a second report.
    let previous_hook = panic::take_hook();
    panic::set_hook(Box::new(|_| {}));
    let outcome = panic::catch_unwind(AssertUnwindSafe(|| execute(cli, out)));
    panic::set_hook(previous_hook);

    match outcome {
        Ok(Ok(())) => 0,
        Ok(Err(Failure::Usage(message))) => {
            let _ = writeln!(err, "error: {message}");
            2
        }
        Ok(Err(Failure::Internal(message))) => {
            let _ = writeln!(err, "error: {message}");
            1
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            let _ = writeln!(err, "error: internal invariant failed: {message}");
            1
        }
    }
}

#[derive(Parser)]
#[command(
    name = "nikmul",
    version,
    about = "Arbitrary-precision multiplication via residue-chain squaring"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Multiply two natural numbers.
    Mul(MulArgs),
    /// Square a natural number with the residue-chain routine.
    Square(SquareArgs),
    /// Show the squaring residue chain as a table or JSON.
    Trace(TraceArgs),
    /// Count digit-level operations of a written procedure.
    Count(CountArgs),
    /// Time the multipliers over seeded operands and emit CSV.
    Bench(BenchArgs),
}

#[derive(Args)]
struct MulArgs {
    /// Left factor, written in the input radix.
    a: String,
    /// Right factor, written in the input radix.
    b: String,
    /// Multiplier to run.
    #[arg(long, value_enum, default_value = "hybrid")]
    algo: AlgoArg,
    /// Bit length below which the recursive multipliers hand off.
    #[arg(long, value_parser = parse_threshold, default_value_t = DEFAULT_THRESHOLD_BITS)]
    threshold: usize,
    /// Radix the operands are written in.
    #[arg(long = "radix-in", value_parser = parse_radix_io, default_value = "10")]
    radix_in: u32,
    /// Radix the product is printed in.
    #[arg(long = "radix-out", value_parser = parse_radix_io, default_value = "10")]
    radix_out: u32,
    /// Also report bit-level operation tallies.
    #[arg(long)]
    count: bool,
    /// Output shape.
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
}

#[derive(Args)]
struct SquareArgs {
    /// Value to square, written in the input radix.
    a: String,
    /// Radix the operand is written in.
    #[arg(long = "radix-in", value_parser = parse_radix_io, default_value = "10")]
    radix_in: u32,
    /// Radix the square is printed in.
    #[arg(long = "radix-out", value_parser = parse_radix_io, default_value = "10")]
    radix_out: u32,
    /// Also report bit-level operation tallies.
    #[arg(long)]
    count: bool,
    /// Output shape.
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
}

#[derive(Args)]
struct TraceArgs {
    /// Value to square, written in the input radix.
    a: String,
    /// Radix the operand is written in.
    #[arg(long = "radix-in", value_parser = parse_radix_io, default_value = "10")]
    radix_in: u32,
    /// Output shape; numerals inside the trace are always binary.
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
}

#[derive(Args)]
struct CountArgs {
    /// First operand, written in the chosen radix.
    m: String,
    /// Second operand, written in the chosen radix.
    n: String,
    /// Radix the procedure is worked in (2 through 16).
    #[arg(long, value_parser = parse_radix_digits, default_value = "10")]
    radix: u32,
    /// Written procedure to execute.
    #[arg(long, value_enum)]
    proc: ProcArg,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated operand bit lengths.
    #[arg(long, value_delimiter = ',', value_parser = parse_size, default_value = "64,256,1024,4096")]
    sizes: Vec<usize>,
    /// Trials per algorithm and size.
    #[arg(long, default_value_t = 5)]
    trials: u32,
    /// Master seed for operand generation.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Comma-separated algorithms to run.
    #[arg(
        long,
        value_enum,
        value_delimiter = ',',
        default_value = "schoolbook,nikhilam,karatsuba_plain,karatsuba_hybrid"
    )]
    algos: Vec<BenchAlgoArg>,
    /// Bit length below which the recursive multipliers hand off.
    #[arg(long, value_parser = parse_threshold, default_value_t = DEFAULT_THRESHOLD_BITS)]
    threshold: usize,
    /// Write the CSV here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Schoolbook,
    Nikhilam,
    Karatsuba,
    Hybrid,
}

impl From<AlgoArg> for Algorithm {
    fn from(arg: AlgoArg) -> Algorithm {
        match arg {
            AlgoArg::Schoolbook => Algorithm::Schoolbook,
            AlgoArg::Nikhilam => Algorithm::Nikhilam,
            AlgoArg::Karatsuba => Algorithm::KaratsubaPlain,
            AlgoArg::Hybrid => Algorithm::KaratsubaHybrid,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchAlgoArg {
    Schoolbook,
    Nikhilam,
    #[value(name = "karatsuba_plain")]
    KaratsubaPlain,
    #[value(name = "karatsuba_hybrid")]
    KaratsubaHybrid,
}

impl From<BenchAlgoArg> for Algorithm {
    fn from(arg: BenchAlgoArg) -> Algorithm {
        match arg {
            BenchAlgoArg::Schoolbook => Algorithm::Schoolbook,
            BenchAlgoArg::Nikhilam => Algorithm::Nikhilam,
            BenchAlgoArg::KaratsubaPlain => Algorithm::KaratsubaPlain,
            BenchAlgoArg::KaratsubaHybrid => Algorithm::KaratsubaHybrid,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ProcArg {
    Schoolbook,
    Karatsuba,
    Nikhilam,
}

impl From<ProcArg> for DigitProcedure {
    fn from(arg: ProcArg) -> DigitProcedure {
        match arg {
            ProcArg::Schoolbook => DigitProcedure::Schoolbook,
            ProcArg::Karatsuba => DigitProcedure::Karatsuba,
            ProcArg::Nikhilam => DigitProcedure::NikhilamNearBase,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

fn parse_radix_io(s: &str) -> Result<u32, String> {
    match s {
        "2" => Ok(2),
        "10" => Ok(10),
        "16" => Ok(16),
        _ => Err(format!("radix must be 2, 10 or 16, got {s}")),
    }
}

fn parse_radix_digits(s: &str) -> Result<u32, String> {
    let radix: u32 = s
        .parse()
        .map_err(|_| format!("radix must be an integer, got {s}"))?;
    if (2..=16).contains(&radix) {
        Ok(radix)
    } else {
        Err(format!("radix must be between 2 and 16, got {radix}"))
    }
}

fn parse_threshold(s: &str) -> Result<usize, String> {
    let threshold: usize = s
        .parse()
        .map_err(|_| format!("threshold must be an integer, got {s}"))?;
    if threshold >= 1 {
        Ok(threshold)
    } else {
        Err("threshold must be at least 1".into())
    }
}

fn parse_size(s: &str) -> Result<usize, String> {
    let size: usize = s
        .parse()
        .map_err(|_| format!("size must be an integer, got {s}"))?;
    if size >= 1 {
        Ok(size)
    } else {
        Err("sizes must be at least 1 bit".into())
    }
}

enum Failure {
    Usage(String),
    Internal(String),
}

fn execute<O: Write>(cli: Cli, out: &mut O) -> Result<(), Failure> {
    match cli.command {
        Command::Mul(args) => {
            let a = operand(&args.a, args.radix_in)?;
            let b = operand(&args.b, args.radix_in)?;
            let cfg = HybridConfig::new(args.threshold, BaseCase::Nikhilam);
            let (value, ops) = metered_call(args.algo.into(), &a, &b, &cfg);
            render_value(out, &value, args.radix_out, args.count.then_some(ops), args.format)
        }
        Command::Square(args) => {
            let a = operand(&args.a, args.radix_in)?;
            let (value, ops) = metered_nik_square(&a);
            render_value(out, &value, args.radix_out, args.count.then_some(ops), args.format)
        }
        Command::Trace(args) => {
            let a = operand(&args.a, args.radix_in)?;
            let (_, trace) = nik_square_traced(&a);
            match args.format {
                FormatArg::Text => emit(out, &trace.render_table()),
                FormatArg::Json => emit(out, &format!("{}\n", trace.to_json())),
            }
        }
        Command::Count(args) => {
            let (_, ops) = count_digit_procedure(args.proc.into(), &args.m, &args.n, args.radix)
                .map_err(|e| Failure::Usage(format!("operands: {e}")))?;
            emit(
                out,
                &format!(
                    "mults={} adds={} subs={} shifts={}\n",
                    ops.digit_mults, ops.adds, ops.subs, ops.shifts
                ),
            )
        }
        Command::Bench(args) => {
            let algos: Vec<Algorithm> = args.algos.iter().map(|&a| a.into()).collect();
            let cfg = HybridConfig::new(args.threshold, BaseCase::Nikhilam);
            let records = bench_run(&algos, &args.sizes, args.trials, args.seed, &cfg)
                .map_err(|e| Failure::Internal(e.to_string()))?;
            match &args.out {
                Some(path) => {
                    let mut file = File::create(path).map_err(|e| {
                        Failure::Internal(format!("cannot create {}: {e}", path.display()))
                    })?;
                    emit_csv(&records, &mut file).map_err(|e| {
                        Failure::Internal(format!("cannot write {}: {e}", path.display()))
                    })
                }
                None => emit_csv(&records, out)
                    .map_err(|e| Failure::Internal(format!("cannot write output: {e}"))),
            }
        }
    }
}

fn operand(text: &str, radix: u32) -> Result<Natural, Failure> {
    Natural::from_text(text, radix).map_err(|e| Failure::Usage(format!("operand {text:?}: {e}")))
}

fn render_value<O: Write>(
    out: &mut O,
    value: &Natural,
    radix_out: u32,
    counts: Option<OpCounts>,
    format: FormatArg,
) -> Result<(), Failure> {
    match format {
        FormatArg::Text => {
            emit(out, &format!("{}\n", value.to_text(radix_out)))?;
            if let Some(ops) = counts {
                emit(
                    out,
                    &format!(
                        "mults={} adds={} subs={} shifts={} exact_divs={}\n",
                        ops.digit_mults, ops.adds, ops.subs, ops.shifts, ops.exact_divisions
                    ),
                )?;
            }
            Ok(())
        }
        FormatArg::Json => {
            let mut doc = serde_json::json!({
                "result": value.to_text(radix_out),
                "radix": radix_out,
            });
            if let Some(ops) = counts {
                doc["counts"] = serde_json::json!({
                    "digit_mults": ops.digit_mults,
                    "adds": ops.adds,
                    "subs": ops.subs,
                    "shifts": ops.shifts,
                    "exact_divisions": ops.exact_divisions,
                });
            }
            emit(out, &format!("{doc}\n"))
        }
    }
}

fn emit<O: Write>(out: &mut O, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::Internal(format!("cannot write output: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn argument_grammar_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn radix_parsers_enforce_their_ranges() {
        assert_eq!(parse_radix_io("2"), Ok(2));
        assert_eq!(parse_radix_io("10"), Ok(10));
        assert_eq!(parse_radix_io("16"), Ok(16));
        assert!(parse_radix_io("7").is_err());
        assert_eq!(parse_radix_digits("7"), Ok(7));
        assert!(parse_radix_digits("1").is_err());
        assert!(parse_radix_digits("17").is_err());
        assert!(parse_threshold("0").is_err());
        assert_eq!(parse_threshold("2048"), Ok(2048));
        assert!(parse_size("0").is_err());
    }
}
