//! Command line front end: exact counts of minimal permutations and their
//! overlap generalizations, cross-checked between independent methods.
//!
//! Exit codes: 0 success / all methods agree, 1 disagreement or failed
//! verification, 2 usage error, 3 resource limit exceeded. Results go to
//! stdout; diagnostics go to stderr.

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use minperm::verify::{run_suite, Suite};
use minperm::{
    closed_formula, count_by_brute_force, count_by_determinants, count_by_tableaux, BigInt, Error,
};
use minperm_cli::report::{
    CheckReport, MethodResult, Parameters, RunReport, ShapeCount, TableReport, TableRow,
    VerifyReport,
};

const EXIT_OK: u8 = 0;
const EXIT_DISAGREEMENT: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "minperm",
    version,
    about = "Exact enumeration of minimal permutations with d descents via skew tableaux"
)]
struct Cli {
    /// Worker threads for the parallel sweeps (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one count by several methods and check they agree.
    Count(CountArgs),
    /// Emit a d -> count table for a fixed number of rows.
    Table(TableArgs),
    /// Run the library's invariant suites.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct CountArgs {
    /// Permutation length (n = d + k). Give any two of --n, --d, --k.
    #[arg(long)]
    n: Option<usize>,

    /// Number of descents.
    #[arg(long)]
    d: Option<usize>,

    /// Number of descending runs, i.e. tableau rows.
    #[arg(long)]
    k: Option<usize>,

    /// Row overlap (2 = minimal permutations, 1 = descent counts only,
    /// 0 = surjections).
    #[arg(long, default_value_t = 2)]
    h: usize,

    /// Comma-separated methods: det, closed, brute, tableaux.
    #[arg(long, default_value = "det")]
    methods: String,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Largest n the brute-force scan accepts.
    #[arg(long, default_value_t = 10)]
    oracle_limit: usize,

    /// Largest cell count exhaustive tableau generation accepts.
    #[arg(long, default_value_t = 14)]
    cell_limit: usize,

    /// Include the per-shape breakdown of the determinant sum.
    #[arg(long)]
    shapes: bool,
}

#[derive(Args)]
struct TableArgs {
    /// Number of rows: an integer, or "d" for the square case k = d.
    #[arg(long)]
    k: String,

    /// Row overlap.
    #[arg(long, default_value_t = 2)]
    h: usize,

    /// Last descent count to tabulate.
    #[arg(long)]
    max_d: usize,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Size class: small (n <= 7) or standard (n <= 9).
    #[arg(long, default_value = "small")]
    suite: Suite,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Method {
    Det,
    Closed,
    Brute,
    Tableaux,
}

impl Method {
    fn label(self) -> &'static str {
        match self {
            Method::Det => "det",
            Method::Closed => "closed",
            Method::Brute => "brute",
            Method::Tableaux => "tableaux",
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        // Only the first global pool wins; ignore the error if one exists.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global();
    }
    let code = match cli.command {
        Command::Count(args) => run_count(args),
        Command::Table(args) => run_table(args),
        Command::Verify(args) => run_verify(args),
    };
    ExitCode::from(code)
}

fn usage(message: &str) -> u8 {
    eprintln!("minperm: {message}");
    EXIT_USAGE
}

fn exit_code_for(error: &Error) -> u8 {
    match error {
        Error::OracleLimit { .. } | Error::CellLimit { .. } => EXIT_RESOURCE,
        _ => EXIT_USAGE,
    }
}

/// Completes (n, d, k) from any two of them, insisting on n = d + k.
fn resolve_parameters(
    n: Option<usize>,
    d: Option<usize>,
    k: Option<usize>,
) -> Result<(usize, usize, usize), String> {
    let (n, d, k) = match (n, d, k) {
        (Some(n), Some(d), Some(k)) => {
            if d + k != n {
                return Err(format!(
                    "inconsistent parameters: --n {n} != --d {d} + --k {k}"
                ));
            }
            (n, d, k)
        }
        (Some(n), Some(d), None) => {
            if d >= n {
                return Err(format!("--d {d} must be smaller than --n {n}"));
            }
            (n, d, n - d)
        }
        (Some(n), None, Some(k)) => {
            if k > n {
                return Err(format!("--k {k} must be at most --n {n}"));
            }
            (n, n - k, k)
        }
        (None, Some(d), Some(k)) => (d + k, d, k),
        _ => return Err("give at least two of --n, --d, --k".into()),
    };
    if k == 0 {
        return Err("the permutation needs at least one descending run (k >= 1)".into());
    }
    Ok((n, d, k))
}

fn parse_methods(list: &str) -> Result<Vec<Method>, String> {
    let mut methods = Vec::new();
    for name in list.split(',') {
        let method = match name.trim() {
            "det" => Method::Det,
            "closed" => Method::Closed,
            "brute" => Method::Brute,
            "tableaux" => Method::Tableaux,
            other => {
                return Err(format!(
                    "unknown method `{other}` (use det, closed, brute, tableaux)"
                ))
            }
        };
        if !methods.contains(&method) {
            methods.push(method);
        }
    }
    if methods.is_empty() {
        return Err("no methods requested".into());
    }
    Ok(methods)
}

fn run_count(args: CountArgs) -> u8 {
    let (n, d, k) = match resolve_parameters(args.n, args.d, args.k) {
        Ok(triple) => triple,
        Err(message) => return usage(&message),
    };
    let methods = match parse_methods(&args.methods) {
        Ok(methods) => methods,
        Err(message) => return usage(&message),
    };
    let h = args.h;

    // A single row is unconstrained by the overlap.
    let min = if k == 1 { 1 } else { h.max(1) };
    if n < k * min {
        eprintln!(
            "minperm: no composition of {n} into {k} parts of size at least {min}; the count is 0"
        );
    }

    let mut results = Vec::new();
    for method in &methods {
        let start = Instant::now();
        let value: Result<BigInt, Error> = match method {
            Method::Det => Ok(count_by_determinants(n, k, h).value),
            Method::Closed => {
                if h != 2 {
                    return usage("closed formulas exist only for overlap 2 (--h 2)");
                }
                closed_formula(d, k).map(|r| r.value)
            }
            Method::Brute => count_by_brute_force(n, k, h, args.oracle_limit).map(|r| r.value),
            Method::Tableaux => count_by_tableaux(n, k, h, args.cell_limit).map(|r| r.value),
        };
        match value {
            Ok(value) => results.push(MethodResult {
                method: method.label().to_string(),
                value: value.to_string(),
                duration_us: start.elapsed().as_micros() as u64,
            }),
            Err(error) => {
                eprintln!("minperm: {}: {error}", method.label());
                return exit_code_for(&error);
            }
        }
    }

    let shapes = args.shapes.then(|| {
        minperm::determinant_summands(n, k, h)
            .into_iter()
            .map(|(a, count)| ShapeCount {
                composition: a.parts().to_vec(),
                shape: a.shape(h).expect("summand compositions encode shapes"),
                count: count.to_string(),
            })
            .collect()
    });

    let agree = minperm_cli::report::all_agree(&results);
    let report = RunReport {
        command: format!(
            "count --n {n} --d {d} --k {k} --h {h} --methods {}",
            methods
                .iter()
                .map(|m| m.label())
                .collect::<Vec<_>>()
                .join(",")
        ),
        parameters: Parameters { n, d, k, h },
        results,
        agree,
        shapes,
    };
    emit(args.format, &report, || report.to_csv());
    if agree {
        EXIT_OK
    } else {
        eprintln!("minperm: methods disagree");
        EXIT_DISAGREEMENT
    }
}

fn run_table(args: TableArgs) -> u8 {
    let h = args.h;
    let start = Instant::now();
    let rows: Vec<TableRow> = if args.k == "d" {
        // Square case: k tracks d. At overlap 2 the shapes are two-column
        // rectangles and the counts are the Catalan numbers.
        (1..=args.max_d)
            .map(|d| TableRow {
                d,
                count: count_by_determinants(2 * d, d, h).value.to_string(),
            })
            .collect()
    } else {
        let k: usize = match args.k.parse() {
            Ok(k) if k >= 1 => k,
            _ => return usage("--k must be a positive integer or the letter d"),
        };
        let d_min = k * (h.max(1) - 1);
        if d_min > args.max_d {
            eprintln!(
                "minperm: no feasible d up to {} for k={k}, h={h} (the first is {d_min})",
                args.max_d
            );
        }
        (d_min..=args.max_d)
            .map(|d| TableRow {
                d,
                count: count_by_determinants(d + k, k, h).value.to_string(),
            })
            .collect()
    };

    let report = TableReport {
        command: format!("table --k {} --h {h} --max-d {}", args.k, args.max_d),
        k: args.k.clone(),
        h,
        max_d: args.max_d,
        rows,
        duration_us: start.elapsed().as_micros() as u64,
    };
    emit(args.format, &report, || report.to_csv());
    EXIT_OK
}

fn run_verify(args: VerifyArgs) -> u8 {
    let start = Instant::now();
    let mut checks = Vec::new();
    for check in run_suite(args.suite) {
        eprintln!(
            "check {}: {} ({:.2}s)",
            check.name,
            if check.passed { "ok" } else { "FAILED" },
            check.duration.as_secs_f64()
        );
        if let Some(witness) = &check.witness {
            eprintln!("  witness: {witness}");
        }
        checks.push(CheckReport {
            name: check.name.to_string(),
            passed: check.passed,
            witness: check.witness,
            duration_us: check.duration.as_micros() as u64,
        });
    }
    let passed = checks.iter().all(|c| c.passed);
    let report = VerifyReport {
        command: format!("verify --suite {}", args.suite.as_str()),
        suite: args.suite.as_str().to_string(),
        checks,
        passed,
        duration_us: start.elapsed().as_micros() as u64,
    };
    println!(
        "{}",
        serde_json::to_string(&report).expect("report serializes")
    );
    if passed {
        EXIT_OK
    } else {
        EXIT_DISAGREEMENT
    }
}

fn emit<T: serde::Serialize>(format: Format, report: &T, csv: impl FnOnce() -> String) {
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string(report).expect("report serializes")
        ),
        Format::Csv => print!("{}", csv()),
    }
}
