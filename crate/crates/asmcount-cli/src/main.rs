//! Command-line front end for the alternating-sign-matrix counting library.
//!
//! Exit codes: 0 on success, 1 when a verification or comparison found a
//! mismatch, 2 on usage errors, 3 on I/O errors.

mod cachefile;
mod output;
mod verify;

use asmcount::counting::AlphaCounter;
use asmcount::sixvertex::{self, SpectralParams, DEFAULT_ETA};
use asmcount::{counting, formulas};
use clap::{Parser, Subcommand, ValueEnum};
use output::{DiffEntry, Entry, FileFormat, IndexShape, Mode, OutputFormat};
use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use verify::{SuiteSelection, VerifyOptions};

/// Environment variable consulted for the cache path when `--cache` is
/// not given.
const CACHE_ENV: &str = "ASMCOUNT_CACHE";
/// Largest order brute-force counting runs at without `--unsafe-large`.
const BRUTE_CAP: usize = 7;
/// Largest order the partition function runs at without `--unsafe-large`.
const PARTITION_CAP: usize = 5;

#[derive(Parser)]
#[command(
    name = "asmcount",
    version,
    about = "Exact enumeration of alternating sign matrices, with brute-force cross-checks",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Worker threads for counting and configuration sums.
    #[arg(long, global = true, default_value_t = 1, value_name = "K")]
    workers: usize,

    /// Cache file for memoized row counts (falls back to ASMCOUNT_CACHE).
    #[arg(long, global = true, value_name = "PATH")]
    cache: Option<PathBuf>,

    /// Lift the desk-scale order caps. Runtimes grow very fast with the
    /// order; expect long waits.
    #[arg(long, global = true)]
    unsafe_large: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print the total number of alternating sign matrices of order N.
    Count {
        n: usize,
        /// Also count by dynamic programming and compare.
        #[arg(long)]
        brute: bool,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Print counts refined by the column of the 1 in the first row.
    Refined {
        n: usize,
        #[arg(long, value_enum, default_value_t)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Print doubly refined counts for a pair of boundary statistics.
    Doubly {
        n: usize,
        /// Which pair of statistics indexes the table.
        #[arg(long, value_enum)]
        kind: DoublyKind,
        #[arg(long, value_enum, default_value_t)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Run the verification suites and print a JSON report.
    Verify {
        /// Largest order every suite runs up to.
        #[arg(long, default_value_t = 5, value_name = "N")]
        n_max: usize,
        #[arg(long, value_enum, default_value_t)]
        suites: SuiteSelection,
        /// Seed for the randomized floating-point suites.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Relative tolerance for the floating-point suites.
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        /// Corrupt one brute-force value to exercise the failure path.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Evaluate the six-vertex partition function at the combinatorial
    /// point.
    Partition {
        n: usize,
        /// Row spectral parameters, comma separated, one per row.
        #[arg(
            long,
            required = true,
            value_delimiter = ',',
            allow_hyphen_values = true
        )]
        xs: Vec<f64>,
        /// Column spectral parameters, comma separated, one per column.
        #[arg(
            long,
            required = true,
            value_delimiter = ',',
            allow_hyphen_values = true
        )]
        ys: Vec<f64>,
        /// Crossing parameter (defaults to the combinatorial value).
        #[arg(long, allow_hyphen_values = true)]
        eta: Option<f64>,
    },
    /// Write a count table to a file.
    Export {
        #[arg(value_enum)]
        kind: ExportKind,
        n: usize,
        /// Destination file.
        #[arg(long, value_name = "PATH")]
        output: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: FileFormat,
        #[arg(long, value_enum, default_value_t)]
        mode: ExportMode,
        /// Keep only entries with this first index.
        #[arg(long)]
        i: Option<i64>,
        /// Keep only entries with this second index.
        #[arg(long)]
        j: Option<i64>,
    },
    /// Inspect or clear the on-disk counting cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

/// Index pair a doubly refined table is keyed by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DoublyKind {
    /// Positions carried by the top two rows.
    TopTwo,
    /// Columns of the 1 in the first and last rows.
    TopBottom,
}

impl DoublyKind {
    fn as_str(self) -> &'static str {
        match self {
            DoublyKind::TopTwo => "top-two",
            DoublyKind::TopBottom => "top-bottom",
        }
    }

    fn min_order(self) -> usize {
        match self {
            DoublyKind::TopTwo => 3,
            DoublyKind::TopBottom => 2,
        }
    }
}

/// Table selector for `export`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExportKind {
    Total,
    Refined,
    TopTwo,
    TopBottom,
}

/// Value source for `export`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum ExportMode {
    #[default]
    Formula,
    Brute,
}

#[derive(Subcommand)]
enum CacheAction {
    /// Print the cache path, header status, and row count.
    Show,
    /// Delete the cache file.
    Clear,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Io(msg) => f.write_str(msg),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.code())
        }
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let workers = cli.workers.max(1);
    match cli.command {
        Command::Count { n, brute, format } => {
            cmd_count(n, brute, format, workers, &cli.cache, cli.unsafe_large)
        }
        Command::Refined { n, mode, format } => {
            cmd_refined(n, mode, format, workers, &cli.cache, cli.unsafe_large)
        }
        Command::Doubly {
            n,
            kind,
            mode,
            format,
        } => cmd_doubly(n, kind, mode, format, workers, &cli.cache, cli.unsafe_large),
        Command::Verify {
            n_max,
            suites,
            seed,
            tolerance,
            inject_fault,
        } => {
            let opts = VerifyOptions {
                n_max,
                suites,
                seed,
                tolerance,
                unsafe_large: cli.unsafe_large,
                inject_fault,
            };
            cmd_verify(opts, workers, &cli.cache)
        }
        Command::Partition { n, xs, ys, eta } => {
            cmd_partition(n, xs, ys, eta, workers, cli.unsafe_large)
        }
        Command::Export {
            kind,
            n,
            output,
            format,
            mode,
            i,
            j,
        } => cmd_export(
            kind,
            n,
            &output,
            format,
            mode,
            i,
            j,
            workers,
            &cli.cache,
            cli.unsafe_large,
        ),
        Command::Cache { action } => cmd_cache(action, &cli.cache),
    }
}

fn ensure_min_order(n: usize, min: usize, what: &str) -> Result<(), CliError> {
    if n < min {
        return Err(CliError::Usage(format!(
            "{what} needs an order of at least {min}, got {n}"
        )));
    }
    Ok(())
}

fn guard_brute(n: usize, unsafe_large: bool) -> Result<(), CliError> {
    if n > BRUTE_CAP && !unsafe_large {
        return Err(CliError::Usage(format!(
            "brute-force counting at order {n} exceeds the desk-scale cap of {BRUTE_CAP}; \
             pass --unsafe-large to proceed"
        )));
    }
    Ok(())
}

/// A cache file bound to this invocation, loaded into the counter up
/// front and written back after the command finishes.
struct CacheSession {
    path: PathBuf,
    loaded: usize,
}

fn resolve_cache_path(flag: &Option<PathBuf>) -> Option<PathBuf> {
    flag.clone()
        .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
}

fn open_counter(
    workers: usize,
    cache_flag: &Option<PathBuf>,
) -> Result<(AlphaCounter, Option<CacheSession>), CliError> {
    let counter = AlphaCounter::with_workers(workers);
    let Some(path) = resolve_cache_path(cache_flag) else {
        return Ok((counter, None));
    };
    let loaded = cachefile::load(&path)
        .map_err(|err| CliError::Io(format!("reading cache {}: {err}", path.display())))?;
    if loaded.stale_header {
        eprintln!(
            "warning: cache file {} has an unrecognized header; it will be rebuilt",
            path.display()
        );
    }
    if loaded.skipped > 0 {
        eprintln!(
            "warning: dropped {} malformed lines from cache file {}",
            loaded.skipped,
            path.display()
        );
    }
    let accepted = counter.preload(loaded.entries);
    Ok((
        counter,
        Some(CacheSession {
            path,
            loaded: accepted,
        }),
    ))
}

fn close_counter(counter: &AlphaCounter, session: Option<CacheSession>) -> Result<(), CliError> {
    let Some(session) = session else {
        return Ok(());
    };
    let snapshot = counter.snapshot();
    cachefile::save(&session.path, &snapshot)
        .map_err(|err| CliError::Io(format!("writing cache {}: {err}", session.path.display())))?;
    let stats = counter.stats();
    eprintln!(
        "cache: loaded {} rows, {} hits, {} misses, saved {} rows to {}",
        session.loaded,
        stats.hits,
        stats.misses,
        snapshot.len(),
        session.path.display()
    );
    Ok(())
}

fn cmd_count(
    n: usize,
    brute: bool,
    format: OutputFormat,
    workers: usize,
    cache: &Option<PathBuf>,
    unsafe_large: bool,
) -> Result<bool, CliError> {
    ensure_min_order(n, 1, "counting")?;
    let formula = formulas::asm_total(n);
    if !brute {
        let entries = [Entry::scalar(&formula)];
        print!(
            "{}",
            output::render_table(n, "total", IndexShape::Scalar, &entries, format)
        );
        return Ok(true);
    }
    guard_brute(n, unsafe_large)?;
    let (counter, session) = open_counter(workers, cache)?;
    let brute_count = counter.total(n);
    close_counter(&counter, session)?;
    let (text, equal) = output::render_count_comparison(n, &formula, &brute_count, format);
    print!("{text}");
    Ok(equal)
}

fn refined_formula_entries(n: usize) -> Vec<Entry> {
    (1..=n as i64)
        .map(|k| Entry::single(k, &formulas::asm_refined(n, k)))
        .collect()
}

fn cmd_refined(
    n: usize,
    mode: Mode,
    format: OutputFormat,
    workers: usize,
    cache: &Option<PathBuf>,
    unsafe_large: bool,
) -> Result<bool, CliError> {
    ensure_min_order(n, 2, "refined counting")?;
    if mode == Mode::Formula {
        let entries = refined_formula_entries(n);
        print!(
            "{}",
            output::render_table(n, "refined", IndexShape::Single, &entries, format)
        );
        return Ok(true);
    }
    guard_brute(n, unsafe_large)?;
    let (counter, session) = open_counter(workers, cache)?;
    let table = counter
        .refined(n)
        .expect("the order was checked to be at least two");
    close_counter(&counter, session)?;
    if mode == Mode::Brute {
        let entries: Vec<Entry> = table
            .iter_single()
            .map(|(k, v)| Entry::single(k, v))
            .collect();
        print!(
            "{}",
            output::render_table(n, "refined", IndexShape::Single, &entries, format)
        );
        return Ok(true);
    }
    let entries: Vec<DiffEntry> = table
        .iter_single()
        .map(|(k, brute)| DiffEntry::new(Some(k), None, &formulas::asm_refined(n, k), brute))
        .collect();
    let (text, equal) = output::render_diff(n, "refined", &entries, format);
    print!("{text}");
    Ok(equal)
}

fn doubly_formula_entries(n: usize, kind: DoublyKind) -> Vec<Entry> {
    let n_i = n as i64;
    let mut entries = Vec::new();
    match kind {
        DoublyKind::TopTwo => {
            for i in 1..=n_i {
                for j in (i + 1)..=n_i {
                    entries.push(Entry::pair(i, j, &formulas::a_doubly_refined(n, i, j)));
                }
            }
        }
        DoublyKind::TopBottom => {
            for i in 1..=n_i {
                for j in 1..=n_i {
                    entries.push(Entry::pair(i, j, &formulas::b_doubly_refined(n, i, j)));
                }
            }
        }
    }
    entries
}

fn doubly_brute_table(
    n: usize,
    kind: DoublyKind,
    workers: usize,
    cache: &Option<PathBuf>,
) -> Result<counting::CountTable, CliError> {
    match kind {
        DoublyKind::TopTwo => {
            let (counter, session) = open_counter(workers, cache)?;
            let table = counter
                .doubly_top(n)
                .expect("the order was checked to be at least three");
            close_counter(&counter, session)?;
            Ok(table)
        }
        DoublyKind::TopBottom => Ok(counting::top_bottom_by_enumeration(n)),
    }
}

fn cmd_doubly(
    n: usize,
    kind: DoublyKind,
    mode: Mode,
    format: OutputFormat,
    workers: usize,
    cache: &Option<PathBuf>,
    unsafe_large: bool,
) -> Result<bool, CliError> {
    ensure_min_order(n, kind.min_order(), "doubly refined counting")?;
    if mode == Mode::Formula {
        let entries = doubly_formula_entries(n, kind);
        print!(
            "{}",
            output::render_table(n, kind.as_str(), IndexShape::Pairs, &entries, format)
        );
        return Ok(true);
    }
    guard_brute(n, unsafe_large)?;
    let table = doubly_brute_table(n, kind, workers, cache)?;
    if mode == Mode::Brute {
        let entries: Vec<Entry> = table
            .iter_pairs()
            .map(|(i, j, v)| Entry::pair(i, j, v))
            .collect();
        print!(
            "{}",
            output::render_table(n, kind.as_str(), IndexShape::Pairs, &entries, format)
        );
        return Ok(true);
    }
    let entries: Vec<DiffEntry> = table
        .iter_pairs()
        .map(|(i, j, brute)| {
            let formula = match kind {
                DoublyKind::TopTwo => formulas::a_doubly_refined(n, i, j),
                DoublyKind::TopBottom => formulas::b_doubly_refined(n, i, j),
            };
            DiffEntry::new(Some(i), Some(j), &formula, brute)
        })
        .collect();
    let (text, equal) = output::render_diff(n, kind.as_str(), &entries, format);
    print!("{text}");
    Ok(equal)
}

fn cmd_verify(
    opts: VerifyOptions,
    workers: usize,
    cache: &Option<PathBuf>,
) -> Result<bool, CliError> {
    if opts.n_max == 0 {
        return Err(CliError::Usage("--n-max must be at least 1".to_string()));
    }
    if !opts.tolerance.is_finite() || opts.tolerance <= 0.0 {
        return Err(CliError::Usage(
            "--tolerance must be a positive number".to_string(),
        ));
    }
    if opts.suites.exact() && opts.n_max > BRUTE_CAP && !opts.unsafe_large {
        return Err(CliError::Usage(format!(
            "the exact suites at orders above {BRUTE_CAP} exceed the desk-scale cap; \
             pass --unsafe-large to proceed"
        )));
    }
    let (counter, session) = open_counter(workers, cache)?;
    let (report, passed) = verify::run(&counter, &opts);
    close_counter(&counter, session)?;
    print!("{report}");
    Ok(passed)
}

fn cmd_partition(
    n: usize,
    xs: Vec<f64>,
    ys: Vec<f64>,
    eta: Option<f64>,
    workers: usize,
    unsafe_large: bool,
) -> Result<bool, CliError> {
    ensure_min_order(n, 1, "the partition function")?;
    if n > PARTITION_CAP && !unsafe_large {
        return Err(CliError::Usage(format!(
            "the partition function at order {n} sums over too many configurations for the \
             desk-scale cap of {PARTITION_CAP}; pass --unsafe-large to proceed"
        )));
    }
    for (name, values) in [("--xs", &xs), ("--ys", &ys)] {
        if values.len() != n {
            return Err(CliError::Usage(format!(
                "{name} carries {} values, expected {n}",
                values.len()
            )));
        }
    }
    let params = SpectralParams::new(eta.unwrap_or(DEFAULT_ETA), xs, ys)
        .map_err(|err| CliError::Usage(err.to_string()))?;
    let z = sixvertex::partition_function_with_workers(&params, workers);
    println!("{}", output::format_significant(z, 12));
    Ok(true)
}

#[allow(clippy::too_many_arguments)]
fn cmd_export(
    kind: ExportKind,
    n: usize,
    path: &std::path::Path,
    format: FileFormat,
    mode: ExportMode,
    i: Option<i64>,
    j: Option<i64>,
    workers: usize,
    cache: &Option<PathBuf>,
    unsafe_large: bool,
) -> Result<bool, CliError> {
    let (kind_str, shape, min_order) = match kind {
        ExportKind::Total => ("total", IndexShape::Scalar, 1),
        ExportKind::Refined => ("refined", IndexShape::Single, 2),
        ExportKind::TopTwo => ("top-two", IndexShape::Pairs, 3),
        ExportKind::TopBottom => ("top-bottom", IndexShape::Pairs, 2),
    };
    ensure_min_order(n, min_order, "this table")?;
    if kind == ExportKind::Total && (i.is_some() || j.is_some()) {
        return Err(CliError::Usage(
            "the total table has no indices to filter".to_string(),
        ));
    }
    if kind == ExportKind::Refined && j.is_some() {
        return Err(CliError::Usage(
            "refined tables have no second index".to_string(),
        ));
    }
    if mode == ExportMode::Brute {
        guard_brute(n, unsafe_large)?;
    }

    let mut entries: Vec<Entry> = match (kind, mode) {
        (ExportKind::Total, ExportMode::Formula) => {
            vec![Entry::scalar(&formulas::asm_total(n))]
        }
        (ExportKind::Total, ExportMode::Brute) => {
            let (counter, session) = open_counter(workers, cache)?;
            let total = counter.total(n);
            close_counter(&counter, session)?;
            vec![Entry::scalar(&total)]
        }
        (ExportKind::Refined, ExportMode::Formula) => refined_formula_entries(n),
        (ExportKind::Refined, ExportMode::Brute) => {
            let (counter, session) = open_counter(workers, cache)?;
            let table = counter
                .refined(n)
                .expect("the order was checked to be at least two");
            close_counter(&counter, session)?;
            table
                .iter_single()
                .map(|(k, v)| Entry::single(k, v))
                .collect()
        }
        (ExportKind::TopTwo, ExportMode::Formula) => doubly_formula_entries(n, DoublyKind::TopTwo),
        (ExportKind::TopBottom, ExportMode::Formula) => {
            doubly_formula_entries(n, DoublyKind::TopBottom)
        }
        (ExportKind::TopTwo, ExportMode::Brute) => {
            doubly_brute_table(n, DoublyKind::TopTwo, workers, cache)?
                .iter_pairs()
                .map(|(a, b, v)| Entry::pair(a, b, v))
                .collect()
        }
        (ExportKind::TopBottom, ExportMode::Brute) => {
            doubly_brute_table(n, DoublyKind::TopBottom, workers, cache)?
                .iter_pairs()
                .map(|(a, b, v)| Entry::pair(a, b, v))
                .collect()
        }
    };
    if let Some(want) = i {
        entries.retain(|e| e.i == Some(want));
    }
    if let Some(want) = j {
        entries.retain(|e| e.j == Some(want));
    }

    let text = output::render_file(n, kind_str, shape, &entries, format);
    fs::write(path, text)
        .map_err(|err| CliError::Io(format!("writing {}: {err}", path.display())))?;
    eprintln!("wrote {} entries to {}", entries.len(), path.display());
    Ok(true)
}

fn cmd_cache(action: CacheAction, cache_flag: &Option<PathBuf>) -> Result<bool, CliError> {
    let Some(path) = resolve_cache_path(cache_flag) else {
        return Err(CliError::Usage(format!(
            "no cache path configured; pass --cache or set {CACHE_ENV}"
        )));
    };
    match action {
        CacheAction::Show => {
            if !path.exists() {
                println!("path: {}\nstatus: missing\nrows: 0", path.display());
                return Ok(true);
            }
            let loaded = cachefile::load(&path)
                .map_err(|err| CliError::Io(format!("reading cache {}: {err}", path.display())))?;
            let status = if loaded.stale_header {
                "unrecognized header"
            } else if loaded.skipped > 0 {
                "ok, with malformed lines"
            } else {
                "ok"
            };
            println!(
                "path: {}\nstatus: {status}\nrows: {}",
                path.display(),
                loaded.entries.len()
            );
            Ok(true)
        }
        CacheAction::Clear => {
            match fs::remove_file(&path) {
                Ok(()) => println!("removed {}", path.display()),
                Err(err) if err.kind() == std::io::ErrorKind::NotFound => {
                    println!("nothing to clear at {}", path.display());
                }
                Err(err) => {
                    return Err(CliError::Io(format!("removing {}: {err}", path.display())));
                }
            }
            Ok(true)
        }
    }
}
