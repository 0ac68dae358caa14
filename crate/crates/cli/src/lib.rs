//! Command-line front end for the `gdwn` solver and analyses.
//!
//! [`run`] parses arguments, dispatches to the library and writes CSV, JSON
//! or SVG. Exit codes: 0 success, 1 invalid input or usage, 2 a verifier
//! reported failure, 3 a resource limit was hit.

mod config;
pub mod csvio;
pub mod svg;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use gdwn::beatty::{wythoff_table, BeattyPair};
use gdwn::ordering::OrderingError;
use gdwn::sequence::{check_property_w, density_profile, even_samples, partial_sum_compare};
use gdwn::solver::{brute_classify_with_budget, verify_equivalence_with_budget, SolveError, DEFAULT_CELL_BUDGET};
use gdwn::split::{
    density_split_report, estimate_slopes, sector_census, upper_indices, verify_recurrence, SplitError,
    DEFAULT_TAIL_FRACTION, FULL_HITS_LIMIT,
};
use gdwn::{
    distinct_difference_ordering_exists, fast_p_sequence, AnalysisReport, Check, GameSpec, PSequence, Pair,
    Rational,
};

use svg::{Guides, PlotOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_ANALYSIS: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

/// Largest `max_a` the sequence commands accept; the line tables grow
/// linearly in it.
pub const MAX_SEQUENCE_A: u64 = 2_000_000;
pub const MAX_TABLE_N: u64 = 10_000_000;
pub const MAX_ORDERING_SET: usize = 40;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Resource(String),
    #[error("{0}")]
    Io(#[from] io::Error),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Invalid(_) | CliError::Io(_) => EXIT_INVALID,
            CliError::Resource(_) => EXIT_RESOURCE,
        }
    }
}

fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Invalid(e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "gdwn", version, about = "Exact P-positions and beam analysis for Nim, Wythoff Nim and (p,q)-GDWN")]
struct Cli {
    /// File of `key = value` lines supplying default flags for the subcommand
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<std::path::PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute upper P-positions with the incremental solver
    Solve(SolveArgs),
    /// Classify a grid by brute force and list its P-positions
    Grid(GridArgs),
    /// Cross-check the fast solver against brute force
    Check(CheckArgs),
    /// Check Property W on a pair list read from CSV
    Propw(PropwArgs),
    /// Density profile and prefix-sum comparison with Wythoff Nim
    Density(DensityArgs),
    /// Decide the distinct-difference ordering problem
    Ordering(OrderingArgs),
    /// Sector census around the ratio band [alpha, alpha + epsilon]
    Split(SplitArgs),
    /// Estimate the slopes of the two upper beams
    Slopes(SlopesArgs),
    /// Verify the slope-two recurrence for gdwn:1,2
    Recurrence(RecurrenceArgs),
    /// Tabulate Wythoff Nim's P-positions from the Beatty formula
    WythoffTable(WythoffTableArgs),
    /// Scatter plot of P-positions and their reflections as SVG
    Plot(PlotArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Solve(_) => "solve",
            Command::Grid(_) => "grid",
            Command::Check(_) => "check",
            Command::Propw(_) => "propw",
            Command::Density(_) => "density",
            Command::Ordering(_) => "ordering",
            Command::Split(_) => "split",
            Command::Slopes(_) => "slopes",
            Command::Recurrence(_) => "recurrence",
            Command::WythoffTable(_) => "wythoff-table",
            Command::Plot(_) => "plot",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum GridFormat {
    Csv,
    Json,
    Text,
}

fn positive(s: &str) -> Result<u64, String> {
    match s.parse::<u64>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn positive_rational(s: &str) -> Result<Rational, String> {
    let r: Rational = s.parse().map_err(|e: gdwn::ratio::RationalError| e.to_string())?;
    if r.is_zero() {
        return Err("must be positive".into());
    }
    Ok(r)
}

#[derive(Debug, Args, Serialize)]
#[command(args_override_self = true)]
struct SolveArgs {
    /// `nim`, `wythoff` or `gdwn:p,q`
    #[arg(long)]
    game: GameSpec,
    /// Compute every upper P-position with a <= max-a
    #[arg(long, value_parser = positive)]
    max_a: u64,
    /// Output file, `-` for standard output
    #[arg(long, default_value = "-")]
    out: String,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    format: TableFormat,
}

#[derive(Debug, Args, Serialize)]
#[command(args_override_self = true)]
struct GridArgs {
    #[arg(long)]
    game: GameSpec,
    #[arg(long, value_parser = positive)]
    max_x: u64,
    #[arg(long, value_parser = positive)]
    max_y: u64,
    /// Refuse grids with more cells than this
    #[arg(long, value_parser = positive, default_value_t = DEFAULT_CELL_BUDGET)]
    budget: u64,
    #[arg(long, default_value = "-")]
    out: String,
    #[arg(long, value_enum, default_value_t = GridFormat::Csv)]
    format: GridFormat,
}

#[derive(Debug, Args, Serialize)]
#[command(args_override_self = true)]
struct CheckArgs {
    #[arg(long)]
    game: GameSpec,
    /// Compare on [0, bound] x [0, 3 bound]
    #[arg(long, value_parser = positive)]
    bound: u64,
    #[arg(long, value_parser = positive, default_value_t = DEFAULT_CELL_BUDGET)]
    budget: u64,
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Debug, Args, Serialize)]
#[command(args_override_self = true)]
struct PropwArgs {
    /// CSV with `a` and `b` columns (as written by `solve`), `-` for standard input
    #[arg(long = "in", value_name = "FILE")]
    input: String,
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Debug, Args, Serialize)]
#[command(args_override_self = true)]
struct DensityArgs {
    #[arg(long)]
    game: GameSpec,
    #[arg(long, value_parser = positive)]
    max_a: u64,
    /// Number of evenly spaced sample points
    #[arg(long, value_parser = positive, conflicts_with = "step")]
    samples: Option<u64>,
    /// Sample at every multiple of this step up to max-a
    #[arg(long, value_parser = positive)]
    step: Option<u64>,
    /// Allowed shortfall of tau(N) below 1/phi
    #[arg(long, default_value = "0.02")]
    slack: Rational,
    /// Only samples with N at or above this are held to the bound
    #[arg(long, default_value_t = 1_000)]
    from: u64,
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Debug, Args, Serialize)]
#[command(args_override_self = true)]
struct OrderingArgs {
    /// Strictly increasing positive integers, e.g. "1,3,4,6"
    #[arg(long)]
    set: String,
    /// Partners are drawn from [1, horizon] minus the set
    #[arg(long, value_parser = positive)]
    horizon: u64,
    /// Require every partner to exceed its element
    #[arg(long)]
    require_positive_differences: bool,
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Debug, Args, Serialize)]
#[command(args_override_self = true)]
struct SplitArgs {
    #[arg(long)]
    game: GameSpec,
    #[arg(long, value_parser = positive)]
    max_a: u64,
    #[arg(long, value_parser = positive_rational)]
    alpha: Rational,
    #[arg(long, value_parser = positive_rational)]
    epsilon: Rational,
    /// JSON report (the default)
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    /// CSV of the pairs inside the sector
    #[arg(long)]
    csv: bool,
    /// Also evaluate side densities at this many sample points
    #[arg(long, value_parser = positive)]
    density_samples: Option<u64>,
    /// Sampled density a side must reach to count as positive
    #[arg(long, default_value = "1/100")]
    density_floor: Rational,
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Debug, Args, Serialize)]
#[command(args_override_self = true)]
struct SlopesArgs {
    #[arg(long)]
    game: GameSpec,
    #[arg(long, value_parser = positive)]
    max_a: u64,
    /// Fraction of each family, taken from its end, used for the median
    #[arg(long, default_value_t = DEFAULT_TAIL_FRACTION)]
    tail_fraction: f64,
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Debug, Args, Serialize)]
#[command(args_override_self = true)]
struct RecurrenceArgs {
    #[arg(long, value_parser = positive)]
    max_a: u64,
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Debug, Args, Serialize)]
#[command(args_override_self = true)]
struct WythoffTableArgs {
    /// Rows n = 0..=max-n
    #[arg(long)]
    max_n: u64,
    #[arg(long, default_value = "-")]
    out: String,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    format: TableFormat,
}

#[derive(Debug, Args, Serialize)]
#[command(args_override_self = true)]
struct PlotArgs {
    #[arg(long, required_unless_present = "input", conflicts_with = "input")]
    game: Option<GameSpec>,
    #[arg(long, value_parser = positive, requires = "game")]
    max_a: Option<u64>,
    /// Plot pairs from a CSV instead of solving
    #[arg(long = "in", value_name = "FILE")]
    input: Option<String>,
    #[arg(long, default_value = "-")]
    out: String,
    #[arg(long, default_value_t = 800, value_parser = clap::value_parser!(u32).range(100..=20_000))]
    width: u32,
    #[arg(long, default_value_t = 800, value_parser = clap::value_parser!(u32).range(100..=20_000))]
    height: u32,
    #[arg(long, default_value = "")]
    title: String,
    /// Guide line y = x
    #[arg(long)]
    diag: bool,
    /// Guide line y = phi x
    #[arg(long)]
    phi: bool,
    /// Guide line y = 2x
    #[arg(long)]
    two: bool,
    /// Guide line y = 2.247x
    #[arg(long)]
    upper: bool,
    /// Guide line y = 1.477x
    #[arg(long)]
    mid: bool,
    /// All guide lines
    #[arg(long)]
    all_guides: bool,
}

/// JSON wrapper shared by every report.
#[derive(Serialize)]
struct Envelope<'a, P: Serialize, R: Serialize> {
    tool_version: &'static str,
    command: &'a str,
    params: &'a P,
    result: R,
}

/// Destination named by `--out`.
struct Sink<'a> {
    path: &'a str,
}

impl<'a> Sink<'a> {
    /// Fails before any computation if the file cannot be created.
    fn new(path: &'a str) -> Result<Self, CliError> {
        if path != "-" {
            let p = Path::new(path);
            if p.is_dir() {
                return Err(CliError::Invalid(format!("--out {path} is a directory")));
            }
            if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                if !parent.is_dir() {
                    return Err(CliError::Invalid(format!("--out {path}: directory {} does not exist", parent.display())));
                }
            }
        }
        Ok(Sink { path })
    }

    fn write(&self, stdout: &mut dyn Write, f: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> Result<(), CliError> {
        if self.path == "-" {
            f(stdout)?;
            stdout.flush()?;
        } else {
            let file = File::create(self.path)
                .map_err(|e| CliError::Invalid(format!("cannot create {}: {e}", self.path)))?;
            let mut w = BufWriter::new(file);
            f(&mut w)?;
            w.flush()?;
        }
        Ok(())
    }

    fn json<P: Serialize, R: Serialize>(
        &self,
        stdout: &mut dyn Write,
        command: &str,
        params: &P,
        result: R,
    ) -> Result<(), CliError> {
        let env = Envelope {
            tool_version: TOOL_VERSION,
            command,
            params,
            result,
        };
        self.write(stdout, |w| {
            serde_json::to_writer_pretty(&mut *w, &env)?;
            writeln!(w)
        })
    }
}

/// Runs the tool on `argv` (including the program name) with the process's
/// standard streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Like [`run`], writing standard output and diagnostics to the given sinks.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let argv = match config::expand(argv) {
        Ok(a) => a,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return e.code();
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_INVALID
                }
            };
        }
    };
    match dispatch(&cli.command, out) {
        Ok(true) => EXIT_OK,
        Ok(false) => {
            let _ = writeln!(err, "{}: check failed", cli.command.name());
            EXIT_ANALYSIS
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code()
        }
    }
}

/// Runs one command; `Ok(false)` means a verifier reported failure.
fn dispatch(cmd: &Command, out: &mut dyn Write) -> Result<bool, CliError> {
    let name = cmd.name();
    match cmd {
        Command::Solve(a) => solve(a, out),
        Command::Grid(a) => grid(a, out),
        Command::Check(a) => check(a, name, out),
        Command::Propw(a) => propw(a, name, out),
        Command::Density(a) => density(a, name, out),
        Command::Ordering(a) => ordering(a, name, out),
        Command::Split(a) => split(a, name, out),
        Command::Slopes(a) => slopes(a, name, out),
        Command::Recurrence(a) => recurrence(a, name, out),
        Command::WythoffTable(a) => wythoff(a, name, out),
        Command::Plot(a) => plot(a, out),
    }
}

fn sequence(game: GameSpec, max_a: u64) -> Result<PSequence, CliError> {
    if max_a > MAX_SEQUENCE_A {
        return Err(CliError::Resource(format!(
            "--max-a {max_a} exceeds the supported limit of {MAX_SEQUENCE_A}"
        )));
    }
    Ok(fast_p_sequence(game, max_a))
}

fn read_input(path: &str) -> Result<Vec<Pair>, CliError> {
    if path == "-" {
        let mut buf = Vec::new();
        io::stdin().read_to_end(&mut buf)?;
        csvio::read_pairs(&buf[..], "<stdin>")
    } else {
        let f = File::open(path).map_err(|e| CliError::Invalid(format!("cannot open {path}: {e}")))?;
        csvio::read_pairs(io::BufReader::new(f), path)
    }
}

#[derive(Serialize)]
struct PairRow {
    n: usize,
    a: u64,
    b: u64,
    delta: i128,
    ratio: Option<String>,
}

fn pair_rows(pairs: &[Pair]) -> Vec<PairRow> {
    pairs
        .iter()
        .enumerate()
        .map(|(n, p)| PairRow {
            n,
            a: p.a,
            b: p.b,
            delta: p.delta(),
            ratio: (p.a > 0).then(|| csvio::format_ratio(p.a, p.b)),
        })
        .collect()
}

fn solve(a: &SolveArgs, out: &mut dyn Write) -> Result<bool, CliError> {
    let sink = Sink::new(&a.out)?;
    let seq = sequence(a.game, a.max_a)?;
    match a.format {
        TableFormat::Csv => sink.write(out, |w| csvio::write_pairs(w, &seq))?,
        TableFormat::Json => sink.json(
            out,
            "solve",
            a,
            json!({ "game": a.game, "max_a": a.max_a, "count": seq.len(), "pairs": pair_rows(&seq) }),
        )?,
    }
    Ok(true)
}

fn budget_error(e: SolveError) -> CliError {
    CliError::Resource(format!("{e}; raise --budget to allow it"))
}

fn grid(a: &GridArgs, out: &mut dyn Write) -> Result<bool, CliError> {
    let sink = Sink::new(&a.out)?;
    let g = brute_classify_with_budget(a.game, a.max_x, a.max_y, a.budget).map_err(budget_error)?;
    match a.format {
        GridFormat::Csv => sink.write(out, |w| {
            writeln!(w, "x,y")?;
            for p in g.p_positions() {
                writeln!(w, "{},{}", p.x, p.y)?;
            }
            Ok(())
        })?,
        GridFormat::Json => {
            let cells: Vec<[u64; 2]> = g.p_positions().map(|p| [p.x, p.y]).collect();
            let upper: Vec<[u64; 2]> = g.upper_p_positions().map(|p| [p.x, p.y]).collect();
            sink.json(
                out,
                "grid",
                a,
                json!({ "game": a.game, "max_x": a.max_x, "max_y": a.max_y, "p_count": cells.len(),
                        "p_positions": cells, "upper_p_positions": upper }),
            )?
        }
        GridFormat::Text => sink.write(out, |w| {
            for y in (0..=a.max_y).rev() {
                let row: String = (0..=a.max_x)
                    .map(|x| if g.is_p(gdwn::Position::new(x, y)) { 'P' } else { '.' })
                    .collect();
                writeln!(w, "{row}")?;
            }
            Ok(())
        })?,
    }
    Ok(true)
}

fn check(a: &CheckArgs, name: &str, out: &mut dyn Write) -> Result<bool, CliError> {
    let sink = Sink::new(&a.out)?;
    let rep = verify_equivalence_with_budget(a.game, a.bound, a.budget).map_err(budget_error)?;
    let report = AnalysisReport::new("equivalence", rep.agree, &rep);
    sink.json(out, name, a, &report)?;
    Ok(report.ok)
}

fn propw(a: &PropwArgs, name: &str, out: &mut dyn Write) -> Result<bool, CliError> {
    let sink = Sink::new(&a.out)?;
    let pairs = read_input(&a.input)?;
    let rep = check_property_w(&pairs).map_err(invalid)?;
    let report = rep.to_report();
    sink.json(out, name, a, &report)?;
    Ok(report.ok)
}

fn density(a: &DensityArgs, name: &str, out: &mut dyn Write) -> Result<bool, CliError> {
    let sink = Sink::new(&a.out)?;
    let seq = sequence(a.game, a.max_a)?;
    let points = match a.step {
        Some(step) => (1..=a.max_a / step).map(|i| i * step).collect(),
        None => even_samples(a.max_a, a.samples.unwrap_or(10)),
    };
    let profile = density_profile(&seq, &points).map_err(invalid)?;
    let sums = partial_sum_compare(&seq).map_err(invalid)?;
    let violation = profile.lower_bound_violation(a.slack, a.from);
    let ok = violation.is_none() && sums.ok;
    let report = AnalysisReport::new(
        "density",
        ok,
        &json!({
            "inverse_golden": (5f64.sqrt() - 1.0) / 2.0,
            "slack": a.slack,
            "from": a.from,
            "lower_bound_ok": violation.is_none(),
            "first_violation": violation,
            "min_tau_tail": profile.min_tau_tail,
            "samples": profile.samples,
            "partial_sums": sums.to_report(),
        }),
    );
    sink.json(out, name, a, &report)?;
    Ok(ok)
}

fn parse_set(s: &str) -> Result<Vec<u64>, CliError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| CliError::Invalid(format!("--set: {t:?} is not a nonnegative integer")))
        })
        .collect()
}

fn ordering(a: &OrderingArgs, name: &str, out: &mut dyn Write) -> Result<bool, CliError> {
    let sink = Sink::new(&a.out)?;
    let set = parse_set(&a.set)?;
    if set.len() > MAX_ORDERING_SET {
        return Err(CliError::Resource(format!(
            "--set has {} elements; the exact search is limited to {MAX_ORDERING_SET}",
            set.len()
        )));
    }
    let res = distinct_difference_ordering_exists(&set, a.horizon, a.require_positive_differences)
        .map_err(|e: OrderingError| invalid(e))?;
    let report = AnalysisReport::new("ordering", res.exists, &res);
    sink.json(out, name, a, &report)?;
    Ok(true)
}

fn split(a: &SplitArgs, name: &str, out: &mut dyn Write) -> Result<bool, CliError> {
    let sink = Sink::new(&a.out)?;
    let seq = sequence(a.game, a.max_a)?;
    let census = sector_census(&seq, a.alpha, a.epsilon).map_err(invalid)?;
    if a.csv {
        sink.write(out, |w| {
            writeln!(w, "n,a,b,ratio")?;
            for &n in &census.hits {
                let p = seq.pairs[n];
                writeln!(w, "{n},{},{},{}", p.a, p.b, csvio::format_ratio(p.a, p.b))?;
            }
            Ok(())
        })?;
        return Ok(true);
    }
    let hits = if census.hits.len() <= FULL_HITS_LIMIT {
        json!(census.hits)
    } else {
        json!({ "count": census.hits.len(), "first": census.hits.first(), "last": census.hits.last() })
    };
    let last_hit_fraction = census.last_hit_index.map(|i| i as f64 / census.sequence_length as f64);
    let mut details = json!({
        "evidence": "empirical",
        "alpha": census.alpha,
        "epsilon": census.epsilon,
        "hit_count": census.hits.len(),
        "hits": hits,
        "last_hit_index": census.last_hit_index,
        "last_hit_fraction": last_hit_fraction,
        "total_below": census.total_below,
        "total_above": census.total_above,
        "sequence_length": census.sequence_length,
        "sector_empties": census.looks_eventually_empty(),
    });
    if let Some(k) = a.density_samples {
        let points = even_samples(seq.max_a, k);
        let rep = density_split_report(&seq, a.alpha, a.epsilon, &points, a.density_floor).map_err(invalid)?;
        details["density_split"] = json!({
            "density_floor": rep.density_floor,
            "below_min_density": rep.below_min_density,
            "above_min_density": rep.above_min_density,
            "below_positive": rep.below_positive,
            "above_positive": rep.above_positive,
            "density_split": rep.density_split,
            "samples": rep.samples,
        });
    }
    let report = AnalysisReport::new("split", census.looks_eventually_empty(), &details);
    sink.json(out, name, a, &report)?;
    Ok(true)
}

/// Beam threshold `q/p` for a game; slope two where the game has none.
fn threshold(game: GameSpec) -> (u64, u64) {
    game.slope().unwrap_or((1, 2))
}

fn slopes(a: &SlopesArgs, name: &str, out: &mut dyn Write) -> Result<bool, CliError> {
    let sink = Sink::new(&a.out)?;
    if !(a.tail_fraction > 0.0 && a.tail_fraction <= 1.0) {
        return Err(CliError::Invalid(format!("--tail-fraction must lie in (0, 1], got {}", a.tail_fraction)));
    }
    let seq = sequence(a.game, a.max_a)?;
    let (p, q) = threshold(a.game);
    let beam = upper_indices(&seq, p, q);
    let est = match estimate_slopes(&seq, &beam, a.tail_fraction) {
        Ok(est) => est,
        Err(e @ SplitError::InsufficientData { .. }) => {
            let report = AnalysisReport::new("slopes", false, &json!({ "error": e.to_string() }));
            sink.json(out, name, a, &report)?;
            return Ok(false);
        }
        Err(e) => return Err(invalid(e)),
    };
    let report = AnalysisReport::new(
        "slopes",
        true,
        &json!({ "threshold": Rational::new(q, p), "estimate": est }),
    );
    sink.json(out, name, a, &report)?;
    Ok(true)
}

fn recurrence(a: &RecurrenceArgs, name: &str, out: &mut dyn Write) -> Result<bool, CliError> {
    let sink = Sink::new(&a.out)?;
    let seq = sequence(GameSpec::gdwn(1, 2).expect("valid slope"), a.max_a)?;
    let beam = upper_indices(&seq, 1, 2);
    let rep = verify_recurrence(&seq, &beam).map_err(invalid)?;
    let report = rep.to_report();
    sink.json(out, name, a, &report)?;
    Ok(report.ok)
}

fn wythoff(a: &WythoffTableArgs, name: &str, out: &mut dyn Write) -> Result<bool, CliError> {
    let sink = Sink::new(&a.out)?;
    if a.max_n > MAX_TABLE_N {
        return Err(CliError::Resource(format!("--max-n {} exceeds the limit of {MAX_TABLE_N}", a.max_n)));
    }
    let rows: Vec<BeattyPair> = wythoff_table(a.max_n).map_err(invalid)?;
    match a.format {
        TableFormat::Csv => sink.write(out, |w| csvio::write_wythoff_table(w, &rows))?,
        TableFormat::Json => sink.json(out, name, a, &rows)?,
    }
    Ok(true)
}

fn plot(a: &PlotArgs, out: &mut dyn Write) -> Result<bool, CliError> {
    let sink = Sink::new(&a.out)?;
    let pairs: Vec<Pair> = match (&a.input, a.game) {
        (Some(path), _) => read_input(path)?,
        (None, Some(game)) => {
            let max_a = a
                .max_a
                .ok_or_else(|| CliError::Invalid("--game needs --max-a".into()))?;
            sequence(game, max_a)?.pairs
        }
        (None, None) => return Err(CliError::Invalid("give --game with --max-a, or --in".into())),
    };
    if pairs.is_empty() {
        return Err(CliError::Invalid("nothing to plot".into()));
    }
    let all = a.all_guides;
    let opts = PlotOptions {
        width: a.width,
        height: a.height,
        title: a.title.clone(),
        guides: Guides {
            diagonal: a.diag || all,
            phi: a.phi || all,
            two: a.two || all,
            upper: a.upper || all,
            mid: a.mid || all,
        },
    };
    let doc = svg::scatter_svg(&pairs, &opts);
    sink.write(out, |w| w.write_all(doc.as_bytes()))?;
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn set_parsing() {
        assert_eq!(parse_set("1, 3,4").unwrap(), [1, 3, 4]);
        assert!(parse_set("").unwrap().is_empty());
        assert!(parse_set("1,x").is_err());
    }
}
