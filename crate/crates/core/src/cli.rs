//! Command-line front end.
//!
//! [`parse_args`] turns an argument vector into a validated [`Command`];
//! [`execute`] runs it and maps failures onto exit codes:
//!
//! | code | meaning                                                    |
//! |------|------------------------------------------------------------|
//! | 0    | success                                                    |
//! | 1    | I/O failure (unreadable input, unwritable output)          |
//! | 2    | usage error or domain error (too-short sequence, empty plan) |
//!
//! Every text and CSV output starts with a `#` metadata line naming the tool
//! version, subcommand, seed and preset (JSON output has none). Nothing
//! run-dependent is written, so equal command lines give byte-identical files. When `SPIKE_ENTROPY_OUT_DIR` is
//! set, relative `--output` paths are resolved against it.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::benchmark::{run_benchmark, write_benchmark_csv, BenchmarkConfig};
use crate::estimators::{
    count_contexts, ep_entropy_with, estimate, EpWeighting, EstimateError, Method,
};
use crate::ingest::{binarize, load_traces, write_binarized, IngestError};
use crate::lz::{self, LzError, Scheme};
use crate::markov::{marginalize_to, sample, MarkovError, MarkovSourceSpec};
use crate::sequence::BinarySequence;
use crate::window::{
    build_plan, read_records_csv, summarize, sweep, write_records_csv, write_summary_csv,
    EstimatorConfig, PlanParams, TemporalAggregation, WindowError,
};

pub const DEFAULT_SEED: u64 = 20_240;
pub const OUT_DIR_ENV: &str = "SPIKE_ENTROPY_OUT_DIR";
const TOOL: &str = concat!("spike-entropy ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Error, PartialEq, Eq)]
#[error("{message}")]
pub struct UsageError {
    pub message: String,
    /// `--help` / `--version` output rather than a failure.
    pub informational: bool,
}

impl UsageError {
    fn new(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            informational: false,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(#[from] UsageError),
    #[error("markov_model: {0}")]
    Markov(#[from] MarkovError),
    #[error("lz_complexity: {0}")]
    Lz(#[from] LzError),
    #[error("entropy_estimators: {0}")]
    Estimate(#[from] EstimateError),
    #[error("window_analysis: {0}")]
    Window(#[from] WindowError),
    #[error("spike_ingest: {0}")]
    Ingest(#[from] IngestError),
    #[error("io: {path}: {source}")]
    Io { path: String, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. }
            | CliError::Markov(MarkovError::Io(_))
            | CliError::Window(WindowError::Io(_) | WindowError::Csv(_))
            | CliError::Ingest(IngestError::Io(_)) => 1,
            _ => 2,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "spike-entropy",
    version,
    about = "Entropy-rate estimation for binary spike trains"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Sample a binary sequence from a Markov source
    Simulate(SimulateArgs),
    /// Print the LZ78 / LZ76 / SWLZ parse of a sequence
    Parse(ParseArgs),
    /// Print the context count table as CSV
    Counts(CountsArgs),
    /// Estimate the entropy rate of a whole sequence
    Estimate(EstimateArgs),
    /// Run estimators over a window plan
    Sweep(SweepArgs),
    /// Group sweep records into mean / sd per window length
    Summarize(SummarizeArgs),
    /// Threshold spike-rate traces into binary trains
    Binarize(BinarizeArgs),
    /// Convergence study on the bundled Markov source
    Benchmark(BenchmarkArgs),
}

#[derive(Args, Debug)]
struct SourceArgs {
    /// Bundled source
    #[arg(long, value_enum, conflicts_with = "spec")]
    fixture: Option<FixtureName>,
    /// Source JSON file
    #[arg(long)]
    spec: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixtureName {
    /// The order-3 benchmark source
    #[value(alias = "paper")]
    Benchmark,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Marginalize the source down to this order before sampling
    #[arg(long)]
    order: Option<usize>,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Also write the (marginalized) source as JSON
    #[arg(long)]
    spec_out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum SchemeArg {
    Lz78,
    Lz76,
    Swlz,
}

#[derive(Args, Debug)]
struct ParseArgs {
    #[arg(long, value_enum)]
    scheme: SchemeArg,
    #[arg(long)]
    input: PathBuf,
    /// Emit the parse result as JSON
    #[arg(long)]
    json: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CountsArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EstimateArgs {
    #[arg(long)]
    method: Method,
    #[arg(long, default_value_t = 0)]
    k: usize,
    #[arg(long)]
    input: PathBuf,
    /// Use the finite-length chain-rule weighting for EP
    #[arg(long)]
    finite_length: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum PresetName {
    /// Growing prefixes (mean across start offsets when --stride is given)
    Growing,
    /// Fixed lengths with midpoints every --stride
    Sliding,
    /// Non-overlapping windows
    Tiling,
    /// Lengths 40..200 step 40, midpoints 100..140 step 5
    Table2,
}

impl PresetName {
    fn name(self) -> &'static str {
        match self {
            PresetName::Growing => "growing",
            PresetName::Sliding => "sliding",
            PresetName::Tiling => "tiling",
            PresetName::Table2 => "table2",
        }
    }
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = PresetName::Growing)]
    preset: PresetName,
    /// Window lengths (default: multiples of 50 up to the sequence length)
    #[arg(long, value_delimiter = ',')]
    lengths: Vec<usize>,
    /// Start-offset step (growing) or midpoint step (sliding)
    #[arg(long)]
    stride: Option<usize>,
    #[arg(long = "method", value_delimiter = ',', default_value = "ep")]
    methods: Vec<Method>,
    #[arg(long = "k", value_delimiter = ',', default_value = "0")]
    ks: Vec<usize>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SummarizeArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BinarizeArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BenchmarkArgs {
    /// Order 3, k = 3, 5 seeds
    #[arg(long)]
    quick: bool,
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long)]
    seeds: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    output: Option<PathBuf>,
}

/// Where a Markov source comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum SourceChoice {
    Fixture(FixtureName),
    File(PathBuf),
}

impl SourceChoice {
    fn from_args(args: &SourceArgs) -> Self {
        match (&args.spec, args.fixture) {
            (Some(path), _) => SourceChoice::File(path.clone()),
            (None, Some(f)) => SourceChoice::Fixture(f),
            (None, None) => SourceChoice::Fixture(FixtureName::Benchmark),
        }
    }

    fn load(&self) -> Result<MarkovSourceSpec, CliError> {
        match self {
            SourceChoice::Fixture(FixtureName::Benchmark) => {
                Ok(MarkovSourceSpec::benchmark_order3())
            }
            SourceChoice::File(path) => Ok(MarkovSourceSpec::load(path)?),
        }
    }

    fn label(&self) -> String {
        match self {
            SourceChoice::Fixture(FixtureName::Benchmark) => "fixture=benchmark".into(),
            SourceChoice::File(p) => format!("spec={}", p.display()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SweepPlanChoice {
    Preset(PresetName),
}

/// A validated invocation.
#[derive(Debug, Clone, PartialEq)]
pub enum CommandKind {
    Simulate {
        source: SourceChoice,
        order: Option<usize>,
        n: usize,
        seed: u64,
        output: Option<PathBuf>,
        spec_out: Option<PathBuf>,
    },
    Parse {
        scheme: Scheme,
        input: PathBuf,
        json: bool,
        output: Option<PathBuf>,
    },
    Counts {
        k: usize,
        input: PathBuf,
        output: Option<PathBuf>,
    },
    Estimate {
        method: Method,
        k: usize,
        input: PathBuf,
        weighting: EpWeighting,
        output: Option<PathBuf>,
    },
    Sweep {
        input: PathBuf,
        preset: PresetName,
        lengths: Vec<usize>,
        stride: Option<usize>,
        configs: Vec<EstimatorConfig>,
        output: Option<PathBuf>,
    },
    Summarize {
        input: PathBuf,
        output: Option<PathBuf>,
    },
    Binarize {
        input: PathBuf,
        output: Option<PathBuf>,
    },
    Benchmark {
        source: SourceChoice,
        config: BenchmarkConfig,
        quick: bool,
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Command {
    pub kind: CommandKind,
    /// Non-fatal adjustments made during validation.
    pub warnings: Vec<String>,
}

/// Parses and validates `argv` (including the program name).
pub fn parse_args<I, T>(argv: I) -> Result<Command, UsageError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| {
        use clap::error::ErrorKind;
        let informational = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
        UsageError {
            message: e.render().to_string(),
            informational,
        }
    })?;
    let mut warnings = Vec::new();
    let kind = match cli.command {
        Sub::Simulate(a) => {
            if a.n == 0 {
                return Err(UsageError::new("--n must be positive"));
            }
            CommandKind::Simulate {
                source: SourceChoice::from_args(&a.source),
                order: a.order,
                n: a.n,
                seed: a.seed,
                output: a.output,
                spec_out: a.spec_out,
            }
        }
        Sub::Parse(a) => CommandKind::Parse {
            scheme: match a.scheme {
                SchemeArg::Lz78 => Scheme::Lz78,
                SchemeArg::Lz76 => Scheme::Lz76,
                SchemeArg::Swlz => Scheme::Swlz,
            },
            input: a.input,
            json: a.json,
            output: a.output,
        },
        Sub::Counts(a) => {
            check_k(a.k, "--k")?;
            CommandKind::Counts {
                k: a.k,
                input: a.input,
                output: a.output,
            }
        }
        Sub::Estimate(a) => {
            check_k(a.k, "--k")?;
            let mut method = a.method;
            if method == Method::Esd && a.k == 0 {
                warnings.push("--method esd with --k 0 is undefined; using ep".to_string());
                method = Method::Ep;
            }
            if a.finite_length && method != Method::Ep {
                return Err(UsageError::new(
                    "--finite-length only applies to --method ep",
                ));
            }
            let weighting = if a.finite_length {
                EpWeighting::FiniteLength
            } else {
                EpWeighting::Conditional
            };
            CommandKind::Estimate {
                method,
                k: a.k,
                input: a.input,
                weighting,
                output: a.output,
            }
        }
        Sub::Sweep(a) => {
            for &k in &a.ks {
                check_k(k, "--k")?;
            }
            if a.lengths.contains(&0) {
                return Err(UsageError::new("--lengths must be positive"));
            }
            if a.stride == Some(0) {
                return Err(UsageError::new("--stride must be positive"));
            }
            if a.preset == PresetName::Tiling && a.lengths.len() != 1 {
                return Err(UsageError::new(
                    "--preset tiling needs exactly one value in --lengths",
                ));
            }
            if a.preset == PresetName::Table2 && (!a.lengths.is_empty() || a.stride.is_some()) {
                return Err(UsageError::new(
                    "--preset table2 takes neither --lengths nor --stride",
                ));
            }
            let mut configs = Vec::new();
            for &method in &a.methods {
                if method.uses_context() {
                    for &k in &a.ks {
                        if method == Method::Esd && k == 0 {
                            warnings.push("ESD with k = 0 is undefined; using EP".to_string());
                            configs.push(EstimatorConfig::ep(0));
                        } else {
                            configs.push(EstimatorConfig::new(method, k));
                        }
                    }
                } else {
                    configs.push(EstimatorConfig::lz(method));
                }
            }
            configs.sort();
            configs.dedup();
            CommandKind::Sweep {
                input: a.input,
                preset: a.preset,
                lengths: a.lengths,
                stride: a.stride,
                configs,
                output: a.output,
            }
        }
        Sub::Summarize(a) => CommandKind::Summarize {
            input: a.input,
            output: a.output,
        },
        Sub::Binarize(a) => CommandKind::Binarize {
            input: a.input,
            output: a.output,
        },
        Sub::Benchmark(a) => {
            let mut config = if a.quick {
                BenchmarkConfig::quick(a.seed)
            } else {
                BenchmarkConfig::full(a.seed)
            };
            if let Some(seeds) = a.seeds {
                if seeds == 0 {
                    return Err(UsageError::new("--seeds must be positive"));
                }
                config.seeds = seeds;
            }
            if let Some(n) = a.n {
                if n < 50 {
                    return Err(UsageError::new("--n must be at least 50"));
                }
                config.n = n;
                config.lengths = PlanParams::lengths_by_step(50, n);
            }
            CommandKind::Benchmark {
                source: SourceChoice::from_args(&a.source),
                config,
                quick: a.quick,
                output: a.output,
            }
        }
    };
    Ok(Command { kind, warnings })
}

fn check_k(k: usize, flag: &str) -> Result<(), UsageError> {
    if k > 20 {
        return Err(UsageError::new(format!(
            "{flag} {k} is too large (maximum 20)"
        )));
    }
    Ok(())
}

fn resolve_output(path: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn read_sequence(path: &Path) -> Result<BinarySequence, CliError> {
    let file = File::open(path).map_err(io_err(path))?;
    BinarySequence::read_from(BufReader::new(file)).map_err(io_err(path))
}

/// Writes `body` to the output path, or to `stdout` when none is given.
fn emit(output: &Option<PathBuf>, stdout: &mut dyn Write, body: &[u8]) -> Result<(), CliError> {
    match output {
        Some(path) => {
            let path = resolve_output(path);
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent).map_err(io_err(parent))?;
            }
            let mut w = BufWriter::new(File::create(&path).map_err(io_err(&path))?);
            w.write_all(body)
                .and_then(|_| w.flush())
                .map_err(io_err(&path))
        }
        None => stdout
            .write_all(body)
            .map_err(io_err(Path::new("<stdout>"))),
    }
}

fn header(subcommand: &str, fields: &[(&str, String)]) -> String {
    let mut line = format!("# {TOOL} {subcommand}");
    for (k, v) in fields {
        let _ = write!(line, " {k}={v}");
    }
    line.push('\n');
    line
}

fn input_label(path: &Path) -> String {
    path.file_name().map_or_else(
        || path.display().to_string(),
        |f| f.to_string_lossy().into_owned(),
    )
}

/// Runs a command, writing results to `stdout` (or files) and diagnostics to
/// `stderr`. Returns the exit code.
pub fn execute_with(cmd: &Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    for w in &cmd.warnings {
        let _ = writeln!(stderr, "warning: {w}");
    }
    match run_command(&cmd.kind, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cmd: &Command) -> i32 {
    execute_with(cmd, &mut io::stdout().lock(), &mut io::stderr().lock())
}

/// Parses `argv` and executes it.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match parse_args(argv) {
        Ok(cmd) => execute(&cmd),
        Err(e) if e.informational => {
            print!("{}", e.message);
            0
        }
        Err(e) => {
            eprint!("{}", e.message);
            if !e.message.ends_with('\n') {
                eprintln!();
            }
            2
        }
    }
}

fn run_command(
    kind: &CommandKind,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    match kind {
        CommandKind::Simulate {
            source,
            order,
            n,
            seed,
            output,
            spec_out,
        } => {
            let base = source.load()?;
            let order = order.unwrap_or(base.order());
            let spec = marginalize_to(&base, order)?;
            let seq = sample(&spec, *n, *seed)?;
            let mut body = header(
                "simulate",
                &[
                    ("source", source.label()),
                    ("order", order.to_string()),
                    ("n", n.to_string()),
                    ("seed", seed.to_string()),
                ],
            );
            body.push_str(&format!("{seq}\n"));
            emit(output, stdout, body.as_bytes())?;
            if let Some(path) = spec_out {
                let json = spec.to_json() + "\n";
                emit(&Some(path.clone()), stdout, json.as_bytes())?;
            }
        }
        CommandKind::Parse {
            scheme,
            input,
            json,
            output,
        } => {
            let seq = read_sequence(input)?;
            let result = lz::parse(*scheme, &seq)?;
            // JSON has no comment syntax, so it goes out without the header line
            let mut body = if *json {
                String::new()
            } else {
                header(
                    "parse",
                    &[
                        ("scheme", scheme.to_string()),
                        ("input", input_label(input)),
                    ],
                )
            };
            if *json {
                body.push_str(&serde_json::to_string_pretty(&result).expect("serializable"));
                body.push('\n');
            } else {
                body.push_str(&result.pipe_notation(&seq));
                body.push('\n');
                match result.phrase_count {
                    Some(c) => body.push_str(&format!("c={c} K={:.6}\n", result.complexity)),
                    None => body.push_str(&format!(
                        "sum_L={} K={:.6} rate={:.6}\n",
                        result.match_length_sum().unwrap_or(0),
                        result.complexity,
                        result.rate_estimate
                    )),
                }
            }
            emit(output, stdout, body.as_bytes())?;
        }
        CommandKind::Counts { k, input, output } => {
            let seq = read_sequence(input)?;
            let table = count_contexts(&seq, *k)?;
            let mut body = header(
                "counts",
                &[("k", k.to_string()), ("input", input_label(input))],
            );
            body.push_str("context,symbol,count,relative_frequency\n");
            for c in 0..table.num_contexts() {
                let total = table.context_total(c);
                for s in 0..2u8 {
                    body.push_str(&format!(
                        "{},{s},{},{}\n",
                        table.context_label(c),
                        table.count(c, s),
                        fraction(table.count(c, s), total)
                    ));
                }
            }
            emit(output, stdout, body.as_bytes())?;
        }
        CommandKind::Estimate {
            method,
            k,
            input,
            weighting,
            output,
        } => {
            let seq = read_sequence(input)?;
            let est = match method {
                Method::Ep => ep_entropy_with(&seq, *k, *weighting)?,
                m => estimate(&seq, *m, *k)?,
            };
            let weighting_label = match weighting {
                EpWeighting::Conditional => "conditional",
                EpWeighting::FiniteLength => "finite-length",
            };
            let mut body = header(
                "estimate",
                &[
                    ("method", method.to_string()),
                    ("k", k.to_string()),
                    ("weighting", weighting_label.into()),
                    ("input", input_label(input)),
                ],
            );
            let mut csv = Vec::new();
            let record = crate::window::SweepRecord {
                config: EstimatorConfig::new(*method, *k),
                window: crate::window::Window {
                    start: 1,
                    length: seq.len(),
                    midpoint: seq.len() / 2,
                },
                value: est.value,
            };
            write_records_csv(&mut csv, &[record])?;
            body.push_str(&String::from_utf8(csv).expect("utf8"));
            emit(output, stdout, body.as_bytes())?;
        }
        CommandKind::Sweep {
            input,
            preset,
            lengths,
            stride,
            configs,
            output,
        } => {
            let seq = read_sequence(input)?;
            let n = seq.len();
            let default_lengths = || {
                let l = PlanParams::lengths_by_step(50, n);
                if l.is_empty() {
                    vec![n.max(1)]
                } else {
                    l
                }
            };
            let lengths = if lengths.is_empty() {
                default_lengths()
            } else {
                lengths.clone()
            };
            let (params, aggregation) = match preset {
                PresetName::Table2 => (PlanParams::table2(), None),
                PresetName::Tiling => (PlanParams::Tiling { length: lengths[0] }, None),
                PresetName::Growing => match stride {
                    Some(step) => (
                        TemporalAggregation::GrowingPrefix.params(n, lengths, *step),
                        Some(TemporalAggregation::GrowingPrefix),
                    ),
                    None => (PlanParams::growing(lengths), None),
                },
                PresetName::Sliding => (
                    TemporalAggregation::SlidingFixed.params(n, lengths, stride.unwrap_or(5)),
                    Some(TemporalAggregation::SlidingFixed),
                ),
            };
            let plan = build_plan(n, &params)?;
            let out = sweep(&seq, &plan, configs);
            for s in &out.skipped {
                let _ = writeln!(
                    stderr,
                    "skipped: method={} k={} window_start={} window_length={}: {}",
                    s.config.method,
                    s.config.k.map(|k| k.to_string()).unwrap_or_default(),
                    s.window.start,
                    s.window.length,
                    s.reason
                );
            }
            let mut fields = vec![
                ("preset", preset.name().to_string()),
                ("input", input_label(input)),
                ("n", n.to_string()),
                ("windows", plan.windows.len().to_string()),
                ("dropped", plan.dropped.to_string()),
                ("skipped", out.skipped.len().to_string()),
            ];
            if let Some(a) = aggregation {
                fields.push(("aggregation", a.name().to_string()));
            }
            let mut body = header("sweep", &fields).into_bytes();
            write_records_csv(&mut body, &out.records)?;
            emit(output, stdout, &body)?;
        }
        CommandKind::Summarize { input, output } => {
            let file = File::open(input).map_err(io_err(input))?;
            let records = read_records_csv(BufReader::new(file))?;
            let stats = summarize(&records)?;
            let mut body = header("summarize", &[("input", input_label(input))]).into_bytes();
            write_summary_csv(&mut body, &stats)?;
            emit(output, stdout, &body)?;
        }
        CommandKind::Binarize { input, output } => {
            let traces = load_traces(input)?;
            let rows = traces
                .iter()
                .map(|t| binarize(t).map(|(seq, thr)| (t.neuron_id.clone(), thr, seq)))
                .collect::<Result<Vec<_>, _>>()?;
            let mut body = header(
                "binarize",
                &[
                    ("input", input_label(input)),
                    ("rule", "rate>3*sample_sd".into()),
                ],
            )
            .into_bytes();
            write_binarized(&mut body, &rows).map_err(io_err(Path::new("<buffer>")))?;
            emit(output, stdout, &body)?;
        }
        CommandKind::Benchmark {
            source,
            config,
            quick,
            output,
        } => {
            let spec = source.load()?;
            let rows = run_benchmark(&spec, config)?;
            let join = |v: &[usize]| {
                v.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(";")
            };
            let mut body = header(
                "benchmark",
                &[
                    ("preset", if *quick { "quick" } else { "full" }.to_string()),
                    ("source", source.label()),
                    ("orders", join(&config.orders)),
                    ("k", join(&config.ks)),
                    ("n", config.n.to_string()),
                    ("seeds", config.seeds.to_string()),
                    ("seed", config.base_seed.to_string()),
                ],
            )
            .into_bytes();
            write_benchmark_csv(&mut body, &rows).map_err(io_err(Path::new("<buffer>")))?;
            emit(output, stdout, &body)?;
        }
    }
    Ok(())
}

/// Reduced fraction `num/den`; `-` for an unseen context.
fn fraction(num: u64, den: u64) -> String {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    match (num, den) {
        (_, 0) => "-".into(),
        (0, _) => "0".into(),
        _ => {
            let g = gcd(num, den);
            if den / g == 1 {
                (num / g).to_string()
            } else {
                format!("{}/{}", num / g, den / g)
            }
        }
    }
}
