//! Command-line interface behind the `dispen` binary.
//!
//! Exit codes: 0 on success, 2 for flag errors and unreadable or malformed
//! input files, 1 when the computation itself fails.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::builder::{PossibleValuesParser, TypedValueParser};
use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};

use crate::analysis::{
    group_compare, timing_benchmark, windowed_entropy, ExperimentResult, MethodSpec, Overrides,
    Registry, TimingConfig, WindowSpec, EXPERIMENT_NAMES,
};
use crate::entropy::{DispersionParams, EntropyResult, Method, SampEnParams};
use crate::mapping::MappingKind;
use crate::patterns::EmbeddingParams;
use crate::signals::{
    add_wgn_snr, gen_logistic, gen_mix, gen_noise, gen_spike_signal, load_signal, write_signal,
    LogisticParams, MixParams, NoiseKind, Seed, Signal, SignalFormat, SpikeParams,
};
use crate::{Error, Result};

#[derive(Debug, Parser)]
#[command(
    name = "dispen",
    version,
    about = "Dispersion, frequency-based dispersion, permutation and sample entropy"
)]
pub struct Cli {
    /// Worker threads for parallel experiment cells [default: one per core].
    /// Results do not depend on this value.
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Entropy of a signal file, whole or per sliding window.
    Entropy(EntropyArgs),
    /// Write a synthetic signal, one value per line.
    Generate(GenerateArgs),
    /// Run a named experiment from the registry and write its CSV.
    Experiment(ExperimentArgs),
    /// Time the estimators on white noise of increasing length.
    Bench(BenchArgs),
    /// Compare two groups of signal files (group statistics and Hedges' g).
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodName {
    Dispen,
    Fdispen,
    Peren,
    Sampen,
}

impl MethodName {
    pub fn as_str(self) -> &'static str {
        match self {
            MethodName::Dispen => "dispen",
            MethodName::Fdispen => "fdispen",
            MethodName::Peren => "peren",
            MethodName::Sampen => "sampen",
        }
    }
}

fn mapping_parser() -> impl TypedValueParser<Value = MappingKind> {
    PossibleValuesParser::new(["linear", "sorting", "logsig", "tansig", "ncdf"])
        .map(|s| s.parse::<MappingKind>().expect("restricted to known names"))
}

/// Estimator selection. Unset parameters take the per-method defaults.
#[derive(Debug, Clone, Args)]
pub struct MethodArgs {
    /// Entropy estimator.
    #[arg(long, value_enum, default_value_t = MethodName::Dispen)]
    pub method: MethodName,
    /// Amplitude-to-class mapping for dispen and fdispen [default: logsig].
    #[arg(long, value_parser = mapping_parser())]
    pub mapping: Option<MappingKind>,
    /// Embedding dimension [default: 2 for dispen and sampen, 3 for fdispen, 4 for peren].
    #[arg(short = 'm', long = "embedding", value_name = "M")]
    pub m: Option<usize>,
    /// Number of classes for dispen and fdispen [default: 6 for dispen, 5 for fdispen].
    #[arg(short = 'c', long = "classes", value_name = "C")]
    pub c: Option<usize>,
    /// Time delay for dispen, fdispen and peren [default: 1].
    #[arg(short = 'd', long = "delay", value_name = "D")]
    pub d: Option<usize>,
    /// SampEn tolerance as a fraction of the signal SD [default: 0.2].
    #[arg(short = 'r', long = "tolerance", value_name = "R")]
    pub r: Option<f64>,
}

impl MethodArgs {
    /// Resolves defaults and rejects parameters the chosen method does not use.
    pub fn to_method(&self) -> std::result::Result<Method, String> {
        let reject = |flag: &str, set: bool| {
            if set {
                Err(format!(
                    "{flag} does not apply to --method {}",
                    self.method.as_str()
                ))
            } else {
                Ok(())
            }
        };
        let d = self.d.unwrap_or(1);
        match self.method {
            MethodName::Dispen | MethodName::Fdispen => {
                reject("-r", self.r.is_some())?;
                let base = if self.method == MethodName::Dispen {
                    DispersionParams::dispen_default()
                } else {
                    DispersionParams::fdispen_default()
                };
                let params = DispersionParams::new(
                    self.m.unwrap_or(base.m),
                    self.c.unwrap_or(base.c),
                    d,
                    self.mapping.unwrap_or(base.mapping),
                );
                Ok(if self.method == MethodName::Dispen {
                    Method::DispEn(params)
                } else {
                    Method::FDispEn(params)
                })
            }
            MethodName::Peren => {
                reject("-c", self.c.is_some())?;
                reject("--mapping", self.mapping.is_some())?;
                reject("-r", self.r.is_some())?;
                EmbeddingParams::new(self.m.unwrap_or(4), d)
                    .map(Method::PerEn)
                    .map_err(|e| e.to_string())
            }
            MethodName::Sampen => {
                reject("-c", self.c.is_some())?;
                reject("--mapping", self.mapping.is_some())?;
                reject("-d", self.d.is_some())?;
                Ok(Method::SampEn(SampEnParams::new(
                    self.m.unwrap_or(2),
                    self.r.unwrap_or(0.2),
                )))
            }
        }
    }
}

#[derive(Debug, Args)]
pub struct EntropyArgs {
    #[command(flatten)]
    pub method: MethodArgs,
    /// Window length; switches the output to one CSV row per window.
    #[arg(long, value_name = "L")]
    pub window: Option<usize>,
    /// Fraction of overlap between consecutive windows, in [0, 1).
    #[arg(long, value_name = "F", requires = "window", default_value_t = 0.0)]
    pub overlap: f64,
    /// Read this one-based column of a CSV file instead of one value per line.
    #[arg(long, value_name = "K")]
    pub csv_column: Option<usize>,
    /// Output file [default: stdout].
    #[arg(short = 'o', long, value_name = "PATH")]
    pub output: Option<PathBuf>,
    /// Signal file.
    pub input: PathBuf,
}

/// `--seed` value: an integer, or `random` for a fresh seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeedArg {
    Fixed(u64),
    Random,
}

impl SeedArg {
    fn resolve(self) -> u64 {
        match self {
            SeedArg::Fixed(s) => s,
            SeedArg::Random => {
                let s = rand::random();
                eprintln!("seed: {s}");
                s
            }
        }
    }
}

fn parse_seed(s: &str) -> std::result::Result<SeedArg, String> {
    if s.eq_ignore_ascii_case("random") {
        return Ok(SeedArg::Random);
    }
    s.parse()
        .map(SeedArg::Fixed)
        .map_err(|_| format!("expected an unsigned integer or `random`, got `{s}`"))
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(subcommand)]
    pub kind: SignalKind,
    /// Seed for the random generators [default: 20170101].
    #[arg(long, global = true, value_parser = parse_seed)]
    pub seed: Option<SeedArg>,
    /// Add white Gaussian noise at this signal-to-noise ratio (dB).
    #[arg(long, global = true, value_name = "DB", allow_negative_numbers = true)]
    pub snr_db: Option<f64>,
    /// Output file [default: stdout].
    #[arg(short = 'o', long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum SignalKind {
    /// Unit-variance white Gaussian noise.
    White(LengthArgs),
    /// Unit-variance 1/f noise.
    Pink(LengthArgs),
    /// Unit-variance 1/f^2 noise.
    Brown(LengthArgs),
    /// Logistic map, optionally with a linear ramp of the growth parameter.
    Logistic(LogisticArgs),
    /// MIX process: sinusoid randomly replaced by uniform noise with probability p.
    Mix(MixArgs),
    /// Gaussian noise with a single impulse.
    Spike(SpikeArgs),
}

#[derive(Debug, Args)]
pub struct LengthArgs {
    /// Number of samples.
    #[arg(short = 'n', long, default_value_t = 1000)]
    pub n: usize,
}

#[derive(Debug, Args)]
pub struct LogisticArgs {
    /// Number of samples.
    #[arg(short = 'n', long, default_value_t = 15_000)]
    pub n: usize,
    /// Constant growth parameter (overrides the ramp).
    #[arg(long, conflicts_with_all = ["alpha_start", "alpha_end"])]
    pub alpha: Option<f64>,
    /// Growth parameter at the first sample.
    #[arg(long, default_value_t = 3.5)]
    pub alpha_start: f64,
    /// Growth parameter at the last sample.
    #[arg(long, default_value_t = 3.99)]
    pub alpha_end: f64,
    /// Initial value in (0, 1).
    #[arg(long, default_value_t = 0.23)]
    pub x0: f64,
    /// Iterations discarded before the first sample.
    #[arg(long, default_value_t = 0)]
    pub burn_in: usize,
}

#[derive(Debug, Args)]
pub struct MixArgs {
    /// Number of samples.
    #[arg(short = 'n', long, default_value_t = 15_000)]
    pub n: usize,
    /// Constant switching probability (overrides the ramp).
    #[arg(long, conflicts_with_all = ["p_start", "p_end"])]
    pub p: Option<f64>,
    /// Switching probability at the first sample.
    #[arg(long, default_value_t = 0.99)]
    pub p_start: f64,
    /// Switching probability at the last sample.
    #[arg(long, default_value_t = 0.01)]
    pub p_end: f64,
}

#[derive(Debug, Args)]
pub struct SpikeArgs {
    /// Number of samples.
    #[arg(short = 'n', long, default_value_t = 2000)]
    pub n: usize,
    /// One-based position of the impulse.
    #[arg(long, default_value_t = 1000)]
    pub spike_pos: usize,
    /// Impulse amplitude.
    #[arg(long, default_value_t = 10.0, allow_negative_numbers = true)]
    pub spike_amp: f64,
    /// SD of the background noise.
    #[arg(long, default_value_t = 1.0)]
    pub noise_sd: f64,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    /// Experiment name: fig2, fig3, fig4, fig5, fig6, fig7, fig10, table1 or table2.
    pub name: String,
    /// Seed [default: the registry value for the experiment].
    #[arg(long, value_parser = parse_seed)]
    pub seed: Option<SeedArg>,
    /// Realizations per cell (timing repeats for table1).
    #[arg(long, value_name = "N")]
    pub realizations: Option<usize>,
    /// Registry file to use instead of the built-in defaults.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Output file [default: stdout].
    #[arg(short = 'o', long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Signal lengths [default: the table1 registry grid].
    #[arg(long, value_delimiter = ',', value_name = "N,..")]
    pub lengths: Option<Vec<usize>>,
    /// Timed runs per cell; the median is reported.
    #[arg(long, value_name = "N")]
    pub repeats: Option<usize>,
    /// Only time these estimators: dispen, fdispen, peren [default: all three].
    #[arg(long = "method", value_enum, value_delimiter = ',')]
    pub methods: Vec<MethodName>,
    /// Seed for the white-noise inputs.
    #[arg(long, value_parser = parse_seed)]
    pub seed: Option<SeedArg>,
    /// Output file [default: stdout].
    #[arg(short = 'o', long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub method: MethodArgs,
    /// Signal files of group A.
    #[arg(long = "group-a", num_args = 1.., required = true, value_name = "FILE")]
    pub group_a: Vec<PathBuf>,
    /// Signal files of group B.
    #[arg(long = "group-b", num_args = 1.., required = true, value_name = "FILE")]
    pub group_b: Vec<PathBuf>,
    /// Read this one-based column of CSV files instead of one value per line.
    #[arg(long, value_name = "K")]
    pub csv_column: Option<usize>,
    /// Output file [default: stdout].
    #[arg(short = 'o', long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

enum Failure {
    Usage(clap::Error),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn usage(kind: ErrorKind, message: impl std::fmt::Display) -> Failure {
    Failure::Usage(Cli::command().error(kind, message))
}

/// Exit code for a library error: input problems are the caller's fault (2),
/// everything else is a computation failure (1).
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Io { .. }
        | Error::Parse { .. }
        | Error::UnknownExperiment { .. }
        | Error::Registry(_) => 2,
        _ => 1,
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(Failure::Usage(e)) => {
            let _ = e.print();
            e.exit_code()
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn execute(cli: Cli) -> std::result::Result<(), Failure> {
    let work = move || match cli.command {
        Command::Entropy(a) => run_entropy(a),
        Command::Generate(a) => run_generate(a),
        Command::Experiment(a) => run_experiment(a),
        Command::Bench(a) => run_bench(a),
        Command::Compare(a) => run_compare(a),
    };
    match cli.jobs {
        Some(0) => Err(usage(ErrorKind::InvalidValue, "--jobs must be at least 1")),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| usage(ErrorKind::InvalidValue, e))?
            .install(work),
        None => work(),
    }
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|source| {
            Error::Io {
                path: p.to_path_buf(),
                source,
            }
        })?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn output_label(path: Option<&Path>) -> PathBuf {
    path.map_or_else(|| PathBuf::from("<stdout>"), Path::to_path_buf)
}

fn io_err(path: Option<&Path>) -> impl FnOnce(io::Error) -> Error {
    let path = output_label(path);
    move |source| Error::Io { path, source }
}

fn format_for(csv_column: Option<usize>) -> SignalFormat {
    csv_column.map_or(SignalFormat::Plain, |column| SignalFormat::Csv { column })
}

fn resolve_method(args: &MethodArgs) -> std::result::Result<Method, Failure> {
    args.to_method()
        .map_err(|msg| usage(ErrorKind::ArgumentConflict, msg))
}

fn opt_value(v: Option<f64>) -> String {
    v.map_or_else(|| "NA".to_string(), |v| v.to_string())
}

fn describe(method: &Method, n: usize) -> Vec<(&'static str, String)> {
    let mut lines = vec![("method", method.name().to_string())];
    if let Some(mapping) = method.mapping() {
        lines.push(("mapping", mapping.to_string()));
    }
    lines.push(("m", method.m().to_string()));
    if let Some(c) = method.c() {
        lines.push(("c", c.to_string()));
    }
    if let Some(d) = method.d() {
        lines.push(("d", d.to_string()));
    }
    if let Some(r) = method.r() {
        lines.push(("r", r.to_string()));
    }
    lines.push(("samples", n.to_string()));
    lines
}

fn run_entropy(args: EntropyArgs) -> std::result::Result<(), Failure> {
    let method = resolve_method(&args.method)?;
    let spec = match args.window {
        Some(length) => Some(
            WindowSpec::new(length, args.overlap).map_err(|e| usage(ErrorKind::InvalidValue, e))?,
        ),
        None => None,
    };
    let x = load_signal(&args.input, format_for(args.csv_column))?;
    let out_path = args.output.as_deref();
    match spec {
        None => {
            let r: EntropyResult = method.compute(&x)?;
            let mut out = open_output(out_path)?;
            let mut text = String::new();
            for (key, value) in describe(&method, x.len()) {
                text += &format!("{key}: {value}\n");
            }
            text += &format!("raw: {}\nnormalized: {}\n", r.raw, opt_value(r.normalized));
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(io_err(out_path))?;
        }
        Some(spec) => {
            let windows = windowed_entropy(&x, &spec, &method)?;
            let mut w = csv::Writer::from_writer(open_output(out_path)?);
            w.write_record(["window", "start", "end", "raw", "normalized"])
                .map_err(Error::from)?;
            for win in &windows {
                w.write_record([
                    win.index.to_string(),
                    win.start.to_string(),
                    (win.start + spec.length()).to_string(),
                    opt_value(win.result.map(|r| r.raw)),
                    opt_value(win.result.and_then(|r| r.normalized)),
                ])
                .map_err(Error::from)?;
            }
            w.flush().map_err(io_err(out_path))?;
            let undefined = windows.iter().filter(|w| w.result.is_none()).count();
            if undefined > 0 {
                eprintln!("{undefined} of {} windows undefined (NA)", windows.len());
            }
        }
    }
    Ok(())
}

fn run_generate(args: GenerateArgs) -> std::result::Result<(), Failure> {
    let seed = Seed(args.seed.map_or(Seed::DEFAULT.0, SeedArg::resolve));
    let signal: Signal = match &args.kind {
        SignalKind::White(a) => gen_noise(NoiseKind::White, a.n, seed)?,
        SignalKind::Pink(a) => gen_noise(NoiseKind::Pink, a.n, seed)?,
        SignalKind::Brown(a) => gen_noise(NoiseKind::Brown, a.n, seed)?,
        SignalKind::Logistic(a) => {
            let params = match a.alpha {
                Some(alpha) => LogisticParams::fixed(alpha, a.n),
                None => LogisticParams::ramp(a.alpha_start, a.alpha_end, a.n),
            };
            gen_logistic(&params.with_x0(a.x0).with_burn_in(a.burn_in))?
        }
        SignalKind::Mix(a) => {
            let params = match a.p {
                Some(p) => MixParams::constant(p, a.n),
                None => MixParams::ramp(a.p_start, a.p_end, a.n),
            };
            gen_mix(&params, seed)?
        }
        SignalKind::Spike(a) => gen_spike_signal(
            &SpikeParams {
                n: a.n,
                spike_pos: a.spike_pos,
                spike_amp: a.spike_amp,
                noise_sd: a.noise_sd,
            },
            seed,
        )?,
    };
    let signal = match args.snr_db {
        // Keeps the noise stream independent of the stream that drew the signal.
        Some(snr) => add_wgn_snr(&signal, snr, seed.derive(u64::MAX))?,
        None => signal,
    };
    let out_path = args.output.as_deref();
    let mut out = open_output(out_path)?;
    write_signal(&mut out, &signal)
        .and_then(|_| out.flush())
        .map_err(io_err(out_path))?;
    Ok(())
}

fn write_result(result: &ExperimentResult, path: Option<&Path>) -> Result<()> {
    let mut out = open_output(path)?;
    result.write_csv(&mut out)?;
    out.flush().map_err(io_err(path))
}

fn run_experiment(args: ExperimentArgs) -> std::result::Result<(), Failure> {
    if !EXPERIMENT_NAMES.contains(&args.name.as_str()) {
        return Err(Error::UnknownExperiment {
            name: args.name.clone(),
            valid: EXPERIMENT_NAMES.join(", "),
        }
        .into());
    }
    if args.realizations == Some(0) {
        return Err(usage(
            ErrorKind::InvalidValue,
            "--realizations must be at least 1",
        ));
    }
    let registry = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })?;
            Registry::from_toml(&text)
                .map_err(|e| Error::Registry(format!("{}: {e}", path.display())))?
        }
        None => Registry::builtin(),
    };
    let overrides = Overrides {
        seed: args.seed.map(SeedArg::resolve),
        realizations: args.realizations,
    };
    let start = Instant::now();
    let result = registry.run(&args.name, &overrides)?;
    write_result(&result, args.output.as_deref())?;
    eprintln!(
        "{}: {} cells, seed {}, {} realizations, {:.1} s -> {}",
        result.name,
        result.cells.len(),
        result.seed.0,
        result.realizations,
        start.elapsed().as_secs_f64(),
        output_label(args.output.as_deref()).display()
    );
    Ok(())
}

fn run_bench(args: BenchArgs) -> std::result::Result<(), Failure> {
    if args.methods.contains(&MethodName::Sampen) {
        return Err(usage(
            ErrorKind::InvalidValue,
            "sampen is quadratic in the signal length and is not part of the benchmark",
        ));
    }
    let defaults = Registry::builtin().table1;
    let keep = |spec: &MethodSpec| {
        args.methods.is_empty() || args.methods.iter().any(|m| m.as_str() == spec.method)
    };
    let cfg = TimingConfig {
        seed: args.seed.map_or(defaults.seed, SeedArg::resolve),
        repeats: args.repeats.unwrap_or(defaults.repeats),
        lengths: args.lengths.unwrap_or(defaults.lengths),
        methods: defaults.methods.into_iter().filter(keep).collect(),
    };
    let result = timing_benchmark(&cfg)?;
    write_result(&result, args.output.as_deref())?;
    Ok(())
}

fn run_compare(args: CompareArgs) -> std::result::Result<(), Failure> {
    let method = resolve_method(&args.method)?;
    let cmp = group_compare(
        &args.group_a,
        &args.group_b,
        format_for(args.csv_column),
        &method,
    )?;
    for (_, reason) in &cmp.skipped {
        eprintln!("skipped: {reason}");
    }
    let out_path = args.output.as_deref();
    let mut out = open_output(out_path)?;
    cmp.write_csv(&mut out)?;
    out.flush().map_err(io_err(out_path))?;
    Ok(())
}
