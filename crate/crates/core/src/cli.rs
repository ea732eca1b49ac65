//! Command-line front end: `gen`, `compute`, `validate`, `bench`, `render`.
//!
//! Exit codes: 0 success, 1 validation failure, 2 parse or I/O error, 3 conflicting flags.

use std::ffi::OsString;
use std::fs::File;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::eigenbasis::{build_eigenbasis, read_cache, validate_eigenbasis, write_cache, EigenBasis, MIN_BASIS_SIZE};
use crate::error::Error;
use crate::foundation::{ComplexSignal, OpCounter, TransformVariant};
use crate::io;
use crate::multiangle::{ma_frft, MultianglePath};
use crate::signal::{SignalKind, SignalSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_CONFLICT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "mafrft", version, about = "Discrete fractional Fourier transforms over all grid orders")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Synthesize a test signal as re,im CSV
    Gen(GenArgs),
    /// Compute the multiangle transform of a signal
    Compute(ComputeArgs),
    /// Build an eigenbasis and print its validation report as JSON
    Validate(ValidateArgs),
    /// Time the naive, full and half paths
    Bench(BenchArgs),
    /// Render a computed magnitude matrix as a binary PGM
    Render(RenderArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value = "chirp")]
    pub kind: SignalKind,
    /// Chirp rate; the phase is pi*rate*n^2/N
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub rate: f64,
    /// Start frequency in cycles per frame [default: -rate*(N-1)/2 for chirps, 0 otherwise]
    #[arg(long, allow_negative_numbers = true)]
    pub f0: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub amplitude: f64,
    #[arg(long, default_value_t = 0.0)]
    pub noise_std: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, short)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[arg(long, short)]
    pub input: PathBuf,
    #[arg(long, default_value = "standard")]
    pub variant: TransformVariant,
    #[arg(long, default_value = "half")]
    pub path: MultianglePath,
    /// Zero-pad odd lengths to N+1 orders (required by the half path for odd N)
    #[arg(long)]
    pub pad_odd: bool,
    #[arg(long)]
    pub out_prefix: PathBuf,
    /// Binary eigenbasis cache; read if present, written otherwise
    #[arg(long)]
    pub basis_cache: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value = "standard")]
    pub variant: TransformVariant,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Comma-separated even powers of two
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    #[arg(long, default_value = "standard")]
    pub variant: TransformVariant,
    #[arg(long, default_value_t = 5)]
    pub repetitions: usize,
    #[arg(long, value_delimiter = ',', default_value = "naive,full,half")]
    pub paths: Vec<MultianglePath>,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[arg(long)]
    pub input_prefix: PathBuf,
    #[arg(long, short)]
    pub out: PathBuf,
}

/// A failed command: exit code plus message.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn parse(message: impl Into<String>) -> Self {
        CliError { code: EXIT_PARSE, message: message.into() }
    }

    fn conflict(message: impl Into<String>) -> Self {
        CliError { code: EXIT_CONFLICT, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        CliError::parse(err.to_string())
    }
}

type CliResult = Result<i32, CliError>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let rendered = err.render().to_string();
            if err.use_stderr() {
                let _ = write!(stderr, "{rendered}");
            } else {
                let _ = write!(stdout, "{rendered}");
            }
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Gen(args) => cmd_gen(&args),
        Command::Compute(args) => cmd_compute(&args),
        Command::Validate(args) => cmd_validate(&args, stdout),
        Command::Bench(args) => cmd_bench(&args, stdout, stderr),
        Command::Render(args) => cmd_render(&args),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            let _ = writeln!(stderr, "error: {}", err.message);
            err.code
        }
    }
}

pub fn cmd_gen(args: &GenArgs) -> CliResult {
    let f0 = args.f0.unwrap_or(match args.kind {
        SignalKind::Chirp => SignalSpec::symmetric_f0(args.n, args.rate),
        _ => 0.0,
    });
    let spec = SignalSpec {
        n: args.n,
        kind: args.kind,
        rate: args.rate,
        f0,
        amplitude: args.amplitude,
        noise_std: args.noise_std,
        seed: args.seed,
    };
    let x = spec.generate()?;
    io::write_signal_file(&x, &args.out)?;
    Ok(EXIT_OK)
}

fn load_basis(n: usize, variant: TransformVariant, cache: Option<&PathBuf>) -> Result<EigenBasis, CliError> {
    let Some(path) = cache else {
        return Ok(build_eigenbasis(n, variant)?);
    };
    if path.exists() {
        let basis = read_cache(File::open(path).map_err(Error::from)?)?;
        if basis.n() != n || basis.variant() != variant {
            return Err(CliError::conflict(format!(
                "basis cache {} holds n={} {}, but the input needs n={} {}",
                path.display(),
                basis.n(),
                basis.variant(),
                n,
                variant
            )));
        }
        Ok(basis)
    } else {
        let basis = build_eigenbasis(n, variant)?;
        write_cache(&basis, File::create(path).map_err(Error::from)?)?;
        Ok(basis)
    }
}

pub fn cmd_compute(args: &ComputeArgs) -> CliResult {
    let x: ComplexSignal = io::read_signal_file(&args.input)?;
    let n = x.len();
    if args.path == MultianglePath::Half && n % 2 == 1 && !args.pad_odd {
        return Err(CliError::conflict(format!(
            "--path half with odd length {n} requires --pad-odd (the half path needs an even number of orders)"
        )));
    }
    if n < MIN_BASIS_SIZE {
        return Err(CliError::parse(format!("signal length {n} is below the minimum of {MIN_BASIS_SIZE}")));
    }
    let basis = load_basis(n, args.variant, args.basis_cache.as_ref())?;
    let result = ma_frft(&basis, &x, args.path, args.pad_odd, &OpCounter::new())?;
    io::write_result(&result, &args.out_prefix)?;
    Ok(EXIT_OK)
}

pub fn cmd_validate(args: &ValidateArgs, stdout: &mut dyn Write) -> CliResult {
    if args.n < MIN_BASIS_SIZE {
        return Err(CliError::parse(format!("n must be at least {MIN_BASIS_SIZE}, got {}", args.n)));
    }
    let report = match build_eigenbasis(args.n, args.variant) {
        Ok(basis) => validate_eigenbasis(&basis),
        Err(err @ (Error::DegenerateBasis { .. } | Error::EigenMismatch { .. } | Error::CommutationFailure { .. })) => {
            return Err(CliError { code: EXIT_VALIDATION, message: err.to_string() });
        }
        Err(err) => return Err(err.into()),
    };
    let json = serde_json::to_string_pretty(&report).map_err(|e| CliError::parse(e.to_string()))?;
    writeln!(stdout, "{json}").map_err(Error::from)?;
    Ok(if report.pass { EXIT_OK } else { EXIT_VALIDATION })
}

fn median(mut samples: Vec<u128>) -> u128 {
    samples.sort_unstable();
    samples[samples.len() / 2]
}

pub fn cmd_bench(args: &BenchArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult {
    if args.repetitions == 0 {
        return Err(CliError::parse("repetitions must be at least 1"));
    }
    if let Some(bad) = args.n.iter().find(|&&n| !n.is_power_of_two() || n < MIN_BASIS_SIZE) {
        return Err(CliError::parse(format!("bench sizes must be powers of two >= {MIN_BASIS_SIZE}, got {bad}")));
    }
    writeln!(stdout, "n,path,wall_ns_median,fft_count").map_err(Error::from)?;
    for &n in &args.n {
        let basis = build_eigenbasis(n, args.variant)?;
        let spec = SignalSpec { noise_std: 0.1, seed: n as u64, ..SignalSpec::chirp(n, 1.0) };
        let x = spec.generate()?;
        let mut medians = Vec::new();
        for &path in &args.paths {
            let mut times = Vec::with_capacity(args.repetitions);
            let mut fft_count = 0;
            for _ in 0..args.repetitions {
                let counter = OpCounter::new();
                let start = Instant::now();
                let result = ma_frft(&basis, &x, path, false, &counter)?;
                times.push(start.elapsed().as_nanos());
                std::hint::black_box(&result);
                fft_count = counter.get();
            }
            let med = median(times);
            medians.push((path, med));
            writeln!(stdout, "{n},{path},{med},{fft_count}").map_err(Error::from)?;
        }
        let time_of = |p| medians.iter().find(|(q, _)| *q == p).map(|(_, t)| *t);
        if let (Some(half), Some(full)) = (time_of(MultianglePath::Half), time_of(MultianglePath::Full)) {
            if n >= 1024 && args.repetitions >= 5 && half >= full {
                let _ = writeln!(stderr, "warning: n={n}: half path ({half} ns) not faster than full path ({full} ns)");
            }
        }
    }
    Ok(EXIT_OK)
}

pub fn cmd_render(args: &RenderArgs) -> CliResult {
    let x = io::read_result_matrix(&args.input_prefix)?;
    let file = File::create(&args.out).map_err(Error::from)?;
    io::write_pgm(&x, file)?;
    Ok(EXIT_OK)
}
