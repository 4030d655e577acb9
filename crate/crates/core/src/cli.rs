//! The `gausszig` command line: `bench`, `verify`, `sample`, `tables` and
//! `bits`.
//!
//! Exit codes: 0 success, 1 statistical gate failure, 2 invalid request,
//! 3 I/O failure.

use std::collections::hash_map::RandomState;
use std::ffi::OsString;
use std::fs::File;
use std::hash::{BuildHasher, Hasher};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};

use crate::bench::{self, BenchConfig, Format, Profile};
use crate::error::{invalid, Error, Result};
use crate::sampler::{check_pairing, gaussian_affine, is_sanctioned, AnySampler};
use crate::source::{parse_seed, AnySource, ScriptedSource};
use crate::stats::{self, low_bits_chi_square};
use crate::{SamplerId, SourceId, ZigguratTables};

/// Seed used when neither `--seed` nor `GAUSSZIG_SEED` is given.
pub const DEFAULT_SEED: u64 = 0x5EED;
pub const SEED_ENV: &str = "GAUSSZIG_SEED";
/// `verify` refuses smaller samples.
pub const MIN_VERIFY_N: u64 = 10_000;

pub const EXIT_OK: i32 = 0;
pub const EXIT_GATE_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "gausszig", version, about = "Gaussian samplers over pluggable uniform PRNGs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Time sampler/source pairings and compare against a baseline sampler.
    Bench(BenchArgs),
    /// Run the normality gates (moments, KS, chi-square) for one pairing.
    Verify(VerifyArgs),
    /// Write deviates, one per line.
    Sample(SampleArgs),
    /// Emit ziggurat tables as JSON.
    Tables(TablesArgs),
    /// Chi-square test of a source's low-order output bits.
    Bits(BitsArgs),
}

#[derive(Debug, Args)]
pub struct SeedArg {
    /// 64-bit seed (decimal or 0x-hex), or `random`.
    #[arg(long)]
    pub seed: Option<String>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Restrict the grid to one source.
    #[arg(long)]
    pub source: Option<SourceId>,
    /// Restrict the grid to one sampler.
    #[arg(long)]
    pub sampler: Option<SamplerId>,
    #[command(flatten)]
    pub seed: SeedArg,
    #[arg(long, default_value = "paper")]
    pub profile: Profile,
    #[arg(long, default_value = "md")]
    pub format: Format,
    /// Sampler each source's other results are compared against.
    #[arg(long, default_value = "polar")]
    pub baseline: SamplerId,
    /// Run an unsanctioned pairing anyway.
    #[arg(long)]
    pub force: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value = "splitmix")]
    pub source: SourceId,
    #[arg(long, default_value = "ziggurat")]
    pub sampler: SamplerId,
    #[arg(long, default_value_t = 1_000_000)]
    pub n: u64,
    #[command(flatten)]
    pub seed: SeedArg,
    /// Word list for `--source scripted`.
    #[arg(long)]
    pub script: Option<PathBuf>,
    #[arg(long)]
    pub force: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long, default_value = "splitmix")]
    pub source: SourceId,
    #[arg(long, default_value = "ziggurat")]
    pub sampler: SamplerId,
    #[arg(long, default_value_t = 10)]
    pub n: u64,
    #[command(flatten)]
    pub seed: SeedArg,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub mu: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub sigma: f64,
    #[arg(long)]
    pub script: Option<PathBuf>,
    #[arg(long)]
    pub force: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TablesArgs {
    /// Layer count (a power of two).
    #[arg(long, default_value_t = 128)]
    pub n: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BitsArgs {
    #[arg(long, default_value = "splitmix")]
    pub source: SourceId,
    /// Number of low bits to histogram (1..=8).
    #[arg(long, default_value_t = 8)]
    pub k: u32,
    /// Draws; defaults to 10^6, or the script length for a scripted source.
    #[arg(long)]
    pub n: Option<u64>,
    #[command(flatten)]
    pub seed: SeedArg,
    #[arg(long)]
    pub script: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) => EXIT_IO,
        Error::IterationGuard { .. } => EXIT_GATE_FAILED,
        _ => EXIT_INVALID,
    }
}

fn entropy_seed() -> u64 {
    let mut h = RandomState::new().build_hasher();
    let nanos = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_nanos())
        .unwrap_or_default();
    h.write_u128(nanos);
    h.write_u32(std::process::id());
    h.finish()
}

/// `--seed` wins, then `GAUSSZIG_SEED`, then [`DEFAULT_SEED`].
pub fn resolve_seed(flag: Option<&str>) -> Result<u64> {
    let from_env = std::env::var(SEED_ENV).ok();
    match flag.or(from_env.as_deref()) {
        Some(s) if s.eq_ignore_ascii_case("random") => Ok(entropy_seed()),
        Some(s) => parse_seed(s),
        None => Ok(DEFAULT_SEED),
    }
}

fn open_source(id: SourceId, seed: u64, script: Option<&Path>) -> Result<AnySource> {
    match (id, script) {
        (SourceId::Scripted, Some(path)) => {
            let file = File::open(path)?;
            Ok(AnySource::Scripted(ScriptedSource::from_reader(BufReader::new(file))?))
        }
        (SourceId::Scripted, None) => Err(invalid("--source scripted needs --script PATH")),
        (_, Some(_)) => Err(invalid("--script only applies to --source scripted")),
        (id, None) => AnySource::seeded(id, seed),
    }
}

fn gate(source: SourceId, sampler: SamplerId, force: bool) -> Result<()> {
    if force {
        Ok(())
    } else {
        check_pairing(source, sampler)
    }
}

/// Writes to `--out` when given, otherwise to `stdout`.
fn emit(out: Option<&Path>, stdout: &mut dyn Write, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            let mut f = BufWriter::new(File::create(path)?);
            f.write_all(text.as_bytes())?;
            f.flush()?;
        }
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn cmd_bench(a: &BenchArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let seed = resolve_seed(a.seed.seed.as_deref())?;
    let cfg = BenchConfig::for_profile(a.profile, seed);
    if a.source == Some(SourceId::Scripted) {
        return Err(invalid("a scripted source cannot be benchmarked"));
    }
    let grid: Vec<(SourceId, SamplerId)> = match (a.source, a.sampler) {
        (Some(src), Some(s)) => {
            gate(src, s, a.force)?;
            vec![(src, s)]
        }
        (src, s) => bench::sanctioned_grid()
            .into_iter()
            .filter(|&(gs, gx)| src.is_none_or(|x| x == gs) && s.is_none_or(|x| x == gx))
            .collect(),
    };

    let mut results = Vec::with_capacity(grid.len());
    for (src, s) in grid {
        writeln!(
            stderr,
            "bench: {src} x {s} ({:.1} s)",
            cfg.budget().as_secs_f64()
        )?;
        let r = if is_sanctioned(src, s) {
            bench::run_benchmark(s, src, &cfg)?
        } else {
            bench::run_benchmark_forced(s, src, &cfg)?
        };
        results.push(r);
    }

    let rows = bench::comparisons(&results, a.baseline)?;
    let mut text = bench::render_table(&results, a.format)?;
    let summary = bench::render_comparisons(&rows);
    if a.format == Format::Markdown && !summary.is_empty() {
        text.push('\n');
        text.push_str(&summary);
    } else {
        stderr.write_all(summary.as_bytes())?;
    }
    emit(a.out.as_deref(), stdout, &text)?;
    Ok(EXIT_OK)
}

fn cmd_verify(a: &VerifyArgs, stdout: &mut dyn Write) -> Result<i32> {
    if a.n < MIN_VERIFY_N {
        return Err(invalid(format!(
            "--n {} is below the minimum of {MIN_VERIFY_N}",
            a.n
        )));
    }
    gate(a.source, a.sampler, a.force)?;
    let seed = resolve_seed(a.seed.seed.as_deref())?;
    let mut src = open_source(a.source, seed, a.script.as_deref())?;
    let seed = (a.source != SourceId::Scripted).then_some(seed);
    let report = stats::verify_normality(&mut src, a.source.as_str(), a.sampler, a.n, seed)?;
    let text = serde_json::to_string_pretty(&report)? + "\n";
    emit(a.out.as_deref(), stdout, &text)?;
    Ok(if report.passed {
        EXIT_OK
    } else {
        EXIT_GATE_FAILED
    })
}

fn cmd_sample(a: &SampleArgs, stdout: &mut dyn Write) -> Result<i32> {
    gate(a.source, a.sampler, a.force)?;
    if !(a.sigma >= 0.0) {
        return Err(invalid(format!("--sigma must be non-negative, got {}", a.sigma)));
    }
    let seed = resolve_seed(a.seed.seed.as_deref())?;
    let mut src = open_source(a.source, seed, a.script.as_deref())?;
    let mut sampler = AnySampler::new(a.sampler);

    let mut file;
    let mut lock;
    let sink: &mut dyn Write = match &a.out {
        Some(path) => {
            file = BufWriter::new(File::create(path)?);
            &mut file
        }
        None => {
            lock = BufWriter::new(stdout);
            &mut lock
        }
    };
    for _ in 0..a.n {
        let x = gaussian_affine(&mut src, &mut sampler, a.mu, a.sigma)?;
        writeln!(sink, "{x:.16e}")?;
    }
    sink.flush()?;
    Ok(EXIT_OK)
}

fn cmd_tables(a: &TablesArgs, stdout: &mut dyn Write) -> Result<i32> {
    let tables = ZigguratTables::build(a.n)?;
    emit(a.out.as_deref(), stdout, &tables.to_json())?;
    Ok(EXIT_OK)
}

fn cmd_bits(a: &BitsArgs, stdout: &mut dyn Write) -> Result<i32> {
    let seed = resolve_seed(a.seed.seed.as_deref())?;
    let mut src = open_source(a.source, seed, a.script.as_deref())?;
    let n = match (a.n, &src) {
        (Some(n), _) => n,
        (None, AnySource::Scripted(s)) => s.len() as u64,
        (None, _) => 1_000_000,
    };
    let mut report = low_bits_chi_square(&mut src, a.k, n)?;
    if a.source != SourceId::Scripted {
        report = report.with_seed(seed);
    }
    let text = serde_json::to_string_pretty(&report)? + "\n";
    emit(a.out.as_deref(), stdout, &text)?;
    Ok(if report.verdict.passed() {
        EXIT_OK
    } else {
        EXIT_GATE_FAILED
    })
}

/// Parses `args` (program name first) and runs the command, returning the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let outcome = match &cli.command {
        Command::Bench(a) => cmd_bench(a, stdout, stderr),
        Command::Verify(a) => cmd_verify(a, stdout),
        Command::Sample(a) => cmd_sample(a, stdout),
        Command::Tables(a) => cmd_tables(a, stdout),
        Command::Bits(a) => cmd_bits(a, stdout),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "gausszig: {e}");
            exit_code(&e)
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
