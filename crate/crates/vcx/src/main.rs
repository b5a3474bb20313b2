//! Command-line front end.
//!
//! Three subcommands share one input-and-configuration surface:
//! `analyze` writes per-frame features as CSV, `siti` writes per-frame
//! SI/TI, and `bench` runs an analysis purely for its throughput line.
//! CSV goes to stdout unless `-o` names a file; everything meant for a
//! human goes to stderr.
//!
//! Exit codes: 0 on success, 1 for command-line mistakes, 2 when the
//! input cannot be read or analyzed.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use vcx::core::config::{AnalyzerConfig, BlockSizeChoice, ThreadChoice, MAX_THREADS, SELECTABLE_BLOCK_SIZES};
use vcx::core::frame::ChromaFormat;
use vcx::core::{AnalysisMode, KernelPath};
use vcx::pipeline::{analyze_stream, AnalysisReport, PipelineError};
use vcx::csv;
use vcx::{open_raw_yuv, FrameSource, IngestError, Y4mReader};

#[derive(Parser)]
#[command(name = "vcx", version, about = "Video complexity analyzer")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute per-frame texture features and write them as CSV
    Analyze(AnalyzeArgs),
    /// Compute per-frame SI/TI and write them as CSV
    Siti(SitiArgs),
    /// Run an analysis and report throughput only
    Bench(BenchArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Input file; '-' reads a Y4M stream from stdin
    input: String,

    /// Container format, inferred from the file extension when omitted
    #[arg(long, value_enum)]
    format: Option<Format>,

    /// Frame width in samples (raw input only)
    #[arg(long)]
    width: Option<u32>,

    /// Frame height in samples (raw input only)
    #[arg(long)]
    height: Option<u32>,

    /// Sample bit depth, 8 or 10 (raw input only)
    #[arg(long, value_parser = parse_bit_depth)]
    bit_depth: Option<u8>,

    /// Chroma subsampling (raw input only)
    #[arg(long, value_enum)]
    chroma: Option<ChromaArg>,
}

#[derive(Args)]
struct AnalysisOpts {
    /// Block edge length: auto, 8, 16, or 32
    #[arg(long, default_value = "auto", value_parser = parse_block_size)]
    block_size: BlockSizeChoice,

    /// Worker threads: auto or 1..=64; VCX_THREADS supplies a default
    #[arg(long, value_parser = parse_threads)]
    threads: Option<ThreadChoice>,

    /// Compute kernel
    #[arg(long, value_enum, default_value = "auto")]
    kernel: KernelArg,

    /// Halve each block before transforming it
    #[arg(long)]
    low_pass: bool,

    /// Skip the chroma planes; their features are reported as 0
    #[arg(long)]
    no_chroma: bool,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    opts: AnalysisOpts,
    /// Write CSV here instead of stdout
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SitiArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Write CSV here instead of stdout
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    opts: AnalysisOpts,
    /// Which analyses to time
    #[arg(long, value_enum, default_value = "features")]
    mode: ModeArg,
    /// Accepted for symmetry with the other subcommands but ignored;
    /// bench never writes results
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Y4m,
    Yuv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ChromaArg {
    #[value(name = "420")]
    C420,
    #[value(name = "422")]
    C422,
    #[value(name = "444")]
    C444,
}

impl From<ChromaArg> for ChromaFormat {
    fn from(arg: ChromaArg) -> ChromaFormat {
        match arg {
            ChromaArg::C420 => ChromaFormat::C420,
            ChromaArg::C422 => ChromaFormat::C422,
            ChromaArg::C444 => ChromaFormat::C444,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum KernelArg {
    Auto,
    Scalar,
    Vectorized,
}

impl From<KernelArg> for KernelPath {
    fn from(arg: KernelArg) -> KernelPath {
        match arg {
            KernelArg::Auto => KernelPath::Auto,
            KernelArg::Scalar => KernelPath::Scalar,
            KernelArg::Vectorized => KernelPath::Vectorized,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Features,
    Siti,
    Both,
}

impl From<ModeArg> for AnalysisMode {
    fn from(arg: ModeArg) -> AnalysisMode {
        match arg {
            ModeArg::Features => AnalysisMode::Features,
            ModeArg::Siti => AnalysisMode::Siti,
            ModeArg::Both => AnalysisMode::Both,
        }
    }
}

fn parse_block_size(s: &str) -> Result<BlockSizeChoice, String> {
    if s == "auto" {
        return Ok(BlockSizeChoice::Auto);
    }
    match s.parse::<usize>() {
        Ok(n) if SELECTABLE_BLOCK_SIZES.contains(&n) => Ok(BlockSizeChoice::Fixed(n)),
        _ => Err("expected auto, 8, 16, or 32".into()),
    }
}

fn parse_threads(s: &str) -> Result<ThreadChoice, String> {
    if s == "auto" {
        return Ok(ThreadChoice::Auto);
    }
    match s.parse::<usize>() {
        Ok(n) if (1..=MAX_THREADS).contains(&n) => Ok(ThreadChoice::Fixed(n)),
        _ => Err(format!("expected auto or a count in 1..={MAX_THREADS}")),
    }
}

fn parse_bit_depth(s: &str) -> Result<u8, String> {
    match s.parse::<u8>() {
        Ok(8) => Ok(8),
        Ok(10) => Ok(10),
        _ => Err("expected 8 or 10".into()),
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
    #[error("writing output: {0}")]
    Output(io::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            _ => 2,
        }
    }
}

fn infer_format(path: &Path) -> Result<Format, CliError> {
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .map(str::to_ascii_lowercase);
    match ext.as_deref() {
        Some("y4m") => Ok(Format::Y4m),
        Some("yuv") | Some("raw") => Ok(Format::Yuv),
        _ => Err(CliError::Usage(format!(
            "cannot infer the container of {}; pass --format",
            path.display()
        ))),
    }
}

fn open_source(args: &InputArgs) -> Result<Box<dyn FrameSource>, CliError> {
    if args.input == "-" {
        if args.format == Some(Format::Yuv) {
            return Err(CliError::Usage(
                "raw YUV cannot be read from stdin; pass a file".into(),
            ));
        }
        let reader = Y4mReader::new(BufReader::new(io::stdin().lock()))?;
        return Ok(Box::new(reader));
    }

    let path = Path::new(&args.input);
    let format = match args.format {
        Some(f) => f,
        None => infer_format(path)?,
    };
    match format {
        Format::Y4m => {
            if args.width.is_some() || args.height.is_some() || args.bit_depth.is_some() {
                log::warn!("geometry flags are ignored for Y4M input; the header decides");
            }
            let file = File::open(path).map_err(|e| {
                if e.kind() == io::ErrorKind::NotFound {
                    IngestError::FileNotFound(path.to_path_buf())
                } else {
                    IngestError::Io(e)
                }
            })?;
            Ok(Box::new(Y4mReader::new(BufReader::new(file))?))
        }
        Format::Yuv => {
            let mut missing = Vec::new();
            if args.width.is_none() {
                missing.push("--width");
            }
            if args.height.is_none() {
                missing.push("--height");
            }
            if args.bit_depth.is_none() {
                missing.push("--bit-depth");
            }
            if args.chroma.is_none() {
                missing.push("--chroma");
            }
            if !missing.is_empty() {
                return Err(CliError::Usage(format!(
                    "raw input needs {}",
                    missing.join(", ")
                )));
            }
            let reader = open_raw_yuv(
                path,
                args.width.unwrap(),
                args.height.unwrap(),
                args.bit_depth.unwrap(),
                args.chroma.unwrap().into(),
            )?;
            Ok(Box::new(reader))
        }
    }
}

fn threads_or_env(opts: &AnalysisOpts) -> Result<ThreadChoice, CliError> {
    if let Some(choice) = opts.threads {
        return Ok(choice);
    }
    match std::env::var("VCX_THREADS") {
        Ok(value) => parse_threads(&value)
            .map_err(|e| CliError::Usage(format!("VCX_THREADS={value}: {e}"))),
        Err(_) => Ok(ThreadChoice::Auto),
    }
}

fn build_config(opts: &AnalysisOpts, mode: AnalysisMode) -> Result<AnalyzerConfig, CliError> {
    Ok(AnalyzerConfig {
        block_size: opts.block_size,
        threads: threads_or_env(opts)?,
        kernel: opts.kernel.into(),
        low_pass: opts.low_pass,
        chroma: !opts.no_chroma,
        mode,
    })
}

fn write_report(
    output: Option<&Path>,
    write: impl FnOnce(&mut dyn Write) -> io::Result<u64>,
) -> Result<(), CliError> {
    match output {
        Some(path) => {
            let file = File::create(path).map_err(CliError::Output)?;
            let mut out = BufWriter::new(file);
            write(&mut out).map_err(CliError::Output)?;
            out.flush().map_err(CliError::Output)?;
        }
        None => {
            let stdout = io::stdout();
            let mut out = BufWriter::new(stdout.lock());
            write(&mut out).map_err(CliError::Output)?;
            out.flush().map_err(CliError::Output)?;
        }
    }
    Ok(())
}

fn timing_line(report: &AnalysisReport) -> String {
    format!(
        "frames={} seconds={:.3} fps={:.2}",
        report.frames, report.wall_seconds, report.fps
    )
}

fn run_analyze(args: AnalyzeArgs) -> Result<(), CliError> {
    let config = build_config(&args.opts, AnalysisMode::Features)?;
    let mut source = open_source(&args.input)?;
    let report = analyze_stream(source.as_mut(), &config)?;
    write_report(args.output.as_deref(), |out| {
        csv::write_features_csv(out, &report.features)
    })?;
    eprintln!("{}", timing_line(&report));
    if let Some(summary) = &report.feature_summary {
        for (name, agg) in [
            ("E_Y", summary.e_y),
            ("h", summary.h),
            ("L_Y", summary.l_y),
            ("E_U", summary.e_u),
            ("L_U", summary.l_u),
            ("E_V", summary.e_v),
            ("L_V", summary.l_v),
        ] {
            eprintln!("{name} mean={:.6} max={:.6}", agg.mean, agg.max);
        }
    }
    Ok(())
}

fn run_siti(args: SitiArgs) -> Result<(), CliError> {
    let config = AnalyzerConfig {
        mode: AnalysisMode::Siti,
        ..AnalyzerConfig::new()
    };
    let mut source = open_source(&args.input)?;
    let report = analyze_stream(source.as_mut(), &config)?;
    let summary = report
        .siti_summary
        .expect("SI/TI mode always produces a summary");
    write_report(args.output.as_deref(), |out| {
        csv::write_siti_csv(out, &report.siti, &summary)
    })?;
    eprintln!("{}", timing_line(&report));
    eprintln!("SI={:.6} TI={:.6}", summary.si, summary.ti);
    Ok(())
}

fn run_bench(args: BenchArgs) -> Result<(), CliError> {
    if args.output.is_some() {
        log::warn!("bench ignores -o; it never writes results");
    }
    let config = build_config(&args.opts, args.mode.into())?;
    let mut source = open_source(&args.input)?;
    let report = analyze_stream(source.as_mut(), &config)?;
    println!("{}", timing_line(&report));
    Ok(())
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();

    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            // Help and version go to stdout, diagnostics to stderr.
            let _ = err.print();
            std::process::exit(code);
        }
    };

    let result = match cli.command {
        Command::Analyze(args) => run_analyze(args),
        Command::Siti(args) => run_siti(args),
        Command::Bench(args) => run_bench(args),
    };
    if let Err(err) = result {
        eprintln!("vcx: {err}");
        std::process::exit(err.exit_code());
    }
}
