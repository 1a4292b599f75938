mod bench;
mod grid;
mod io;

use std::io::Write;
use std::process::ExitCode;

use anyhow::{Context, Result};
use binchange::eval::{write_csv, ExperimentGrid};
use binchange::synth::DEFAULT_SEGMENT;
use binchange::{Detector, DetectorConfig, WorkloadKind, WorkloadSpec};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Streaming change-point detection for binary sequences.
#[derive(Debug, Parser)]
#[command(name = "binchange", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a synthetic bit stream and its ground-truth change positions.
    Synth(SynthArgs),
    /// Run the online detector over a bit stream and print change events.
    Detect(DetectArgs),
    /// Run detection experiments over a parameter grid and print metrics.
    Experiment(ExperimentArgs),
    /// Measure push throughput and query latency.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Ind,
    Step,
    Slope,
    Hill,
}

impl From<Kind> for WorkloadKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Ind => WorkloadKind::Ind,
            Kind::Step => WorkloadKind::Step,
            Kind::Slope => WorkloadKind::Slope,
            Kind::Hill => WorkloadKind::Hill,
        }
    }
}

#[derive(Debug, Args)]
struct SynthArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long)]
    length: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Segment length for step and slope workloads.
    #[arg(long, default_value_t = DEFAULT_SEGMENT)]
    segment: u64,
    /// Bit file, or '-' for stdout.
    #[arg(long, default_value = "-")]
    output: String,
    /// Ground-truth CSV. Defaults to '<output>.truth.csv' when writing to a file.
    #[arg(long)]
    truth: Option<String>,
}

#[derive(Debug, Args)]
struct DetectorArgs {
    #[arg(long, default_value_t = 6.0)]
    tau: f64,
    #[arg(long, default_value_t = 0.0)]
    eps: f64,
    #[arg(long, default_value_t = 1)]
    query_period: u64,
    /// Windows with at most this many blocks are solved exactly.
    #[arg(long, default_value_t = binchange::detector::DEFAULT_HYBRID_CUTOFF)]
    hybrid_cutoff: usize,
}

impl DetectorArgs {
    fn config(&self) -> DetectorConfig {
        DetectorConfig::new(self.tau, self.eps)
            .with_query_period(self.query_period)
            .with_hybrid_cutoff(self.hybrid_cutoff)
    }
}

#[derive(Debug, Args)]
struct DetectArgs {
    /// Bit file with one '0' or '1' per line, or '-' for stdin.
    #[arg(long, default_value = "-")]
    input: String,
    #[arg(long, default_value = "-")]
    output: String,
    #[command(flatten)]
    detector: DetectorArgs,
}

#[derive(Debug, Args)]
struct ExperimentArgs {
    /// Comma-separated workload kinds.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "step")]
    workload: Vec<Kind>,
    /// Grid of stream lengths.
    #[arg(long, default_value = "200000")]
    lengths: String,
    #[arg(long, default_value = "1")]
    seeds: String,
    #[arg(long, default_value = "6")]
    tau: String,
    #[arg(long, default_value = "0")]
    eps: String,
    #[arg(long, default_value_t = DEFAULT_SEGMENT)]
    segment: u64,
    #[arg(long, default_value_t = 1)]
    query_period: u64,
    #[arg(long, default_value = "-")]
    output: String,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Csv,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Observations pushed through the detector in the throughput run.
    #[arg(long, default_value_t = 1_000_000)]
    pushes: u64,
    #[arg(long, default_value_t = 1_000)]
    query_period: u64,
    #[arg(long, default_value_t = 6.0)]
    tau: f64,
    /// Grid of eps values for the latency runs.
    #[arg(long, default_value = "0,0.1,0.5,0.9")]
    eps: String,
    /// Grid of Hill window lengths for the latency runs.
    #[arg(long, default_value = "10000,100000,1000000")]
    lengths: String,
    #[arg(long, default_value_t = 20)]
    repeats: u32,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long, default_value = "-")]
    output: String,
}

/// Failure classes, mapped to exit codes 1 and 2.
enum Failure {
    Usage(anyhow::Error),
    Input(anyhow::Error),
}

fn usage<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure::Usage(e.into())
}

fn input<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure::Input(e.into())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Synth(args) => synth(args),
        Command::Detect(args) => detect(args),
        Command::Experiment(args) => experiment(args),
        Command::Bench(args) => run_bench(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn synth(args: SynthArgs) -> Result<(), Failure> {
    let spec = WorkloadSpec::new(args.kind.into(), args.length, args.seed).with_segment(args.segment);
    spec.validate().map_err(usage)?;
    let bits = spec.bits().map_err(usage)?;

    let mut out = io::open_output(&args.output).map_err(input)?;
    io::write_bits(bits, &mut out)
        .and_then(|_| out.flush())
        .context("writing bit stream")
        .map_err(input)?;

    if let Some(path) = args.truth.or_else(|| io::truth_path_for(&args.output)) {
        let file = io::open_output(&path).map_err(input)?;
        write_truth(&spec.true_changes(), file).context("writing truth CSV").map_err(input)?;
    }
    Ok(())
}

fn write_truth(positions: &[u64], out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["position"])?;
    for pos in positions {
        w.write_record([pos.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

fn detect(args: DetectArgs) -> Result<(), Failure> {
    let mut det = Detector::new(args.detector.config()).map_err(usage)?;
    let reader = io::open_input(&args.input).map_err(input)?;
    let out = io::open_output(&args.output).map_err(input)?;
    let mut w = csv::Writer::from_writer(out);

    let run = || -> Result<()> {
        w.write_record(["detected_at", "split_at", "score", "direction", "window_len"])?;
        w.flush()?;
        for bit in io::read_bits(reader) {
            if let Some(e) = det.observe(bit?) {
                w.write_record([
                    e.detected_at.to_string(),
                    e.split_at.to_string(),
                    e.score.to_string(),
                    e.direction.to_string(),
                    e.window_len.to_string(),
                ])?;
                // Rows are flushed as they happen so the tool works in a pipeline.
                w.flush()?;
            }
        }
        w.flush()?;
        Ok(())
    };
    run().map_err(input)
}

fn experiment(args: ExperimentArgs) -> Result<(), Failure> {
    let grid = ExperimentGrid {
        kinds: args.workload.iter().map(|&k| k.into()).collect(),
        lengths: grid::parse_u64_grid(&args.lengths).context("--lengths").map_err(usage)?,
        seeds: grid::parse_u64_grid(&args.seeds).context("--seeds").map_err(usage)?,
        taus: grid::parse_f64_grid(&args.tau).context("--tau").map_err(usage)?,
        eps: grid::parse_f64_grid(&args.eps).context("--eps").map_err(usage)?,
        segment: args.segment,
        query_period: args.query_period,
    };
    for (spec, config) in grid.cells() {
        spec.validate().map_err(usage)?;
        config.validate().map_err(usage)?;
    }
    let rows = grid.run().map_err(usage)?;
    let out = io::open_output(&args.output).map_err(input)?;
    write_csv(&rows, out).context("writing metrics CSV").map_err(input)
}

fn run_bench(args: BenchArgs) -> Result<(), Failure> {
    let opts = bench::BenchOptions {
        pushes: args.pushes,
        query_period: args.query_period,
        tau: args.tau,
        eps: grid::parse_f64_grid(&args.eps).context("--eps").map_err(usage)?,
        lengths: grid::parse_u64_grid(&args.lengths).context("--lengths").map_err(usage)?,
        repeats: args.repeats,
        seed: args.seed,
    };
    for &eps in &opts.eps {
        DetectorConfig::new(opts.tau, eps).validate().map_err(usage)?;
    }
    let rows = bench::run(&opts).map_err(usage)?;
    let mut out = io::open_output(&args.output).map_err(input)?;
    let written: Result<()> = match args.format {
        Format::Text => bench::write_text(&rows, &mut out).map_err(Into::into),
        Format::Csv => bench::write_csv(&rows, &mut out).map_err(Into::into),
    };
    written.and_then(|_| out.flush().map_err(Into::into)).map_err(input)
}
