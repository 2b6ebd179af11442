use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use greyseg::labeling::{label_components, measure_areas, Connectivity};
use greyseg::pipeline::{areas_csv, read_image, run_batch, OutputKind, PipelineConfig};
use greyseg::raster::global_stats;
use greyseg::threshold::{BinaryImage, ThresholdConfig};
use greyseg::Error;

/// Segments grey-tone images into labeled super-pixels by thresholding
/// and connected-component labeling, and measures their areas.
#[derive(Parser)]
#[command(name = "greyseg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline: grey-tone, threshold, label, measure, render.
    Segment(SegmentArgs),
    /// Select a clip-level and write the binary image only.
    Threshold(ThresholdArgs),
    /// Label an already-binary input and write its area table.
    Areas(AreasArgs),
    /// Report whole-image brightness statistics.
    Stats(StatsArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Manual,
    Shannon,
    Tsallis,
}

#[derive(Clone, Copy, ValueEnum)]
enum EmitArg {
    Binary,
    Labels,
    Edges,
    Areas,
    Summary,
}

impl From<EmitArg> for OutputKind {
    fn from(e: EmitArg) -> Self {
        match e {
            EmitArg::Binary => OutputKind::Binary,
            EmitArg::Labels => OutputKind::Labels,
            EmitArg::Edges => OutputKind::Edges,
            EmitArg::Areas => OutputKind::AreasCsv,
            EmitArg::Summary => OutputKind::SummaryJson,
        }
    }
}

#[derive(Args)]
struct ThresholdOpts {
    /// Threshold selection mode.
    #[arg(long, value_enum, default_value = "shannon")]
    mode: ModeArg,
    /// Manual clip-level; implies --mode manual.
    #[arg(long)]
    tau: Option<u8>,
    /// Entropic index for Tsallis mode (q > 0, q != 1).
    #[arg(long, default_value_t = 2.0)]
    q: f64,
}

impl ThresholdOpts {
    fn to_config(&self) -> ThresholdConfig {
        match (self.tau, self.mode) {
            (Some(tau), _) => ThresholdConfig::manual(tau),
            (None, ModeArg::Manual) => ThresholdConfig::manual(128),
            (None, ModeArg::Shannon) => ThresholdConfig::shannon(),
            (None, ModeArg::Tsallis) => ThresholdConfig::tsallis(self.q),
        }
    }
}

#[derive(Args)]
struct SegmentArgs {
    /// Input image files (PNG or PNM).
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    #[command(flatten)]
    threshold: ThresholdOpts,
    /// Invert tones after thresholding (labeling works on black pixels).
    #[arg(long)]
    invert: bool,
    /// Number of 3x3 median smoothing passes.
    #[arg(long, default_value_t = 0)]
    smooth: u32,
    /// Pixel connectivity.
    #[arg(long, value_parser = parse_connectivity, default_value = "4")]
    connectivity: Connectivity,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Artifacts to write (repeatable).
    #[arg(long = "emit", value_enum, default_values = ["areas", "summary"])]
    emit: Vec<EmitArg>,
    /// Write images as PGM (P5) instead of PNG.
    #[arg(long)]
    pgm: bool,
}

#[derive(Args)]
struct ThresholdArgs {
    input: PathBuf,
    #[command(flatten)]
    threshold: ThresholdOpts,
    #[arg(long)]
    invert: bool,
    #[arg(long, default_value = ".")]
    out: PathBuf,
    #[arg(long)]
    pgm: bool,
}

#[derive(Args)]
struct AreasArgs {
    input: PathBuf,
    #[arg(long, value_parser = parse_connectivity, default_value = "4")]
    connectivity: Connectivity,
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Args)]
struct StatsArgs {
    input: PathBuf,
}

fn parse_connectivity(s: &str) -> Result<Connectivity, String> {
    match s {
        "4" => Ok(Connectivity::Four),
        "8" => Ok(Connectivity::Eight),
        _ => Err("connectivity must be 4 or 8".to_string()),
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Segment(args) => {
            let template = PipelineConfig {
                input: PathBuf::new(),
                threshold: args.threshold.to_config(),
                invert: args.invert,
                smooth_passes: args.smooth,
                connectivity: args.connectivity,
                outputs: args.emit.iter().map(|&e| e.into()).collect(),
                out_dir: args.out,
                pgm: args.pgm,
            };
            for result in run_batch(&args.inputs, &template) {
                let summary = result?;
                println!(
                    "{}: tau={} components={} ({} ms)",
                    summary.input, summary.tau, summary.n_components, summary.ms
                );
            }
            Ok(())
        }
        Command::Threshold(args) => {
            let config = PipelineConfig {
                input: args.input,
                threshold: args.threshold.to_config(),
                invert: args.invert,
                smooth_passes: 0,
                connectivity: Connectivity::Four,
                outputs: vec![OutputKind::Binary],
                out_dir: args.out,
                pgm: args.pgm,
            };
            let summary = greyseg::run_pipeline(&config)?;
            println!("{}: tau={} mode={}", summary.input, summary.tau, summary.mode);
            Ok(())
        }
        Command::Areas(args) => {
            let gray = read_image(&args.input)?.into_gray();
            if !gray.pixels().iter().all(|&v| v == 0 || v == 255) {
                return Err(Error::Decode {
                    path: args.input.clone(),
                    reason: "input is not binary (values other than 0/255 present)".into(),
                });
            }
            let binary =
                BinaryImage::new(gray.width(), gray.height(), gray.pixels().to_vec());
            let labels = label_components(&binary, args.connectivity);
            let table = measure_areas(&labels);
            let stem = args
                .input
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "output".into());
            let path = args.out.join(format!("{stem}_areas.csv"));
            std::fs::write(&path, areas_csv(&table)).map_err(|e| Error::Output {
                path: path.clone(),
                source: e,
            })?;
            println!("{}: components={}", args.input.display(), table.n_components());
            Ok(())
        }
        Command::Stats(args) => {
            let gray = read_image(&args.input)?.into_gray();
            let stats = global_stats(&gray);
            println!(
                "{}",
                serde_json::json!({
                    "input": args.input.to_string_lossy(),
                    "mean_brightness": stats.mean,
                    "std_brightness": stats.std_dev,
                })
            );
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
