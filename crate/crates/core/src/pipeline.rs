//! Pipeline orchestration: image file I/O, the end-to-end segmentation
//! sequence, and tabular/JSON outputs.
//!
//! A run executes grey-tone conversion, clip-level selection,
//! binarization, optional inversion and median smoothing, component
//! labeling, area measurement, and rendering, writing exactly the
//! requested outputs.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::labeling::{label_components, measure_areas, AreaTable, Connectivity};
use crate::pnm::{self, PnmImage};
use crate::raster::{global_stats, to_gray, GrayImage, RgbImage};
use crate::render::{median_smooth, render_labels, sobel_edges};
use crate::threshold::{
    auto_threshold_shannon, auto_threshold_tsallis, binarize, histogram, invert, ThresholdConfig,
    ThresholdMode,
};

/// Which artifacts a run writes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum OutputKind {
    /// Thresholded (and optionally inverted/smoothed) binary map.
    Binary,
    /// Grey-tone super-pixel rendering of the label map.
    Labels,
    /// Sobel edge map of the label rendering.
    Edges,
    /// Per-label area table as CSV.
    AreasCsv,
    /// Run summary as JSON.
    SummaryJson,
}

/// Settings for one pipeline run over a single input file.
#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub input: PathBuf,
    pub threshold: ThresholdConfig,
    pub invert: bool,
    pub smooth_passes: u32,
    pub connectivity: Connectivity,
    pub outputs: Vec<OutputKind>,
    pub out_dir: PathBuf,
    /// Write images as PGM (P5) instead of PNG.
    pub pgm: bool,
}

impl PipelineConfig {
    fn validate(&self) -> Result<(), Error> {
        if self.outputs.is_empty() {
            return Err(Error::Config("at least one output must be selected".into()));
        }
        Ok(())
    }
}

/// Per-run report; `ms` is wall-clock time and is excluded from
/// determinism guarantees. Field order is the JSON key order.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RunSummary {
    pub input: String,
    pub tau: u8,
    pub mode: String,
    pub n_components: u32,
    pub area_min: Option<u64>,
    pub area_max: Option<u64>,
    pub area_mean: Option<f64>,
    pub mean_brightness: f64,
    pub std_brightness: f64,
    pub tone_collision: bool,
    pub ms: u64,
}

/// An input decoded as either grey-tone or RGB.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LoadedImage {
    Gray(GrayImage),
    Rgb(RgbImage),
}

impl LoadedImage {
    pub fn into_gray(self) -> GrayImage {
        match self {
            LoadedImage::Gray(g) => g,
            LoadedImage::Rgb(rgb) => to_gray(&rgb),
        }
    }
}

/// Decodes a PNG or PNM (P2/P3/P5/P6) file. Greyscale files load directly
/// as grey images; an alpha channel is ignored; 16-bit inputs are rejected.
pub fn read_image(path: &Path) -> Result<LoadedImage, Error> {
    let bytes = fs::read(path).map_err(|e| Error::Decode {
        path: path.to_path_buf(),
        reason: e.to_string(),
    })?;
    if pnm::is_pnm(&bytes) {
        return Ok(match pnm::decode(&bytes, path)? {
            PnmImage::Gray(g) => LoadedImage::Gray(g),
            PnmImage::Rgb(r) => LoadedImage::Rgb(r),
        });
    }
    let decode_err = |reason: String| Error::Decode { path: path.to_path_buf(), reason };
    let dynimg = image::load_from_memory_with_format(&bytes, image::ImageFormat::Png)
        .map_err(|e| decode_err(e.to_string()))?;
    match dynimg {
        image::DynamicImage::ImageLuma8(img) => Ok(LoadedImage::Gray(GrayImage::new(
            img.width(),
            img.height(),
            img.into_raw(),
        ))),
        image::DynamicImage::ImageLumaA8(img) => {
            let (w, h) = (img.width(), img.height());
            let data = img.into_raw().chunks_exact(2).map(|c| c[0]).collect();
            Ok(LoadedImage::Gray(GrayImage::new(w, h, data)))
        }
        image::DynamicImage::ImageRgb8(img) => {
            let (w, h) = (img.width(), img.height());
            let data = img.into_raw().chunks_exact(3).map(|c| [c[0], c[1], c[2]]).collect();
            Ok(LoadedImage::Rgb(RgbImage::new(w, h, data)))
        }
        image::DynamicImage::ImageRgba8(img) => {
            let (w, h) = (img.width(), img.height());
            let data = img.into_raw().chunks_exact(4).map(|c| [c[0], c[1], c[2]]).collect();
            Ok(LoadedImage::Rgb(RgbImage::new(w, h, data)))
        }
        _ => Err(decode_err("only 8-bit images are supported".into())),
    }
}

/// Serializes an area table as CSV: header `label,area`, rows sorted by
/// label ascending, LF endings.
pub fn areas_csv(table: &AreaTable) -> String {
    let mut out = String::from("label,area\n");
    for &(label, area) in &table.entries {
        out.push_str(&format!("{label},{area}\n"));
    }
    out
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), Error> {
    fs::write(path, bytes).map_err(|e| Error::Output {
        path: path.to_path_buf(),
        source: e,
    })
}

fn write_gray_image(path: &Path, img: &GrayImage, pgm: bool) -> Result<(), Error> {
    if pgm {
        return write_file(path, &pnm::encode_pgm(img));
    }
    let buf: image::GrayImage =
        image::ImageBuffer::from_raw(img.width(), img.height(), img.pixels().to_vec())
            .expect("buffer length matches dimensions");
    buf.save_with_format(path, image::ImageFormat::Png)
        .map_err(|e| Error::Output {
            path: path.to_path_buf(),
            source: std::io::Error::other(e.to_string()),
        })
}

fn output_stem(input: &Path) -> String {
    input
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "output".to_string())
}

/// Chooses τ according to the configured mode.
pub fn select_tau(cfg: &ThresholdConfig, hist: &crate::threshold::Histogram) -> Result<u8, Error> {
    match cfg.mode {
        ThresholdMode::Manual => Ok(cfg.tau),
        ThresholdMode::Shannon => auto_threshold_shannon(hist),
        ThresholdMode::Tsallis => auto_threshold_tsallis(hist, cfg.q),
    }
}

fn mode_name(mode: ThresholdMode) -> &'static str {
    match mode {
        ThresholdMode::Manual => "manual",
        ThresholdMode::Shannon => "shannon",
        ThresholdMode::Tsallis => "tsallis",
    }
}

/// Runs the full segmentation pipeline on one input file and writes the
/// selected outputs into the output directory, named after the input stem.
pub fn run_pipeline(config: &PipelineConfig) -> Result<RunSummary, Error> {
    config.validate()?;
    let start = Instant::now();

    let gray = read_image(&config.input)?.into_gray();
    let stats = global_stats(&gray);
    let hist = histogram(&gray);
    let tau = select_tau(&config.threshold, &hist)?;

    let mut binary = binarize(&gray, tau as i64)?;
    if config.invert {
        binary = invert(&binary);
    }
    for _ in 0..config.smooth_passes {
        binary = median_smooth(&binary);
    }

    let labels = label_components(&binary, config.connectivity);
    let areas = measure_areas(&labels);
    let (label_image, tone_collision) = render_labels(&labels);

    let stem = output_stem(&config.input);
    let ext = if config.pgm { "pgm" } else { "png" };
    let out = |suffix: &str, e: &str| config.out_dir.join(format!("{stem}_{suffix}.{e}"));

    let mut wants = config.outputs.clone();
    wants.sort_unstable();
    wants.dedup();
    let mut summary_path = None;
    for kind in &wants {
        match kind {
            OutputKind::Binary => write_gray_image(&out("binary", ext), &binary.to_gray(), config.pgm)?,
            OutputKind::Labels => write_gray_image(&out("labels", ext), &label_image, config.pgm)?,
            OutputKind::Edges => {
                write_gray_image(&out("edges", ext), &sobel_edges(&label_image), config.pgm)?
            }
            OutputKind::AreasCsv => write_file(&out("areas", "csv"), areas_csv(&areas).as_bytes())?,
            OutputKind::SummaryJson => summary_path = Some(out("summary", "json")),
        }
    }

    let summary = RunSummary {
        input: config.input.to_string_lossy().into_owned(),
        tau,
        mode: mode_name(config.threshold.mode).to_string(),
        n_components: labels.component_count(),
        area_min: areas.min_area(),
        area_max: areas.max_area(),
        area_mean: areas.mean_area(),
        mean_brightness: stats.mean,
        std_brightness: stats.std_dev,
        tone_collision,
        ms: start.elapsed().as_millis() as u64,
    };

    if let Some(path) = summary_path {
        let json = serde_json::to_string_pretty(&summary).expect("summary serializes");
        write_file(&path, json.as_bytes())?;
    }

    Ok(summary)
}

/// Processes several inputs concurrently; each file's outputs are
/// identical to an independent single-file run.
pub fn run_batch(inputs: &[PathBuf], template: &PipelineConfig) -> Vec<Result<RunSummary, Error>> {
    inputs
        .par_iter()
        .map(|input| {
            let config = PipelineConfig { input: input.clone(), ..template.clone() };
            run_pipeline(&config)
        })
        .collect()
}
