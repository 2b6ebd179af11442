//! Segmentation of grey-tone images into labeled connected domains
//! ("super-pixels") via thresholding and two-pass connected-component
//! labeling, plus per-domain area measurement and visual renderings.
//!
//! The pipeline: an RGB image is reduced to a grey-tone brightness map,
//! binarized at a clip-level τ (manual, Shannon-entropy, or
//! Tsallis-entropy), optionally inverted and median-smoothed, then black
//! pixels are grouped into 4-connected components. Each component's area
//! is simply its pixel count.

pub mod error;
pub mod labeling;
pub mod pipeline;
pub mod pnm;
pub mod raster;
pub mod render;
pub mod threshold;

pub use error::Error;
pub use labeling::{label_components, measure_areas, AreaTable, Connectivity, LabelMap};
pub use pipeline::{run_pipeline, OutputKind, PipelineConfig, RunSummary};
pub use raster::{global_stats, to_gray, GlobalStats, GrayImage, RgbImage};
pub use render::{median_smooth, render_labels, sobel_edges, EdgeImage};
pub use threshold::{
    auto_threshold_shannon, auto_threshold_tsallis, binarize, histogram, invert, BinaryImage,
    Histogram, ThresholdConfig, ThresholdMode,
};
