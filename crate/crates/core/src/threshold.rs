//! Histogram computation, clip-level selection, binarization, and tone
//! inversion.
//!
//! The clip-level τ turns a grey-tone map into a binary image: brightness
//! `<= τ` becomes black (0, foreground), `> τ` becomes white (255). τ can
//! be set manually or chosen automatically by maximizing an entropy
//! criterion over the grey-tone histogram, either the Shannon (Kapur)
//! sum-of-class-entropies or the pseudo-additive Tsallis form with
//! entropic index q.

use crate::error::Error;
use crate::raster::GrayImage;

pub const BLACK: u8 = 0;
pub const WHITE: u8 = 255;

/// Grey-tone histogram: `counts[v]` is the number of pixels of value v.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    pub counts: [u64; 256],
    pub total: u64,
}

/// How the clip-level is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ThresholdMode {
    Manual,
    Shannon,
    Tsallis,
}

/// Threshold selection settings for a pipeline run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdConfig {
    pub mode: ThresholdMode,
    /// Clip-level for manual mode.
    pub tau: u8,
    /// Entropic index for Tsallis mode; must be > 0 and != 1.
    pub q: f64,
}

impl ThresholdConfig {
    pub fn manual(tau: u8) -> Self {
        Self { mode: ThresholdMode::Manual, tau, q: 1.0 }
    }

    pub fn shannon() -> Self {
        Self { mode: ThresholdMode::Shannon, tau: 0, q: 1.0 }
    }

    pub fn tsallis(q: f64) -> Self {
        Self { mode: ThresholdMode::Tsallis, tau: 0, q }
    }
}

/// Binary map T with every pixel either 0 (black) or 255 (white).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryImage {
    width: u32,
    height: u32,
    data: Vec<u8>,
}

impl BinaryImage {
    /// Panics unless every value is exactly 0 or 255 and the length matches.
    pub fn new(width: u32, height: u32, data: Vec<u8>) -> Self {
        assert!(width >= 1 && height >= 1, "image dimensions must be >= 1");
        assert_eq!(data.len(), width as usize * height as usize);
        assert!(
            data.iter().all(|&v| v == BLACK || v == WHITE),
            "binary image values must be 0 or 255"
        );
        Self { width, height, data }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.data
    }

    pub fn get(&self, x: u32, y: u32) -> u8 {
        self.data[y as usize * self.width as usize + x as usize]
    }

    pub fn is_black(&self, x: u32, y: u32) -> bool {
        self.get(x, y) == BLACK
    }

    pub fn black_count(&self) -> u64 {
        self.data.iter().filter(|&&v| v == BLACK).count() as u64
    }

    pub fn to_gray(&self) -> GrayImage {
        GrayImage::new(self.width, self.height, self.data.clone())
    }
}

pub fn histogram(img: &GrayImage) -> Histogram {
    let mut counts = [0u64; 256];
    for &v in img.pixels() {
        counts[v as usize] += 1;
    }
    Histogram { counts, total: img.pixels().len() as u64 }
}

/// Binarizes at clip-level τ: brightness `<= τ` maps to black, `> τ` to
/// white. The boundary value τ itself is black.
pub fn binarize(img: &GrayImage, tau: i64) -> Result<BinaryImage, Error> {
    if !(0..=255).contains(&tau) {
        return Err(Error::TauOutOfRange(tau));
    }
    let tau = tau as u8;
    let data = img
        .pixels()
        .iter()
        .map(|&v| if v <= tau { BLACK } else { WHITE })
        .collect();
    Ok(BinaryImage::new(img.width(), img.height(), data))
}

/// Swaps black and white. The labeling stage works on black pixels, so
/// images whose domains of interest come out white must be inverted first.
pub fn invert(img: &BinaryImage) -> BinaryImage {
    let data = img.pixels().iter().map(|&v| WHITE - v).collect();
    BinaryImage::new(img.width(), img.height(), data)
}

fn check_splittable(hist: &Histogram) -> Result<(), Error> {
    let nonzero = hist.counts.iter().filter(|&&c| c > 0).count();
    if nonzero < 2 {
        return Err(Error::DegenerateHistogram);
    }
    Ok(())
}

/// Shannon (Kapur) entropy threshold: the τ maximizing H₀(τ) + H₁(τ),
/// the sum of the entropies of the below-τ and above-τ classes of the
/// normalized histogram. Exhaustive scan over all splits; ties go to the
/// smallest τ. Splits leaving either class empty are skipped.
pub fn auto_threshold_shannon(hist: &Histogram) -> Result<u8, Error> {
    check_splittable(hist)?;
    let p: Vec<f64> = hist.counts.iter().map(|&c| c as f64 / hist.total as f64).collect();

    let mut best_tau = None;
    let mut best = f64::NEG_INFINITY;
    for tau in 0..=254usize {
        // emptiness decided on exact counts; floating P0 can round to
        // just below 1 when the upper class has no pixels at all
        let c0: u64 = hist.counts[..=tau].iter().sum();
        if c0 == 0 || c0 == hist.total {
            continue;
        }
        let p0: f64 = p[..=tau].iter().sum();
        let p1 = 1.0 - p0;
        let mut h = 0.0;
        for &pv in &p[..=tau] {
            if pv > 0.0 {
                let r = pv / p0;
                h -= r * r.ln();
            }
        }
        for &pv in &p[tau + 1..] {
            if pv > 0.0 {
                let r = pv / p1;
                h -= r * r.ln();
            }
        }
        if h > best {
            best = h;
            best_tau = Some(tau as u8);
        }
    }
    best_tau.ok_or(Error::DegenerateHistogram)
}

/// Tsallis entropy threshold with entropic index q: maximizes the
/// pseudo-additive objective S_q^A + S_q^B + (1-q)·S_q^A·S_q^B, where
/// S_q = (1 - Σ r^q) / (q - 1) over each class's normalized
/// probabilities r. Recovers the Shannon criterion as q → 1.
pub fn auto_threshold_tsallis(hist: &Histogram, q: f64) -> Result<u8, Error> {
    if q <= 0.0 || q == 1.0 {
        return Err(Error::InvalidQ(q));
    }
    check_splittable(hist)?;
    let p: Vec<f64> = hist.counts.iter().map(|&c| c as f64 / hist.total as f64).collect();

    let mut best_tau = None;
    let mut best = f64::NEG_INFINITY;
    for tau in 0..=254usize {
        let c0: u64 = hist.counts[..=tau].iter().sum();
        if c0 == 0 || c0 == hist.total {
            continue;
        }
        let p0: f64 = p[..=tau].iter().sum();
        let p1 = 1.0 - p0;
        let class_entropy = |slice: &[f64], mass: f64| {
            let s: f64 = slice
                .iter()
                .filter(|&&pv| pv > 0.0)
                .map(|&pv| (pv / mass).powf(q))
                .sum();
            (1.0 - s) / (q - 1.0)
        };
        let sa = class_entropy(&p[..=tau], p0);
        let sb = class_entropy(&p[tau + 1..], p1);
        let obj = sa + sb + (1.0 - q) * sa * sb;
        if obj > best {
            best = obj;
            best_tau = Some(tau as u8);
        }
    }
    best_tau.ok_or(Error::DegenerateHistogram)
}
