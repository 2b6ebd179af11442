//! Core image value types, grey-tone conversion, and whole-image statistics.
//!
//! Pixels are addressed by (column, row) starting at the upper-left corner;
//! storage is row-major. All external coordinates are 0-based.

/// Three-channel image; each channel is an 8-bit brightness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RgbImage {
    width: u32,
    height: u32,
    data: Vec<[u8; 3]>,
}

impl RgbImage {
    /// Builds an image from row-major pixel data.
    ///
    /// Panics when `data.len() != width * height` or a dimension is zero.
    pub fn new(width: u32, height: u32, data: Vec<[u8; 3]>) -> Self {
        assert!(width >= 1 && height >= 1, "image dimensions must be >= 1");
        assert_eq!(
            data.len(),
            width as usize * height as usize,
            "pixel data length must equal width * height"
        );
        Self { width, height, data }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn pixels(&self) -> &[[u8; 3]] {
        &self.data
    }

    pub fn get(&self, x: u32, y: u32) -> [u8; 3] {
        self.data[y as usize * self.width as usize + x as usize]
    }
}

/// Single-channel brightness map with values in [0, 255].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: u32,
    height: u32,
    data: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: u32, height: u32, data: Vec<u8>) -> Self {
        assert!(width >= 1 && height >= 1, "image dimensions must be >= 1");
        assert_eq!(
            data.len(),
            width as usize * height as usize,
            "pixel data length must equal width * height"
        );
        Self { width, height, data }
    }

    pub fn from_fn(width: u32, height: u32, f: impl Fn(u32, u32) -> u8) -> Self {
        let mut data = Vec::with_capacity(width as usize * height as usize);
        for y in 0..height {
            for x in 0..width {
                data.push(f(x, y));
            }
        }
        Self::new(width, height, data)
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
}

/// Average brightness and population standard deviation of a grey-tone map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GlobalStats {
    pub mean: f64,
    pub std_dev: f64,
}

/// Reduces an RGB image to its grey-tone brightness map: each output pixel
/// is the unweighted channel mean, truncated to an integer
/// (`(r + g + b) / 3` in integer arithmetic).
pub fn to_gray(img: &RgbImage) -> GrayImage {
    let data = img
        .pixels()
        .iter()
        .map(|&[r, g, b]| ((r as u16 + g as u16 + b as u16) / 3) as u8)
        .collect();
    GrayImage::new(img.width(), img.height(), data)
}

/// Mean brightness and population standard deviation (divisor N, not N-1).
///
/// Sums are accumulated with Neumaier compensation so the result tracks an
/// extended-precision reference to better than 1e-9 relative error even on
/// large images.
pub fn global_stats(img: &GrayImage) -> GlobalStats {
    let n = img.pixels().len() as f64;
    let mean = compensated_sum(img.pixels().iter().map(|&v| v as f64)) / n;
    let var = compensated_sum(img.pixels().iter().map(|&v| {
        let d = v as f64 - mean;
        d * d
    })) / n;
    GlobalStats {
        mean,
        std_dev: var.sqrt(),
    }
}

fn compensated_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}
