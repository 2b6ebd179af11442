//! Visual outputs: grey-tone renderings of label maps, Sobel edge maps,
//! and the binary median smoothing applied before segmentation.

use crate::labeling::LabelMap;
use crate::raster::GrayImage;
use crate::threshold::{BinaryImage, BLACK, WHITE};

/// Per-pixel gradient magnitude in [0, 255].
pub type EdgeImage = GrayImage;

/// Renders a label map as a grey-tone image: background is white (255)
/// and component k gets tone `floor(255 * k / (n + 1))`, so every
/// component tone is distinct and darker than the background whenever
/// n <= 254. For larger n labels wrap through `k % 254 + 1` before
/// scaling; the returned flag reports that tone collisions occurred.
pub fn render_labels(labels: &LabelMap) -> (GrayImage, bool) {
    let n = labels.component_count() as u64;
    let collision = n > 254;
    let data = labels
        .labels()
        .iter()
        .map(|&k| {
            if k == 0 {
                255u8
            } else {
                let k = if collision { k as u64 % 254 + 1 } else { k as u64 };
                (255 * k / (n + 1)) as u8
            }
        })
        .collect();
    (GrayImage::new(labels.width(), labels.height(), data), collision)
}

/// Sobel gradient magnitude, `round(sqrt(gx^2 + gy^2))` clamped to 255.
/// Borders are handled by edge replication.
pub fn sobel_edges(img: &GrayImage) -> EdgeImage {
    let w = img.width() as i64;
    let h = img.height() as i64;
    let sample = |x: i64, y: i64| -> i64 {
        let x = x.clamp(0, w - 1) as u32;
        let y = y.clamp(0, h - 1) as u32;
        img.get(x, y) as i64
    };
    GrayImage::from_fn(img.width(), img.height(), |x, y| {
        let (x, y) = (x as i64, y as i64);
        let gx = -sample(x - 1, y - 1) + sample(x + 1, y - 1)
            - 2 * sample(x - 1, y) + 2 * sample(x + 1, y)
            - sample(x - 1, y + 1) + sample(x + 1, y + 1);
        let gy = -sample(x - 1, y - 1) - 2 * sample(x, y - 1) - sample(x + 1, y - 1)
            + sample(x - 1, y + 1) + 2 * sample(x, y + 1) + sample(x + 1, y + 1);
        let mag = ((gx * gx + gy * gy) as f64).sqrt().round();
        mag.min(255.0) as u8
    })
}

/// 3x3 binary median filter: each pixel becomes the majority value of its
/// edge-replicated 3x3 neighborhood. Removes salt-and-pepper specks before
/// labeling.
pub fn median_smooth(img: &BinaryImage) -> BinaryImage {
    let w = img.width() as i64;
    let h = img.height() as i64;
    let data: Vec<u8> = (0..h)
        .flat_map(|y| (0..w).map(move |x| (x, y)))
        .map(|(x, y)| {
            let mut black = 0;
            for dy in -1..=1i64 {
                for dx in -1..=1i64 {
                    let nx = (x + dx).clamp(0, w - 1) as u32;
                    let ny = (y + dy).clamp(0, h - 1) as u32;
                    if img.is_black(nx, ny) {
                        black += 1;
                    }
                }
            }
            if black >= 5 { BLACK } else { WHITE }
        })
        .collect();
    BinaryImage::new(img.width(), img.height(), data)
}
