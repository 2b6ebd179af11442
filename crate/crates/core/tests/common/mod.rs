//! Shared test fixtures and independent oracles.
// each test target uses its own subset of these helpers
#![allow(dead_code)]

use greyseg::labeling::LabelMap;
use greyseg::threshold::{BinaryImage, Histogram};
use rand::Rng;

/// Canonical form of a pixel partition: sorted pixel-index sets, sorted by
/// their smallest member. Label values drop out, only grouping remains.
pub type Partition = Vec<Vec<usize>>;

/// Breadth-first flood-fill over black pixels. Independent of the two-pass
/// labeling implementation.
pub fn flood_fill_partition(img: &BinaryImage, eight: bool) -> Partition {
    let w = img.width() as usize;
    let h = img.height() as usize;
    let mut seen = vec![false; w * h];
    let mut groups = Vec::new();
    for start in 0..w * h {
        if seen[start] || !img.is_black((start % w) as u32, (start / w) as u32) {
            continue;
        }
        let mut group = Vec::new();
        let mut queue = std::collections::VecDeque::from([start]);
        seen[start] = true;
        while let Some(idx) = queue.pop_front() {
            group.push(idx);
            let (x, y) = ((idx % w) as i64, (idx / w) as i64);
            let mut neighbors = vec![(x - 1, y), (x + 1, y), (x, y - 1), (x, y + 1)];
            if eight {
                neighbors.extend([(x - 1, y - 1), (x + 1, y - 1), (x - 1, y + 1), (x + 1, y + 1)]);
            }
            for (nx, ny) in neighbors {
                if nx < 0 || ny < 0 || nx >= w as i64 || ny >= h as i64 {
                    continue;
                }
                let nidx = ny as usize * w + nx as usize;
                if !seen[nidx] && img.is_black(nx as u32, ny as u32) {
                    seen[nidx] = true;
                    queue.push_back(nidx);
                }
            }
        }
        group.sort_unstable();
        groups.push(group);
    }
    groups.sort_by_key(|g| g[0]);
    groups
}

pub fn labelmap_partition(labels: &LabelMap) -> Partition {
    let n = labels.component_count() as usize;
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (idx, &k) in labels.labels().iter().enumerate() {
        if k != 0 {
            groups[k as usize - 1].push(idx);
        }
    }
    groups.iter_mut().for_each(|g| g.sort_unstable());
    groups.sort_by_key(|g| g[0]);
    groups
}

pub fn random_binary(rng: &mut impl Rng, width: u32, height: u32, black_prob: f64) -> BinaryImage {
    let data = (0..width as usize * height as usize)
        .map(|_| if rng.gen_bool(black_prob) { 0u8 } else { 255u8 })
        .collect();
    BinaryImage::new(width, height, data)
}

/// Exhaustive-scan Shannon (Kapur) threshold oracle: for every split
/// computes the sum of class entropies directly from definitions.
pub fn shannon_oracle(hist: &Histogram) -> Option<u8> {
    let total = hist.total as f64;
    let mut best: Option<(u8, f64)> = None;
    for tau in 0..=254usize {
        let c0: u64 = hist.counts[..=tau].iter().sum();
        if c0 == 0 || c0 == hist.total {
            continue;
        }
        let p0 = hist.counts[..=tau].iter().map(|&c| c as f64 / total).sum::<f64>();
        let p1 = 1.0 - p0;
        let mut h = 0.0f64;
        for &c in &hist.counts[..=tau] {
            if c > 0 {
                let r = (c as f64 / total) / p0;
                h -= r * r.ln();
            }
        }
        for &c in &hist.counts[tau + 1..] {
            if c > 0 {
                let r = (c as f64 / total) / p1;
                h -= r * r.ln();
            }
        }
        if best.is_none_or(|(_, b)| h > b) {
            best = Some((tau as u8, h));
        }
    }
    best.map(|(t, _)| t)
}

/// Exhaustive-scan Tsallis threshold oracle.
pub fn tsallis_oracle(hist: &Histogram, q: f64) -> Option<u8> {
    let total = hist.total as f64;
    let mut best: Option<(u8, f64)> = None;
    for tau in 0..=254usize {
        let c0: u64 = hist.counts[..=tau].iter().sum();
        if c0 == 0 || c0 == hist.total {
            continue;
        }
        let p0 = hist.counts[..=tau].iter().map(|&c| c as f64 / total).sum::<f64>();
        let p1 = 1.0 - p0;
        let entropy = |bins: &[u64], mass: f64| -> f64 {
            let s: f64 = bins
                .iter()
                .filter(|&&c| c > 0)
                .map(|&c| ((c as f64 / total) / mass).powf(q))
                .sum();
            (1.0 - s) / (q - 1.0)
        };
        let sa = entropy(&hist.counts[..=tau], p0);
        let sb = entropy(&hist.counts[tau + 1..], p1);
        let obj = sa + sb + (1.0 - q) * sa * sb;
        if best.is_none_or(|(_, b)| obj > b) {
            best = Some((tau as u8, obj));
        }
    }
    best.map(|(t, _)| t)
}

/// Histogram of two discretized Gaussian modes with equal mass.
pub fn gaussian_mixture_histogram(mu1: f64, mu2: f64, sigma: f64, mass_per_mode: u64) -> Histogram {
    let mut counts = [0u64; 256];
    for (mu, mass) in [(mu1, mass_per_mode), (mu2, mass_per_mode)] {
        let weights: Vec<f64> = (0..256)
            .map(|v| {
                let z = (v as f64 - mu) / sigma;
                (-0.5 * z * z).exp()
            })
            .collect();
        let wsum: f64 = weights.iter().sum();
        for v in 0..256 {
            counts[v] += (weights[v] / wsum * mass as f64).round() as u64;
        }
    }
    let total = counts.iter().sum();
    Histogram { counts, total }
}

/// Rasterizes disks of radius `r` on a 6x6 grid with the given foreground
/// and background tones. Pixel (x, y) belongs to a disk centered at
/// (cx, cy) when dx^2 + dy^2 <= r^2.
pub fn disk_grid_image(
    size: u32,
    spacing: u32,
    radius: i64,
    disk_tone: u8,
    background: u8,
) -> greyseg::raster::GrayImage {
    greyseg::raster::GrayImage::from_fn(size, size, |x, y| {
        let half = spacing as i64 / 2;
        let cx = (x as i64 / spacing as i64) * spacing as i64 + half;
        let cy = (y as i64 / spacing as i64) * spacing as i64 + half;
        let (dx, dy) = (x as i64 - cx, y as i64 - cy);
        if dx * dx + dy * dy <= radius * radius {
            disk_tone
        } else {
            background
        }
    })
}

/// Pixel count of one rasterized disk, by direct enumeration.
pub fn disk_pixel_count(radius: i64) -> u64 {
    let mut count = 0;
    for dy in -radius..=radius {
        for dx in -radius..=radius {
            if dx * dx + dy * dy <= radius * radius {
                count += 1;
            }
        }
    }
    count
}
