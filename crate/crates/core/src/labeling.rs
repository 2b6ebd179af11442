//! Two-pass connected-component labeling of black pixels with
//! union-find equivalence resolution, plus per-component area measurement.
//!
//! The scan walks the binary image in raster order from the upper-left
//! corner. Each black pixel looks at its already-visited neighbors (above
//! and left under 4-connectivity): with no labeled neighbor it gets a
//! fresh provisional label, with one it copies that label, and with two
//! different labels it takes the smaller and the two are recorded as
//! equivalent. A second pass resolves equivalences and compacts labels to
//! 1..=n by first raster-order occurrence, so results are deterministic.

use crate::threshold::BinaryImage;

/// Neighbor set used when grouping black pixels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Connectivity {
    /// Horizontal and vertical neighbors only; diagonal contact does not
    /// join components. This is the default and the conformance target.
    #[default]
    Four,
    /// Adds diagonal neighbors. Extension, off by default.
    Eight,
}

/// Matrix of super-pixel labels; 0 marks background (white) pixels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelMap {
    width: u32,
    height: u32,
    data: Vec<u32>,
    component_count: u32,
}

impl LabelMap {
    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn labels(&self) -> &[u32] {
        &self.data
    }

    pub fn get(&self, x: u32, y: u32) -> u32 {
        self.data[y as usize * self.width as usize + x as usize]
    }

    pub fn component_count(&self) -> u32 {
        self.component_count
    }
}

/// Per-label pixel counts with summary statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct AreaTable {
    /// (label, area) sorted by label ascending, one entry per label 1..=n.
    pub entries: Vec<(u32, u64)>,
}

impl AreaTable {
    pub fn n_components(&self) -> u32 {
        self.entries.len() as u32
    }

    pub fn min_area(&self) -> Option<u64> {
        self.entries.iter().map(|&(_, a)| a).min()
    }

    pub fn max_area(&self) -> Option<u64> {
        self.entries.iter().map(|&(_, a)| a).max()
    }

    pub fn mean_area(&self) -> Option<f64> {
        if self.entries.is_empty() {
            None
        } else {
            let total: u64 = self.entries.iter().map(|&(_, a)| a).sum();
            Some(total as f64 / self.entries.len() as f64)
        }
    }

    pub fn total_area(&self) -> u64 {
        self.entries.iter().map(|&(_, a)| a).sum()
    }
}

/// Disjoint-set forest over provisional labels. The union rule mirrors the
/// scan's merging rule: the smaller root label absorbs the larger, so the
/// representative of every equivalence class is its smallest member.
struct LabelUnion {
    parent: Vec<u32>,
}

impl LabelUnion {
    fn new() -> Self {
        // index 0 reserved for background, never unioned
        Self { parent: vec![0] }
    }

    fn fresh(&mut self) -> u32 {
        let label = self.parent.len() as u32;
        self.parent.push(label);
        label
    }

    fn find(&mut self, mut label: u32) -> u32 {
        while self.parent[label as usize] != label {
            // halve the path on the way up
            let grand = self.parent[self.parent[label as usize] as usize];
            self.parent[label as usize] = grand;
            label = grand;
        }
        label
    }

    fn union(&mut self, a: u32, b: u32) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            let (small, large) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[large as usize] = small;
        }
    }
}

/// Groups black pixels into connected components. Out-of-bounds neighbors
/// count as white. All-white input yields an all-zero map with n = 0.
pub fn label_components(img: &BinaryImage, connectivity: Connectivity) -> LabelMap {
    let width = img.width() as usize;
    let height = img.height() as usize;
    let mut provisional = vec![0u32; width * height];
    let mut dsu = LabelUnion::new();

    for y in 0..height {
        for x in 0..width {
            if !img.is_black(x as u32, y as u32) {
                continue;
            }
            let idx = y * width + x;
            let left = if x > 0 { provisional[idx - 1] } else { 0 };
            let above = if y > 0 { provisional[idx - width] } else { 0 };
            let mut label = match (above, left) {
                (0, 0) => 0,
                (a, 0) => a,
                (0, l) => l,
                (a, l) => {
                    if a != l {
                        dsu.union(a, l);
                    }
                    a.min(l)
                }
            };
            if connectivity == Connectivity::Eight && y > 0 {
                let diag_labels = [
                    if x > 0 { provisional[idx - width - 1] } else { 0 },
                    if x + 1 < width { provisional[idx - width + 1] } else { 0 },
                ];
                for d in diag_labels {
                    if d != 0 {
                        if label == 0 {
                            label = d;
                        } else if d != label {
                            dsu.union(d, label);
                            label = label.min(d);
                        }
                    }
                }
            }
            provisional[idx] = if label == 0 { dsu.fresh() } else { label };
        }
    }

    // Resolve equivalences and compact to 1..=n by first raster occurrence.
    let mut compact = vec![0u32; dsu.parent.len()];
    let mut next = 0u32;
    let mut data = vec![0u32; width * height];
    for (idx, &p) in provisional.iter().enumerate() {
        if p == 0 {
            continue;
        }
        let root = dsu.find(p) as usize;
        if compact[root] == 0 {
            next += 1;
            compact[root] = next;
        }
        data[idx] = compact[root];
    }

    LabelMap {
        width: img.width(),
        height: img.height(),
        data,
        component_count: next,
    }
}

/// Counts the pixels carrying each label.
pub fn measure_areas(labels: &LabelMap) -> AreaTable {
    let mut areas = vec![0u64; labels.component_count() as usize + 1];
    for &k in labels.labels() {
        if k != 0 {
            areas[k as usize] += 1;
        }
    }
    AreaTable {
        entries: areas
            .into_iter()
            .enumerate()
            .skip(1)
            .map(|(k, a)| (k as u32, a))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::threshold::BinaryImage;

    fn binary(width: u32, rows: &[&[u8]]) -> BinaryImage {
        let data: Vec<u8> = rows
            .iter()
            .flat_map(|r| r.iter().map(|&v| if v == 1 { 0 } else { 255 }))
            .collect();
        BinaryImage::new(width, rows.len() as u32, data)
    }

    #[test]
    fn all_white_yields_empty_map() {
        let img = BinaryImage::new(3, 3, vec![255; 9]);
        let m = label_components(&img, Connectivity::Four);
        assert_eq!(m.component_count(), 0);
        assert!(m.labels().iter().all(|&k| k == 0));
        assert!(measure_areas(&m).entries.is_empty());
    }

    #[test]
    fn single_black_pixel() {
        let img = binary(3, &[&[0, 0, 0], &[0, 1, 0], &[0, 0, 0]]);
        let m = label_components(&img, Connectivity::Four);
        assert_eq!(m.component_count(), 1);
        assert_eq!(m.get(1, 1), 1);
        assert_eq!(measure_areas(&m).entries, vec![(1, 1)]);
    }

    #[test]
    fn u_shape_merges_arms() {
        // Two descending arms get distinct provisional labels; the bottom
        // row makes them one component of area 7.
        let img = binary(3, &[&[1, 0, 1], &[1, 0, 1], &[1, 1, 1]]);
        let m = label_components(&img, Connectivity::Four);
        assert_eq!(m.component_count(), 1);
        assert_eq!(measure_areas(&m).entries, vec![(1, 7)]);
    }

    #[test]
    fn diagonals_are_separate_under_four_connectivity() {
        let img = binary(2, &[&[1, 0], &[0, 1]]);
        let m = label_components(&img, Connectivity::Four);
        assert_eq!(m.component_count(), 2);
        assert_eq!(measure_areas(&m).entries, vec![(1, 1), (2, 1)]);
    }

    #[test]
    fn diagonals_join_under_eight_connectivity() {
        let img = binary(2, &[&[1, 0], &[0, 1]]);
        let m = label_components(&img, Connectivity::Eight);
        assert_eq!(m.component_count(), 1);
        assert_eq!(measure_areas(&m).entries, vec![(1, 2)]);
    }

    #[test]
    fn anti_diagonal_joins_under_eight_connectivity() {
        let img = binary(2, &[&[0, 1], &[1, 0]]);
        let m = label_components(&img, Connectivity::Eight);
        assert_eq!(m.component_count(), 1);
    }

    #[test]
    fn labels_are_compacted_in_raster_order() {
        let img = binary(5, &[&[1, 0, 1, 0, 1]]);
        let m = label_components(&img, Connectivity::Four);
        assert_eq!(m.component_count(), 3);
        assert_eq!(m.get(0, 0), 1);
        assert_eq!(m.get(2, 0), 2);
        assert_eq!(m.get(4, 0), 3);
    }

    #[test]
    fn area_sum_equals_black_pixel_count() {
        let img = binary(
            4,
            &[&[1, 1, 0, 1], &[0, 1, 0, 1], &[1, 0, 0, 0], &[1, 1, 1, 1]],
        );
        let m = label_components(&img, Connectivity::Four);
        assert_eq!(measure_areas(&m).total_area(), img.black_count());
    }

    #[test]
    fn deterministic_across_runs() {
        let img = binary(
            4,
            &[&[1, 0, 1, 1], &[1, 1, 0, 1], &[0, 1, 1, 0], &[1, 0, 1, 1]],
        );
        let a = label_components(&img, Connectivity::Four);
        let b = label_components(&img, Connectivity::Four);
        assert_eq!(a, b);
    }

    #[test]
    fn area_table_summaries() {
        let t = AreaTable { entries: vec![(1, 5)] };
        assert_eq!(t.mean_area(), Some(5.0));
        assert_eq!(t.min_area(), Some(5));
        assert_eq!(t.max_area(), Some(5));
        let empty = AreaTable { entries: vec![] };
        assert_eq!(empty.mean_area(), None);
        assert_eq!(empty.n_components(), 0);
    }
}
