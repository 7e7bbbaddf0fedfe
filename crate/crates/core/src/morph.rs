//! Binary post-processing for detected-phase maps: two-sided thresholding,
//! small-component removal and morphological thinning.

use crate::image::Grid;

/// Binary edge map produced by thresholding a normalized phase map.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeMap {
    rows: usize,
    cols: usize,
    data: Vec<bool>,
}

impl EdgeMap {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![false; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn at(&self, row: usize, col: usize) -> bool {
        self.data[row * self.cols + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        self.data[row * self.cols + col] = value;
    }

    pub fn data(&self) -> &[bool] {
        &self.data
    }

    pub fn count_set(&self) -> usize {
        self.data.iter().filter(|&&v| v).count()
    }

    /// 0/1 grid view, for saving as an image.
    pub fn to_grid(&self) -> Grid {
        let data = self.data.iter().map(|&v| if v { 1.0 } else { 0.0 }).collect();
        Grid::new(self.rows, self.cols, data).expect("matching dimensions")
    }
}

/// Mark pixels whose value exceeds `thresh_max` or falls below `thresh_min`.
/// Phase maps carry opposite signs on opposite edge polarities, so both
/// tails count as edges.
pub fn threshold_bipolar(map: &Grid, thresh_min: f64, thresh_max: f64) -> EdgeMap {
    let mut out = EdgeMap::zeros(map.rows(), map.cols());
    for (dst, &v) in out.data.iter_mut().zip(map.data()) {
        *dst = v > thresh_max || v < thresh_min;
    }
    out
}

/// Remove 8-connected components with fewer than `min_size` pixels.
pub fn remove_small_components(map: &EdgeMap, min_size: usize) -> EdgeMap {
    if min_size <= 1 {
        return map.clone();
    }
    let (rows, cols) = (map.rows, map.cols);
    let mut out = map.clone();
    let mut seen = vec![false; rows * cols];
    let mut component = Vec::new();
    let mut stack = Vec::new();

    for start in 0..rows * cols {
        if !map.data[start] || seen[start] {
            continue;
        }
        component.clear();
        stack.push(start);
        seen[start] = true;
        while let Some(idx) = stack.pop() {
            component.push(idx);
            let (r, c) = (idx / cols, idx % cols);
            for dr in -1i64..=1 {
                for dc in -1i64..=1 {
                    if dr == 0 && dc == 0 {
                        continue;
                    }
                    let (nr, nc) = (r as i64 + dr, c as i64 + dc);
                    if nr < 0 || nc < 0 || nr >= rows as i64 || nc >= cols as i64 {
                        continue;
                    }
                    let nidx = nr as usize * cols + nc as usize;
                    if map.data[nidx] && !seen[nidx] {
                        seen[nidx] = true;
                        stack.push(nidx);
                    }
                }
            }
        }
        if component.len() < min_size {
            for &idx in &component {
                out.data[idx] = false;
            }
        }
    }
    out
}

/// Neighborhood snapshot in the x1..x8 counterclockwise-from-east order
/// used by the two-subiteration thinning rules.
#[inline]
fn neighborhood(map: &EdgeMap, r: usize, c: usize) -> [bool; 8] {
    let get = |dr: i64, dc: i64| -> bool {
        let (nr, nc) = (r as i64 + dr, c as i64 + dc);
        if nr < 0 || nc < 0 || nr >= map.rows as i64 || nc >= map.cols as i64 {
            false
        } else {
            map.data[nr as usize * map.cols + nc as usize]
        }
    };
    [
        get(0, 1),   // x1 E
        get(-1, 1),  // x2 NE
        get(-1, 0),  // x3 N
        get(-1, -1), // x4 NW
        get(0, -1),  // x5 W
        get(1, -1),  // x6 SW
        get(1, 0),   // x7 S
        get(1, 1),   // x8 SE
    ]
}

fn deletable(x: &[bool; 8], odd_pass: bool) -> bool {
    let b = |v: bool| v as u32;
    // Exactly one 0->(1|1) crossing pattern around the contour.
    let crossings = b(!x[0] && (x[1] || x[2]))
        + b(!x[2] && (x[3] || x[4]))
        + b(!x[4] && (x[5] || x[6]))
        + b(!x[6] && (x[7] || x[0]));
    if crossings != 1 {
        return false;
    }
    let n1 = b(x[0] || x[1]) + b(x[2] || x[3]) + b(x[4] || x[5]) + b(x[6] || x[7]);
    let n2 = b(x[1] || x[2]) + b(x[3] || x[4]) + b(x[5] || x[6]) + b(x[7] || x[0]);
    let n = n1.min(n2);
    if !(2..=3).contains(&n) {
        return false;
    }
    if odd_pass {
        !((x[1] || x[2] || !x[7]) && x[0])
    } else {
        !((x[5] || x[6] || !x[3]) && x[4])
    }
}

/// Two-subiteration parallel thinning (Guo & Hall), run to convergence.
/// Strokes reduce to 1-pixel-wide, 8-connected skeletons; free line ends
/// erode by at most one pixel.
pub fn thin(map: &EdgeMap) -> EdgeMap {
    let mut current = map.clone();
    let mut to_delete = Vec::new();
    loop {
        let mut changed = false;
        for odd_pass in [true, false] {
            to_delete.clear();
            for r in 0..current.rows {
                for c in 0..current.cols {
                    if current.at(r, c) && deletable(&neighborhood(&current, r, c), odd_pass) {
                        to_delete.push(r * current.cols + c);
                    }
                }
            }
            // Parallel pass: decisions above, deletions after.
            for &idx in &to_delete {
                current.data[idx] = false;
                changed = true;
            }
        }
        if !changed {
            return current;
        }
    }
}

/// Threshold, drop small components, optionally thin.
pub fn postprocess(
    map: &Grid,
    thresh_min: f64,
    thresh_max: f64,
    min_component: usize,
    do_thin: bool,
) -> EdgeMap {
    let mut edges = threshold_bipolar(map, thresh_min, thresh_max);
    edges = remove_small_components(&edges, min_component);
    if do_thin {
        edges = thin(&edges);
    }
    edges
}
