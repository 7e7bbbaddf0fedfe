//! Pixel containers: a single-channel real grid and a 1/3-channel image.

use crate::error::{Error, Result};

/// Rec. 601 luma weights used when collapsing RGB to one channel.
const LUMA_WEIGHTS: [f64; 3] = [0.299, 0.587, 0.114];

/// Row-major 2D grid of `f64` values.
///
/// Used for pixel channels, phase maps, kernels and amplitude filters alike;
/// no range is implied by the type itself.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Grid {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::BufferSize {
                rows,
                cols,
                channels: 1,
                len: data.len(),
                expected: rows * cols,
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn filled(rows: usize, cols: usize, value: f64) -> Self {
        Self {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn at(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.cols + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: f64) {
        self.data[row * self.cols + col] = value;
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn same_shape(&self, other: &Grid) -> bool {
        self.rows == other.rows && self.cols == other.cols
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Grid {
        Grid {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, &v| m.max(v.abs()))
    }

    /// Rescale so the largest magnitude becomes 1; an all-zero grid is
    /// returned unchanged. Used to make phase maps threshold-friendly.
    pub fn normalized_by_max_abs(&self) -> Grid {
        let peak = self.max_abs();
        if peak == 0.0 {
            return self.clone();
        }
        self.map(|v| v / peak)
    }

    /// Circular shift by (down, right); used by shift-covariance tests.
    pub fn shifted(&self, down: usize, right: usize) -> Grid {
        Grid::from_fn(self.rows, self.cols, |r, c| {
            let sr = (r + self.rows - down % self.rows) % self.rows;
            let sc = (c + self.cols - right % self.cols) % self.cols;
            self.at(sr, sc)
        })
    }
}

/// A real-valued image: `rows >= 2`, `cols >= 2`, 1 or 3 interleaved
/// channels, intensities expected in `[0, 1]` after ingestion.
#[derive(Debug, Clone, PartialEq)]
pub struct Image {
    rows: usize,
    cols: usize,
    channels: usize,
    data: Vec<f64>,
}

impl Image {
    pub fn new(rows: usize, cols: usize, channels: usize, data: Vec<f64>) -> Result<Self> {
        if rows < 2 || cols < 2 {
            return Err(Error::InvalidDimensions { rows, cols });
        }
        if channels != 1 && channels != 3 {
            return Err(Error::ChannelMismatch {
                expected: 3,
                got: channels,
            });
        }
        let expected = rows * cols * channels;
        if data.len() != expected {
            return Err(Error::BufferSize {
                rows,
                cols,
                channels,
                len: data.len(),
                expected,
            });
        }
        Ok(Self {
            rows,
            cols,
            channels,
            data,
        })
    }

    pub fn from_gray(grid: Grid) -> Result<Self> {
        let (rows, cols) = (grid.rows(), grid.cols());
        Self::new(rows, cols, 1, grid.data)
    }

    pub fn from_rgb_planes(r: &Grid, g: &Grid, b: &Grid) -> Result<Self> {
        for plane in [g, b] {
            if !r.same_shape(plane) {
                return Err(Error::ShapeMismatch {
                    expected_rows: r.rows(),
                    expected_cols: r.cols(),
                    rows: plane.rows(),
                    cols: plane.cols(),
                });
            }
        }
        let mut data = Vec::with_capacity(r.len() * 3);
        for i in 0..r.len() {
            data.push(r.data()[i]);
            data.push(g.data()[i]);
            data.push(b.data()[i]);
        }
        Self::new(r.rows(), r.cols(), 3, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn pixel(&self, row: usize, col: usize) -> &[f64] {
        let i = (row * self.cols + col) * self.channels;
        &self.data[i..i + self.channels]
    }

    /// One extracted channel as a grid.
    pub fn plane(&self, channel: usize) -> Grid {
        assert!(channel < self.channels, "channel out of range");
        Grid::from_fn(self.rows, self.cols, |r, c| self.pixel(r, c)[channel])
    }

    /// Single-channel view of the image: grayscale images copy through,
    /// RGB collapses with Rec. 601 luma weights.
    pub fn luma(&self) -> Grid {
        if self.channels == 1 {
            return Grid {
                rows: self.rows,
                cols: self.cols,
                data: self.data.clone(),
            };
        }
        Grid::from_fn(self.rows, self.cols, |r, c| {
            let p = self.pixel(r, c);
            LUMA_WEIGHTS[0] * p[0] + LUMA_WEIGHTS[1] * p[1] + LUMA_WEIGHTS[2] * p[2]
        })
    }

    /// Replicate a grayscale image into three channels; RGB copies through.
    pub fn to_rgb(&self) -> Image {
        if self.channels == 3 {
            return self.clone();
        }
        let mut data = Vec::with_capacity(self.data.len() * 3);
        for &v in &self.data {
            data.extend_from_slice(&[v, v, v]);
        }
        Image {
            rows: self.rows,
            cols: self.cols,
            channels: 3,
            data,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn image_rejects_small_dimensions() {
        assert!(matches!(
            Image::new(1, 5, 1, vec![0.0; 5]),
            Err(Error::InvalidDimensions { .. })
        ));
        assert!(matches!(
            Image::new(5, 1, 1, vec![0.0; 5]),
            Err(Error::InvalidDimensions { .. })
        ));
    }

    #[test]
    fn image_rejects_bad_channel_count() {
        assert!(matches!(
            Image::new(2, 2, 2, vec![0.0; 8]),
            Err(Error::ChannelMismatch { .. })
        ));
    }

    #[test]
    fn luma_uses_rec601_weights() {
        let img = Image::new(2, 2, 3, [1.0, 0.0, 0.0].repeat(4)).unwrap();
        let y = img.luma();
        for &v in y.data() {
            assert!((v - 0.299).abs() < 1e-15);
        }
        let gray = Image::new(2, 2, 1, vec![0.25; 4]).unwrap();
        assert_eq!(gray.luma().data(), &[0.25; 4]);
    }

    #[test]
    fn normalize_leaves_zero_grid_alone() {
        let z = Grid::zeros(3, 3);
        assert_eq!(z.normalized_by_max_abs(), z);

        let g = Grid::new(1, 4, vec![0.5, -2.0, 1.0, 0.0]).unwrap();
        let n = g.normalized_by_max_abs();
        assert_eq!(n.data(), &[0.25, -1.0, 0.5, 0.0]);
    }

    #[test]
    fn shifted_wraps_around() {
        let g = Grid::new(2, 3, vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0]).unwrap();
        let s = g.shifted(1, 1);
        assert_eq!(s.data(), &[6.0, 4.0, 5.0, 3.0, 1.0, 2.0]);
    }
}
