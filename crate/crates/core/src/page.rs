//! Phase-Stretch Adaptive Gradient-field Extractor: a bank of
//! orientation-selective phase kernels built on rotated frequency
//! coordinates. Each kernel is the product of a Gaussian band selector
//! along the rotated `k'_m` axis and a log-normal edge-detecting profile
//! along `k'_n`; sweeping the rotation angle yields per-direction edge
//! maps.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::color::pixel_hsv_to_rgb;
use crate::error::{Error, Result};
use crate::image::{Grid, Image};
use crate::morph;
use crate::spectral::{
    forward_spectrum, gaussian_lowpass, phase_of, stretch_from_spectrum, FrequencyGrid,
    LowpassSpec, PhaseKernel, ShapeCache,
};

const SQRT_TWO_PI: f64 = 2.5066282746310002;

/// PAGE configuration.
///
/// `mu1`/`sigma1`/`s1` shape the Gaussian selector over `|k'_m|` (center
/// frequency 0 keeps it baseband), `mu2`/`sigma2`/`s2` the log-normal
/// profile over `|k'_n|` with `mu2` given in log-frequency units.
/// `directions` is the number of kernel orientations spread over `[0, pi)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PageParams {
    pub mu1: f64,
    pub sigma1: f64,
    pub s1: f64,
    pub mu2: f64,
    pub sigma2: f64,
    pub s2: f64,
    pub directions: usize,
    pub lowpass: LowpassSpec,
    pub thresh_min: f64,
    pub thresh_max: f64,
    pub min_component: usize,
    pub thin: bool,
}

impl Default for PageParams {
    fn default() -> Self {
        Self {
            mu1: 0.0,
            sigma1: 0.05,
            s1: 0.8,
            mu2: 0.35,
            sigma2: 0.7,
            s2: 0.8,
            directions: 8,
            lowpass: LowpassSpec::enabled(0.15),
            thresh_min: -1.0,
            thresh_max: 0.8,
            min_component: 8,
            thin: true,
        }
    }
}

impl PageParams {
    pub fn validate(&self) -> Result<()> {
        if !self.mu1.is_finite() || self.mu1 < 0.0 {
            return Err(Error::invalid_param(
                "mu1",
                format!("must be >= 0, got {}", self.mu1),
            ));
        }
        for (name, v) in [
            ("sigma1", self.sigma1),
            ("s1", self.s1),
            ("sigma2", self.sigma2),
            ("s2", self.s2),
        ] {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::invalid_param(name, format!("must be > 0, got {v}")));
            }
        }
        if self.directions < 1 {
            return Err(Error::invalid_param("directions", "must be >= 1"));
        }
        if !(-1.0..=0.0).contains(&self.thresh_min) {
            return Err(Error::invalid_param(
                "thresh_min",
                format!("must lie in [-1, 0], got {}", self.thresh_min),
            ));
        }
        if !(0.0..=1.0).contains(&self.thresh_max) {
            return Err(Error::invalid_param(
                "thresh_max",
                format!("must lie in [0, 1], got {}", self.thresh_max),
            ));
        }
        self.lowpass.validate()
    }

    /// Kernel orientations: `theta_d = d * pi / D`. Kernels are
    /// pi-periodic, so `[0, pi)` covers every distinct direction.
    pub fn thetas(&self) -> Vec<f64> {
        (0..self.directions)
            .map(|d| d as f64 * PI / self.directions as f64)
            .collect()
    }
}

/// Frequency coordinates rotated by `theta`:
/// `k'_m = km cos(theta) + kn sin(theta)`,
/// `k'_n = -km sin(theta) + kn cos(theta)`.
pub fn rotate_frequency_coords(grid: &FrequencyGrid, theta: f64) -> (Grid, Grid) {
    let (sin, cos) = theta.sin_cos();
    let kpm = Grid::from_fn(grid.rows(), grid.cols(), |r, c| {
        grid.km(r, c) * cos + grid.kn(r, c) * sin
    });
    let kpn = Grid::from_fn(grid.rows(), grid.cols(), |r, c| {
        -grid.km(r, c) * sin + grid.kn(r, c) * cos
    });
    (kpm, kpn)
}

/// Gaussian band selector `S1/(sqrt(2 pi) sigma1) * exp(-(|k|-mu1)^2/(2 sigma1^2))`.
pub fn page_phi1(k: f64, params: &PageParams) -> f64 {
    let d = k.abs() - params.mu1;
    params.s1 / (SQRT_TWO_PI * params.sigma1) * (-d * d / (2.0 * params.sigma1 * params.sigma1)).exp()
}

/// Log-normal edge profile
/// `S2/(sqrt(2 pi) |k| sigma2) * exp(-(ln|k|-mu2)^2/(2 sigma2^2))`,
/// extended with its limit value 0 at `k = 0`.
pub fn page_phi2(k: f64, params: &PageParams) -> f64 {
    if k == 0.0 {
        return 0.0;
    }
    // Evaluated in log space so extreme |k| underflows to 0 instead of
    // producing 0 * inf at the 1/|k| pole.
    let ln_k = k.abs().ln();
    let d = ln_k - params.mu2;
    let log_value =
        -d * d / (2.0 * params.sigma2 * params.sigma2) - ln_k - (SQRT_TWO_PI * params.sigma2).ln();
    params.s2 * log_value.exp()
}

/// Orientation-selective kernel at angle `theta`:
/// `phi = phi1(k'_m) * phi2(k'_n)` on rotated coordinates.
pub fn page_kernel(grid: &FrequencyGrid, theta: f64, params: &PageParams) -> Result<PhaseKernel> {
    params.validate()?;
    let (sin, cos) = theta.sin_cos();
    let km = grid.km_axis();
    let kn = grid.kn_axis();
    let phi = Grid::from_fn(grid.rows(), grid.cols(), |r, c| {
        let kpm = km[c] * cos + kn[r] * sin;
        let kpn = -km[c] * sin + kn[r] * cos;
        page_phi1(kpm, params) * page_phi2(kpn, params)
    });
    PhaseKernel::new(phi)
}

/// Per-direction normalized phase maps plus the orientation angles.
///
/// Each layer is scaled into `[-1, 1]` by its own peak magnitude;
/// `raw_peaks` stores those normalizers so the physical response scale
/// (`layer * peak`) can be recovered when comparing across directions.
#[derive(Debug, Clone)]
pub struct DirectionalEdgeStack {
    layers: Vec<Grid>,
    thetas: Vec<f64>,
    raw_peaks: Vec<f64>,
}

impl DirectionalEdgeStack {
    pub fn new(layers: Vec<Grid>, thetas: Vec<f64>, raw_peaks: Vec<f64>) -> Result<Self> {
        if layers.is_empty() || layers.len() != thetas.len() || layers.len() != raw_peaks.len() {
            return Err(Error::LengthMismatch {
                expected: layers.len(),
                got: thetas.len().min(raw_peaks.len()),
            });
        }
        Ok(Self {
            layers,
            thetas,
            raw_peaks,
        })
    }

    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    pub fn rows(&self) -> usize {
        self.layers[0].rows()
    }

    pub fn cols(&self) -> usize {
        self.layers[0].cols()
    }

    pub fn layers(&self) -> &[Grid] {
        &self.layers
    }

    pub fn layer(&self, d: usize) -> &Grid {
        &self.layers[d]
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn raw_peaks(&self) -> &[f64] {
        &self.raw_peaks
    }

    /// Mean physical response magnitude of one layer.
    pub fn mean_raw_response(&self, d: usize) -> f64 {
        let layer = &self.layers[d];
        let mean_norm: f64 =
            layer.data().iter().map(|v| v.abs()).sum::<f64>() / layer.len() as f64;
        mean_norm * self.raw_peaks[d]
    }

    /// Index of the layer with the strongest mean physical response.
    pub fn dominant_layer(&self) -> usize {
        let mut best = 0;
        let mut best_v = -1.0;
        for d in 0..self.len() {
            let v = self.mean_raw_response(d);
            if v > best_v {
                best_v = v;
                best = d;
            }
        }
        best
    }
}

struct PageBank {
    kernels: Vec<PhaseKernel>,
    lowpass: Grid,
}

/// PAGE runner: caches the kernel bank per resolution and reuses one
/// forward FFT across every direction of the bank.
pub struct Page {
    params: PageParams,
    cache: ShapeCache<PageBank>,
}

impl Page {
    pub fn new(params: PageParams) -> Result<Self> {
        params.validate()?;
        Ok(Self {
            params,
            cache: ShapeCache::new(),
        })
    }

    pub fn params(&self) -> &PageParams {
        &self.params
    }

    fn bank(&self, rows: usize, cols: usize) -> Result<Arc<PageBank>> {
        self.cache.get_or_try_build((rows, cols), || {
            let grid = FrequencyGrid::new(rows, cols)?;
            let kernels = self
                .params
                .thetas()
                .iter()
                .map(|&theta| page_kernel(&grid, theta, &self.params))
                .collect::<Result<Vec<_>>>()?;
            let lowpass = gaussian_lowpass(&grid, &self.params.lowpass)?;
            Ok(PageBank { kernels, lowpass })
        })
    }

    /// Run the filter bank over an image (RGB collapses to luma first).
    ///
    /// The forward spectrum is computed once and shared by all
    /// `directions` kernels; layers come back normalized per direction.
    pub fn run(&self, image: &Image) -> Result<DirectionalEdgeStack> {
        let gray = image.luma();
        let bank = self.bank(gray.rows(), gray.cols())?;
        let spectrum = forward_spectrum(&gray);
        let mut layers = Vec::with_capacity(bank.kernels.len());
        let mut raw_peaks = Vec::with_capacity(bank.kernels.len());
        for kernel in &bank.kernels {
            let field = stretch_from_spectrum(&spectrum, kernel, &bank.lowpass)?;
            let raw = phase_of(&field);
            raw_peaks.push(raw.max_abs());
            layers.push(raw.normalized_by_max_abs());
        }
        DirectionalEdgeStack::new(layers, self.params.thetas(), raw_peaks)
    }

    /// Fuse a stack into a hue-coded RGB image.
    pub fn visualize(&self, stack: &DirectionalEdgeStack) -> Image {
        page_visualize(stack, &self.params)
    }
}

/// Map a directional stack onto colors: per pixel, the layer with the
/// strongest physical response sets the hue (`theta / pi`), saturation is
/// 1, and value is that layer's post-processed (thresholded, size-filtered,
/// optionally thinned) edge mask.
pub fn page_visualize(stack: &DirectionalEdgeStack, params: &PageParams) -> Image {
    let (rows, cols) = (stack.rows(), stack.cols());
    let masks: Vec<_> = stack
        .layers()
        .iter()
        .map(|layer| {
            morph::postprocess(
                layer,
                params.thresh_min,
                params.thresh_max,
                params.min_component,
                params.thin,
            )
        })
        .collect();

    let mut data = Vec::with_capacity(rows * cols * 3);
    for r in 0..rows {
        for c in 0..cols {
            let mut best = 0usize;
            let mut best_v = -1.0f64;
            for d in 0..stack.len() {
                let v = stack.layer(d).at(r, c).abs() * stack.raw_peaks()[d];
                if v > best_v {
                    best_v = v;
                    best = d;
                }
            }
            let hue = stack.thetas()[best] / PI;
            let value = if masks[best].at(r, c) { 1.0 } else { 0.0 };
            let (pr, pg, pb) = pixel_hsv_to_rgb(hue, 1.0, value);
            data.extend_from_slice(&[pr, pg, pb]);
        }
    }
    Image::new(rows, cols, 3, data).expect("matching dimensions")
}
