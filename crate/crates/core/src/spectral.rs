//! The shared spectral substrate: frequency grids aligned to the DFT bin
//! layout, the 1D/2D discrete stretch operators, the Gaussian low-pass
//! amplitude filter and coherent phase detection.
//!
//! The stretch operator multiplies an input's spectrum by a unit-magnitude
//! phase kernel `exp(-i*phi)` and a real amplitude filter, then transforms
//! back. Everything downstream (PST, PAGE, VEViD) is built from this one
//! operation plus a choice of phase profile.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex};

use num_complex::Complex64;
use rustfft::FftDirection;

use crate::error::{Error, Result};
use crate::fft;
use crate::image::Grid;

/// Normalized frequency coordinates for every bin of an unshifted DFT.
///
/// `km` varies along columns with spacing `1/cols`, `kn` along rows with
/// spacing `1/rows`; both cover `[-0.5, 0.5)` cycles per sample and the DC
/// bin sits at index (0, 0). Kernels built on this grid multiply raw FFT
/// output directly, with no quadrant shuffling in the per-frame path.
#[derive(Debug, Clone)]
pub struct FrequencyGrid {
    rows: usize,
    cols: usize,
    km_axis: Vec<f64>,
    kn_axis: Vec<f64>,
    rho: Grid,
    rho_max: f64,
}

/// Frequency of DFT bin `index` out of `len`, in cycles per sample.
fn bin_frequency(index: usize, len: usize) -> f64 {
    if index <= (len - 1) / 2 {
        index as f64 / len as f64
    } else {
        (index as f64 - len as f64) / len as f64
    }
}

impl FrequencyGrid {
    pub fn new(rows: usize, cols: usize) -> Result<Self> {
        if rows < 2 || cols < 2 {
            return Err(Error::InvalidDimensions { rows, cols });
        }
        let km_axis: Vec<f64> = (0..cols).map(|c| bin_frequency(c, cols)).collect();
        let kn_axis: Vec<f64> = (0..rows).map(|r| bin_frequency(r, rows)).collect();
        let rho = Grid::from_fn(rows, cols, |r, c| km_axis[c].hypot(kn_axis[r]));
        let rho_max = rho.max_abs();
        Ok(Self {
            rows,
            cols,
            km_axis,
            kn_axis,
            rho,
            rho_max,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Horizontal frequency at a bin (constant down each column).
    #[inline]
    pub fn km(&self, _row: usize, col: usize) -> f64 {
        self.km_axis[col]
    }

    /// Vertical frequency at a bin (constant along each row).
    #[inline]
    pub fn kn(&self, row: usize, _col: usize) -> f64 {
        self.kn_axis[row]
    }

    pub fn km_axis(&self) -> &[f64] {
        &self.km_axis
    }

    pub fn kn_axis(&self) -> &[f64] {
        &self.kn_axis
    }

    /// Radial frequency `sqrt(km^2 + kn^2)` for every bin.
    pub fn rho(&self) -> &Grid {
        &self.rho
    }

    pub fn rho_max(&self) -> f64 {
        self.rho_max
    }
}

/// Real phase profile `phi` of a spectral kernel `exp(-i*phi)`.
///
/// Only the phase is stored; the kernel has unit magnitude by construction.
#[derive(Debug, Clone)]
pub struct PhaseKernel {
    phi: Grid,
}

impl PhaseKernel {
    /// Wrap a phase grid, rejecting non-finite entries.
    pub fn new(phi: Grid) -> Result<Self> {
        if let Some(bad) = phi.data().iter().find(|v| !v.is_finite()) {
            return Err(Error::invalid_param(
                "phi",
                format!("phase kernel contains non-finite value {bad}"),
            ));
        }
        Ok(Self { phi })
    }

    pub fn phi(&self) -> &Grid {
        &self.phi
    }

    pub fn rows(&self) -> usize {
        self.phi.rows()
    }

    pub fn cols(&self) -> usize {
        self.phi.cols()
    }
}

/// Complex-valued output of the stretch operator.
#[derive(Debug, Clone)]
pub struct ComplexField {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexField {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
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

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn at(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.cols + col]
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    /// Imaginary part of every sample as a grid.
    pub fn imag(&self) -> Grid {
        let data = self.data.iter().map(|v| v.im).collect();
        Grid::new(self.rows, self.cols, data).expect("matching dimensions")
    }

    /// Real part of every sample as a grid.
    pub fn real(&self) -> Grid {
        let data = self.data.iter().map(|v| v.re).collect();
        Grid::new(self.rows, self.cols, data).expect("matching dimensions")
    }
}

/// Gaussian low-pass amplitude filter configuration.
///
/// `sigma` is the radial cutoff in the same normalized-frequency units as
/// [`FrequencyGrid::rho`]. Disabled means an all-ones (identity) filter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowpassSpec {
    pub sigma: f64,
    pub enabled: bool,
}

impl LowpassSpec {
    pub fn enabled(sigma: f64) -> Self {
        Self {
            sigma,
            enabled: true,
        }
    }

    pub fn disabled() -> Self {
        Self {
            sigma: 1.0,
            enabled: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.enabled && (!self.sigma.is_finite() || self.sigma <= 0.0) {
            return Err(Error::invalid_param(
                "lowpass.sigma",
                format!("must be > 0, got {}", self.sigma),
            ));
        }
        Ok(())
    }
}

impl Default for LowpassSpec {
    fn default() -> Self {
        Self::enabled(0.15)
    }
}

/// Per-bin amplitude `exp(-rho^2 / (2 sigma^2))`; exactly 1 at DC and an
/// all-ones grid when the spec is disabled.
pub fn gaussian_lowpass(grid: &FrequencyGrid, spec: &LowpassSpec) -> Result<Grid> {
    spec.validate()?;
    if !spec.enabled {
        return Ok(Grid::filled(grid.rows(), grid.cols(), 1.0));
    }
    let inv = 1.0 / (2.0 * spec.sigma * spec.sigma);
    Ok(grid.rho().map(|rho| (-rho * rho * inv).exp()))
}

/// Forward 2D spectrum of a real grid, in unshifted bin order.
///
/// Exposed separately so filter banks can reuse one spectrum across many
/// kernels.
pub fn forward_spectrum(image: &Grid) -> ComplexField {
    let mut buf: Vec<Complex64> = image
        .data()
        .iter()
        .map(|&v| Complex64::new(v, 0.0))
        .collect();
    fft::fft2d(image.rows(), image.cols(), &mut buf, FftDirection::Forward);
    ComplexField {
        rows: image.rows(),
        cols: image.cols(),
        data: buf,
    }
}

fn check_shape(rows: usize, cols: usize, grid_rows: usize, grid_cols: usize) -> Result<()> {
    if rows != grid_rows || cols != grid_cols {
        return Err(Error::ShapeMismatch {
            expected_rows: rows,
            expected_cols: cols,
            rows: grid_rows,
            cols: grid_cols,
        });
    }
    Ok(())
}

/// Apply `exp(-i*phi)` and an amplitude filter to a precomputed spectrum,
/// then inverse-transform. The inverse is normalized by `rows*cols` so a
/// unit kernel reproduces the input.
pub fn stretch_from_spectrum(
    spectrum: &ComplexField,
    kernel: &PhaseKernel,
    lowpass: &Grid,
) -> Result<ComplexField> {
    check_shape(spectrum.rows, spectrum.cols, kernel.rows(), kernel.cols())?;
    check_shape(spectrum.rows, spectrum.cols, lowpass.rows(), lowpass.cols())?;
    let mut buf: Vec<Complex64> = spectrum
        .data
        .iter()
        .zip(kernel.phi().data())
        .zip(lowpass.data())
        .map(|((&v, &phi), &amp)| {
            let (sin, cos) = phi.sin_cos();
            v * Complex64::new(amp * cos, -amp * sin)
        })
        .collect();
    fft::fft2d(spectrum.rows, spectrum.cols, &mut buf, FftDirection::Inverse);
    let scale = 1.0 / (spectrum.rows * spectrum.cols) as f64;
    for v in &mut buf {
        *v *= scale;
    }
    Ok(ComplexField {
        rows: spectrum.rows,
        cols: spectrum.cols,
        data: buf,
    })
}

/// Phase-only variant used where no amplitude filter applies.
pub(crate) fn stretch_phase_only(
    spectrum: &ComplexField,
    kernel: &PhaseKernel,
) -> Result<ComplexField> {
    check_shape(spectrum.rows, spectrum.cols, kernel.rows(), kernel.cols())?;
    let mut buf: Vec<Complex64> = spectrum
        .data
        .iter()
        .zip(kernel.phi().data())
        .map(|(&v, &phi)| {
            let (sin, cos) = phi.sin_cos();
            v * Complex64::new(cos, -sin)
        })
        .collect();
    fft::fft2d(spectrum.rows, spectrum.cols, &mut buf, FftDirection::Inverse);
    let scale = 1.0 / (spectrum.rows * spectrum.cols) as f64;
    for v in &mut buf {
        *v *= scale;
    }
    Ok(ComplexField {
        rows: spectrum.rows,
        cols: spectrum.cols,
        data: buf,
    })
}

/// The 2D discrete stretch operator:
/// `IFFT2( FFT2(image) * exp(-i*phi) * lowpass )`.
pub fn apply_stretch_2d(
    image: &Grid,
    kernel: &PhaseKernel,
    lowpass: &Grid,
) -> Result<ComplexField> {
    if image.rows() < 2 || image.cols() < 2 {
        return Err(Error::InvalidDimensions {
            rows: image.rows(),
            cols: image.cols(),
        });
    }
    let spectrum = forward_spectrum(image);
    stretch_from_spectrum(&spectrum, kernel, lowpass)
}

/// 1D analogue of [`apply_stretch_2d`]:
/// `IFFT( FFT(signal) * exp(-i*phase) * amplitude )`.
pub fn apply_stretch_1d(
    signal: &[f64],
    phase: &[f64],
    amplitude: &[f64],
) -> Result<Vec<Complex64>> {
    let n = signal.len();
    if n < 2 {
        return Err(Error::InvalidDimensions { rows: 1, cols: n });
    }
    for other in [phase.len(), amplitude.len()] {
        if other != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: other,
            });
        }
    }
    let mut buf: Vec<Complex64> = signal.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    fft::fft1d(&mut buf, FftDirection::Forward);
    for ((v, &phi), &amp) in buf.iter_mut().zip(phase).zip(amplitude) {
        let (sin, cos) = phi.sin_cos();
        *v *= Complex64::new(amp * cos, -amp * sin);
    }
    fft::fft1d(&mut buf, FftDirection::Inverse);
    let scale = 1.0 / n as f64;
    for v in &mut buf {
        *v *= scale;
    }
    Ok(buf)
}

/// Coherent detection: the principal-value argument of every sample,
/// in `(-pi, pi]`, with `arg(0) = 0` so flat dark regions read as zero
/// phase instead of NaN.
pub fn phase_of(field: &ComplexField) -> Grid {
    let data = field
        .data
        .iter()
        .map(|v| {
            if v.re == 0.0 && v.im == 0.0 {
                0.0
            } else {
                let a = v.im.atan2(v.re);
                if a <= -PI {
                    PI
                } else {
                    a
                }
            }
        })
        .collect();
    Grid::new(field.rows, field.cols, data).expect("matching dimensions")
}

/// Shape-keyed cache of immutable per-resolution state (kernels, filters).
///
/// Entries are built once per (rows, cols) and shared; repeated frames of
/// the same resolution skip kernel construction entirely.
pub(crate) struct ShapeCache<T> {
    entries: Mutex<HashMap<(usize, usize), Arc<T>>>,
}

impl<T> ShapeCache<T> {
    pub fn new() -> Self {
        Self {
            entries: Mutex::new(HashMap::new()),
        }
    }

    pub fn get_or_try_build(
        &self,
        shape: (usize, usize),
        build: impl FnOnce() -> Result<T>,
    ) -> Result<Arc<T>> {
        if let Some(hit) = self.entries.lock().expect("cache lock poisoned").get(&shape) {
            return Ok(Arc::clone(hit));
        }
        // Built outside the lock; a concurrent duplicate build is benign.
        let value = Arc::new(build()?);
        let mut entries = self.entries.lock().expect("cache lock poisoned");
        Ok(Arc::clone(entries.entry(shape).or_insert(value)))
    }
}
