//! Phase-Stretch Transform: edge and texture detection through a radially
//! symmetric spectral phase kernel whose profile derivative is arctangent
//! shaped, followed by coherent phase detection and optional binary
//! post-processing.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::image::{Grid, Image};
use crate::morph::{self, EdgeMap};
use crate::spectral::{
    apply_stretch_2d, gaussian_lowpass, phase_of, FrequencyGrid, LowpassSpec, PhaseKernel,
    ShapeCache,
};

/// PST configuration.
///
/// `strength` is the peak kernel phase in radians (reached at the grid's
/// maximum radial frequency), `warp` scales frequency inside the arctangent
/// profile. Thresholds apply to the analog output normalized to `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PstParams {
    pub strength: f64,
    pub warp: f64,
    pub lowpass: LowpassSpec,
    pub thresh_min: f64,
    pub thresh_max: f64,
    pub min_component: usize,
    pub thin: bool,
    pub digital_output: bool,
}

impl Default for PstParams {
    fn default() -> Self {
        Self {
            strength: 0.3,
            warp: 15.0,
            lowpass: LowpassSpec::enabled(0.15),
            thresh_min: -1.0,
            thresh_max: 0.8,
            min_component: 8,
            thin: true,
            digital_output: false,
        }
    }
}

impl PstParams {
    pub fn validate(&self) -> Result<()> {
        if !self.strength.is_finite() || self.strength <= 0.0 {
            return Err(Error::invalid_param(
                "strength",
                format!("must be > 0, got {}", self.strength),
            ));
        }
        if !self.warp.is_finite() || self.warp <= 0.0 {
            return Err(Error::invalid_param(
                "warp",
                format!("must be > 0, got {}", self.warp),
            ));
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
}

fn profile_numerator(r: f64, warp: f64) -> f64 {
    let wr = warp * r;
    wr * wr.atan() - 0.5 * (1.0 + wr * wr).ln()
}

/// Kernel phase at radial frequency `r`, normalized so the value at
/// `r_max` is exactly `strength`:
///
/// `S * [Wr*atan(Wr) - ln(1+(Wr)^2)/2] / [Wr_max*atan(Wr_max) - ln(1+(Wr_max)^2)/2]`
pub fn pst_phase_profile(r: f64, r_max: f64, strength: f64, warp: f64) -> Result<f64> {
    if !r_max.is_finite() || r_max <= 0.0 {
        return Err(Error::invalid_param(
            "r_max",
            format!("must be > 0, got {r_max}"),
        ));
    }
    Ok(strength * profile_numerator(r, warp) / profile_numerator(r_max, warp))
}

/// Radially symmetric PST kernel over a frequency grid.
pub fn pst_kernel(grid: &FrequencyGrid, params: &PstParams) -> Result<PhaseKernel> {
    params.validate()?;
    let denom = profile_numerator(grid.rho_max(), params.warp);
    let phi = grid
        .rho()
        .map(|rho| params.strength * profile_numerator(rho, params.warp) / denom);
    PhaseKernel::new(phi)
}

/// Threshold and clean a normalized phase map into a binary edge map.
pub fn pst_postprocess(phase_map: &Grid, params: &PstParams) -> EdgeMap {
    morph::postprocess(
        phase_map,
        params.thresh_min,
        params.thresh_max,
        params.min_component,
        params.thin,
    )
}

/// Output of a PST run: the normalized phase map, or the binary edge map
/// when digital output was requested.
#[derive(Debug, Clone)]
pub enum PstOutput {
    Analog(Grid),
    Digital(EdgeMap),
}

struct Prepared {
    kernel: PhaseKernel,
    lowpass: Grid,
}

/// PST runner holding the configuration and a per-resolution kernel cache.
///
/// The kernel depends only on image shape and parameters, so repeated
/// frames of one resolution pay for kernel construction once.
pub struct Pst {
    params: PstParams,
    cache: ShapeCache<Prepared>,
}

impl Pst {
    pub fn new(params: PstParams) -> Result<Self> {
        params.validate()?;
        Ok(Self {
            params,
            cache: ShapeCache::new(),
        })
    }

    pub fn params(&self) -> &PstParams {
        &self.params
    }

    fn prepared(&self, rows: usize, cols: usize) -> Result<Arc<Prepared>> {
        self.cache.get_or_try_build((rows, cols), || {
            let grid = FrequencyGrid::new(rows, cols)?;
            let kernel = pst_kernel(&grid, &self.params)?;
            let lowpass = gaussian_lowpass(&grid, &self.params.lowpass)?;
            Ok(Prepared { kernel, lowpass })
        })
    }

    /// Detected phase before normalization, on a single-channel grid.
    pub fn raw_phase(&self, gray: &Grid) -> Result<Grid> {
        let prepared = self.prepared(gray.rows(), gray.cols())?;
        let field = apply_stretch_2d(gray, &prepared.kernel, &prepared.lowpass)?;
        Ok(phase_of(&field))
    }

    /// Analog output: detected phase normalized to `[-1, 1]` by the frame's
    /// peak magnitude (an all-zero map stays zero).
    pub fn analog(&self, image: &Image) -> Result<Grid> {
        Ok(self.raw_phase(&image.luma())?.normalized_by_max_abs())
    }

    /// Digital output: thresholded and morphologically cleaned edge map.
    pub fn digital(&self, image: &Image) -> Result<EdgeMap> {
        Ok(pst_postprocess(&self.analog(image)?, &self.params))
    }

    /// Full run: analog or digital depending on `digital_output`.
    pub fn run(&self, image: &Image) -> Result<PstOutput> {
        if self.params.digital_output {
            Ok(PstOutput::Digital(self.digital(image)?))
        } else {
            Ok(PstOutput::Analog(self.analog(image)?))
        }
    }
}
