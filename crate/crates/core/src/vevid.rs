//! Vision Enhancement via Virtual diffraction and coherent Detection:
//! low-light (value channel) or color (saturation channel) enhancement.
//!
//! The full path pushes the biased channel through a Gaussian spectral
//! phase kernel and reads out `atan(G * Im / channel)`; the lite path is
//! the transform-free closed form `atan(-G * (channel + b) / channel)`.
//! Raw phase read-outs are min-max normalized into a displayable `[0, 1]`
//! channel.

use std::sync::Arc;

use crate::color::{hsv_to_rgb, rgb_to_hsv};
use crate::error::{Error, Result};
use crate::image::{Grid, Image};
use crate::spectral::{
    forward_spectrum, stretch_phase_only, FrequencyGrid, PhaseKernel, ShapeCache,
};

/// Guard for the `1/channel` read-out; a zero-valued pixel saturates the
/// arctangent instead of dividing by zero.
pub const DENOMINATOR_EPS: f64 = 1e-8;

/// Raw phase spans below this (radians) are treated as constant frames:
/// min-max normalization would only amplify numerical noise there.
const DEGENERATE_SPAN: f64 = 1e-6;

/// Channel the enhancement operates on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VevidChannel {
    /// Value channel: low-light enhancement.
    Value,
    /// Saturation channel: color enhancement.
    Saturation,
}

/// VEViD configuration: `strength` and `variance` shape the Gaussian
/// kernel phase `S * exp(-rho^2 / T)`, `regularization` is the additive
/// bias `b`, `gain` the phase activation gain `G`.
#[derive(Debug, Clone, PartialEq)]
pub struct VevidParams {
    pub strength: f64,
    pub variance: f64,
    pub regularization: f64,
    pub gain: f64,
    pub channel: VevidChannel,
    pub lite: bool,
}

impl Default for VevidParams {
    fn default() -> Self {
        Self {
            strength: 0.3,
            variance: 0.002,
            regularization: 0.16,
            gain: 1.4,
            channel: VevidChannel::Value,
            lite: false,
        }
    }
}

impl VevidParams {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("strength", self.strength),
            ("variance", self.variance),
            ("regularization", self.regularization),
            ("gain", self.gain),
        ] {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::invalid_param(name, format!("must be > 0, got {v}")));
            }
        }
        Ok(())
    }
}

/// Gaussian phase kernel `phi = strength * exp(-rho^2 / variance)`:
/// maximal at DC, decaying radially.
pub fn vevid_kernel(grid: &FrequencyGrid, strength: f64, variance: f64) -> Result<PhaseKernel> {
    if !strength.is_finite() || strength <= 0.0 {
        return Err(Error::invalid_param("strength", "must be > 0"));
    }
    if !variance.is_finite() || variance <= 0.0 {
        return Err(Error::invalid_param("variance", "must be > 0"));
    }
    PhaseKernel::new(grid.rho().map(|rho| strength * (-rho * rho / variance).exp()))
}

/// Scalar lite transfer: `atan(-gain * (v + b) / max(v, eps))`. Strictly
/// increasing in `v` for positive gain and bias.
pub fn lite_transfer(v: f64, params: &VevidParams) -> f64 {
    (-params.gain * (v + params.regularization) / v.max(DENOMINATOR_EPS)).atan()
}

fn raw_lite(channel: &Grid, params: &VevidParams) -> Grid {
    channel.map(|v| lite_transfer(v, params))
}

fn raw_full(channel: &Grid, kernel: &PhaseKernel, params: &VevidParams) -> Result<Grid> {
    let biased = channel.map(|v| v + params.regularization);
    let spectrum = forward_spectrum(&biased);
    let field = stretch_phase_only(&spectrum, kernel)?;
    let data = field
        .data()
        .iter()
        .zip(channel.data())
        .map(|(f, &v)| (params.gain * f.im / v.max(DENOMINATOR_EPS)).atan())
        .collect();
    Grid::new(channel.rows(), channel.cols(), data)
}

/// Min-max normalization into `[0, 1]`; `None` when the raw map is flat
/// (span below [`DEGENERATE_SPAN`]).
fn normalize_unit(raw: &Grid) -> Option<Grid> {
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for &v in raw.data() {
        min = min.min(v);
        max = max.max(v);
    }
    let span = max - min;
    if span.is_nan() || span <= DEGENERATE_SPAN {
        return None;
    }
    Some(raw.map(|v| (v - min) / span))
}

/// Full VEViD on one channel: stretch the biased channel through the
/// Gaussian kernel (this transform carries no low-pass term), read out the
/// gained arctangent phase, then min-max normalize. A degenerate
/// (constant-raw) frame maps to all zeros.
pub fn vevid_full(channel: &Grid, params: &VevidParams, grid: &FrequencyGrid) -> Result<Grid> {
    params.validate()?;
    let kernel = vevid_kernel(grid, params.strength, params.variance)?;
    let raw = raw_full(channel, &kernel, params)?;
    Ok(normalize_unit(&raw).unwrap_or_else(|| Grid::zeros(channel.rows(), channel.cols())))
}

/// Closed-form VEViD-lite on one channel; same normalization contract as
/// [`vevid_full`].
pub fn vevid_lite(channel: &Grid, params: &VevidParams) -> Result<Grid> {
    params.validate()?;
    let raw = raw_lite(channel, params);
    Ok(normalize_unit(&raw).unwrap_or_else(|| Grid::zeros(channel.rows(), channel.cols())))
}

struct Prepared {
    kernel: PhaseKernel,
}

/// VEViD runner over RGB images, with a per-resolution kernel cache.
pub struct Vevid {
    params: VevidParams,
    cache: ShapeCache<Prepared>,
}

impl Vevid {
    pub fn new(params: VevidParams) -> Result<Self> {
        params.validate()?;
        Ok(Self {
            params,
            cache: ShapeCache::new(),
        })
    }

    pub fn params(&self) -> &VevidParams {
        &self.params
    }

    fn prepared(&self, rows: usize, cols: usize) -> Result<Arc<Prepared>> {
        self.cache.get_or_try_build((rows, cols), || {
            let grid = FrequencyGrid::new(rows, cols)?;
            let kernel = vevid_kernel(&grid, self.params.strength, self.params.variance)?;
            Ok(Prepared { kernel })
        })
    }

    /// Enhance a 3-channel image: convert to HSV, replace the selected
    /// channel with its enhanced version, convert back. A degenerate
    /// (constant-raw) frame passes the original channel through unchanged.
    pub fn run(&self, image: &Image) -> Result<Image> {
        let mut hsv = rgb_to_hsv(image)?;
        let channel = match self.params.channel {
            VevidChannel::Value => hsv.value_grid(),
            VevidChannel::Saturation => hsv.saturation_grid(),
        };
        let raw = if self.params.lite {
            raw_lite(&channel, &self.params)
        } else {
            let prepared = self.prepared(channel.rows(), channel.cols())?;
            raw_full(&channel, &prepared.kernel, &self.params)?
        };
        if let Some(enhanced) = normalize_unit(&raw) {
            match self.params.channel {
                VevidChannel::Value => hsv.set_value(&enhanced)?,
                VevidChannel::Saturation => hsv.set_saturation(&enhanced)?,
            }
        }
        Ok(hsv_to_rgb(&hsv))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn defaults() -> VevidParams {
        VevidParams::default()
    }

    #[test]
    fn kernel_peaks_at_dc() {
        let grid = FrequencyGrid::new(8, 8).unwrap();
        let kernel = vevid_kernel(&grid, 0.3, 0.002).unwrap();
        assert_eq!(kernel.phi().at(0, 0), 0.3);
        let peak = kernel.phi().data().iter().cloned().fold(0.0, f64::max);
        assert_eq!(peak, 0.3);
    }

    #[test]
    fn kernel_matches_direct_evaluation() {
        // rho^2 = T gives exactly S/e.
        let s: f64 = 0.7;
        let t: f64 = 0.01;
        let rho: f64 = t.sqrt();
        let phi = s * (-rho * rho / t).exp();
        assert!((phi - s / std::f64::consts::E).abs() < 1e-15);

        // S=1, T=0.01, rho=0.2: exp(-4), frozen from independent evaluation.
        let phi = 1.0 * (-(0.2_f64 * 0.2) / 0.01).exp();
        assert!((phi - 0.01831563888873418).abs() < 1e-12);
    }

    #[test]
    fn lite_transfer_matches_independent_evaluation() {
        // Frozen scalar values from 30-digit evaluation.
        let p = VevidParams {
            gain: 1.0,
            regularization: 0.2,
            ..defaults()
        };
        assert!((lite_transfer(0.2, &p) - (-1.1071487177940904)).abs() < 1e-12);
        assert!((lite_transfer(0.1, &p) - (-1.2490457723982544)).abs() < 1e-12);

        let unit = VevidParams {
            gain: 1.0,
            regularization: 1e-300, // effectively zero while staying valid
            ..defaults()
        };
        assert!((lite_transfer(1.0, &unit) - (-PI / 4.0)).abs() < 1e-12);
    }

    #[test]
    fn lite_two_pixel_ordering() {
        let p = VevidParams {
            gain: 1.0,
            regularization: 0.2,
            lite: true,
            ..defaults()
        };
        let channel = Grid::new(1, 2, vec![0.1, 0.9]).unwrap();
        let out = vevid_lite(&channel, &p).unwrap();
        // atan(-3) < atan(-11/9), so the dark pixel maps to 0, bright to 1.
        assert_eq!(out.data(), &[0.0, 1.0]);
    }

    #[test]
    fn vanishing_kernel_gives_zero_output() {
        let params = VevidParams {
            strength: 1e-9,
            ..defaults()
        };
        let grid = FrequencyGrid::new(16, 16).unwrap();
        let channel = Grid::from_fn(16, 16, |r, c| 0.1 + 0.05 * ((r + 2 * c) as f64 * 0.4).sin());
        let out = vevid_full(&channel, &params, &grid).unwrap();
        assert!(out.data().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn constant_channel_gives_zero_output() {
        let grid = FrequencyGrid::new(8, 8).unwrap();
        let channel = Grid::filled(8, 8, 0.4);
        let out = vevid_full(&channel, &defaults(), &grid).unwrap();
        assert!(out.data().iter().all(|&v| v == 0.0));
        let out = vevid_lite(&channel, &defaults()).unwrap();
        assert!(out.data().iter().all(|&v| v == 0.0));
    }

    fn low_light(rows: usize, cols: usize) -> Grid {
        Grid::from_fn(rows, cols, |r, c| {
            let x = c as f64 / cols as f64;
            let y = r as f64 / rows as f64;
            0.02 + 0.18 * (0.5 + 0.5 * (2.0 * PI * x).sin() * (2.0 * PI * y).cos())
        })
    }

    #[test]
    fn full_path_brightens_dark_frames() {
        let grid = FrequencyGrid::new(64, 64).unwrap();
        let channel = low_light(64, 64);
        let out = vevid_full(&channel, &defaults(), &grid).unwrap();
        let mean_in: f64 = channel.data().iter().sum::<f64>() / channel.len() as f64;
        let mean_out: f64 = out.data().iter().sum::<f64>() / out.len() as f64;
        assert!(mean_out > mean_in, "expected brightening: {mean_out} <= {mean_in}");
        assert!(out.data().iter().all(|&v| (0.0..=1.0).contains(&v)));
    }

    #[test]
    fn outputs_stay_in_range_with_zero_pixels() {
        let mut channel = low_light(16, 16);
        channel.set(0, 0, 0.0);
        channel.set(5, 7, 0.0);
        let grid = FrequencyGrid::new(16, 16).unwrap();
        for out in [
            vevid_full(&channel, &defaults(), &grid).unwrap(),
            vevid_lite(&channel, &defaults()).unwrap(),
        ] {
            assert!(out.data().iter().all(|v| v.is_finite()));
            assert!(out.data().iter().all(|&v| (0.0..=1.0).contains(&v)));
        }
    }

    #[test]
    fn darker_pixels_get_larger_boost() {
        // On a linear ramp the normalized lite output lifts dark pixels
        // harder than bright ones.
        let n = 256;
        let ramp = Grid::from_fn(1, n, |_, c| c as f64 / (n - 1) as f64);
        let out = vevid_lite(&ramp, &defaults()).unwrap();
        let boost_at = |v: f64| {
            let idx = (v * (n - 1) as f64).round() as usize;
            out.at(0, idx) - ramp.at(0, idx)
        };
        assert!(boost_at(0.05) > boost_at(0.8));
    }

    #[test]
    fn lite_preserves_pixel_ordering() {
        let params = VevidParams {
            lite: true,
            ..defaults()
        };
        let channel = Grid::from_fn(8, 8, |r, c| ((r * 8 + c) as f64 * 0.3119).fract());
        let out = vevid_lite(&channel, &params).unwrap();
        let mut pairs: Vec<(f64, f64)> = channel
            .data()
            .iter()
            .cloned()
            .zip(out.data().iter().cloned())
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        for w in pairs.windows(2) {
            if w[1].0 > w[0].0 {
                assert!(w[1].1 > w[0].1, "ordering broken between {:?} and {:?}", w[0], w[1]);
            }
        }
    }

    #[test]
    fn max_value_image_passes_through() {
        // v == 1 everywhere: the raw read-out is constant, so the original
        // channel is kept instead of a normalized-to-zero frame.
        let rgb = Image::new(4, 4, 3, [0.9, 0.4, 1.0].repeat(16).to_vec()).unwrap();
        let vevid = Vevid::new(defaults()).unwrap();
        let out = vevid.run(&rgb).unwrap();
        for (a, b) in out.data().iter().zip(rgb.data()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn run_is_deterministic() {
        let vevid = Vevid::new(defaults()).unwrap();
        let base = low_light(24, 24);
        let rgb = Image::from_rgb_planes(
            &base,
            &base.map(|v| (v * 0.8).min(1.0)),
            &base.map(|v| (v * 1.1).min(1.0)),
        )
        .unwrap();
        let a = vevid.run(&rgb).unwrap();
        let b = vevid.run(&rgb).unwrap();
        assert_eq!(a.data(), b.data());
    }

    #[test]
    fn full_and_lite_roughly_agree_on_smooth_frames() {
        let grid = FrequencyGrid::new(64, 64).unwrap();
        let channel = low_light(64, 64);
        let full = vevid_full(&channel, &defaults(), &grid).unwrap();
        let lite = vevid_lite(&channel, &defaults()).unwrap();
        let mut diffs: Vec<f64> = full
            .data()
            .iter()
            .zip(lite.data())
            .map(|(a, b)| (a - b).abs())
            .collect();
        diffs.sort_by(f64::total_cmp);
        let median = diffs[diffs.len() / 2];
        assert!(median < 0.1, "median full-vs-lite discrepancy {median}");
    }

    #[test]
    fn validation_names_offending_parameter() {
        let bad = VevidParams {
            gain: 0.0,
            ..defaults()
        };
        match Vevid::new(bad) {
            Err(Error::InvalidParameter { name, .. }) => assert_eq!(name, "gain"),
            Err(other) => panic!("expected InvalidParameter, got {other:?}"),
            Ok(_) => panic!("expected validation to fail"),
        }
    }
}
