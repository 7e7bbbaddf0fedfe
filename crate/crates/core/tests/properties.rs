//! Property tests for the spectral substrate and the algorithm contracts.

use std::f64::consts::PI;

use num_complex::Complex64;
use phase_stretch::color::{pixel_hsv_to_rgb, pixel_rgb_to_hsv};
use phase_stretch::image::Grid;
use phase_stretch::page::rotate_frequency_coords;
use phase_stretch::spectral::{
    apply_stretch_2d, phase_of, ComplexField, FrequencyGrid, PhaseKernel,
};
use phase_stretch::vevid::{lite_transfer, VevidParams};
use proptest::prelude::*;

fn grid_from(rows: usize, cols: usize, values: &[f64]) -> Grid {
    Grid::new(rows, cols, values[..rows * cols].to_vec()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// S{aX + bY} = a S{X} + b S{Y} for the stretch operator.
    #[test]
    fn stretch_is_linear(
        xs in prop::collection::vec(-1.0f64..1.0, 36),
        ys in prop::collection::vec(-1.0f64..1.0, 36),
        phis in prop::collection::vec(-3.0f64..3.0, 36),
        a in -2.0f64..2.0,
        b in -2.0f64..2.0,
    ) {
        let x = grid_from(6, 6, &xs);
        let y = grid_from(6, 6, &ys);
        let kernel = PhaseKernel::new(grid_from(6, 6, &phis)).unwrap();
        let ones = Grid::filled(6, 6, 1.0);

        let combined = Grid::from_fn(6, 6, |r, c| a * x.at(r, c) + b * y.at(r, c));
        let lhs = apply_stretch_2d(&combined, &kernel, &ones).unwrap();
        let sx = apply_stretch_2d(&x, &kernel, &ones).unwrap();
        let sy = apply_stretch_2d(&y, &kernel, &ones).unwrap();
        for i in 0..36 {
            let rhs = a * sx.data()[i] + b * sy.data()[i];
            prop_assert!((lhs.data()[i] - rhs).norm() < 1e-10);
        }
    }

    /// With a unit-magnitude phase kernel and sub-unit amplitude the
    /// operator cannot create energy.
    #[test]
    fn stretch_respects_energy_bound(
        xs in prop::collection::vec(-1.0f64..1.0, 48),
        phis in prop::collection::vec(-3.0f64..3.0, 48),
        amps in prop::collection::vec(0.0f64..1.0, 48),
    ) {
        let x = grid_from(6, 8, &xs);
        let kernel = PhaseKernel::new(grid_from(6, 8, &phis)).unwrap();
        let amplitude = grid_from(6, 8, &amps);
        let out = apply_stretch_2d(&x, &kernel, &amplitude).unwrap();
        let energy_in: f64 = x.data().iter().map(|v| v * v).sum();
        let energy_out: f64 = out.data().iter().map(|v| v.norm_sqr()).sum();
        prop_assert!(energy_out <= energy_in + 1e-9);
    }

    /// Detected phase is always a principal value and never NaN.
    #[test]
    fn phase_stays_in_principal_range(
        res in prop::collection::vec(-1.0f64..1.0, 16),
        ims in prop::collection::vec(-1.0f64..1.0, 16),
        zero_mask in prop::collection::vec(prop::bool::ANY, 16),
    ) {
        let data: Vec<Complex64> = res
            .iter()
            .zip(&ims)
            .zip(&zero_mask)
            .map(|((&re, &im), &zero)| {
                if zero { Complex64::new(0.0, 0.0) } else { Complex64::new(re, im) }
            })
            .collect();
        let field = ComplexField::new(4, 4, data).unwrap();
        let phase = phase_of(&field);
        for &v in phase.data() {
            prop_assert!(v.is_finite());
            prop_assert!(v > -PI && v <= PI);
        }
    }

    /// Rotated frequency coordinates preserve the radial frequency.
    #[test]
    fn rotation_is_an_isometry(theta in -10.0f64..10.0) {
        let grid = FrequencyGrid::new(7, 9).unwrap();
        let (kpm, kpn) = rotate_frequency_coords(&grid, theta);
        for r in 0..7 {
            for c in 0..9 {
                let rho = kpm.at(r, c).hypot(kpn.at(r, c));
                prop_assert!((rho - grid.rho().at(r, c)).abs() < 1e-12);
            }
        }
    }

    /// The lite transfer is strictly increasing, so distinct pixel values
    /// keep their order.
    #[test]
    fn lite_transfer_preserves_order(
        mut values in prop::collection::vec(0.0f64..1.0, 32),
        gain in 0.1f64..5.0,
        bias in 0.01f64..1.0,
    ) {
        let params = VevidParams { gain, regularization: bias, ..VevidParams::default() };
        values.sort_by(f64::total_cmp);
        for w in values.windows(2) {
            if w[1] > w[0] {
                prop_assert!(lite_transfer(w[1], &params) > lite_transfer(w[0], &params));
            }
        }
    }

    /// RGB -> HSV -> RGB is lossless to well below display precision.
    #[test]
    fn hsv_round_trip(r in 0.0f64..=1.0, g in 0.0f64..=1.0, b in 0.0f64..=1.0) {
        let (h, s, v) = pixel_rgb_to_hsv(r, g, b);
        prop_assert!((0.0..1.0).contains(&h));
        prop_assert!((0.0..=1.0).contains(&s));
        prop_assert!((0.0..=1.0).contains(&v));
        let (rr, gg, bb) = pixel_hsv_to_rgb(h, s, v);
        prop_assert!((rr - r).abs() < 1e-6);
        prop_assert!((gg - g).abs() < 1e-6);
        prop_assert!((bb - b).abs() < 1e-6);
    }

    /// Frequency axes keep uniform spacing with DC at bin zero for any
    /// shape.
    #[test]
    fn frequency_axes_are_uniform(rows in 2usize..40, cols in 2usize..40) {
        let grid = FrequencyGrid::new(rows, cols).unwrap();
        prop_assert_eq!(grid.km(0, 0), 0.0);
        prop_assert_eq!(grid.kn(0, 0), 0.0);
        let dk = 1.0 / cols as f64;
        for c in 0..cols {
            let next = grid.km_axis()[(c + 1) % cols];
            let here = grid.km_axis()[c];
            // Spacing is uniform modulo the wrap from +max back to -0.5.
            let step = (next - here + 1.0).rem_euclid(1.0);
            prop_assert!((step - dk).abs() < 1e-12);
            prop_assert!((-0.5..0.5).contains(&here));
        }
    }
}
