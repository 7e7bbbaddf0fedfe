//! Deterministic synthetic images: benchmark frames, golden-test inputs
//! and the smooth low-light set. Everything here is seeded, so repeated
//! runs produce bit-identical pixels.

use phase_stretch::{Grid, Image};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

/// Structured grayscale frame for benchmarking: smooth gradients, a few
/// sinusoidal textures and seeded noise so no spectral bin is empty.
pub fn bench_gray_frame(width: usize, height: usize) -> Image {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
    let mut grid = Grid::from_fn(height, width, |r, c| {
        let x = c as f64 / width as f64;
        let y = r as f64 / height as f64;
        0.35 + 0.25 * x + 0.1 * (14.0 * PI * x).sin() * (10.0 * PI * y).cos() + 0.1 * y
    });
    for v in grid.data_mut() {
        *v = (*v + rng.gen_range(-0.05..0.05)).clamp(0.0, 1.0);
    }
    Image::from_gray(grid).expect("bench frame dimensions")
}

/// Dim RGB frame for benchmarking the enhancement paths.
pub fn bench_rgb_frame(width: usize, height: usize) -> Image {
    let mut rng = ChaCha8Rng::seed_from_u64(0xda12_c0de);
    let mut data = Vec::with_capacity(width * height * 3);
    for r in 0..height {
        for c in 0..width {
            let x = c as f64 / width as f64;
            let y = r as f64 / height as f64;
            let base = 0.05 + 0.12 * (1.0 - y) + 0.05 * (6.0 * PI * x).sin().abs();
            let noise = rng.gen_range(-0.01..0.01);
            data.push((base + 0.02 * x + noise).clamp(0.0, 1.0));
            data.push((base + noise).clamp(0.0, 1.0));
            data.push((base * 0.8 + 0.01 + noise).clamp(0.0, 1.0));
        }
    }
    Image::new(height, width, 3, data).expect("bench frame dimensions")
}

fn stamp(grid: &mut Grid, row: f64, col: f64, radius: f64, value: f64) {
    let r0 = ((row - 3.0 * radius).floor().max(0.0)) as usize;
    let r1 = ((row + 3.0 * radius).ceil().min(grid.rows() as f64 - 1.0)) as usize;
    let c0 = ((col - 3.0 * radius).floor().max(0.0)) as usize;
    let c1 = ((col + 3.0 * radius).ceil().min(grid.cols() as f64 - 1.0)) as usize;
    for r in r0..=r1 {
        for c in c0..=c1 {
            let d2 = (r as f64 - row).powi(2) + (c as f64 - col).powi(2);
            let w = (-d2 / (2.0 * radius * radius)).exp();
            let current = grid.at(r, c);
            grid.set(r, c, current.max(value * w + current * (1.0 - w)));
        }
    }
}

/// Vessel-like grayscale test image: a dark fundus-style disc with bright
/// branching curves radiating from a root point.
pub fn retina_like(size: usize) -> Image {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0e11_a001);
    let center = size as f64 / 2.0;
    let mut grid = Grid::from_fn(size, size, |r, c| {
        let d = ((r as f64 - center).powi(2) + (c as f64 - center).powi(2)).sqrt();
        let vignette = (1.0 - (d / center).powi(2)).max(0.0);
        0.04 + 0.10 * vignette
    });

    // Random-walk strokes with occasional branching.
    let mut stack = Vec::new();
    for k in 0..6 {
        let angle = k as f64 / 6.0 * 2.0 * PI + rng.gen_range(-0.2..0.2);
        stack.push((center, center, angle, 2.2_f64, 0));
    }
    while let Some((mut row, mut col, mut angle, mut width, depth)) = stack.pop() {
        let steps = rng.gen_range(size / 4..size / 2);
        for _ in 0..steps {
            row += angle.sin();
            col += angle.cos();
            if row < 2.0 || col < 2.0 || row > size as f64 - 3.0 || col > size as f64 - 3.0 {
                break;
            }
            angle += rng.gen_range(-0.22..0.22);
            width = (width * 0.996).max(0.7);
            stamp(&mut grid, row, col, width, 0.55);
            if depth < 2 && rng.gen_bool(0.02) {
                let split = rng.gen_range(0.35..0.8);
                stack.push((row, col, angle + split, width * 0.75, depth + 1));
                angle -= split * 0.5;
            }
        }
    }
    for v in grid.data_mut() {
        *v = v.clamp(0.0, 1.0);
    }
    Image::from_gray(grid).expect("retina dimensions")
}

/// Radial petal pattern: edges at every orientation around the center,
/// for exercising direction-to-hue mapping.
pub fn radial_pattern(size: usize) -> Image {
    let center = size as f64 / 2.0;
    let grid = Grid::from_fn(size, size, |r, c| {
        let dy = r as f64 - center;
        let dx = c as f64 - center;
        let radius = dx.hypot(dy);
        let angle = dy.atan2(dx);
        let ring = (-(radius - 0.3 * size as f64).powi(2) / (2.0 * (0.12 * size as f64).powi(2)))
            .exp();
        // Hard petal boundaries: 24 radial edges, one per half-period.
        let petals = if (12.0 * angle).cos() > 0.0 { 1.0 } else { 0.1 };
        let disc = if radius < 0.08 * size as f64 { 0.9 } else { 0.0 };
        (0.08 + 0.8 * ring * petals + disc).clamp(0.0, 1.0)
    });
    Image::from_gray(grid).expect("radial dimensions")
}

/// Smooth dark RGB scene: blobs of dim light over a gentle gradient.
pub fn dark_photo(size: usize) -> Image {
    let mut rng = ChaCha8Rng::seed_from_u64(0xdeed_0b5c);
    let blobs: Vec<(f64, f64, f64, f64)> = (0..5)
        .map(|_| {
            (
                rng.gen_range(0.2..0.8) * size as f64,
                rng.gen_range(0.2..0.8) * size as f64,
                rng.gen_range(0.1..0.25) * size as f64,
                rng.gen_range(0.08..0.2),
            )
        })
        .collect();
    let mut data = Vec::with_capacity(size * size * 3);
    for r in 0..size {
        for c in 0..size {
            let mut v = 0.02 + 0.04 * (r as f64 / size as f64);
            for &(br, bc, radius, height) in &blobs {
                let d2 = (r as f64 - br).powi(2) + (c as f64 - bc).powi(2);
                v += height * (-d2 / (2.0 * radius * radius)).exp();
            }
            let v = v.clamp(0.0, 0.3);
            data.push((v * 1.05).min(0.3));
            data.push(v);
            data.push((v * 0.85 + 0.005).min(0.3));
        }
    }
    Image::new(size, size, 3, data).expect("dark photo dimensions")
}

/// Smooth low-light single-channel frames (values well under 0.25),
/// built from low-frequency sinusoids and broad Gaussian bumps.
pub fn smooth_low_light_set(count: usize, size: usize) -> Vec<Grid> {
    (0..count)
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(0x10_0b5c + i as u64);
            let fx = rng.gen_range(1.0..2.5);
            let fy = rng.gen_range(1.0..2.5);
            let phase = rng.gen_range(0.0..PI);
            let bump_r = rng.gen_range(0.3..0.6) * size as f64;
            let bump_c = rng.gen_range(0.3..0.6) * size as f64;
            let bump_w = rng.gen_range(0.2..0.4) * size as f64;
            Grid::from_fn(size, size, |r, c| {
                let x = c as f64 / size as f64;
                let y = r as f64 / size as f64;
                let wave = 0.5 + 0.5 * (2.0 * PI * fx * x + phase).sin() * (2.0 * PI * fy * y).cos();
                let d2 = (r as f64 - bump_r).powi(2) + (c as f64 - bump_c).powi(2);
                let bump = (-d2 / (2.0 * bump_w * bump_w)).exp();
                0.02 + 0.1 * wave + 0.08 * bump
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic_and_in_range() {
        let a = retina_like(64);
        let b = retina_like(64);
        assert_eq!(a.data(), b.data());
        assert!(a.data().iter().all(|&v| (0.0..=1.0).contains(&v)));

        let a = dark_photo(48);
        let b = dark_photo(48);
        assert_eq!(a.data(), b.data());
        assert!(a.data().iter().all(|&v| (0.0..=1.0).contains(&v)));

        let a = bench_gray_frame(100, 60);
        let b = bench_gray_frame(100, 60);
        assert_eq!(a.data(), b.data());
        assert_eq!((a.rows(), a.cols()), (60, 100));
    }

    #[test]
    fn low_light_set_is_dim() {
        for frame in smooth_low_light_set(4, 32) {
            assert!(frame.data().iter().all(|&v| (0.0..0.3).contains(&v)));
        }
    }
}
