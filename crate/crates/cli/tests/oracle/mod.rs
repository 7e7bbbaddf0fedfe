//! Self-contained direct-summation DFT reference for the acceptance
//! suite. Kept independent of the library's transform code on purpose:
//! these sums are the ground truth the fast path is judged against.

use num_complex::Complex64;
use std::f64::consts::PI;

pub fn dft_1d(input: &[Complex64], inverse: bool) -> Vec<Complex64> {
    let n = input.len();
    let sign = if inverse { 2.0 } else { -2.0 };
    let scale = if inverse { 1.0 / n as f64 } else { 1.0 };
    (0..n)
        .map(|k| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (idx, &v) in input.iter().enumerate() {
                let angle = sign * PI * (k * idx) as f64 / n as f64;
                acc += v * Complex64::new(angle.cos(), angle.sin());
            }
            acc * scale
        })
        .collect()
}

pub fn dft_2d(rows: usize, cols: usize, input: &[Complex64], inverse: bool) -> Vec<Complex64> {
    let sign = if inverse { 2.0 } else { -2.0 };
    let scale = if inverse { 1.0 / (rows * cols) as f64 } else { 1.0 };
    let mut out = vec![Complex64::new(0.0, 0.0); rows * cols];
    for kr in 0..rows {
        for kc in 0..cols {
            let mut acc = Complex64::new(0.0, 0.0);
            for r in 0..rows {
                for c in 0..cols {
                    let angle = sign
                        * PI
                        * ((kr * r) as f64 / rows as f64 + (kc * c) as f64 / cols as f64);
                    acc += input[r * cols + c] * Complex64::new(angle.cos(), angle.sin());
                }
            }
            out[kr * cols + kc] = acc * scale;
        }
    }
    out
}

/// Reference 1D stretch operator from the naive transforms.
pub fn stretch_1d(signal: &[f64], phase: &[f64], amplitude: &[f64]) -> Vec<Complex64> {
    let input: Vec<Complex64> = signal.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let mut spectrum = dft_1d(&input, false);
    for ((v, &phi), &amp) in spectrum.iter_mut().zip(phase).zip(amplitude) {
        *v *= amp * Complex64::new(phi.cos(), -phi.sin());
    }
    dft_1d(&spectrum, true)
}

/// Reference 2D stretch operator from the naive transforms.
pub fn stretch_2d(
    rows: usize,
    cols: usize,
    image: &[f64],
    phase: &[f64],
    amplitude: &[f64],
) -> Vec<Complex64> {
    let input: Vec<Complex64> = image.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let mut spectrum = dft_2d(rows, cols, &input, false);
    for ((v, &phi), &amp) in spectrum.iter_mut().zip(phase).zip(amplitude) {
        *v *= amp * Complex64::new(phi.cos(), -phi.sin());
    }
    dft_2d(rows, cols, &spectrum, true)
}
