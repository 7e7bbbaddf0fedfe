//! Direct-summation DFT oracles, independent of the library's FFT path.
//!
//! Everything here is O(N^2) (1D) or O(N^4) (2D) on purpose: the naive
//! sums are easy to audit and serve as the reference the fast transforms
//! are checked against.

use num_complex::Complex64;
use std::f64::consts::PI;

/// Naive forward DFT: `X[k] = sum_n x[n] exp(-2 pi i k n / N)`.
pub fn naive_dft_1d(input: &[Complex64]) -> Vec<Complex64> {
    let n = input.len();
    (0..n)
        .map(|k| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (idx, &v) in input.iter().enumerate() {
                let angle = -2.0 * PI * (k * idx) as f64 / n as f64;
                acc += v * Complex64::new(angle.cos(), angle.sin());
            }
            acc
        })
        .collect()
}

/// Naive inverse DFT with 1/N normalization.
pub fn naive_idft_1d(input: &[Complex64]) -> Vec<Complex64> {
    let n = input.len();
    (0..n)
        .map(|k| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (idx, &v) in input.iter().enumerate() {
                let angle = 2.0 * PI * (k * idx) as f64 / n as f64;
                acc += v * Complex64::new(angle.cos(), angle.sin());
            }
            acc / n as f64
        })
        .collect()
}

/// Naive 2D DFT of a row-major `rows x cols` buffer (direct double sum).
pub fn naive_dft_2d(rows: usize, cols: usize, input: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); rows * cols];
    for kr in 0..rows {
        for kc in 0..cols {
            let mut acc = Complex64::new(0.0, 0.0);
            for r in 0..rows {
                for c in 0..cols {
                    let angle = -2.0
                        * PI
                        * ((kr * r) as f64 / rows as f64 + (kc * c) as f64 / cols as f64);
                    acc += input[r * cols + c] * Complex64::new(angle.cos(), angle.sin());
                }
            }
            out[kr * cols + kc] = acc;
        }
    }
    out
}

/// Naive inverse 2D DFT with 1/(rows*cols) normalization.
pub fn naive_idft_2d(rows: usize, cols: usize, input: &[Complex64]) -> Vec<Complex64> {
    let n = (rows * cols) as f64;
    let mut out = vec![Complex64::new(0.0, 0.0); rows * cols];
    for kr in 0..rows {
        for kc in 0..cols {
            let mut acc = Complex64::new(0.0, 0.0);
            for r in 0..rows {
                for c in 0..cols {
                    let angle =
                        2.0 * PI * ((kr * r) as f64 / rows as f64 + (kc * c) as f64 / cols as f64);
                    acc += input[r * cols + c] * Complex64::new(angle.cos(), angle.sin());
                }
            }
            out[kr * cols + kc] = acc / n;
        }
    }
    out
}

/// Reference stretch operator in 1D, built only on the naive transforms.
pub fn naive_stretch_1d(signal: &[f64], phase: &[f64], amplitude: &[f64]) -> Vec<Complex64> {
    let input: Vec<Complex64> = signal.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let mut spectrum = naive_dft_1d(&input);
    for ((v, &phi), &amp) in spectrum.iter_mut().zip(phase).zip(amplitude) {
        *v *= amp * Complex64::new(phi.cos(), -phi.sin());
    }
    naive_idft_1d(&spectrum)
}

/// Reference stretch operator in 2D, built only on the naive transforms.
pub fn naive_stretch_2d(
    rows: usize,
    cols: usize,
    image: &[f64],
    phase: &[f64],
    amplitude: &[f64],
) -> Vec<Complex64> {
    let input: Vec<Complex64> = image.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let mut spectrum = naive_dft_2d(rows, cols, &input);
    for ((v, &phi), &amp) in spectrum.iter_mut().zip(phase).zip(amplitude) {
        *v *= amp * Complex64::new(phi.cos(), -phi.sin());
    }
    naive_idft_2d(rows, cols, &spectrum)
}
