//! Thin wrapper around `rustfft` for the 1D/2D transforms used by the
//! stretch operators. Forward transforms are unnormalized; callers divide
//! inverse results by the sample count to close the round trip.

use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};

static PLANNER: OnceLock<Mutex<FftPlanner<f64>>> = OnceLock::new();

fn plan(len: usize, direction: FftDirection) -> Arc<dyn Fft<f64>> {
    let planner = PLANNER.get_or_init(|| Mutex::new(FftPlanner::new()));
    planner
        .lock()
        .expect("fft planner lock poisoned")
        .plan_fft(len, direction)
}

pub(crate) fn fft1d(buf: &mut [Complex64], direction: FftDirection) {
    let fft = plan(buf.len(), direction);
    let mut scratch = vec![Complex64::default(); fft.get_inplace_scratch_len()];
    fft.process_with_scratch(buf, &mut scratch);
}

/// In-place 2D transform of a row-major `rows x cols` buffer.
pub(crate) fn fft2d(rows: usize, cols: usize, buf: &mut [Complex64], direction: FftDirection) {
    debug_assert_eq!(buf.len(), rows * cols);
    let row_fft = plan(cols, direction);
    let mut scratch = vec![Complex64::default(); row_fft.get_inplace_scratch_len()];
    for row in buf.chunks_exact_mut(cols) {
        row_fft.process_with_scratch(row, &mut scratch);
    }

    let mut transposed = vec![Complex64::default(); buf.len()];
    transpose(rows, cols, buf, &mut transposed);

    let col_fft = plan(rows, direction);
    scratch.resize(col_fft.get_inplace_scratch_len(), Complex64::default());
    for col in transposed.chunks_exact_mut(rows) {
        col_fft.process_with_scratch(col, &mut scratch);
    }

    transpose(cols, rows, &transposed, buf);
}

/// Blocked transpose of a row-major `rows x cols` matrix into `dst`.
fn transpose(rows: usize, cols: usize, src: &[Complex64], dst: &mut [Complex64]) {
    const BLOCK: usize = 32;
    for rb in (0..rows).step_by(BLOCK) {
        for cb in (0..cols).step_by(BLOCK) {
            for r in rb..(rb + BLOCK).min(rows) {
                for c in cb..(cb + BLOCK).min(cols) {
                    dst[c * rows + r] = src[r * cols + c];
                }
            }
        }
    }
}
