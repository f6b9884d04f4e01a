//! Evaluation of sparse trigonometric polynomials on uniform grids.
//!
//! Values at `x_t = t/G` depend only on frequencies mod `G`, so an inverse
//! FFT of the folded coefficient vector gives all grid values at once. For
//! very sparse polynomials on small grids a direct evaluation is cheaper.

use std::sync::Mutex;

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};

static PLANNER: Mutex<Option<FftPlanner<f64>>> = Mutex::new(None);

fn plan(len: usize) -> std::sync::Arc<dyn Fft<f64>> {
    let mut guard = PLANNER.lock().unwrap();
    let planner = guard.get_or_insert_with(FftPlanner::new);
    planner.plan_fft(len, FftDirection::Inverse)
}

/// `values[t] = sum_n c_n e(n t / grid)` for `t = 0..grid`.
pub fn eval_on_grid(coeffs: &[(i64, Complex64)], grid: usize) -> Vec<Complex64> {
    assert!(grid >= 1);
    let nnz = coeffs.len();
    // direct evaluation when the FFT would not pay off
    let fft_cost = grid as f64 * (grid as f64).log2().max(1.0) + grid as f64;
    let direct_cost = nnz as f64 * grid as f64;
    if direct_cost <= fft_cost {
        let mut out = vec![Complex64::new(0.0, 0.0); grid];
        for (t, slot) in out.iter_mut().enumerate() {
            let x = t as f64 / grid as f64;
            let mut acc = Complex64::new(0.0, 0.0);
            for &(n, c) in coeffs {
                let phase = std::f64::consts::TAU * (n as f64 * x).fract();
                let (s, co) = phase.sin_cos();
                acc += c * Complex64::new(co, s);
            }
            *slot = acc;
        }
        return out;
    }
    let mut buf = vec![Complex64::new(0.0, 0.0); grid];
    for &(n, c) in coeffs {
        let idx = n.rem_euclid(grid as i64) as usize;
        buf[idx] += c;
    }
    plan(grid).process(&mut buf);
    buf
}

/// Same as [`eval_on_grid`] for a dense coefficient slice where `dense[n]`
/// is the coefficient of frequency `n` (0-based).
pub fn eval_dense_on_grid(dense: &[Complex64], grid: usize) -> Vec<Complex64> {
    assert!(grid >= dense.len());
    let mut buf = vec![Complex64::new(0.0, 0.0); grid];
    buf[..dense.len()].copy_from_slice(dense);
    plan(grid).process(&mut buf);
    buf
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fft_matches_direct_evaluation() {
        let coeffs = vec![
            (0i64, Complex64::new(0.3, 0.0)),
            (5, Complex64::new(1.0, -2.0)),
            (-3, Complex64::new(0.5, 0.25)),
            (17, Complex64::new(-1.0, 0.0)),
        ];
        let grid = 64;
        let fft_vals = {
            let mut buf = vec![Complex64::new(0.0, 0.0); grid];
            for &(n, c) in &coeffs {
                buf[n.rem_euclid(grid as i64) as usize] += c;
            }
            plan(grid).process(&mut buf);
            buf
        };
        for t in 0..grid {
            let x = t as f64 / grid as f64;
            let mut acc = Complex64::new(0.0, 0.0);
            for &(n, c) in &coeffs {
                let phase = std::f64::consts::TAU * n as f64 * x;
                acc += c * Complex64::new(phase.cos(), phase.sin());
            }
            assert!((acc - fft_vals[t]).norm() < 1e-9);
        }
    }
}
