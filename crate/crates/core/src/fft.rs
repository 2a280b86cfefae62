//! Thin wrappers over `rustfft` with the crate's scaling conventions.
//!
//! `rustfft` computes unnormalized transforms; the helpers here either leave
//! the result unnormalized (callers that need raw exponential sums) or apply
//! the unitary `1/sqrt(N)` factor.

use num_complex::Complex;
use rustfft::FftPlanner;

use crate::Scalar;

/// Unnormalized forward DFT in place: `X[k] = sum_n x[n] e^{-j2pi nk/N}`.
pub fn forward_unscaled<S: Scalar>(buf: &mut [Complex<S>]) {
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(buf.len()).process(buf);
}

/// Unnormalized inverse DFT in place: `X[k] = sum_n x[n] e^{+j2pi nk/N}`.
pub fn inverse_unscaled<S: Scalar>(buf: &mut [Complex<S>]) {
    let mut planner = FftPlanner::new();
    planner.plan_fft_inverse(buf.len()).process(buf);
}

/// Unitary inverse DFT in place: `inverse_unscaled` scaled by `1/sqrt(N)`.
pub fn inverse_unitary<S: Scalar>(buf: &mut [Complex<S>]) {
    inverse_unscaled(buf);
    let scale = S::one() / S::from(buf.len()).unwrap().sqrt();
    for v in buf.iter_mut() {
        *v = v.scale(scale);
    }
}

/// Unitary forward DFT in place: `forward_unscaled` scaled by `1/sqrt(N)`.
#[allow(dead_code)] // exercised by the round-trip tests
pub fn forward_unitary<S: Scalar>(buf: &mut [Complex<S>]) {
    forward_unscaled(buf);
    let scale = S::one() / S::from(buf.len()).unwrap().sqrt();
    for v in buf.iter_mut() {
        *v = v.scale(scale);
    }
}
