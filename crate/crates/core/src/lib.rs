//! Sidelobe statistics and power-allocation design for random OFDM ranging
//! signals.
//!
//! An OFDM frame carrying independent, uniformly drawn communication symbols
//! doubles as a ranging waveform: the matched-filter output at the sensing
//! receiver is the signal's autocorrelation function (ACF), and its sidelobes
//! are random because the payload is. This crate computes both the empirical
//! ACF of individual realizations and the closed-form *expected* squared ACF
//! under an arbitrary per-subcarrier power allocation, and optimizes that
//! allocation for the frequency-zero-padded case.
//!
//! The pieces:
//!
//! - [`constellation`]: PSK/QAM symbol sets with unit power, zero mean, zero
//!   pseudo-variance, and their fourth moment `mu4`.
//! - [`waveform`]: power-allocation vectors on the scaled simplex
//!   (`sum = N`, entries >= 0) and OFDM frame synthesis.
//! - [`acf`]: periodic, aperiodic, and zero-padded autocorrelation of one
//!   frame, plus ISL / peak-sidelobe / mainlobe-width metrics.
//! - [`theory`]: closed-form expectations of the squared ACF (per lag,
//!   integrated, normalized) and the gradient of the zero-padded objective.
//! - [`optimizer`]: projected gradient descent over the simplex, and a
//!   successive convex approximation loop for the mainlobe-width constrained
//!   problem.
//!
//! # DFT convention
//!
//! Everything in this crate uses the *unitary* DFT pair: both directions
//! carry a `1/sqrt(N)` factor, so transforms preserve the l2 norm. The
//! frequency-domain symbol vector `c` (symbols scaled by the square root of
//! the per-subcarrier power) and the time-domain frame `x` are related by
//! `x = unitary IDFT of c`, and all closed forms in [`theory`] assume exactly
//! this scaling. Mixing in an unnormalized FFT convention will silently break
//! every mainlobe/sidelobe level by factors of `N`.
//!
//! Scalar type: all numerics are generic over [`Scalar`] (`f32` or `f64`);
//! concrete aliases like [`Constellation64`] are exported at the crate root.
//! Every random operation takes an explicit seed and is bit-reproducible.
//!
//! # Example
//!
//! ```
//! use ofdm_pa::{acf, modulate, theory, Constellation64, PowerAllocation64};
//!
//! // One random 16-QAM frame over 64 subcarriers, uniform power.
//! let constellation = Constellation64::from_tag("16qam").unwrap();
//! let pa = PowerAllocation64::uniform(64);
//! let frame = modulate(&constellation.sample_symbols(64, 7), &pa).unwrap();
//!
//! // Its periodic autocorrelation, and the closed-form expectation the
//! // squared sidelobes fluctuate around: (mu4 - 1) * N = 20.48.
//! let profile = acf::pacf(&frame);
//! let expected = theory::pacf_expected_sq(&pa, constellation.mu4(), 1);
//! assert!((expected - 20.48).abs() < 1e-9);
//! assert!(profile.mag_sq(1) > 0.0);
//!
//! // Under PSK the sidelobes vanish exactly: the profile is an impulse.
//! let psk = Constellation64::from_tag("qpsk").unwrap();
//! let frame = modulate(&psk.sample_symbols(64, 7), &pa).unwrap();
//! let profile = acf::pacf(&frame);
//! assert!(profile.isl().unwrap() / profile.mainlobe().powi(2) < 1e-24);
//! ```

pub mod acf;
pub mod constellation;
mod error;
mod fft;
pub mod optimizer;
mod scalar;
pub mod theory;
pub mod waveform;

pub use error::Error;
pub use scalar::Scalar;

pub use acf::{AcfKind, AcfProfile};
pub use constellation::Constellation;
pub use optimizer::{OptimizerTrace, PgdConfig, ScaConfig, StopReason, WidthSubproblem};
pub use theory::{AacfBasis, ZpGeometry};
pub use waveform::{modulate, PowerAllocation, SignalFrame};

/// Convenience result alias for fallible operations in this crate.
pub type Result<T> = std::result::Result<T, Error>;

// Concrete aliases for the two supported scalar types. The CLI and the
// experiment harness work in f64 throughout.

pub type Constellation64 = Constellation<f64>;
pub type PowerAllocation64 = PowerAllocation<f64>;
pub type SignalFrame64 = SignalFrame<f64>;
pub type AcfProfile64 = AcfProfile<f64>;
pub type ZpGeometry64 = ZpGeometry<f64>;
pub type AacfBasis64 = AacfBasis<f64>;
pub type PgdConfig64 = PgdConfig<f64>;
pub type ScaConfig64 = ScaConfig<f64>;
pub type OptimizerTrace64 = OptimizerTrace<f64>;

pub type Constellation32 = Constellation<f32>;
pub type PowerAllocation32 = PowerAllocation<f32>;
pub type SignalFrame32 = SignalFrame<f32>;
pub type AcfProfile32 = AcfProfile<f32>;
pub type ZpGeometry32 = ZpGeometry<f32>;
pub type AacfBasis32 = AacfBasis<f32>;
