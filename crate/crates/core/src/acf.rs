//! Empirical autocorrelation of a single OFDM frame, three ways.
//!
//! - **Periodic** (cyclic-prefix reception): the cyclic correlation of the
//!   time-domain frame. By the diagonalization of cyclic shifts, it equals
//!   the unnormalized inverse DFT of `|c[n]|^2`, the squared magnitudes of
//!   the frequency samples; that transform route is what [`pacf`] computes.
//! - **Aperiodic** (no cyclic prefix): the linear correlation, computed by
//!   zero-extending the frame to length `2N` and multiplying in the
//!   transform domain.
//! - **Zero-padded periodic**: the inverse DFT of `|c[n]|^2` padded with
//!   `N(L-1)` zeros, which interpolates the delay grid by the factor `L`.
//!
//! Every transform route has a direct-sum counterpart in [`mod@reference`]; the
//! two are independent code paths and the tests hold them to 1e-10 of each
//! other. Lags are stored for `k >= 0` only (negative lags follow from
//! conjugate symmetry).

use std::ops::Range;

use num_complex::Complex;

use crate::{fft, Error, Result, Scalar, SignalFrame};

/// Floor applied to normalized magnitudes before taking logs: power ratios
/// below `1e-15` report as -150 dB instead of -inf (PSK/uniform sidelobes
/// are exactly zero).
pub const DB_RATIO_FLOOR: f64 = 1e-15;

/// Which convolution produced a profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AcfKind {
    Periodic,
    Aperiodic,
    ZeroPadded,
}

/// Lag-indexed complex correlation values for one frame.
#[derive(Debug, Clone)]
pub struct AcfProfile<S: Scalar> {
    kind: AcfKind,
    values: Vec<Complex<S>>,
    n: usize,
    pad_factor: usize,
}

/// Periodic ACF: `values[k] = sum_n |c[n]|^2 e^{j2pi k n / N}`, length `N`.
pub fn pacf<S: Scalar>(frame: &SignalFrame<S>) -> AcfProfile<S> {
    let mut profile = padded_power_idft(frame, 1);
    profile.kind = AcfKind::Periodic;
    profile
}

/// Aperiodic ACF for lags `0..N`: `values[k] = sum_{i} conj(x[i]) x[i+k]`.
///
/// Computed by zero-extending to length `2N` and multiplying in the
/// transform domain; the extension makes the cyclic correlation linear.
pub fn aacf<S: Scalar>(frame: &SignalFrame<S>) -> AcfProfile<S> {
    let n = frame.len();
    let mut ext: Vec<Complex<S>> = frame.time_domain().to_vec();
    ext.resize(2 * n, Complex::new(S::zero(), S::zero()));
    fft::forward_unscaled(&mut ext);
    for v in ext.iter_mut() {
        *v = Complex::new(v.norm_sqr(), S::zero());
    }
    fft::inverse_unscaled(&mut ext);
    let scale = S::one() / S::from(2 * n).unwrap();
    let values = ext[..n].iter().map(|v| v.scale(scale)).collect();
    AcfProfile {
        kind: AcfKind::Aperiodic,
        values,
        n,
        pad_factor: 1,
    }
}

/// Zero-padded periodic ACF on the `L`-times finer delay grid, length `N*L`.
///
/// With `pad_factor = 1` this is byte-for-byte the same computation as
/// [`pacf`].
pub fn zp_pacf<S: Scalar>(frame: &SignalFrame<S>, pad_factor: usize) -> AcfProfile<S> {
    assert!(pad_factor >= 1, "pad factor must be at least 1");
    padded_power_idft(frame, pad_factor)
}

fn padded_power_idft<S: Scalar>(frame: &SignalFrame<S>, pad_factor: usize) -> AcfProfile<S> {
    let n = frame.len();
    let mut buf: Vec<Complex<S>> = frame
        .weighted()
        .iter()
        .map(|c| Complex::new(c.norm_sqr(), S::zero()))
        .collect();
    buf.resize(n * pad_factor, Complex::new(S::zero(), S::zero()));
    fft::inverse_unscaled(&mut buf);
    AcfProfile {
        kind: AcfKind::ZeroPadded,
        values: buf,
        n,
        pad_factor,
    }
}

/// The lag range counted as sidelobes for a profile of the given kind:
/// everything but lag 0 for plain profiles, `L..N*L/2` for zero-padded ones
/// (lags below `L` are sub-resolution and belong to the mainlobe; conjugate
/// symmetry makes the upper half redundant).
pub fn sidelobe_range(kind: AcfKind, n: usize, pad_factor: usize) -> Range<usize> {
    match kind {
        AcfKind::Periodic | AcfKind::Aperiodic => 1..n,
        AcfKind::ZeroPadded => pad_factor..(n * pad_factor) / 2,
    }
}

/// `-3 dB` mainlobe width in lag units: twice the smallest lag whose squared
/// magnitude has dropped to half the lag-0 value (or twice the profile
/// length if it never drops).
pub fn width_3db_from_mag_sq<S: Scalar>(mag_sq: &[S]) -> usize {
    let half = mag_sq[0] / S::from(2.0).unwrap();
    mag_sq
        .iter()
        .position(|&m| m <= half)
        .unwrap_or(mag_sq.len())
        * 2
}

impl<S: Scalar> AcfProfile<S> {
    pub fn kind(&self) -> AcfKind {
        self.kind
    }

    /// Correlation values, lag-indexed from 0.
    pub fn values(&self) -> &[Complex<S>] {
        &self.values
    }

    /// Symbol count `N` of the originating frame.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Delay-grid interpolation factor (1 unless zero-padded).
    pub fn pad_factor(&self) -> usize {
        self.pad_factor
    }

    /// Lag-0 value; real and nonnegative up to rounding (it is the frame
    /// energy, or its square-root-free analogue on the padded grid).
    pub fn mainlobe(&self) -> S {
        self.values[0].re
    }

    /// Squared magnitude at one lag.
    pub fn mag_sq(&self, k: usize) -> S {
        self.values[k].norm_sqr()
    }

    /// Sidelobe lag range for this profile's kind.
    pub fn sidelobe_lags(&self) -> Range<usize> {
        sidelobe_range(self.kind, self.n, self.pad_factor)
    }

    fn mainlobe_mag_sq_checked(&self) -> Result<S> {
        let m = self.values[0].norm_sqr();
        if m <= S::zero() {
            return Err(Error::DegenerateProfile);
        }
        Ok(m)
    }

    /// Integrated sidelobe level: sum of squared magnitudes over
    /// [`Self::sidelobe_lags`].
    pub fn isl(&self) -> Result<S> {
        self.mainlobe_mag_sq_checked()?;
        Ok(self
            .sidelobe_lags()
            .map(|k| self.values[k].norm_sqr())
            .sum())
    }

    /// Peak sidelobe level relative to the mainlobe, in dB (floored at
    /// -150 dB when the sidelobes vanish).
    pub fn psl_db(&self) -> Result<S> {
        let main = self.mainlobe_mag_sq_checked()?;
        let peak = self
            .sidelobe_lags()
            .map(|k| self.values[k].norm_sqr())
            .fold(S::zero(), S::max);
        let ratio = (peak / main).max(S::from(DB_RATIO_FLOOR).unwrap());
        Ok(S::from(10.0).unwrap() * ratio.log10())
    }

    /// `-3 dB` mainlobe width in lag units of this profile's grid.
    pub fn mainlobe_width_3db(&self) -> Result<usize> {
        self.mainlobe_mag_sq_checked()?;
        let mag: Vec<S> = self.values.iter().map(|v| v.norm_sqr()).collect();
        Ok(width_3db_from_mag_sq(&mag))
    }

    /// Squared magnitude at lag `k` normalized by the mainlobe, in dB with
    /// the -150 dB floor. Used by the CSV exports.
    pub fn mag_db_normalized(&self, k: usize) -> Result<S> {
        let main = self.mainlobe_mag_sq_checked()?;
        let ratio = (self.values[k].norm_sqr() / main).max(S::from(DB_RATIO_FLOOR).unwrap());
        Ok(S::from(10.0).unwrap() * ratio.log10())
    }
}

/// Direct-sum correlators. These are the definitional `O(N^2)` routes: the
/// periodic and aperiodic sums are index arithmetic on the time-domain
/// samples (shift matrices are never formed), the zero-padded sum evaluates
/// its complex exponentials term by term. They deliberately share no code
/// with the transform routes above.
pub mod reference {
    use super::*;

    /// `r[k] = sum_{i=0}^{N-1} conj(x[i]) x[(i+k) mod N]`.
    pub fn pacf<S: Scalar>(x: &[Complex<S>]) -> Vec<Complex<S>> {
        let n = x.len();
        (0..n)
            .map(|k| {
                (0..n)
                    .map(|i| x[i].conj() * x[(i + k) % n])
                    .fold(Complex::new(S::zero(), S::zero()), |a, b| a + b)
            })
            .collect()
    }

    /// `r[k] = sum_{i=0}^{N-1-k} conj(x[i]) x[i+k]` for `k = 0..N`.
    pub fn aacf<S: Scalar>(x: &[Complex<S>]) -> Vec<Complex<S>> {
        let n = x.len();
        (0..n)
            .map(|k| {
                (0..n - k)
                    .map(|i| x[i].conj() * x[i + k])
                    .fold(Complex::new(S::zero(), S::zero()), |a, b| a + b)
            })
            .collect()
    }

    /// `r[k] = sum_{n=0}^{N-1} |c[n]|^2 e^{j2pi k n/(N L)}` for `k = 0..N*L`.
    pub fn zp_pacf<S: Scalar>(weighted: &[Complex<S>], pad_factor: usize) -> Vec<Complex<S>> {
        let n = weighted.len();
        let grid = n * pad_factor;
        let two_pi = S::from(2.0).unwrap() * S::PI();
        (0..grid)
            .map(|k| {
                (0..n)
                    .map(|i| {
                        let phase = two_pi * S::from(k).unwrap() * S::from(i).unwrap()
                            / S::from(grid).unwrap();
                        Complex::from_polar(weighted[i].norm_sqr(), phase)
                    })
                    .fold(Complex::new(S::zero(), S::zero()), |a, b| a + b)
            })
            .collect()
    }
}
