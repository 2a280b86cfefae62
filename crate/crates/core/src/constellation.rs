//! PSK and QAM constellations and their moment statistics.
//!
//! All constellations here satisfy three moment conditions: unit average
//! power `E|s|^2 = 1`, zero mean `E[s] = 0`, and zero pseudo-variance
//! `E[s^2] = 0`. The closed forms in [`crate::theory`] depend on the symbol
//! distribution *only* through the fourth moment `mu4 = E|s|^4`, so the
//! constructors verify the moment conditions and precompute `mu4` by
//! enumerating the point set. BPSK and 8-QAM are rejected outright: both
//! have nonzero pseudo-variance, which would invalidate every expectation
//! formula downstream.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result, Scalar};

/// Moment tolerance enforced on constructed point sets (f64). For other
/// scalar widths the tolerance widens to a multiple of the machine epsilon.
const MOMENT_TOL: f64 = 1e-12;

fn moment_tol<S: Scalar>() -> S {
    S::from(MOMENT_TOL)
        .unwrap()
        .max(S::epsilon() * S::from(100.0).unwrap())
}

/// A finite symbol set with unit average power, zero mean, and zero
/// pseudo-variance, plus its kurtosis `mu4 = E|s|^4`.
#[derive(Debug, Clone, PartialEq)]
pub struct Constellation<S: Scalar> {
    name: String,
    points: Vec<Complex<S>>,
    mu4: S,
}

impl<S: Scalar> Constellation<S> {
    /// `order`-ary phase shift keying: equally spaced unit-modulus points.
    ///
    /// `order` must be a power of two, at least 4. Order 2 (BPSK) is
    /// rejected: its squared symbols average to 1, not 0.
    pub fn psk(order: usize) -> Result<Self> {
        if order == 2 {
            return Err(Error::UnsupportedConstellation(
                "BPSK has pseudo-variance E[s^2] = 1, not 0; the sidelobe statistics here \
                 require zero pseudo-variance"
                    .into(),
            ));
        }
        if order < 4 || !order.is_power_of_two() {
            return Err(Error::UnsupportedConstellation(format!(
                "PSK order must be a power of two >= 4, got {order}"
            )));
        }
        let points = (0..order)
            .map(|k| {
                let angle =
                    S::from(2.0).unwrap() * S::PI() * S::from(k).unwrap() / S::from(order).unwrap();
                Complex::from_polar(S::one(), angle)
            })
            .collect();
        Self::from_points(format!("{order}psk"), points)
    }

    /// Square `order`-ary quadrature amplitude modulation: an `m x m` grid of
    /// odd-integer coordinates (`m = sqrt(order)` even), scaled to unit
    /// average power.
    ///
    /// 8-QAM is rejected for the same reason as BPSK (nonzero
    /// pseudo-variance); non-square orders are rejected because the grid
    /// construction does not apply.
    pub fn qam(order: usize) -> Result<Self> {
        if order == 8 {
            return Err(Error::UnsupportedConstellation(
                "8-QAM has nonzero pseudo-variance; the sidelobe statistics here require \
                 zero pseudo-variance"
                    .into(),
            ));
        }
        let side = (order as f64).sqrt().round() as usize;
        if side * side != order || side % 2 != 0 || order < 4 {
            return Err(Error::UnsupportedConstellation(format!(
                "QAM order must be a perfect square with an even side (4, 16, 64, 256, ...), \
                 got {order}"
            )));
        }
        // Odd coordinates -(m-1), ..., -1, 1, ..., (m-1); average power of
        // the unnormalized grid is 2(m^2-1)/3.
        let norm = (2.0 * (order as f64 - 1.0) / 3.0).sqrt();
        let coord = |i: usize| S::from(2.0 * i as f64 - (side as f64 - 1.0)).unwrap();
        let scale = S::one() / S::from(norm).unwrap();
        let mut points = Vec::with_capacity(order);
        for row in 0..side {
            for col in 0..side {
                points.push(Complex::new(coord(col) * scale, coord(row) * scale));
            }
        }
        Self::from_points(format!("{order}qam"), points)
    }

    /// Look up a constellation by its string tag: `"qpsk"`, `"16psk"`,
    /// `"16qam"`, `"64qam"`, and generally `"<order>psk"` / `"<order>qam"`.
    pub fn from_tag(tag: &str) -> Result<Self> {
        let lower = tag.to_ascii_lowercase();
        if lower == "qpsk" {
            return Self::psk(4);
        }
        if let Some(order) = lower.strip_suffix("psk").and_then(|s| s.parse().ok()) {
            return Self::psk(order);
        }
        if let Some(order) = lower.strip_suffix("qam").and_then(|s| s.parse().ok()) {
            return Self::qam(order);
        }
        Err(Error::UnknownConstellationTag(tag.into()))
    }

    /// Validate the moment conditions and compute `mu4` from the point set.
    fn from_points(name: String, points: Vec<Complex<S>>) -> Result<Self> {
        let m = S::from(points.len()).unwrap();
        let mean = points.iter().fold(Complex::new(S::zero(), S::zero()), |a, p| a + p) / m;
        let pseudo = points
            .iter()
            .fold(Complex::new(S::zero(), S::zero()), |a, p| a + p * p)
            / m;
        let power = points.iter().map(|p| p.norm_sqr()).sum::<S>() / m;
        let tol = moment_tol::<S>();
        if mean.norm() > tol {
            return Err(Error::UnsupportedConstellation(format!(
                "{name}: nonzero mean {mean:?}"
            )));
        }
        if pseudo.norm() > tol {
            return Err(Error::UnsupportedConstellation(format!(
                "{name}: nonzero pseudo-variance {pseudo:?}"
            )));
        }
        if (power - S::one()).abs() > tol {
            return Err(Error::UnsupportedConstellation(format!(
                "{name}: average power is not 1"
            )));
        }
        let mu4 = points.iter().map(|p| p.norm_sqr() * p.norm_sqr()).sum::<S>() / m;
        debug_assert!(mu4 >= S::one() - tol);
        Ok(Self { name, points, mu4 })
    }

    /// The constellation's tag, e.g. `"16qam"`.
    pub fn name(&self) -> &str {
        &self.name
    }

    /// The symbol points.
    pub fn points(&self) -> &[Complex<S>] {
        &self.points
    }

    /// Number of symbols.
    pub fn order(&self) -> usize {
        self.points.len()
    }

    /// Kurtosis `mu4 = E|s|^4`: exactly 1 for PSK, in `[1, 2]` for QAM.
    pub fn mu4(&self) -> S {
        self.mu4
    }

    /// Draw `n` i.i.d. symbols, uniform over the point set. Deterministic
    /// for a fixed `seed`.
    pub fn sample_symbols(&self, n: usize, seed: u64) -> Vec<Complex<S>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n)
            .map(|_| self.points[rng.gen_range(0..self.points.len())])
            .collect()
    }
}
