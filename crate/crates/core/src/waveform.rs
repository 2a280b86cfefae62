//! Power-allocation vectors and OFDM frame synthesis.
//!
//! A power allocation is a point on the scaled simplex: `N` nonnegative
//! per-subcarrier powers summing to `N` (so the uniform allocation is all
//! ones). Frame synthesis weights each symbol by the square root of its
//! subcarrier power and applies the unitary inverse DFT; the cyclic prefix is
//! never materialized: whether the correlation is periodic or aperiodic is
//! decided at the correlator (see [`crate::acf`]), not by storing CP samples.

use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};

use crate::{fft, Error, Result, Scalar};

/// Relative tolerance on `sum(p) = N` accepted by [`PowerAllocation::from_vec`].
const SUM_REL_TOL: f64 = 1e-9;
/// Magnitude of negative rounding dust tolerated (and clamped) per entry.
const NEG_TOL: f64 = 1e-12;

/// Nonnegative per-subcarrier powers summing to the number of subcarriers.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerAllocation<S: Scalar> {
    p: Vec<S>,
}

impl<S: Scalar> PowerAllocation<S> {
    /// The uniform allocation: every entry 1.
    pub fn uniform(n: usize) -> Self {
        Self { p: vec![S::one(); n] }
    }

    /// A random point on the simplex interior, uniform (Dirichlet with unit
    /// concentration) scaled to sum `n`. Deterministic per seed.
    pub fn random(n: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // Normalized Exp(1) draws are Dirichlet(1, ..., 1).
        let draws: Vec<S> = (0..n)
            .map(|_| {
                let e: f64 = Exp1.sample(&mut rng);
                S::from(e.max(f64::MIN_POSITIVE)).unwrap()
            })
            .collect();
        let total: S = draws.iter().sum();
        let scale = S::from(n).unwrap() / total;
        Self {
            p: draws.into_iter().map(|e| e * scale).collect(),
        }
    }

    /// Wrap an existing vector, validating both simplex constraints.
    ///
    /// Entries in `[-1e-12, 0)` are treated as rounding dust and clamped to
    /// zero; anything more negative, or a sum off `N` by more than `1e-9`
    /// relative, is rejected.
    pub fn from_vec(p: Vec<S>) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::InvalidPowerAllocation("empty vector".into()));
        }
        let n = S::from(p.len()).unwrap();
        let neg_tol = S::from(NEG_TOL).unwrap();
        let mut clamped = p;
        for (i, v) in clamped.iter_mut().enumerate() {
            if *v < -neg_tol {
                return Err(Error::InvalidPowerAllocation(format!(
                    "entry {i} is negative: {:e}",
                    v.to_f64().unwrap_or(f64::NAN)
                )));
            }
            if *v < S::zero() {
                *v = S::zero();
            }
        }
        let total: S = clamped.iter().sum();
        if ((total - n) / n).abs() > S::from(SUM_REL_TOL).unwrap() {
            return Err(Error::InvalidPowerAllocation(format!(
                "sum is {:e}, expected {}",
                total.to_f64().unwrap_or(f64::NAN),
                clamped.len()
            )));
        }
        Ok(Self { p: clamped })
    }

    /// Number of subcarriers `N`.
    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    /// The raw power vector.
    pub fn as_slice(&self) -> &[S] {
        &self.p
    }

    /// `sum(p_i^2)`, the quantity every closed form depends on.
    pub fn sum_sq(&self) -> S {
        self.p.iter().map(|&v| v * v).sum()
    }
}

/// One OFDM frame: the drawn symbols, their power-weighted frequency samples,
/// and the time-domain signal (unitary inverse DFT of the weighted samples).
#[derive(Debug, Clone)]
pub struct SignalFrame<S: Scalar> {
    symbols: Vec<Complex<S>>,
    weighted: Vec<Complex<S>>,
    time_domain: Vec<Complex<S>>,
}

impl<S: Scalar> SignalFrame<S> {
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// The symbol vector `s`.
    pub fn symbols(&self) -> &[Complex<S>] {
        &self.symbols
    }

    /// The frequency-domain samples `c` with `c[i] = sqrt(p[i]) * s[i]`.
    pub fn weighted(&self) -> &[Complex<S>] {
        &self.weighted
    }

    /// The time-domain samples `x` (unitary inverse DFT of `c`).
    pub fn time_domain(&self) -> &[Complex<S>] {
        &self.time_domain
    }
}

/// Synthesize a frame from symbols and a power allocation of equal length.
pub fn modulate<S: Scalar>(
    symbols: &[Complex<S>],
    pa: &PowerAllocation<S>,
) -> Result<SignalFrame<S>> {
    if symbols.len() != pa.len() {
        return Err(Error::LengthMismatch {
            expected: pa.len(),
            got: symbols.len(),
        });
    }
    if symbols.is_empty() {
        return Err(Error::InvalidParameter("cannot modulate zero symbols".into()));
    }
    let weighted: Vec<Complex<S>> = symbols
        .iter()
        .zip(pa.as_slice())
        .map(|(s, &p)| s.scale(p.sqrt()))
        .collect();
    let mut time_domain = weighted.clone();
    fft::inverse_unitary(&mut time_domain);
    Ok(SignalFrame {
        symbols: symbols.to_vec(),
        weighted,
        time_domain,
    })
}
