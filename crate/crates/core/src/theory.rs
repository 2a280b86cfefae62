//! Closed-form expectations of the squared ACF over the random symbols.
//!
//! For symbols that are i.i.d., unit-power, zero-mean, and zero
//! pseudo-variance, every expectation here depends on the constellation only
//! through its fourth moment `mu4`, so all functions take `mu4` as a plain
//! scalar (hypothetical values can be swept without building a symbol set).
//!
//! Periodic case, power allocation `p` with `sum p = N`:
//!
//! - per lag: `E|r[k]|^2 = (mu4-1) sum(p^2) + |sum_n p[n] e^{j2pi kn/N}|^2`
//! - mainlobe: `E|r[0]|^2 = (mu4-1) sum(p^2) + N^2`
//! - integrated sidelobes: `[(N-1) mu4 + 1] sum(p^2) - N^2`
//!
//! Aperiodic case: mainlobe as above; the integrated level involves the
//! overlap matrix between the length-`N` Fourier basis and the first half of
//! the length-`2N` Fourier basis (see [`AacfBasis`]). No per-lag closed form
//! is exposed for the aperiodic case, only the mainlobe and the integrated
//! level; per-lag behaviour is validated empirically in the tests.
//!
//! Zero-padded periodic case with pad factor `L`: per-lag and integrated
//! forms on the `N*L` grid, the normalized objective `f(p)` minimized by the
//! optimizers, and its exact gradient.
//!
//! Conventions: exponent sums are written over 1-based subcarrier indices
//! (only magnitudes matter, so the choice is cosmetic but kept consistent
//! with the steering vectors). The zero-padded sidelobe range is
//! `L..floor(N*L/2)`; for odd `N*L` the floor convention is applied
//! throughout.

use std::ops::Range;

use num_complex::Complex;

use crate::{fft, PowerAllocation, Scalar};

// ---------------------------------------------------------------------------
// Periodic ACF
// ---------------------------------------------------------------------------

/// `|sum_{n=1..N} p[n] e^{j 2 pi k n / grid}|^2` evaluated by direct summation.
fn phased_power_sum_sq<S: Scalar>(p: &[S], k: usize, grid: usize) -> S {
    let two_pi = S::from(2.0).unwrap() * S::PI();
    let step = two_pi * S::from(k).unwrap() / S::from(grid).unwrap();
    let mut acc = Complex::new(S::zero(), S::zero());
    for (i, &w) in p.iter().enumerate() {
        acc = acc + Complex::from_polar(w, step * S::from(i + 1).unwrap());
    }
    acc.norm_sqr()
}

/// Expected squared periodic ACF at lag `k` (`0 <= k < N`).
pub fn pacf_expected_sq<S: Scalar>(pa: &PowerAllocation<S>, mu4: S, k: usize) -> S {
    assert!(k < pa.len(), "lag {k} out of range for N = {}", pa.len());
    (mu4 - S::one()) * pa.sum_sq() + phased_power_sum_sq(pa.as_slice(), k, pa.len())
}

/// Expected squared mainlobe `(mu4-1) sum(p^2) + N^2` (identical for the
/// periodic, aperiodic, and zero-padded cases).
pub fn pacf_mainlobe<S: Scalar>(pa: &PowerAllocation<S>, mu4: S) -> S {
    let n = S::from(pa.len()).unwrap();
    (mu4 - S::one()) * pa.sum_sq() + n * n
}

/// Expected integrated sidelobe level of the periodic ACF, all lags
/// `1..N`: `[(N-1) mu4 + 1] sum(p^2) - N^2`.
pub fn pacf_eisl<S: Scalar>(pa: &PowerAllocation<S>, mu4: S) -> S {
    let n = S::from(pa.len()).unwrap();
    ((n - S::one()) * mu4 + S::one()) * pa.sum_sq() - n * n
}

/// Periodic integrated sidelobe level normalized by the expected mainlobe:
/// `N mu4 sum(p^2) / ((mu4-1) sum(p^2) + N^2) - 1`. Minimized uniquely by
/// the uniform allocation.
pub fn pacf_normalized_eisl<S: Scalar>(pa: &PowerAllocation<S>, mu4: S) -> S {
    let n = S::from(pa.len()).unwrap();
    let sum_sq = pa.sum_sq();
    n * mu4 * sum_sq / ((mu4 - S::one()) * sum_sq + n * n) - S::one()
}

// ---------------------------------------------------------------------------
// Aperiodic ACF
// ---------------------------------------------------------------------------

/// Cached overlap between the length-`N` unitary Fourier basis and the first
/// `N` columns of the length-`2N` unitary Fourier basis: the `N x 2N` matrix
/// `W = F_N * (first N columns of F_2N)^H`.
///
/// Structure (verified against the dense product in the tests): the
/// even-indexed columns (0-based) form `I / sqrt(2)`, and the odd-indexed
/// columns form a circulant with all singular values `1 / sqrt(2)`. Power
/// weighting enters only through row scaling, which is what
/// [`AacfBasis::geometry`] exploits.
#[derive(Debug, Clone)]
pub struct AacfBasis<S: Scalar> {
    n: usize,
    /// Entries of `W`, row-major `N x 2N`.
    overlap: Vec<Complex<S>>,
    /// `|W|^2` entrywise, same layout.
    abs2: Vec<S>,
    /// Per-row sums of `|W|^4`.
    row_norm4: Vec<S>,
}

/// Fourth-moment functionals of the power-weighted overlap `V` (rows of `W`
/// scaled by `sqrt(p[i])`) that the aperiodic closed form needs.
#[derive(Debug, Clone, Copy)]
pub struct AacfGeometry<S: Scalar> {
    /// `sum of |V|^4` over all entries.
    pub entry_norm4: S,
    /// `sum over columns of (column l2-norm)^4`.
    pub col_norm2_4_sum: S,
}

impl<S: Scalar> AacfBasis<S> {
    /// Build the overlap matrix for `n` subcarriers.
    ///
    /// Entries come from the closed-form geometric sum: column `2i` holds
    /// `1/sqrt(2)` at row `i` and zeros elsewhere; column `c` odd holds
    /// `sqrt(2) / (N (1 - e^{j pi (c - 2i)/N}))` at row `i`.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let cols = 2 * n;
        let mut overlap = vec![Complex::new(S::zero(), S::zero()); n * cols];
        let inv_sqrt2 = S::one() / S::from(2.0).unwrap().sqrt();
        let sqrt2 = S::from(2.0).unwrap().sqrt();
        for i in 0..n {
            for c in 0..cols {
                let d = c as isize - 2 * i as isize;
                overlap[i * cols + c] = if d == 0 {
                    Complex::new(inv_sqrt2, S::zero())
                } else if d % 2 == 0 {
                    Complex::new(S::zero(), S::zero())
                } else {
                    let phase = S::PI() * S::from(d).unwrap() / S::from(n).unwrap();
                    let denom = Complex::new(S::one(), S::zero())
                        - Complex::from_polar(S::one(), phase);
                    Complex::new(sqrt2 / S::from(n).unwrap(), S::zero()) / denom
                };
            }
        }
        let abs2: Vec<S> = overlap.iter().map(|w| w.norm_sqr()).collect();
        let row_norm4 = (0..n)
            .map(|i| abs2[i * cols..(i + 1) * cols].iter().map(|&a| a * a).sum())
            .collect();
        Self {
            n,
            overlap,
            abs2,
            row_norm4,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Row-major `N x 2N` entries of the overlap matrix.
    pub fn overlap(&self) -> &[Complex<S>] {
        &self.overlap
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex<S> {
        self.overlap[row * 2 * self.n + col]
    }

    /// `sum |W|^4` over all entries (the uniform-allocation value of
    /// [`AacfGeometry::entry_norm4`]).
    pub fn entry_norm4(&self) -> S {
        self.row_norm4.iter().copied().sum()
    }

    /// Fourth-moment functionals of `V` for a given power allocation.
    pub fn geometry(&self, pa: &PowerAllocation<S>) -> AacfGeometry<S> {
        assert_eq!(pa.len(), self.n, "power allocation length mismatch");
        let p = pa.as_slice();
        let cols = 2 * self.n;
        let entry_norm4 = p
            .iter()
            .zip(&self.row_norm4)
            .map(|(&pi, &r4)| pi * pi * r4)
            .sum();
        let mut col_norm2_4_sum = S::zero();
        for c in 0..cols {
            let mut col_norm2 = S::zero();
            for i in 0..self.n {
                col_norm2 = col_norm2 + p[i] * self.abs2[i * cols + c];
            }
            col_norm2_4_sum = col_norm2_4_sum + col_norm2 * col_norm2;
        }
        AacfGeometry {
            entry_norm4,
            col_norm2_4_sum,
        }
    }

    /// Expected integrated sidelobe level of the aperiodic ACF (one-sided
    /// lag sum, equivalently half the two-sided cyclic sum):
    /// `N (mu4-2) entry_norm4 + 2N col_norm2_4_sum - mainlobe/2`.
    pub fn eisl(&self, pa: &PowerAllocation<S>, mu4: S) -> S {
        let g = self.geometry(pa);
        let n = S::from(self.n).unwrap();
        let two = S::from(2.0).unwrap();
        n * (mu4 - two) * g.entry_norm4 + two * n * g.col_norm2_4_sum
            - pacf_mainlobe(pa, mu4) / two
    }

    /// Aperiodic integrated sidelobe level normalized by the expected
    /// mainlobe.
    pub fn normalized_eisl(&self, pa: &PowerAllocation<S>, mu4: S) -> S {
        self.eisl(pa, mu4) / pacf_mainlobe(pa, mu4)
    }
}

/// Expected aperiodic mainlobe (same expression as the periodic one).
pub fn aacf_mainlobe<S: Scalar>(pa: &PowerAllocation<S>, mu4: S) -> S {
    pacf_mainlobe(pa, mu4)
}

/// One-shot [`AacfBasis::eisl`]; build the basis once instead when sweeping.
pub fn aacf_eisl<S: Scalar>(pa: &PowerAllocation<S>, mu4: S) -> S {
    AacfBasis::new(pa.len()).eisl(pa, mu4)
}

/// One-shot [`AacfBasis::normalized_eisl`].
pub fn aacf_normalized_eisl<S: Scalar>(pa: &PowerAllocation<S>, mu4: S) -> S {
    AacfBasis::new(pa.len()).normalized_eisl(pa, mu4)
}

// ---------------------------------------------------------------------------
// Zero-padded periodic ACF
// ---------------------------------------------------------------------------

/// Expected squared zero-padded ACF at lag `k` on the `N*L` grid.
pub fn zp_expected_sq<S: Scalar>(pa: &PowerAllocation<S>, mu4: S, k: usize, pad: usize) -> S {
    let grid = pa.len() * pad;
    assert!(pad >= 1 && k < grid, "lag {k} out of range for grid {grid}");
    (mu4 - S::one()) * pa.sum_sq() + phased_power_sum_sq(pa.as_slice(), k, grid)
}

/// Expected squared zero-padded ACF at every lag `0..N*L`, via one FFT.
pub fn zp_expected_sq_all<S: Scalar>(pa: &PowerAllocation<S>, mu4: S, pad: usize) -> Vec<S> {
    assert!(pad >= 1);
    let grid = pa.len() * pad;
    let mut buf: Vec<Complex<S>> = pa
        .as_slice()
        .iter()
        .map(|&p| Complex::new(p, S::zero()))
        .collect();
    buf.resize(grid, Complex::new(S::zero(), S::zero()));
    fft::inverse_unscaled(&mut buf);
    let floor_term = (mu4 - S::one()) * pa.sum_sq();
    buf.into_iter().map(|v| floor_term + v.norm_sqr()).collect()
}

/// Expected integrated sidelobe level over lags `L..floor(N*L/2)`, by direct
/// per-lag summation. [`ZpGeometry::eisl`] computes the same quantity through
/// the cached steering-vector Gram matrix; the two routes are held to 1e-9
/// of each other in the tests.
pub fn zp_eisl<S: Scalar>(pa: &PowerAllocation<S>, mu4: S, pad: usize) -> S {
    let grid = pa.len() * pad;
    (pad..grid / 2)
        .map(|k| zp_expected_sq(pa, mu4, k, pad))
        .fold(S::zero(), |a, b| a + b)
}

/// Expected zero-padded mainlobe (pad-independent).
pub fn zp_mainlobe<S: Scalar>(pa: &PowerAllocation<S>, mu4: S) -> S {
    pacf_mainlobe(pa, mu4)
}

/// Normalized zero-padded integrated sidelobe level `f(p)`, the optimizer
/// objective, by the direct route.
pub fn zp_normalized_eisl<S: Scalar>(pa: &PowerAllocation<S>, mu4: S, pad: usize) -> S {
    zp_eisl(pa, mu4, pad) / zp_mainlobe(pa, mu4)
}

/// `-3 dB` width of the *expected* zero-padded profile, in lags of the
/// padded grid (twice the first half-power crossing).
pub fn zp_width_3db<S: Scalar>(pa: &PowerAllocation<S>, mu4: S, pad: usize) -> usize {
    crate::acf::width_3db_from_mag_sq(&zp_expected_sq_all(pa, mu4, pad))
}

/// Full-range periodic integrated sidelobe level reconstructed from the
/// half-range convention: the zero-padded sum at `pad = 1` covers lags
/// `1..floor(N/2)` only. Conjugate symmetry doubles it; the lags the halved
/// range leaves out around `N/2` (one for even `N`, the symmetric pair
/// `floor(N/2)`, `floor(N/2)+1` for odd `N`) are added back explicitly.
pub fn pacf_eisl_from_half_range<S: Scalar>(pa: &PowerAllocation<S>, mu4: S) -> S {
    let n = pa.len();
    let two = S::from(2.0).unwrap();
    let middle = if n < 2 {
        S::zero()
    } else if n % 2 == 0 {
        pacf_expected_sq(pa, mu4, n / 2)
    } else {
        two * pacf_expected_sq(pa, mu4, n / 2)
    };
    two * zp_eisl(pa, mu4, 1) + middle
}

/// Steering vectors of the zero-padded sidelobe region and their cached Gram
/// matrix.
///
/// Column `k - L` of `G` is `g_k = [e^{-j2pi k/NL}, ..., e^{-j2pi Nk/NL}]`
/// for `k` in `L..floor(NL/2)`, so `|G^H p|^2` is the phased-power part of
/// the integrated sidelobe level. The real part of `G G^H` (an `N x N` real
/// matrix) is cached because it is all the gradient and the objective need;
/// it makes each optimizer iteration `O(N^2)` instead of
/// `O(N * lag count)`.
#[derive(Debug, Clone)]
pub struct ZpGeometry<S: Scalar> {
    n: usize,
    pad: usize,
    /// `G`, column-major `N x lag_count`.
    steering: Vec<Complex<S>>,
    /// `Re(G G^H)`, row-major `N x N`.
    re_gram: Vec<S>,
}

impl<S: Scalar> ZpGeometry<S> {
    pub fn new(n: usize, pad: usize) -> Self {
        assert!(n >= 1 && pad >= 1);
        let grid = n * pad;
        let lag_count = (grid / 2).saturating_sub(pad);
        let two_pi = S::from(2.0).unwrap() * S::PI();
        let mut steering = Vec::with_capacity(n * lag_count);
        for k in pad..grid / 2 {
            let step = -two_pi * S::from(k).unwrap() / S::from(grid).unwrap();
            for i in 0..n {
                steering.push(Complex::from_polar(S::one(), step * S::from(i + 1).unwrap()));
            }
        }
        let mut re_gram = vec![S::zero(); n * n];
        for col in 0..lag_count {
            let g = &steering[col * n..(col + 1) * n];
            for r in 0..n {
                for c in 0..n {
                    re_gram[r * n + c] = re_gram[r * n + c] + (g[r] * g[c].conj()).re;
                }
            }
        }
        Self {
            n,
            pad,
            steering,
            re_gram,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pad_factor(&self) -> usize {
        self.pad
    }

    /// Sidelobe lags the integrated level sums over.
    pub fn lag_range(&self) -> Range<usize> {
        self.pad..(self.n * self.pad) / 2
    }

    /// Number of steering vectors (`floor(NL/2) - L`).
    pub fn lag_count(&self) -> usize {
        self.lag_range().len()
    }

    /// The steering vector for lag `k` (must lie in [`Self::lag_range`]).
    pub fn steering(&self, k: usize) -> &[Complex<S>] {
        assert!(self.lag_range().contains(&k), "lag {k} outside sidelobe range");
        let col = k - self.pad;
        &self.steering[col * self.n..(col + 1) * self.n]
    }

    /// `p^T Re(G G^H) p = |G^H p|^2` for real `p`.
    fn gram_quadratic(&self, p: &[S]) -> S {
        let n = self.n;
        let mut acc = S::zero();
        for r in 0..n {
            let mut row = S::zero();
            for c in 0..n {
                row = row + self.re_gram[r * n + c] * p[c];
            }
            acc = acc + p[r] * row;
        }
        acc
    }

    /// Integrated sidelobe level at an arbitrary (not necessarily feasible)
    /// point: `lag_count (mu4-1) |p|^2 + |G^H p|^2`.
    pub fn eisl(&self, p: &[S], mu4: S) -> S {
        debug_assert_eq!(p.len(), self.n);
        let sum_sq = p.iter().map(|&v| v * v).sum::<S>();
        S::from(self.lag_count()).unwrap() * (mu4 - S::one()) * sum_sq + self.gram_quadratic(p)
    }

    /// Expected mainlobe at an arbitrary point.
    pub fn mainlobe(&self, p: &[S], mu4: S) -> S {
        let n = S::from(self.n).unwrap();
        let sum_sq = p.iter().map(|&v| v * v).sum::<S>();
        (mu4 - S::one()) * sum_sq + n * n
    }

    /// The optimizer objective `f(p) = eisl(p) / mainlobe(p)`. Well defined
    /// for any real `p` (the denominator is at least `N^2`).
    pub fn objective(&self, p: &[S], mu4: S) -> S {
        self.eisl(p, mu4) / self.mainlobe(p, mu4)
    }

    /// Exact gradient of [`Self::objective`] by the quotient rule:
    /// `d eisl = 2 lag_count (mu4-1) p + 2 Re(G G^H) p`,
    /// `d mainlobe = 2 (mu4-1) p`.
    pub fn gradient(&self, p: &[S], mu4: S) -> Vec<S> {
        debug_assert_eq!(p.len(), self.n);
        let n = self.n;
        let two = S::from(2.0).unwrap();
        let eisl = self.eisl(p, mu4);
        let main = self.mainlobe(p, mu4);
        let diag = two * S::from(self.lag_count()).unwrap() * (mu4 - S::one());
        (0..n)
            .map(|r| {
                let mut gram_row = S::zero();
                for c in 0..n {
                    gram_row = gram_row + self.re_gram[r * n + c] * p[c];
                }
                let d_eisl = diag * p[r] + two * gram_row;
                let d_main = two * (mu4 - S::one()) * p[r];
                (d_eisl * main - eisl * d_main) / (main * main)
            })
            .collect()
    }

    /// Expected squared level at one lag of the padded grid (any lag, not
    /// just the sidelobe range), at an arbitrary point.
    pub fn expected_sq(&self, p: &[S], mu4: S, k: usize) -> S {
        let sum_sq = p.iter().map(|&v| v * v).sum::<S>();
        (mu4 - S::one()) * sum_sq + phased_power_sum_sq(p, k, self.n * self.pad)
    }
}
