//! Power-allocation optimizers for the zero-padded objective.
//!
//! Two solvers over the scaled simplex `{sum p = N, p >= 0}`:
//!
//! - [`pgd`]: projected gradient descent on the normalized integrated
//!   sidelobe level `f(p)` ([`ZpGeometry::objective`]). The step size uses
//!   Armijo backtracking so the trace is monotone; the projection clamps
//!   negatives to zero and then rescales radially so the iterate stays on
//!   the simplex.
//! - [`sca`]: for the mainlobe-width constrained problem, which adds
//!   `E|r[q]|^2 <= E|r[0]|^2 / 2` at a chosen lag `q`. Each round minimizes
//!   the first-order surrogate `f(p_r) + grad f(p_r) . (p - p_r)` over the
//!   (convex) feasible set and blends with an exact line search on `f`
//!   along the segment. Since the surrogate is linear this is a
//!   conditional-gradient step; the subproblem (linear objective, simplex
//!   plus one convex quadratic constraint) is solved by root-finding on the
//!   constraint multiplier with an accelerated projected-gradient inner
//!   loop, and is held to an independent oracle in the tests.
//!
//! All runs are deterministic: no randomness, fixed tie-breaking.

use crate::theory::{pacf_mainlobe, zp_expected_sq, ZpGeometry};
use crate::{Error, PowerAllocation, Result, Scalar};

/// Why an optimizer run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// Relative objective decrease fell below the configured tolerance.
    Tolerance,
    /// Iteration budget exhausted.
    MaxIter,
    /// No improving step exists (line search exhausted, or the surrogate
    /// minimizer coincides with the current point).
    Stalled,
}

/// Iterates, objective values, and the stop reason of one optimizer run.
/// `objectives[i]` is `f(iterates[i])`; entry 0 is the starting point.
#[derive(Debug, Clone)]
pub struct OptimizerTrace<S: Scalar> {
    iterates: Vec<PowerAllocation<S>>,
    objectives: Vec<S>,
    stop_reason: StopReason,
}

impl<S: Scalar> OptimizerTrace<S> {
    pub fn iterates(&self) -> &[PowerAllocation<S>] {
        &self.iterates
    }

    pub fn objectives(&self) -> &[S] {
        &self.objectives
    }

    pub fn stop_reason(&self) -> StopReason {
        self.stop_reason
    }

    pub fn final_pa(&self) -> &PowerAllocation<S> {
        self.iterates.last().expect("trace is never empty")
    }

    pub fn final_objective(&self) -> S {
        *self.objectives.last().expect("trace is never empty")
    }

    pub fn len(&self) -> usize {
        self.objectives.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Backtracking line-search parameters for [`pgd`].
#[derive(Debug, Clone, Copy)]
pub struct ArmijoParams<S: Scalar> {
    pub initial_step: S,
    pub shrink: S,
    pub sufficient_decrease: S,
    pub min_step: S,
}

impl<S: Scalar> Default for ArmijoParams<S> {
    fn default() -> Self {
        Self {
            initial_step: S::one(),
            shrink: S::from(0.5).unwrap(),
            sufficient_decrease: S::from(1e-4).unwrap(),
            min_step: S::from(1e-16).unwrap(),
        }
    }
}

/// Configuration for [`pgd`].
#[derive(Debug, Clone)]
pub struct PgdConfig<S: Scalar> {
    pub n: usize,
    pub pad_factor: usize,
    pub mu4: S,
    pub initial: PowerAllocation<S>,
    pub max_iters: usize,
    /// Stop when the relative objective decrease drops below this.
    pub tol: S,
    pub armijo: ArmijoParams<S>,
}

impl<S: Scalar> PgdConfig<S> {
    /// Defaults: uniform start, 5000 iterations, `1e-8` relative tolerance.
    pub fn new(n: usize, pad_factor: usize, mu4: S) -> Self {
        Self {
            n,
            pad_factor,
            mu4,
            initial: PowerAllocation::uniform(n),
            max_iters: 5000,
            tol: S::from(1e-8).unwrap(),
            armijo: ArmijoParams::default(),
        }
    }
}

/// Configuration for [`sca`].
#[derive(Debug, Clone)]
pub struct ScaConfig<S: Scalar> {
    pub n: usize,
    pub pad_factor: usize,
    pub mu4: S,
    /// Lag at which the half-power (width) constraint is imposed;
    /// `1 <= constraint_lag < N*L/2`.
    pub constraint_lag: usize,
    pub max_iters: usize,
    pub tol: S,
    /// Interval width at which the golden-section line search stops.
    pub line_search_tol: S,
}

impl<S: Scalar> ScaConfig<S> {
    /// Defaults: 500 iterations, `1e-8` relative tolerance, `1e-6` line
    /// search resolution.
    pub fn new(n: usize, pad_factor: usize, mu4: S, constraint_lag: usize) -> Self {
        Self {
            n,
            pad_factor,
            mu4,
            constraint_lag,
            max_iters: 500,
            tol: S::from(1e-8).unwrap(),
            line_search_tol: S::from(1e-6).unwrap(),
        }
    }
}

/// Clamp negative entries to zero, then rescale radially so the sum is `N`.
///
/// Radial rescaling alone cannot restore nonnegativity, hence the clamp;
/// on nonnegative input the two coincide. Errors if no entry is positive.
pub fn project_simplex<S: Scalar>(v: &[S]) -> Result<PowerAllocation<S>> {
    let mut clamped: Vec<S> = v.iter().map(|&x| x.max(S::zero())).collect();
    let total: S = clamped.iter().sum();
    if !(total > S::zero()) {
        return Err(Error::EmptyProjection);
    }
    let scale = S::from(v.len()).unwrap() / total;
    for x in clamped.iter_mut() {
        *x = *x * scale;
    }
    PowerAllocation::from_vec(clamped)
}

/// Feasibility slack of the width constraint at lag `q`:
/// `E|r[0]|^2 / 2 - E|r[q]|^2`, nonnegative iff the allocation keeps the
/// average level at lag `q` at least 3 dB under the mainlobe.
pub fn width_constraint<S: Scalar>(
    pa: &PowerAllocation<S>,
    mu4: S,
    pad_factor: usize,
    q: usize,
) -> S {
    pacf_mainlobe(pa, mu4) / S::from(2.0).unwrap() - zp_expected_sq(pa, mu4, q, pad_factor)
}

fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

/// Projected gradient descent on the normalized zero-padded sidelobe level.
pub fn pgd<S: Scalar>(config: &PgdConfig<S>) -> Result<OptimizerTrace<S>> {
    validate_common(config.n, config.pad_factor, config.mu4, config.max_iters, config.tol)?;
    if config.initial.len() != config.n {
        return Err(Error::LengthMismatch {
            expected: config.n,
            got: config.initial.len(),
        });
    }
    let ls = &config.armijo;
    if !(ls.initial_step > S::zero())
        || !(ls.shrink > S::zero() && ls.shrink < S::one())
        || !(ls.min_step > S::zero())
    {
        return Err(Error::InvalidParameter(
            "line search needs initial_step > 0, 0 < shrink < 1, min_step > 0".into(),
        ));
    }
    let geo = ZpGeometry::new(config.n, config.pad_factor);
    let mut p = config.initial.clone();
    let mut f = geo.objective(p.as_slice(), config.mu4);
    let mut iterates = vec![p.clone()];
    let mut objectives = vec![f];
    let mut stop_reason = StopReason::MaxIter;

    for _ in 0..config.max_iters {
        let grad = geo.gradient(p.as_slice(), config.mu4);
        let mut step = ls.initial_step;
        let mut accepted: Option<(PowerAllocation<S>, S)> = None;
        while step >= ls.min_step {
            let raw: Vec<S> = p
                .as_slice()
                .iter()
                .zip(&grad)
                .map(|(&pi, &gi)| pi - step * gi)
                .collect();
            // An overly aggressive step can wipe out all mass; shrink past it.
            if let Ok(candidate) = project_simplex(&raw) {
                let displacement: Vec<S> = candidate
                    .as_slice()
                    .iter()
                    .zip(p.as_slice())
                    .map(|(&c, &x)| c - x)
                    .collect();
                let slope = dot(&grad, &displacement);
                let f_candidate = geo.objective(candidate.as_slice(), config.mu4);
                if slope < S::zero() && f_candidate <= f + ls.sufficient_decrease * slope {
                    accepted = Some((candidate, f_candidate));
                    break;
                }
            }
            step = step * ls.shrink;
        }
        let Some((next, f_next)) = accepted else {
            stop_reason = StopReason::Stalled;
            break;
        };
        let decrease = f - f_next;
        p = next;
        f = f_next;
        iterates.push(p.clone());
        objectives.push(f);
        if decrease <= config.tol * f.abs().max(S::epsilon()) {
            stop_reason = StopReason::Tolerance;
            break;
        }
    }

    Ok(OptimizerTrace {
        iterates,
        objectives,
        stop_reason,
    })
}

/// Successive convex approximation for the width-constrained problem.
///
/// Starts from the uniform allocation (checked for feasibility at the
/// constraint lag), and per round: linearize `f`, minimize the linear
/// surrogate over the feasible set, blend by exact line search. The
/// surrogate agrees with `f` to first order at the expansion point by
/// construction, so a vanishing surrogate improvement means stationarity
/// and the run stops with [`StopReason::Stalled`].
pub fn sca<S: Scalar>(config: &ScaConfig<S>) -> Result<OptimizerTrace<S>> {
    validate_common(config.n, config.pad_factor, config.mu4, config.max_iters, config.tol)?;
    let grid = config.n * config.pad_factor;
    if config.constraint_lag == 0 || config.constraint_lag >= grid / 2 {
        return Err(Error::InvalidParameter(format!(
            "constraint lag must lie in 1..{}, got {}",
            grid / 2,
            config.constraint_lag
        )));
    }
    if !(config.line_search_tol > S::zero()) {
        return Err(Error::InvalidParameter(
            "line search resolution must be positive".into(),
        ));
    }
    let uniform = PowerAllocation::uniform(config.n);
    let slack = width_constraint(&uniform, config.mu4, config.pad_factor, config.constraint_lag);
    if slack < S::zero() {
        return Err(Error::InfeasibleStart {
            lag: config.constraint_lag,
            slack: slack.to_f64().unwrap_or(f64::NAN),
        });
    }

    let geo = ZpGeometry::new(config.n, config.pad_factor);
    let mut subproblem =
        WidthSubproblem::new(config.n, config.pad_factor, config.constraint_lag, config.mu4);

    let mut p = uniform;
    let mut f = geo.objective(p.as_slice(), config.mu4);
    let mut iterates = vec![p.clone()];
    let mut objectives = vec![f];
    let mut stop_reason = StopReason::MaxIter;
    let stall_tol = S::from(1e-12).unwrap();

    for _ in 0..config.max_iters {
        let grad = geo.gradient(p.as_slice(), config.mu4);
        let target = subproblem.solve(&grad);
        let direction: Vec<S> = target
            .iter()
            .zip(p.as_slice())
            .map(|(&t, &x)| t - x)
            .collect();
        let max_move = direction
            .iter()
            .map(|d| d.abs())
            .fold(S::zero(), S::max);
        // Surrogate minimizer equals the current point: stationary.
        if max_move < stall_tol {
            stop_reason = StopReason::Stalled;
            break;
        }
        let line = |alpha: S| {
            let trial: Vec<S> = p
                .as_slice()
                .iter()
                .zip(&direction)
                .map(|(&x, &d)| x + alpha * d)
                .collect();
            geo.objective(&trial, config.mu4)
        };
        let (alpha_gs, f_gs) = golden_section(&line, config.line_search_tol);
        // Guard against non-unimodal sections: consider the full step too,
        // and never accept an increase.
        let f_full = line(S::one());
        let (alpha, f_next) = if f_gs <= f_full {
            (alpha_gs, f_gs)
        } else {
            (S::one(), f_full)
        };
        if !(f_next < f) {
            stop_reason = StopReason::Stalled;
            break;
        }
        let next: Vec<S> = p
            .as_slice()
            .iter()
            .zip(&direction)
            .map(|(&x, &d)| x + alpha * d)
            .collect();
        let decrease = f - f_next;
        p = PowerAllocation::from_vec(next)?;
        f = f_next;
        iterates.push(p.clone());
        objectives.push(f);
        if decrease <= config.tol * f.abs().max(S::epsilon()) {
            stop_reason = StopReason::Tolerance;
            break;
        }
    }

    Ok(OptimizerTrace {
        iterates,
        objectives,
        stop_reason,
    })
}

fn validate_common<S: Scalar>(
    n: usize,
    pad_factor: usize,
    mu4: S,
    max_iters: usize,
    tol: S,
) -> Result<()> {
    if n == 0 || pad_factor == 0 {
        return Err(Error::InvalidParameter(
            "n and pad factor must be at least 1".into(),
        ));
    }
    if max_iters == 0 {
        return Err(Error::InvalidParameter("max_iters must be at least 1".into()));
    }
    if !(tol > S::zero()) {
        return Err(Error::InvalidParameter("tolerance must be positive".into()));
    }
    if mu4 < S::one() {
        return Err(Error::InvalidParameter(format!(
            "mu4 must be at least 1, got {:e}",
            mu4.to_f64().unwrap_or(f64::NAN)
        )));
    }
    Ok(())
}

/// Golden-section search for a minimum of `f` on `[0, 1]`.
fn golden_section<S: Scalar>(f: impl Fn(S) -> S, tol: S) -> (S, S) {
    let invphi = (S::from(5.0).unwrap().sqrt() - S::one()) / S::from(2.0).unwrap();
    let mut a = S::zero();
    let mut b = S::one();
    let mut c = b - invphi * (b - a);
    let mut d = a + invphi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    let mid = (a + b) / S::from(2.0).unwrap();
    (mid, f(mid))
}

/// The SCA subproblem: minimize a linear objective over
/// `{sum p = N, p >= 0, quad(p) <= N^2/2}` where
/// `quad(p) = (mu4-1)|p|^2/2 + (u.p)^2 + (w.p)^2` collects the width
/// constraint at the chosen lag (`u`, `w` are the cosine and sine parts of
/// its steering vector).
///
/// Solved by bisection on the constraint's multiplier `lambda`: for each
/// `lambda` the penalized objective `c.p + lambda quad(p)` is minimized
/// over the simplex with an accelerated projected-gradient loop (Euclidean
/// projection, fixed `1/Lipschitz` step), and `lambda` is driven to the
/// smallest value whose minimizer is feasible. Validated against a dense
/// grid oracle in the integration tests.
#[derive(Debug, Clone)]
pub struct WidthSubproblem<S: Scalar> {
    n_total: S,
    u: Vec<S>,
    w: Vec<S>,
    mu4: S,
    bound: S,
    feas_tol: S,
    /// Multiplier found by the previous [`Self::solve`] call; seeds the next
    /// bracket (consecutive SCA rounds have nearby multipliers).
    last_lambda: Option<S>,
}

impl<S: Scalar> WidthSubproblem<S> {
    /// Feasible set for `n` subcarriers, pad factor `pad`, and the width
    /// constraint at lag `q` of the padded grid.
    pub fn new(n: usize, pad: usize, q: usize, mu4: S) -> Self {
        let grid = n * pad;
        let two_pi = S::from(2.0).unwrap() * S::PI();
        let step = two_pi * S::from(q).unwrap() / S::from(grid).unwrap();
        let u: Vec<S> = (0..n)
            .map(|i| (step * S::from(i + 1).unwrap()).cos())
            .collect();
        let w: Vec<S> = (0..n)
            .map(|i| (step * S::from(i + 1).unwrap()).sin())
            .collect();
        let n = S::from(n).unwrap();
        let bound = n * n / S::from(2.0).unwrap();
        Self {
            n_total: n,
            u,
            w,
            mu4,
            bound,
            // Classification tolerance only: a borderline multiplier that is
            // misread as infeasible just lands on a slightly more
            // conservative solution, while the reverse would leak
            // constraint violations into the iterates.
            feas_tol: bound * S::from(1e-13).unwrap(),
            last_lambda: None,
        }
    }

    /// Left-hand side of the quadratic constraint.
    pub fn quad(&self, p: &[S]) -> S {
        let sum_sq: S = p.iter().map(|&x| x * x).sum();
        let a = dot(&self.u, p);
        let b = dot(&self.w, p);
        (self.mu4 - S::one()) * sum_sq / S::from(2.0).unwrap() + a * a + b * b
    }

    fn quad_grad(&self, p: &[S], out: &mut [S]) {
        let a = dot(&self.u, p);
        let b = dot(&self.w, p);
        let two = S::from(2.0).unwrap();
        for i in 0..p.len() {
            out[i] = (self.mu4 - S::one()) * p[i] + two * (a * self.u[i] + b * self.w[i]);
        }
    }

    /// Whether `p` satisfies the quadratic constraint (within tolerance).
    pub fn is_feasible(&self, p: &[S]) -> bool {
        self.quad(p) <= self.bound + self.feas_tol
    }

    /// Minimize `c . p` over the feasible set.
    ///
    /// Finds the smallest multiplier whose penalized minimizer is feasible:
    /// first a geometric bracket around the previous call's multiplier, then
    /// Illinois false-position refinement on
    /// `h(lambda) = quad(p*(lambda)) - bound`, which is decreasing.
    pub fn solve(&mut self, c: &[S]) -> Vec<S> {
        let n = c.len();
        // Unconstrained-over-simplex minimum of a linear function: all mass
        // on the smallest coefficient (first index on ties).
        let mut best_idx = 0;
        for i in 1..n {
            if c[i] < c[best_idx] {
                best_idx = i;
            }
        }
        let mut vertex = vec![S::zero(); n];
        vertex[best_idx] = self.n_total;
        if self.is_feasible(&vertex) {
            return vertex;
        }

        // Inner solves warm-start from each other; minimizers move
        // continuously in lambda.
        let four = S::from(4.0).unwrap();
        let two = S::from(2.0).unwrap();
        let mut warm = vec![self.n_total / S::from(n).unwrap(); n];

        let mut hi = self.last_lambda.unwrap_or_else(S::one);
        let (mut p_hi, mut h_hi) = self.probe(c, hi, &mut warm);
        let mut lo = S::zero();
        let mut h_lo = S::one();
        if h_hi <= self.feas_tol {
            // Feasible already: walk down until the bracket's low end turns
            // infeasible (or lambda underflows, meaning the constraint is
            // effectively inactive at this cost vector).
            let floor = S::from(1e-18).unwrap();
            loop {
                let cand = hi / four;
                if cand <= floor {
                    self.last_lambda = Some(hi);
                    return p_hi;
                }
                let (p, h) = self.probe(c, cand, &mut warm);
                if h <= self.feas_tol {
                    hi = cand;
                    p_hi = p;
                    h_hi = h;
                } else {
                    lo = cand;
                    h_lo = h;
                    break;
                }
            }
        } else {
            // Infeasible: grow until feasible.
            let mut found = false;
            for _ in 0..60 {
                lo = hi;
                h_lo = h_hi;
                hi = hi * four;
                let (p, h) = self.probe(c, hi, &mut warm);
                p_hi = p;
                h_hi = h;
                if h <= self.feas_tol {
                    found = true;
                    break;
                }
            }
            if !found {
                // Cannot happen when the current SCA iterate is feasible
                // (the quadratic's simplex minimum then satisfies the
                // bound); return the heaviest-multiplier point regardless.
                self.last_lambda = Some(hi);
                return p_hi;
            }
        }

        // Illinois refinement: h(lo) > 0 >= h(hi).
        let mut last_side_hi = false;
        let mut last_side_lo = false;
        for _ in 0..40 {
            if hi - lo <= S::from(1e-6).unwrap() * hi {
                break;
            }
            let span = hi - lo;
            let denom = h_lo - h_hi;
            let mut cand = if denom > S::zero() {
                lo + span * (h_lo / denom)
            } else {
                lo + span / two
            };
            let margin = span * S::from(1e-3).unwrap();
            if !(cand > lo + margin && cand < hi - margin) {
                cand = lo + span / two;
            }
            let (p, h) = self.probe(c, cand, &mut warm);
            if h <= self.feas_tol {
                hi = cand;
                h_hi = h;
                p_hi = p;
                if last_side_hi {
                    h_lo = h_lo / two;
                }
                last_side_hi = true;
                last_side_lo = false;
            } else {
                lo = cand;
                h_lo = h;
                if last_side_lo {
                    h_hi = h_hi / two;
                }
                last_side_lo = true;
                last_side_hi = false;
            }
        }
        self.last_lambda = Some(hi);
        p_hi
    }

    /// One multiplier probe: solve the penalized problem, refresh the warm
    /// start, and report the constraint residual.
    fn probe(&self, c: &[S], lambda: S, warm: &mut [S]) -> (Vec<S>, S) {
        let p = self.penalized_min(c, lambda, warm);
        warm.copy_from_slice(&p);
        let h = self.quad(&p) - self.bound;
        (p, h)
    }

    /// Accelerated projected gradient for `c . p + lambda quad(p)` over the
    /// simplex, with function-value restarts, from the given start point.
    /// The loop reuses scratch buffers; at this problem size allocation
    /// would otherwise dominate the arithmetic.
    fn penalized_min(&self, c: &[S], lambda: S, start: &[S]) -> Vec<S> {
        let n = c.len();
        let two = S::from(2.0).unwrap();
        // grad^2 quad = (mu4-1) I + 2 (u u^T + w w^T); |u|^2 + |w|^2 = N.
        let lipschitz = lambda * ((self.mu4 - S::one()) + two * self.n_total);
        // Cap the step so the pre-projection point stays within a few orders
        // of the simplex scale: at tiny lambda the 1/Lipschitz step blows up
        // and the projection would lose absolute precision to cancellation.
        let c_scale = c.iter().map(|x| x.abs()).fold(S::zero(), S::max);
        let step_cap =
            S::from(100.0).unwrap() * self.n_total / c_scale.max(S::from(1e-30).unwrap());
        let step = if lipschitz > S::zero() {
            (S::one() / lipschitz).min(step_cap)
        } else {
            step_cap
        };
        let phi = |p: &[S]| dot(c, p) + lambda * self.quad(p);

        let mut p = start.to_vec();
        let mut p_prev = p.clone();
        let mut t = S::one();
        let mut phi_best = phi(&p);
        let mut grad = vec![S::zero(); n];
        let mut trial = vec![S::zero(); n];
        let mut sort_scratch = vec![S::zero(); n];
        let move_tol = S::from(1e-9).unwrap() * self.n_total;
        let mut window_best = phi_best;
        let window_tol = S::from(1e-13).unwrap();

        for iter in 0..400 {
            let momentum = (t - S::one()) / (t + two);
            // Extrapolate, take the gradient step, and project, all into
            // `trial`.
            for i in 0..n {
                trial[i] = p[i] + momentum * (p[i] - p_prev[i]);
            }
            self.quad_grad(&trial, &mut grad);
            for i in 0..n {
                trial[i] = trial[i] - step * (c[i] + lambda * grad[i]);
            }
            project_simplex_in_place(&mut trial, self.n_total, &mut sort_scratch);
            let phi_next = phi(&trial);
            if phi_next <= phi_best {
                let max_move = trial
                    .iter()
                    .zip(&p)
                    .map(|(&a, &b)| (a - b).abs())
                    .fold(S::zero(), S::max);
                std::mem::swap(&mut p_prev, &mut p);
                p.copy_from_slice(&trial);
                phi_best = phi_next;
                t = t + S::one();
                if max_move < move_tol && iter > 2 {
                    break;
                }
            } else {
                // Restart the momentum from the best point seen.
                t = S::one();
                p_prev.copy_from_slice(&p);
            }
            // Plateau detection over 16-iteration windows.
            if iter % 16 == 15 {
                if window_best - phi_best
                    <= window_tol * (phi_best.abs() + S::from(1e-30).unwrap())
                {
                    break;
                }
                window_best = phi_best;
            }
        }
        p
    }
}

/// Euclidean projection onto `{p >= 0, sum p = total}` (sort-based).
#[cfg(test)]
fn euclidean_simplex_projection<S: Scalar>(v: &[S], total: S) -> Vec<S> {
    let mut out = v.to_vec();
    let mut scratch = vec![S::zero(); v.len()];
    project_simplex_in_place(&mut out, total, &mut scratch);
    out
}

/// In-place variant of the Euclidean simplex projection; `scratch` must have
/// the same length as `v`.
fn project_simplex_in_place<S: Scalar>(v: &mut [S], total: S, scratch: &mut [S]) {
    scratch.copy_from_slice(v);
    scratch.sort_by(|a, b| b.partial_cmp(a).expect("no NaN in projection input"));
    let mut cumsum = S::zero();
    let mut tau = S::zero();
    let mut found = false;
    for (j, &vj) in scratch.iter().enumerate() {
        cumsum = cumsum + vj;
        let candidate = (cumsum - total) / S::from(j + 1).unwrap();
        if vj - candidate > S::zero() {
            tau = candidate;
            found = true;
        } else {
            break;
        }
    }
    debug_assert!(found, "projection input produced no support");
    let _ = found;
    for x in v.iter_mut() {
        *x = (*x - tau).max(S::zero());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn project_simplex_examples() {
        let p = project_simplex(&[1.0, 1.0, 1.0, 5.0]).unwrap();
        assert_eq!(p.as_slice(), &[0.5, 0.5, 0.5, 2.5]);

        let p = project_simplex(&[1.0, 1.0, 1.0, 1.0]).unwrap();
        assert_eq!(p.as_slice(), &[1.0, 1.0, 1.0, 1.0]);

        // Radial scaling alone would keep the negative entry; the clamp
        // runs first.
        let p = project_simplex(&[-1.0, 3.0]).unwrap();
        assert_eq!(p.as_slice(), &[0.0, 2.0]);

        assert!(matches!(
            project_simplex::<f64>(&[-1.0, -2.0]),
            Err(Error::EmptyProjection)
        ));
    }

    #[test]
    fn euclidean_projection_basics() {
        let p = euclidean_simplex_projection(&[0.5f64, 0.5], 1.0);
        assert!((p[0] - 0.5).abs() < 1e-12 && (p[1] - 0.5).abs() < 1e-12);
        // Projection of a point already in the set is itself.
        let p = euclidean_simplex_projection(&[2.0f64, 1.0, 1.0], 4.0);
        assert!((p[0] - 2.0).abs() < 1e-12);
        // Far-off point lands on a vertex.
        let p = euclidean_simplex_projection(&[10.0f64, 0.0, 0.0], 3.0);
        assert!((p[0] - 3.0).abs() < 1e-12 && p[1].abs() < 1e-12);
        let sum: f64 = euclidean_simplex_projection(&[0.3, -2.0, 5.0, 0.1], 4.0)
            .iter()
            .sum();
        assert!((sum - 4.0).abs() < 1e-12);
    }

    #[test]
    fn golden_section_finds_quadratic_minimum() {
        let (x, fx) = golden_section(|a: f64| (a - 0.3) * (a - 0.3), 1e-8);
        assert!((x - 0.3).abs() < 1e-6);
        assert!(fx < 1e-12);
    }

    #[test]
    fn width_constraint_signs() {
        // Uniform allocation at a lag where the phased sum is small:
        // positive slack.
        let pa = PowerAllocation::<f64>::uniform(16);
        let slack = width_constraint(&pa, 1.32, 4, 20);
        assert!(slack > 0.0, "slack {slack}");

        // All power on one subcarrier makes every lag as strong as the
        // mainlobe: negative slack at the tightest lag.
        let mut v = vec![0.0; 16];
        v[0] = 16.0;
        let pa = PowerAllocation::from_vec(v).unwrap();
        let slack = width_constraint(&pa, 1.32, 4, 4);
        assert!(slack < 0.0, "slack {slack}");
    }

    #[test]
    fn width_constraint_matches_geometry_route() {
        let geo = ZpGeometry::<f64>::new(12, 4);
        for seed in 0..4 {
            let pa = PowerAllocation::<f64>::random(12, seed);
            for q in [4usize, 9, 17] {
                let direct = width_constraint(&pa, 1.32, 4, q);
                let via_geo = geo.mainlobe(pa.as_slice(), 1.32) / 2.0
                    - geo.expected_sq(pa.as_slice(), 1.32, q);
                assert!((direct - via_geo).abs() < 1e-10, "seed {seed} q {q}");
            }
        }
    }

    #[test]
    fn pgd_descends_monotonically_on_small_problem() {
        let config = PgdConfig::<f64>::new(8, 4, 1.0);
        let trace = pgd(&config).unwrap();
        let objs = trace.objectives();
        assert!(objs.len() >= 2, "expected at least one descent step");
        for w in objs.windows(2) {
            assert!(w[1] <= w[0] + 1e-12, "not monotone: {} -> {}", w[0], w[1]);
        }
        assert!(trace.final_objective() < objs[0]);
        // Iterates stay on the simplex.
        for it in trace.iterates() {
            let sum: f64 = it.as_slice().iter().sum();
            assert!((sum - 8.0).abs() < 1e-9 * 8.0);
            assert!(it.as_slice().iter().all(|&v| v >= -1e-12));
        }
    }

    #[test]
    fn pgd_without_padding_cannot_beat_uniform() {
        // pad = 1 makes the uniform allocation globally optimal.
        let config = PgdConfig::<f64>::new(16, 1, 1.32);
        let trace = pgd(&config).unwrap();
        let f_uniform = trace.objectives()[0];
        assert!(trace.final_objective() >= f_uniform - 1e-10);
        assert!(trace.final_objective() <= f_uniform + 1e-12);
    }

    #[test]
    fn pgd_validates_config() {
        let mut config = PgdConfig::<f64>::new(8, 2, 1.0);
        config.mu4 = 0.5;
        assert!(pgd(&config).is_err());
        let config = PgdConfig::<f64>::new(0, 2, 1.0);
        assert!(pgd(&config).is_err());
        let mut config = PgdConfig::<f64>::new(8, 2, 1.0);
        config.initial = PowerAllocation::uniform(5);
        assert!(matches!(
            pgd(&config),
            Err(Error::LengthMismatch { expected: 8, got: 5 })
        ));
    }

    #[test]
    fn sca_rejects_bad_lags_and_infeasible_starts() {
        let config = ScaConfig::<f64>::new(8, 4, 1.0, 0);
        assert!(sca(&config).is_err());
        let config = ScaConfig::<f64>::new(8, 4, 1.0, 16);
        assert!(sca(&config).is_err());
        // Lag 16 = N*L/2 is out; lag 15 is in.
        let config = ScaConfig::<f64>::new(8, 4, 1.0, 15);
        assert!(sca(&config).is_ok());
        // A lag inside the uniform mainlobe where the level is above half:
        // infeasible start. At q = 1 the phased sum is near N.
        let config = ScaConfig::<f64>::new(8, 4, 1.0, 1);
        assert!(matches!(sca(&config), Err(Error::InfeasibleStart { .. })));
    }

    #[test]
    fn sca_iterates_stay_feasible_and_monotone() {
        let config = ScaConfig::<f64>::new(8, 4, 1.32, 3);
        let trace = sca(&config).unwrap();
        for w in trace.objectives().windows(2) {
            assert!(w[1] <= w[0] + 1e-12);
        }
        for it in trace.iterates() {
            let sum: f64 = it.as_slice().iter().sum();
            assert!((sum - 8.0).abs() < 1e-9 * 8.0);
            assert!(it.as_slice().iter().all(|&v| v >= -1e-12));
            assert!(
                width_constraint(it, 1.32, 4, 3) >= -1e-9,
                "iterate violates the width constraint"
            );
        }
    }

    #[test]
    fn subproblem_solution_is_feasible_and_on_the_simplex() {
        let mut sub = WidthSubproblem::new(4, 2, 2, 1.32);
        let c = vec![1.0, -1.0, 2.0, 0.0];
        let p = sub.solve(&c);
        assert!((p.iter().sum::<f64>() - 4.0).abs() < 1e-8);
        assert!(sub.is_feasible(&p));
        // The solution cannot be worse than the uniform point it competes
        // with inside the SCA loop.
        let at_uniform: f64 = c.iter().sum();
        let at_solution: f64 = c.iter().zip(&p).map(|(a, b)| a * b).sum();
        assert!(at_solution <= at_uniform + 1e-9);
    }
}
