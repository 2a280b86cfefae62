use thiserror::Error;

/// Errors produced by constellation construction, waveform synthesis, ACF
/// metrics, and the optimizers.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A constellation order that violates the unit-power / zero-mean /
    /// zero-pseudo-variance requirements, or that is not constructible.
    #[error("unsupported constellation: {0}")]
    UnsupportedConstellation(String),

    /// A constellation tag that could not be parsed.
    #[error("unknown constellation tag {0:?} (expected e.g. \"qpsk\", \"16qam\", \"16psk\", \"64qam\")")]
    UnknownConstellationTag(String),

    /// Vector lengths that were required to match did not.
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    /// A candidate power-allocation vector that is not on the scaled simplex.
    #[error("invalid power allocation: {0}")]
    InvalidPowerAllocation(String),

    /// Simplex projection of a vector with no positive mass.
    #[error("cannot project onto the simplex: input has no positive entry")]
    EmptyProjection,

    /// Metric requested on a profile with zero mainlobe energy.
    #[error("degenerate autocorrelation profile: mainlobe energy is zero")]
    DegenerateProfile,

    /// The width-constrained optimizer has no feasible starting point at the
    /// requested constraint lag.
    #[error("uniform power allocation violates the width constraint at lag {lag} (slack {slack:.6e}); no feasible start")]
    InfeasibleStart { lag: usize, slack: f64 },

    /// A parameter outside its documented domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
