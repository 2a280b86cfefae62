//! Experiment harness for the OFDM sidelobe library: seeded Monte Carlo
//! scenario runs with closed-form overlays, canned experiment presets
//! (`fig1`..`fig9`), and the CSV/JSON result formats the CLI emits.
//!
//! Everything here is deterministic: trial `t` of a scenario draws its
//! symbols with seed `base_seed + t`, random power allocations are pinned to
//! an explicit seed, aggregation reduces in a fixed pairwise order, and no
//! output embeds timestamps, so running the same command twice produces
//! byte-identical files.

pub mod figures;
pub mod io;
pub mod runner;

pub use figures::{reproduce, FIGURE_IDS};
pub use io::Manifest;
pub use runner::{run_scenario, ExperimentResult, PaScheme, Scenario, SummaryRow};

use std::path::PathBuf;

/// Errors surfaced by the harness and CLI layers.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] ofdm_pa::Error),

    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("malformed input {path}: {reason}")]
    Parse { path: PathBuf, reason: String },

    #[error("unknown figure id {0:?} (expected fig1..fig9)")]
    UnknownFigure(String),

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Adapter for `map_err` that attaches the offending path.
    pub fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> Error {
        let path = path.into();
        move |source| Error::Io { path, source }
    }
}
