//! File formats: CSV writers for profiles, theory curves, summaries,
//! optimizer traces, power allocations and sweeps, plus the JSON manifest.
//!
//! Exact quantities are printed with `{:e}` (shortest round-trip scientific
//! form), dB columns with six decimals. Nothing here writes timestamps or
//! other run-environment state, so outputs are byte-stable.

use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use ofdm_pa::acf::DB_RATIO_FLOOR;
use ofdm_pa::{AcfProfile64, PowerAllocation64};
use serde::Serialize;

use crate::{Error, Result};

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(Error::io(path))?;
    }
    Ok(BufWriter::new(File::create(path).map_err(Error::io(path))?))
}

fn db_of_ratio(ratio: f64) -> f64 {
    10.0 * ratio.max(DB_RATIO_FLOOR).log10()
}

/// Single-realization profile: `lag, re, im, mag_sq, mag_db_normalized`.
pub fn write_profile_csv(path: &Path, profile: &AcfProfile64) -> Result<()> {
    let mut w = create(path)?;
    let main = profile.mag_sq(0);
    writeln!(w, "lag,re,im,mag_sq,mag_db_normalized").map_err(Error::io(path))?;
    for (k, v) in profile.values().iter().enumerate() {
        let mag_sq = v.norm_sqr();
        writeln!(
            w,
            "{k},{:e},{:e},{:e},{:.6}",
            v.re,
            v.im,
            mag_sq,
            db_of_ratio(mag_sq / main)
        )
        .map_err(Error::io(path))?;
    }
    w.flush().map_err(Error::io(path))
}

/// Monte Carlo mean profile: `lag, mean_mag_sq, stderr, mag_db_normalized`.
pub fn write_mean_profile_csv(path: &Path, mean: &[f64], se: &[f64]) -> Result<()> {
    let mut w = create(path)?;
    let main = mean[0];
    writeln!(w, "lag,mean_mag_sq,stderr,mag_db_normalized").map_err(Error::io(path))?;
    for (k, (m, s)) in mean.iter().zip(se).enumerate() {
        writeln!(w, "{k},{m:e},{s:e},{:.6}", db_of_ratio(m / main)).map_err(Error::io(path))?;
    }
    w.flush().map_err(Error::io(path))
}

/// Closed-form curve: `lag, expected_mag_sq, expected_mag_db_normalized`.
pub fn write_theory_csv(path: &Path, expected: &[f64]) -> Result<()> {
    let mut w = create(path)?;
    let main = expected[0];
    writeln!(w, "lag,expected_mag_sq,expected_mag_db_normalized").map_err(Error::io(path))?;
    for (k, e) in expected.iter().enumerate() {
        writeln!(w, "{k},{e:e},{:.6}", db_of_ratio(e / main)).map_err(Error::io(path))?;
    }
    w.flush().map_err(Error::io(path))
}

/// Scalar summaries: `metric, empirical, theory, stderr` (blank when absent).
pub fn write_summary_csv(path: &Path, rows: &[crate::SummaryRow]) -> Result<()> {
    let mut w = create(path)?;
    writeln!(w, "metric,empirical,theory,stderr").map_err(Error::io(path))?;
    for row in rows {
        let theory = row.theory.map(|t| format!("{t:e}")).unwrap_or_default();
        let stderr = row.stderr.map(|s| format!("{s:e}")).unwrap_or_default();
        writeln!(w, "{},{:e},{},{}", row.metric, row.empirical, theory, stderr)
            .map_err(Error::io(path))?;
    }
    w.flush().map_err(Error::io(path))
}

/// Optimizer trace: `iter, objective`.
pub fn write_trace_csv(path: &Path, objectives: &[f64]) -> Result<()> {
    let mut w = create(path)?;
    writeln!(w, "iter,objective").map_err(Error::io(path))?;
    for (i, f) in objectives.iter().enumerate() {
        writeln!(w, "{i},{f:e}").map_err(Error::io(path))?;
    }
    w.flush().map_err(Error::io(path))
}

/// One-column power-allocation vector with header `P`.
pub fn write_pa_csv(path: &Path, pa: &PowerAllocation64) -> Result<()> {
    let mut w = create(path)?;
    writeln!(w, "P").map_err(Error::io(path))?;
    for v in pa.as_slice() {
        writeln!(w, "{v:e}").map_err(Error::io(path))?;
    }
    w.flush().map_err(Error::io(path))
}

/// Read back a [`write_pa_csv`] file (simplex constraints re-validated).
pub fn read_pa_csv(path: &Path) -> Result<PowerAllocation64> {
    let file = File::open(path).map_err(Error::io(path))?;
    let mut lines = BufReader::new(file).lines();
    let header = lines
        .next()
        .transpose()
        .map_err(Error::io(path))?
        .unwrap_or_default();
    if header.trim() != "P" {
        return Err(Error::Parse {
            path: path.into(),
            reason: format!("expected header \"P\", found {header:?}"),
        });
    }
    let mut values = Vec::new();
    for line in lines {
        let line = line.map_err(Error::io(path))?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        values.push(trimmed.parse::<f64>().map_err(|e| Error::Parse {
            path: path.into(),
            reason: format!("bad value {trimmed:?}: {e}"),
        })?);
    }
    Ok(PowerAllocation64::from_vec(values)?)
}

/// Per-`n` sweep of an integrated-level metric:
/// `n, empirical, theory, stderr`.
pub struct SweepRow {
    pub n: usize,
    pub empirical: f64,
    pub theory: f64,
    pub stderr: f64,
}

pub fn write_sweep_csv(path: &Path, rows: &[SweepRow]) -> Result<()> {
    let mut w = create(path)?;
    writeln!(w, "n,empirical,theory,stderr").map_err(Error::io(path))?;
    for r in rows {
        writeln!(w, "{},{:e},{:e},{:e}", r.n, r.empirical, r.theory, r.stderr)
            .map_err(Error::io(path))?;
    }
    w.flush().map_err(Error::io(path))
}

/// Pretty-printed JSON for any serializable document (the `--format json`
/// twin of the CSV writers).
pub fn write_json<T: Serialize>(path: &Path, doc: &T) -> Result<()> {
    let mut w = create(path)?;
    let body = serde_json::to_string_pretty(doc)?;
    w.write_all(body.as_bytes()).map_err(Error::io(path))?;
    w.write_all(b"\n").map_err(Error::io(path))?;
    w.flush().map_err(Error::io(path))
}

/// One produced file with the parameters that generated it and its headline
/// metrics. Maps are ordered so the serialized form is reproducible.
#[derive(Debug, Serialize)]
pub struct ManifestEntry {
    pub file: String,
    pub params: BTreeMap<String, String>,
    pub metrics: BTreeMap<String, f64>,
}

/// Index of everything a `reproduce`/`sweep` invocation wrote.
#[derive(Debug, Serialize)]
pub struct Manifest {
    pub version: String,
    pub experiment: String,
    pub base_seed: u64,
    pub trials: usize,
    pub outputs: Vec<ManifestEntry>,
}

impl Manifest {
    pub fn new(experiment: impl Into<String>, base_seed: u64, trials: usize) -> Self {
        Self {
            version: env!("CARGO_PKG_VERSION").to_string(),
            experiment: experiment.into(),
            base_seed,
            trials,
            outputs: Vec::new(),
        }
    }

    pub fn push(
        &mut self,
        file: impl Into<String>,
        params: BTreeMap<String, String>,
        metrics: BTreeMap<String, f64>,
    ) {
        self.outputs.push(ManifestEntry {
            file: file.into(),
            params,
            metrics,
        });
    }

    /// Write `manifest.json`; returns the path written.
    pub fn write(&self, out_dir: &Path) -> Result<PathBuf> {
        let path = out_dir.join("manifest.json");
        let mut w = create(&path)?;
        let body = serde_json::to_string_pretty(self)?;
        w.write_all(body.as_bytes()).map_err(Error::io(&path))?;
        w.write_all(b"\n").map_err(Error::io(&path))?;
        w.flush().map_err(Error::io(&path))?;
        Ok(path)
    }
}
