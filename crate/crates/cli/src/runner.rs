//! Seeded Monte Carlo scenario runs with closed-form overlays.

use std::path::PathBuf;

use ofdm_pa::acf::{self, aacf, pacf, sidelobe_range, width_3db_from_mag_sq, zp_pacf};
use ofdm_pa::optimizer::{pgd, sca, PgdConfig, ScaConfig};
use ofdm_pa::{modulate, theory, AcfKind, Constellation64, PowerAllocation64};

use crate::{io, Error, Result};

/// How the per-subcarrier powers of a scenario are chosen.
#[derive(Debug, Clone, PartialEq)]
pub enum PaScheme {
    Uniform,
    /// One pinned draw from the simplex-uniform distribution.
    Random { seed: u64 },
    /// Load from a one-column CSV (header `P`).
    File(PathBuf),
    /// Run projected gradient descent from the uniform point.
    Pgd,
    /// Run the width-constrained optimizer with the given constraint lag.
    Sca { constraint_lag: usize },
}

impl PaScheme {
    pub fn label(&self) -> String {
        match self {
            PaScheme::Uniform => "uniform".into(),
            PaScheme::Random { .. } => "random".into(),
            PaScheme::File(_) => "file".into(),
            PaScheme::Pgd => "pgd".into(),
            PaScheme::Sca { constraint_lag } => format!("sca-q{constraint_lag}"),
        }
    }
}

/// One Monte Carlo experiment: a constellation, a power allocation scheme,
/// an ACF flavour, and a trial budget. Trial `t` draws its symbols with
/// seed `base_seed + t`.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub constellation: String,
    pub n: usize,
    pub pa: PaScheme,
    pub kind: AcfKind,
    /// Delay-grid interpolation factor; must be 1 unless `kind` is
    /// [`AcfKind::ZeroPadded`].
    pub pad_factor: usize,
    pub trials: usize,
    pub base_seed: u64,
}

impl Scenario {
    pub fn new(constellation: &str, n: usize, pa: PaScheme, kind: AcfKind) -> Self {
        Self {
            constellation: constellation.into(),
            n,
            pa,
            kind,
            pad_factor: 1,
            trials: 1000,
            base_seed: 0,
        }
    }

    pub fn with_pad(mut self, pad_factor: usize) -> Self {
        self.pad_factor = pad_factor;
        self
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_seed(mut self, base_seed: u64) -> Self {
        self.base_seed = base_seed;
        self
    }

    /// File-stem-friendly description, e.g. `periodic_16qam_n64_uniform`.
    pub fn label(&self) -> String {
        let kind = match self.kind {
            AcfKind::Periodic => "periodic".to_string(),
            AcfKind::Aperiodic => "aperiodic".to_string(),
            AcfKind::ZeroPadded => format!("zp{}", self.pad_factor),
        };
        format!(
            "{kind}_{}_n{}_{}",
            self.constellation,
            self.n,
            self.pa.label()
        )
    }

    fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidScenario("trials must be at least 1".into()));
        }
        if self.n == 0 {
            return Err(Error::InvalidScenario("n must be at least 1".into()));
        }
        match self.kind {
            AcfKind::ZeroPadded if self.pad_factor < 1 => Err(Error::InvalidScenario(
                "zero-padded runs need pad_factor >= 1".into(),
            )),
            AcfKind::Periodic | AcfKind::Aperiodic if self.pad_factor != 1 => Err(
                Error::InvalidScenario("pad_factor only applies to zero-padded runs".into()),
            ),
            _ => Ok(()),
        }
    }

    /// Materialize the power allocation (running an optimizer if asked to).
    pub fn resolve_pa(&self, mu4: f64) -> Result<PowerAllocation64> {
        match &self.pa {
            PaScheme::Uniform => Ok(PowerAllocation64::uniform(self.n)),
            PaScheme::Random { seed } => Ok(PowerAllocation64::random(self.n, *seed)),
            PaScheme::File(path) => io::read_pa_csv(path),
            PaScheme::Pgd => {
                let trace = pgd(&PgdConfig::new(self.n, self.pad_factor, mu4))?;
                Ok(trace.final_pa().clone())
            }
            PaScheme::Sca { constraint_lag } => {
                let trace = sca(&ScaConfig::new(
                    self.n,
                    self.pad_factor,
                    mu4,
                    *constraint_lag,
                ))?;
                Ok(trace.final_pa().clone())
            }
        }
    }
}

/// One scalar summary line: `metric, empirical, theory, stderr`.
#[derive(Debug, Clone)]
pub struct SummaryRow {
    pub metric: String,
    pub empirical: f64,
    pub theory: Option<f64>,
    pub stderr: Option<f64>,
}

/// Per-lag means with standard errors, the matching closed-form curve
/// (absent for aperiodic runs, which have no per-lag closed form), scalar
/// summaries, and the resolved power allocation.
#[derive(Debug, Clone)]
pub struct ExperimentResult {
    pub scenario_label: String,
    pub mu4: f64,
    pub empirical_mean: Vec<f64>,
    pub empirical_se: Vec<f64>,
    pub theory: Option<Vec<f64>>,
    pub summaries: Vec<SummaryRow>,
    pub pa: PowerAllocation64,
}

impl ExperimentResult {
    pub fn summary(&self, metric: &str) -> Option<&SummaryRow> {
        self.summaries.iter().find(|r| r.metric == metric)
    }
}

/// Sum a collection of equal-length rows in a fixed pairwise-tree order.
/// The order is independent of how the rows were produced, so a future
/// parallel producer yields bit-identical aggregates.
fn pairwise_sum_rows(mut rows: Vec<Vec<f64>>) -> Vec<f64> {
    assert!(!rows.is_empty());
    while rows.len() > 1 {
        let mut next = Vec::with_capacity(rows.len().div_ceil(2));
        let mut it = rows.into_iter();
        while let Some(mut a) = it.next() {
            if let Some(b) = it.next() {
                for (x, y) in a.iter_mut().zip(&b) {
                    *x += y;
                }
            }
            next.push(a);
        }
        rows = next;
    }
    rows.pop().unwrap()
}

fn mean_and_se(samples: Vec<Vec<f64>>) -> (Vec<f64>, Vec<f64>) {
    let t = samples.len() as f64;
    let squares: Vec<Vec<f64>> = samples
        .iter()
        .map(|row| row.iter().map(|v| v * v).collect())
        .collect();
    let mean: Vec<f64> = pairwise_sum_rows(samples)
        .into_iter()
        .map(|s| s / t)
        .collect();
    let sum_sq = pairwise_sum_rows(squares);
    let se = sum_sq
        .iter()
        .zip(&mean)
        .map(|(&ss, &m)| {
            if t < 2.0 {
                return 0.0;
            }
            let var = (ss - t * m * m).max(0.0) / (t - 1.0);
            (var / t).sqrt()
        })
        .collect();
    (mean, se)
}

/// Run every trial of a scenario and aggregate.
pub fn run_scenario(scenario: &Scenario) -> Result<ExperimentResult> {
    scenario.validate()?;
    let constellation = Constellation64::from_tag(&scenario.constellation)?;
    let mu4 = constellation.mu4();
    let pa = scenario.resolve_pa(mu4)?;
    if pa.len() != scenario.n {
        return Err(Error::InvalidScenario(format!(
            "power allocation length {} does not match n = {}",
            pa.len(),
            scenario.n
        )));
    }

    let samples: Vec<Vec<f64>> = (0..scenario.trials)
        .map(|t| {
            let seed = scenario.base_seed.wrapping_add(t as u64);
            let symbols = constellation.sample_symbols(scenario.n, seed);
            let frame = modulate(&symbols, &pa)?;
            let profile = match scenario.kind {
                AcfKind::Periodic => pacf(&frame),
                AcfKind::Aperiodic => aacf(&frame),
                AcfKind::ZeroPadded => zp_pacf(&frame, scenario.pad_factor),
            };
            Ok(profile.values().iter().map(|v| v.norm_sqr()).collect())
        })
        .collect::<Result<_>>()?;

    let region = sidelobe_range(scenario.kind, scenario.n, scenario.pad_factor);
    let isl_per_trial: Vec<Vec<f64>> = samples
        .iter()
        .map(|row| vec![region.clone().map(|k| row[k]).sum::<f64>()])
        .collect();
    let (isl_mean, isl_se) = mean_and_se(isl_per_trial);
    let (mean, se) = mean_and_se(samples);

    let theory_curve = match scenario.kind {
        AcfKind::Periodic => Some(
            (0..scenario.n)
                .map(|k| theory::pacf_expected_sq(&pa, mu4, k))
                .collect::<Vec<_>>(),
        ),
        AcfKind::ZeroPadded => Some(theory::zp_expected_sq_all(&pa, mu4, scenario.pad_factor)),
        AcfKind::Aperiodic => None,
    };

    let (theory_eisl, theory_mainlobe) = match scenario.kind {
        AcfKind::Periodic => (theory::pacf_eisl(&pa, mu4), theory::pacf_mainlobe(&pa, mu4)),
        AcfKind::Aperiodic => (theory::aacf_eisl(&pa, mu4), theory::aacf_mainlobe(&pa, mu4)),
        AcfKind::ZeroPadded => (
            theory::zp_eisl(&pa, mu4, scenario.pad_factor),
            theory::zp_mainlobe(&pa, mu4),
        ),
    };

    let mut summaries = Vec::new();
    let empirical_mainlobe = mean[0];
    summaries.push(SummaryRow {
        metric: "mainlobe".into(),
        empirical: empirical_mainlobe,
        theory: Some(theory_mainlobe),
        stderr: Some(se[0]),
    });
    summaries.push(SummaryRow {
        metric: "eisl".into(),
        empirical: isl_mean[0],
        theory: Some(theory_eisl),
        stderr: Some(isl_se[0]),
    });
    // Ratio-of-means estimate; its quoted error ignores the (comparatively
    // tiny) mainlobe fluctuation.
    summaries.push(SummaryRow {
        metric: "normalized_eisl".into(),
        empirical: isl_mean[0] / empirical_mainlobe,
        theory: Some(theory_eisl / theory_mainlobe),
        stderr: Some(isl_se[0] / empirical_mainlobe),
    });

    let peak = |curve: &[f64]| {
        region
            .clone()
            .map(|k| curve[k])
            .fold(0.0f64, f64::max)
    };
    let db = |ratio: f64| 10.0 * ratio.max(acf::DB_RATIO_FLOOR).log10();
    summaries.push(SummaryRow {
        metric: "psl_db".into(),
        empirical: db(peak(&mean) / empirical_mainlobe),
        theory: theory_curve
            .as_ref()
            .map(|curve| db(peak(curve) / curve[0])),
        stderr: None,
    });
    summaries.push(SummaryRow {
        metric: "mainlobe_width_3db".into(),
        empirical: width_3db_from_mag_sq(&mean) as f64,
        theory: theory_curve
            .as_ref()
            .map(|curve| width_3db_from_mag_sq(curve) as f64),
        stderr: None,
    });

    Ok(ExperimentResult {
        scenario_label: scenario.label(),
        mu4,
        empirical_mean: mean,
        empirical_se: se,
        theory: theory_curve,
        summaries,
        pa,
    })
}
