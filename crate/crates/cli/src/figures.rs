//! Canned experiment presets (`fig1`..`fig9`) and the generic sweep they
//! are built from. Each preset writes its data files plus a `manifest.json`
//! recording parameters, seeds, and headline metrics for every file.
//!
//! - `fig1`: periodic ACF of 16/64-QAM, uniform power, N in {64, 128}.
//! - `fig2`: periodic ACF of 64-QAM, uniform vs random power, N in {64, 256}.
//! - `fig3`: aperiodic normalized integrated sidelobe level vs N for
//!   16-QAM/16-PSK under uniform and random power.
//! - `fig4`: zero-padded (L = 10) normalized integrated level vs N with
//!   uniform, random, and gradient-optimized power.
//! - `fig5`/`fig6`: zero-padded ACF profiles (L = 10) for 16-QAM / 16-PSK
//!   under uniform and optimized power, N in {64, 128}.
//! - `fig7`: convergence traces of the width-constrained optimizer at
//!   constraint lags {5, 7, 9} (L = 10, N = 64), with uniform and
//!   unconstrained-descent baselines.
//! - `fig8`/`fig9`: zero-padded profiles of every power scheme (uniform,
//!   unconstrained descent, width-constrained at lags 5/7/9) for 16-QAM /
//!   16-PSK.

use std::collections::BTreeMap;
use std::path::Path;

use ofdm_pa::optimizer::{pgd, sca, PgdConfig, ScaConfig};
use ofdm_pa::theory::zp_normalized_eisl;
use ofdm_pa::{AcfKind, Constellation64, OptimizerTrace64};

use crate::io::{self, Manifest, SweepRow};
use crate::runner::{run_scenario, ExperimentResult, PaScheme, Scenario};
use crate::{Error, Result};

pub const FIGURE_IDS: [&str; 9] = [
    "fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9",
];

const ZP_PAD: usize = 10;

fn scenario_params(s: &Scenario, mu4: f64) -> BTreeMap<String, String> {
    let mut m = BTreeMap::new();
    m.insert("constellation".into(), s.constellation.clone());
    m.insert("mu4".into(), format!("{mu4:e}"));
    m.insert("n".into(), s.n.to_string());
    m.insert("pa".into(), s.pa.label());
    if let PaScheme::Random { seed } = s.pa {
        m.insert("pa_seed".into(), seed.to_string());
    }
    m.insert(
        "kind".into(),
        match s.kind {
            AcfKind::Periodic => "periodic".into(),
            AcfKind::Aperiodic => "aperiodic".into(),
            AcfKind::ZeroPadded => format!("zero-padded(L={})", s.pad_factor),
        },
    );
    m.insert("trials".into(), s.trials.to_string());
    m.insert("base_seed".into(), s.base_seed.to_string());
    m
}

fn headline_metrics(result: &ExperimentResult) -> BTreeMap<String, f64> {
    let mut m = BTreeMap::new();
    for row in &result.summaries {
        m.insert(format!("{}_empirical", row.metric), row.empirical);
        if let Some(t) = row.theory {
            m.insert(format!("{}_theory", row.metric), t);
        }
    }
    m
}

/// Run a scenario and write its empirical profile, theory overlay (when one
/// exists), summary table, and, for non-trivial power schemes, the power
/// vector itself. Returns the result for further use.
pub fn run_and_write(
    scenario: &Scenario,
    out_dir: &Path,
    manifest: &mut Manifest,
) -> Result<ExperimentResult> {
    let result = run_scenario(scenario)?;
    let stem = scenario.label();
    let params = scenario_params(scenario, result.mu4);
    let metrics = headline_metrics(&result);

    let emp = format!("{stem}_empirical.csv");
    io::write_mean_profile_csv(
        &out_dir.join(&emp),
        &result.empirical_mean,
        &result.empirical_se,
    )?;
    manifest.push(emp, params.clone(), metrics.clone());

    if let Some(curve) = &result.theory {
        let th = format!("{stem}_theory.csv");
        io::write_theory_csv(&out_dir.join(&th), curve)?;
        manifest.push(th, params.clone(), BTreeMap::new());
    }

    let sm = format!("{stem}_summary.csv");
    io::write_summary_csv(&out_dir.join(&sm), &result.summaries)?;
    manifest.push(sm, params.clone(), metrics);

    if scenario.pa != PaScheme::Uniform {
        let pf = format!("{stem}_pa.csv");
        io::write_pa_csv(&out_dir.join(&pf), &result.pa)?;
        manifest.push(pf, params, BTreeMap::new());
    }
    Ok(result)
}

/// Normalized integrated-sidelobe-level sweep over symbol counts, as used
/// by `fig3`/`fig4` and the `sweep` subcommand.
pub fn sweep_normalized_eisl(
    tag: &str,
    kind: AcfKind,
    pad_factor: usize,
    pa: &PaScheme,
    n_list: &[usize],
    trials: usize,
    base_seed: u64,
) -> Result<Vec<SweepRow>> {
    n_list
        .iter()
        .map(|&n| {
            let scenario = Scenario {
                constellation: tag.into(),
                n,
                pa: pa.clone(),
                kind,
                pad_factor,
                trials,
                base_seed,
            };
            let result = run_scenario(&scenario)?;
            let row = result
                .summary("normalized_eisl")
                .expect("runner always emits normalized_eisl");
            Ok(SweepRow {
                n,
                empirical: row.empirical,
                theory: row.theory.unwrap_or(f64::NAN),
                stderr: row.stderr.unwrap_or(f64::NAN),
            })
        })
        .collect()
}

/// Outcome of the width-constrained study at one constellation: the uniform
/// baseline, the unconstrained descent run, and one constrained run per
/// requested lag.
pub struct ScaStudy {
    pub mu4: f64,
    pub f_uniform: f64,
    pub pgd: OptimizerTrace64,
    pub constrained: Vec<(usize, OptimizerTrace64)>,
}

/// Run the unconstrained optimizer plus one width-constrained run per lag
/// in `lags` (shared by `fig7`..`fig9` and the acceptance suite).
pub fn sca_study(tag: &str, n: usize, pad: usize, lags: &[usize]) -> Result<ScaStudy> {
    let mu4 = Constellation64::from_tag(tag)?.mu4();
    let uniform = ofdm_pa::PowerAllocation64::uniform(n);
    let f_uniform = zp_normalized_eisl(&uniform, mu4, pad);
    let pgd_trace = pgd(&PgdConfig::new(n, pad, mu4))?;
    let constrained = lags
        .iter()
        .map(|&q| Ok((q, sca(&ScaConfig::new(n, pad, mu4, q))?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ScaStudy {
        mu4,
        f_uniform,
        pgd: pgd_trace,
        constrained,
    })
}

/// Reproduce one preset into `out_dir`. `trials` scales every Monte Carlo
/// run in the preset; the presets are sized for 1000.
pub fn reproduce(figure: &str, out_dir: &Path, base_seed: u64, trials: usize) -> Result<Manifest> {
    let mut manifest = Manifest::new(figure, base_seed, trials);
    match figure {
        "fig1" => {
            for tag in ["16qam", "64qam"] {
                for n in [64usize, 128] {
                    let s = Scenario::new(tag, n, PaScheme::Uniform, AcfKind::Periodic)
                        .with_trials(trials)
                        .with_seed(base_seed);
                    run_and_write(&s, out_dir, &mut manifest)?;
                }
            }
        }
        "fig2" => {
            for n in [64usize, 256] {
                for pa in [
                    PaScheme::Uniform,
                    PaScheme::Random {
                        seed: base_seed.wrapping_add(101),
                    },
                ] {
                    let s = Scenario::new("64qam", n, pa, AcfKind::Periodic)
                        .with_trials(trials)
                        .with_seed(base_seed);
                    run_and_write(&s, out_dir, &mut manifest)?;
                }
            }
        }
        "fig3" => {
            let n_list = [16usize, 32, 64, 128];
            for tag in ["16qam", "16psk"] {
                for pa in [
                    PaScheme::Uniform,
                    PaScheme::Random {
                        seed: base_seed.wrapping_add(101),
                    },
                ] {
                    let rows = sweep_normalized_eisl(
                        tag,
                        AcfKind::Aperiodic,
                        1,
                        &pa,
                        &n_list,
                        trials,
                        base_seed,
                    )?;
                    let file = format!("fig3_aacf_norm_eisl_{tag}_{}.csv", pa.label());
                    io::write_sweep_csv(&out_dir.join(&file), &rows)?;
                    let mut params = BTreeMap::new();
                    params.insert("constellation".into(), tag.into());
                    params.insert("pa".into(), pa.label());
                    params.insert("kind".into(), "aperiodic".into());
                    params.insert("n_list".into(), format!("{n_list:?}"));
                    manifest.push(file, params, BTreeMap::new());
                }
            }
        }
        "fig4" => {
            let n_list = [16usize, 32, 64];
            for tag in ["16psk", "16qam"] {
                for pa in [
                    PaScheme::Uniform,
                    PaScheme::Random {
                        seed: base_seed.wrapping_add(101),
                    },
                    PaScheme::Pgd,
                ] {
                    let rows = sweep_normalized_eisl(
                        tag,
                        AcfKind::ZeroPadded,
                        ZP_PAD,
                        &pa,
                        &n_list,
                        trials,
                        base_seed,
                    )?;
                    let file = format!("fig4_zp_norm_eisl_{tag}_{}.csv", pa.label());
                    io::write_sweep_csv(&out_dir.join(&file), &rows)?;
                    let mut params = BTreeMap::new();
                    params.insert("constellation".into(), tag.into());
                    params.insert("pa".into(), pa.label());
                    params.insert("kind".into(), format!("zero-padded(L={ZP_PAD})"));
                    params.insert("n_list".into(), format!("{n_list:?}"));
                    manifest.push(file, params, BTreeMap::new());
                }
            }
        }
        "fig5" | "fig6" => {
            let tag = if figure == "fig5" { "16qam" } else { "16psk" };
            for n in [64usize, 128] {
                for pa in [PaScheme::Uniform, PaScheme::Pgd] {
                    let s = Scenario::new(tag, n, pa, AcfKind::ZeroPadded)
                        .with_pad(ZP_PAD)
                        .with_trials(trials)
                        .with_seed(base_seed);
                    run_and_write(&s, out_dir, &mut manifest)?;
                }
            }
        }
        "fig7" => {
            let n = 64;
            let lags = [ZP_PAD / 2, ZP_PAD / 2 + 2, ZP_PAD / 2 + 4];
            for tag in ["16qam", "16psk"] {
                let study = sca_study(tag, n, ZP_PAD, &lags)?;
                let mut rows = vec![
                    crate::SummaryRow {
                        metric: "f_uniform".into(),
                        empirical: study.f_uniform,
                        theory: None,
                        stderr: None,
                    },
                    crate::SummaryRow {
                        metric: "f_pgd_unconstrained".into(),
                        empirical: study.pgd.final_objective(),
                        theory: None,
                        stderr: None,
                    },
                ];
                let pgd_file = format!("fig7_pgd_trace_{tag}.csv");
                io::write_trace_csv(&out_dir.join(&pgd_file), study.pgd.objectives())?;
                let mut params = BTreeMap::new();
                params.insert("constellation".into(), tag.into());
                params.insert("n".into(), n.to_string());
                params.insert("pad_factor".into(), ZP_PAD.to_string());
                manifest.push(pgd_file, params.clone(), BTreeMap::new());
                for (q, trace) in &study.constrained {
                    let file = format!("fig7_sca_trace_{tag}_q{q}.csv");
                    io::write_trace_csv(&out_dir.join(&file), trace.objectives())?;
                    let mut p = params.clone();
                    p.insert("constraint_lag".into(), q.to_string());
                    let mut metrics = BTreeMap::new();
                    metrics.insert("final_objective".into(), trace.final_objective());
                    manifest.push(file, p, metrics);
                    rows.push(crate::SummaryRow {
                        metric: format!("f_sca_q{q}"),
                        empirical: trace.final_objective(),
                        theory: None,
                        stderr: None,
                    });
                }
                let file = format!("fig7_objectives_{tag}.csv");
                io::write_summary_csv(&out_dir.join(&file), &rows)?;
                manifest.push(file, params, BTreeMap::new());
            }
        }
        "fig8" | "fig9" => {
            let tag = if figure == "fig8" { "16qam" } else { "16psk" };
            let n = 64;
            let lags = [ZP_PAD / 2, ZP_PAD / 2 + 2, ZP_PAD / 2 + 4];
            let mut schemes = vec![PaScheme::Uniform, PaScheme::Pgd];
            schemes.extend(lags.iter().map(|&q| PaScheme::Sca { constraint_lag: q }));
            for pa in schemes {
                let s = Scenario::new(tag, n, pa, AcfKind::ZeroPadded)
                    .with_pad(ZP_PAD)
                    .with_trials(trials)
                    .with_seed(base_seed);
                run_and_write(&s, out_dir, &mut manifest)?;
            }
        }
        other => return Err(Error::UnknownFigure(other.into())),
    }
    manifest.write(out_dir)?;
    Ok(manifest)
}
