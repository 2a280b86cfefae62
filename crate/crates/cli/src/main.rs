//! Command-line front end: single-shot ACF computation, closed-form curves,
//! Monte Carlo scenario runs, the two power-allocation optimizers, the
//! `fig1`..`fig9` experiment presets, and symbol-count sweeps.
//!
//! Exit codes: 0 on success, 2 on usage errors, 1 on runtime failures.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use ofdm_pa::acf::{aacf, pacf, zp_pacf};
use ofdm_pa::optimizer::{pgd, sca, PgdConfig, ScaConfig};
use ofdm_pa::theory::{self, zp_normalized_eisl};
use ofdm_pa::{modulate, AcfKind, Constellation64, PowerAllocation64};
use ofdm_pa_cli::{figures, io, runner, Manifest, PaScheme, Scenario};

#[derive(Parser)]
#[command(
    name = "ofdm-pa",
    version,
    about = "Autocorrelation sidelobe statistics and power-allocation design for random OFDM signals"
)]
struct Cli {
    /// Base seed for every stochastic element of the command.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Directory for output files.
    #[arg(long, global = true, env = "OFDM_PA_OUT", default_value = "out")]
    out_dir: PathBuf,

    /// Output format for data files (presets always write CSV + manifest).
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Periodic,
    Aperiodic,
    #[value(name = "zero-padded")]
    ZeroPadded,
}

impl From<KindArg> for AcfKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Periodic => AcfKind::Periodic,
            KindArg::Aperiodic => AcfKind::Aperiodic,
            KindArg::ZeroPadded => AcfKind::ZeroPadded,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PaArg {
    Uniform,
    Random,
    Pgd,
    Sca,
}

/// Flags shared by the commands that operate on one scenario.
#[derive(clap::Args, Clone)]
struct ScenarioArgs {
    /// Constellation tag, e.g. qpsk, 16psk, 16qam, 64qam.
    #[arg(long)]
    constellation: String,

    /// Number of subcarriers / symbols per frame.
    #[arg(long)]
    n: usize,

    /// Which autocorrelation to compute.
    #[arg(long, value_enum, default_value_t = KindArg::Periodic)]
    kind: KindArg,

    /// Delay-grid interpolation factor (zero-padded runs only).
    #[arg(long, alias = "l", default_value_t = 1)]
    pad_factor: usize,

    /// Power allocation scheme.
    #[arg(long, value_enum, default_value_t = PaArg::Uniform, conflicts_with = "pa_file")]
    pa: PaArg,

    /// Seed for the random power allocation (defaults to --seed).
    #[arg(long)]
    pa_seed: Option<u64>,

    /// Load the power allocation from a one-column CSV (header P).
    #[arg(long)]
    pa_file: Option<PathBuf>,

    /// Constraint lag for --pa sca.
    #[arg(long)]
    q_lag: Option<usize>,
}

impl ScenarioArgs {
    fn pa_scheme(&self, base_seed: u64) -> Result<PaScheme, clap::Error> {
        if let Some(path) = &self.pa_file {
            return Ok(PaScheme::File(path.clone()));
        }
        Ok(match self.pa {
            PaArg::Uniform => PaScheme::Uniform,
            PaArg::Random => PaScheme::Random {
                seed: self.pa_seed.unwrap_or(base_seed),
            },
            PaArg::Pgd => PaScheme::Pgd,
            PaArg::Sca => PaScheme::Sca {
                constraint_lag: self.q_lag.ok_or_else(|| {
                    Cli::command().error(
                        ErrorKind::MissingRequiredArgument,
                        "--pa sca requires --q-lag",
                    )
                })?,
            },
        })
    }

    fn scenario(&self, base_seed: u64, trials: usize) -> Result<Scenario, clap::Error> {
        if self.kind != KindArg::ZeroPadded && self.pad_factor != 1 {
            return Err(Cli::command().error(
                ErrorKind::ArgumentConflict,
                "--pad-factor only applies to --kind zero-padded",
            ));
        }
        if self.pad_factor == 0 {
            return Err(Cli::command().error(
                ErrorKind::InvalidValue,
                "--pad-factor must be at least 1",
            ));
        }
        Ok(Scenario {
            constellation: self.constellation.clone(),
            n: self.n,
            pa: self.pa_scheme(base_seed)?,
            kind: self.kind.into(),
            pad_factor: self.pad_factor,
            trials,
            base_seed,
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute the ACF of a single random frame and export it per lag.
    Acf(ScenarioArgs),

    /// Export the closed-form expected squared ACF for a power allocation.
    Theory(ScenarioArgs),

    /// Average many seeded frames and overlay the closed form.
    Montecarlo {
        #[command(flatten)]
        args: ScenarioArgs,
        /// Number of random realizations to average.
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },

    /// Minimize the normalized zero-padded sidelobe level by projected
    /// gradient descent.
    OptimizePgd {
        #[command(flatten)]
        args: OptimizeArgs,
    },

    /// Minimize under a mainlobe-width constraint at --q-lag.
    OptimizeSca {
        #[command(flatten)]
        args: OptimizeArgs,
        /// Lag (on the padded grid) where the half-power constraint binds.
        #[arg(long)]
        q_lag: Option<usize>,
    },

    /// Run a bundled experiment preset (fig1..fig9) and write its data set.
    Reproduce {
        /// Preset id: fig1..fig9.
        figure: String,
        /// Trials per Monte Carlo scenario inside the preset.
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },

    /// Sweep the normalized integrated sidelobe level over symbol counts.
    Sweep {
        #[command(flatten)]
        args: SweepArgs,
    },
}

#[derive(clap::Args, Clone)]
struct OptimizeArgs {
    /// Number of subcarriers.
    #[arg(long, required_unless_present = "config")]
    n: Option<usize>,

    /// Delay-grid interpolation factor.
    #[arg(long, alias = "l", default_value_t = 10)]
    pad_factor: usize,

    /// Constellation tag supplying the fourth moment.
    #[arg(long, conflicts_with = "mu4")]
    constellation: Option<String>,

    /// Fourth moment of the (hypothetical) constellation, >= 1.
    #[arg(long)]
    mu4: Option<f64>,

    /// Iteration budget.
    #[arg(long)]
    max_iters: Option<usize>,

    /// Relative objective-decrease stopping tolerance.
    #[arg(long)]
    tol: Option<f64>,

    /// JSON config mirroring the optimizer's field names; overrides flags.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(clap::Args, Clone)]
struct SweepArgs {
    #[arg(long)]
    constellation: String,

    #[arg(long, value_enum, default_value_t = KindArg::Periodic)]
    kind: KindArg,

    #[arg(long, alias = "l", default_value_t = 1)]
    pad_factor: usize,

    #[arg(long, value_enum, default_value_t = PaArg::Uniform)]
    pa: PaArg,

    #[arg(long)]
    pa_seed: Option<u64>,

    #[arg(long)]
    q_lag: Option<usize>,

    /// Comma-separated symbol counts, e.g. 16,32,64.
    #[arg(long, value_delimiter = ',', required = true)]
    n_list: Vec<usize>,

    #[arg(long, default_value_t = 1000)]
    trials: usize,
}

/// JSON mirror of [`PgdConfig`] (initial point optional, uniform default).
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PgdConfigFile {
    n: usize,
    pad_factor: usize,
    mu4: f64,
    initial: Option<Vec<f64>>,
    max_iters: Option<usize>,
    tol: Option<f64>,
}

/// JSON mirror of [`ScaConfig`].
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScaConfigFile {
    n: usize,
    pad_factor: usize,
    mu4: f64,
    constraint_lag: usize,
    max_iters: Option<usize>,
    tol: Option<f64>,
    line_search_tol: Option<f64>,
}

#[derive(Serialize)]
struct ProfileDoc {
    label: String,
    rows: Vec<ProfileRow>,
}

#[derive(Serialize)]
struct ProfileRow {
    lag: usize,
    re: f64,
    im: f64,
    mag_sq: f64,
}

#[derive(Serialize)]
struct CurveDoc {
    label: String,
    expected_mag_sq: Vec<f64>,
}

#[derive(Serialize)]
struct SummaryDoc {
    label: String,
    rows: Vec<SummaryRowDoc>,
}

#[derive(Serialize)]
struct SummaryRowDoc {
    metric: String,
    empirical: f64,
    theory: Option<f64>,
    stderr: Option<f64>,
}

#[derive(Serialize)]
struct MeanProfileDoc {
    label: String,
    mean_mag_sq: Vec<f64>,
    stderr: Vec<f64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> ofdm_pa_cli::Result<()> {
    let out_dir = cli.out_dir.clone();
    match &cli.command {
        Command::Acf(args) => {
            let scenario = args
                .scenario(cli.seed, 1)
                .unwrap_or_else(|e| e.exit());
            let constellation = Constellation64::from_tag(&scenario.constellation)?;
            let pa = scenario.resolve_pa(constellation.mu4())?;
            let symbols = constellation.sample_symbols(scenario.n, cli.seed);
            let frame = modulate(&symbols, &pa)?;
            let profile = match scenario.kind {
                AcfKind::Periodic => pacf(&frame),
                AcfKind::Aperiodic => aacf(&frame),
                AcfKind::ZeroPadded => zp_pacf(&frame, scenario.pad_factor),
            };
            let stem = format!("acf_{}", scenario.label());
            let path = match cli.format {
                OutputFormat::Csv => {
                    let path = out_dir.join(format!("{stem}.csv"));
                    io::write_profile_csv(&path, &profile)?;
                    path
                }
                OutputFormat::Json => {
                    let doc = ProfileDoc {
                        label: scenario.label(),
                        rows: profile
                            .values()
                            .iter()
                            .enumerate()
                            .map(|(lag, v)| ProfileRow {
                                lag,
                                re: v.re,
                                im: v.im,
                                mag_sq: v.norm_sqr(),
                            })
                            .collect(),
                    };
                    let path = out_dir.join(format!("{stem}.json"));
                    io::write_json(&path, &doc)?;
                    path
                }
            };
            println!("wrote {}", path.display());
            println!(
                "mainlobe {:e}, isl {:e}, psl {:.3} dB, width {} lags",
                profile.mainlobe(),
                profile.isl()?,
                profile.psl_db()?,
                profile.mainlobe_width_3db()?
            );
        }
        Command::Theory(args) => {
            let scenario = args
                .scenario(cli.seed, 1)
                .unwrap_or_else(|e| e.exit());
            let constellation = Constellation64::from_tag(&scenario.constellation)?;
            let mu4 = constellation.mu4();
            let pa = scenario.resolve_pa(mu4)?;
            let stem = format!("theory_{}", scenario.label());
            match scenario.kind {
                AcfKind::Aperiodic => {
                    // No per-lag closed form without a cyclic prefix; export
                    // the integrated quantities instead.
                    let rows = vec![
                        SummaryRowDoc {
                            metric: "mainlobe".into(),
                            empirical: theory::aacf_mainlobe(&pa, mu4),
                            theory: None,
                            stderr: None,
                        },
                        SummaryRowDoc {
                            metric: "eisl".into(),
                            empirical: theory::aacf_eisl(&pa, mu4),
                            theory: None,
                            stderr: None,
                        },
                        SummaryRowDoc {
                            metric: "normalized_eisl".into(),
                            empirical: theory::aacf_normalized_eisl(&pa, mu4),
                            theory: None,
                            stderr: None,
                        },
                    ];
                    let path = write_summary(&out_dir, &stem, &rows, cli.format)?;
                    println!("wrote {}", path.display());
                }
                _ => {
                    let curve = match scenario.kind {
                        AcfKind::Periodic => (0..scenario.n)
                            .map(|k| theory::pacf_expected_sq(&pa, mu4, k))
                            .collect::<Vec<_>>(),
                        AcfKind::ZeroPadded => {
                            theory::zp_expected_sq_all(&pa, mu4, scenario.pad_factor)
                        }
                        AcfKind::Aperiodic => unreachable!(),
                    };
                    let path = match cli.format {
                        OutputFormat::Csv => {
                            let path = out_dir.join(format!("{stem}.csv"));
                            io::write_theory_csv(&path, &curve)?;
                            path
                        }
                        OutputFormat::Json => {
                            let path = out_dir.join(format!("{stem}.json"));
                            io::write_json(
                                &path,
                                &CurveDoc {
                                    label: scenario.label(),
                                    expected_mag_sq: curve,
                                },
                            )?;
                            path
                        }
                    };
                    println!("wrote {}", path.display());
                }
            }
        }
        Command::Montecarlo { args, trials } => {
            let scenario = args
                .scenario(cli.seed, *trials)
                .unwrap_or_else(|e| e.exit());
            let result = runner::run_scenario(&scenario)?;
            let stem = scenario.label();
            match cli.format {
                OutputFormat::Csv => {
                    let emp = out_dir.join(format!("{stem}_empirical.csv"));
                    io::write_mean_profile_csv(&emp, &result.empirical_mean, &result.empirical_se)?;
                    println!("wrote {}", emp.display());
                    if let Some(curve) = &result.theory {
                        let th = out_dir.join(format!("{stem}_theory.csv"));
                        io::write_theory_csv(&th, curve)?;
                        println!("wrote {}", th.display());
                    }
                    let sm = out_dir.join(format!("{stem}_summary.csv"));
                    io::write_summary_csv(&sm, &result.summaries)?;
                    println!("wrote {}", sm.display());
                    if scenario.pa != PaScheme::Uniform {
                        let pf = out_dir.join(format!("{stem}_pa.csv"));
                        io::write_pa_csv(&pf, &result.pa)?;
                        println!("wrote {}", pf.display());
                    }
                }
                OutputFormat::Json => {
                    let emp = out_dir.join(format!("{stem}_empirical.json"));
                    io::write_json(
                        &emp,
                        &MeanProfileDoc {
                            label: stem.clone(),
                            mean_mag_sq: result.empirical_mean.clone(),
                            stderr: result.empirical_se.clone(),
                        },
                    )?;
                    println!("wrote {}", emp.display());
                    if let Some(curve) = &result.theory {
                        let th = out_dir.join(format!("{stem}_theory.json"));
                        io::write_json(
                            &th,
                            &CurveDoc {
                                label: stem.clone(),
                                expected_mag_sq: curve.clone(),
                            },
                        )?;
                        println!("wrote {}", th.display());
                    }
                    let rows: Vec<SummaryRowDoc> = result
                        .summaries
                        .iter()
                        .map(|r| SummaryRowDoc {
                            metric: r.metric.clone(),
                            empirical: r.empirical,
                            theory: r.theory,
                            stderr: r.stderr,
                        })
                        .collect();
                    let sm = out_dir.join(format!("{stem}_summary.json"));
                    io::write_json(
                        &sm,
                        &SummaryDoc {
                            label: stem.clone(),
                            rows,
                        },
                    )?;
                    println!("wrote {}", sm.display());
                }
            }
            for row in &result.summaries {
                match (row.theory, row.stderr) {
                    (Some(t), Some(s)) => println!(
                        "{}: empirical {:e}, theory {:e}, stderr {:e}",
                        row.metric, row.empirical, t, s
                    ),
                    (Some(t), None) => {
                        println!("{}: empirical {:e}, theory {:e}", row.metric, row.empirical, t)
                    }
                    _ => println!("{}: empirical {:e}", row.metric, row.empirical),
                }
            }
        }
        Command::OptimizePgd { args } => {
            let (config, tag) = pgd_config(args, &cli)?;
            let trace = pgd(&config)?;
            let f_uniform = zp_normalized_eisl(
                &PowerAllocation64::uniform(config.n),
                config.mu4,
                config.pad_factor,
            );
            let stem = format!(
                "pgd_{}_n{}_l{}",
                tag.as_deref().unwrap_or("mu4"),
                config.n,
                config.pad_factor
            );
            write_optimizer_outputs(&out_dir, &stem, trace.objectives(), trace.final_pa(), cli.format)?;
            let f = trace.final_objective();
            println!(
                "final objective {:e} after {} iterates (stop: {:?})",
                f,
                trace.len(),
                trace.stop_reason()
            );
            println!(
                "uniform objective {:e}; improvement {:.3} dB",
                f_uniform,
                10.0 * (f / f_uniform).log10()
            );
        }
        Command::OptimizeSca { args, q_lag } => {
            let (config, tag) = sca_config(args, *q_lag, &cli)?;
            let trace = sca(&config)?;
            let stem = format!(
                "sca_{}_n{}_l{}_q{}",
                tag.as_deref().unwrap_or("mu4"),
                config.n,
                config.pad_factor,
                config.constraint_lag
            );
            write_optimizer_outputs(&out_dir, &stem, trace.objectives(), trace.final_pa(), cli.format)?;
            println!(
                "final objective {:e} after {} iterates (stop: {:?})",
                trace.final_objective(),
                trace.len(),
                trace.stop_reason()
            );
        }
        Command::Reproduce { figure, trials } => {
            if !figures::FIGURE_IDS.contains(&figure.as_str()) {
                Cli::command()
                    .error(
                        ErrorKind::InvalidValue,
                        format!("unknown figure id {figure:?} (expected fig1..fig9)"),
                    )
                    .exit();
            }
            let manifest: Manifest = figures::reproduce(figure, &out_dir, cli.seed, *trials)?;
            for entry in &manifest.outputs {
                println!("wrote {}", out_dir.join(&entry.file).display());
            }
            println!("wrote {}", out_dir.join("manifest.json").display());
        }
        Command::Sweep { args } => {
            let pa = match args.pa {
                PaArg::Uniform => PaScheme::Uniform,
                PaArg::Random => PaScheme::Random {
                    seed: args.pa_seed.unwrap_or(cli.seed),
                },
                PaArg::Pgd => PaScheme::Pgd,
                PaArg::Sca => PaScheme::Sca {
                    constraint_lag: args.q_lag.unwrap_or_else(|| {
                        Cli::command()
                            .error(ErrorKind::MissingRequiredArgument, "--pa sca requires --q-lag")
                            .exit()
                    }),
                },
            };
            if args.kind != KindArg::ZeroPadded && args.pad_factor != 1 {
                Cli::command()
                    .error(
                        ErrorKind::ArgumentConflict,
                        "--pad-factor only applies to --kind zero-padded",
                    )
                    .exit();
            }
            let rows = figures::sweep_normalized_eisl(
                &args.constellation,
                args.kind.into(),
                args.pad_factor,
                &pa,
                &args.n_list,
                args.trials,
                cli.seed,
            )?;
            let kind_label = match args.kind {
                KindArg::Periodic => "periodic".to_string(),
                KindArg::Aperiodic => "aperiodic".to_string(),
                KindArg::ZeroPadded => format!("zp{}", args.pad_factor),
            };
            let stem = format!(
                "sweep_{kind_label}_{}_{}",
                args.constellation,
                pa.label()
            );
            let path = match cli.format {
                OutputFormat::Csv => {
                    let path = out_dir.join(format!("{stem}.csv"));
                    io::write_sweep_csv(&path, &rows)?;
                    path
                }
                OutputFormat::Json => {
                    #[derive(Serialize)]
                    struct SweepDoc {
                        n: Vec<usize>,
                        empirical: Vec<f64>,
                        theory: Vec<f64>,
                        stderr: Vec<f64>,
                    }
                    let doc = SweepDoc {
                        n: rows.iter().map(|r| r.n).collect(),
                        empirical: rows.iter().map(|r| r.empirical).collect(),
                        theory: rows.iter().map(|r| r.theory).collect(),
                        stderr: rows.iter().map(|r| r.stderr).collect(),
                    };
                    let path = out_dir.join(format!("{stem}.json"));
                    io::write_json(&path, &doc)?;
                    path
                }
            };
            println!("wrote {}", path.display());
            for r in &rows {
                println!(
                    "n {}: empirical {:e}, theory {:e}, stderr {:e}",
                    r.n, r.empirical, r.theory, r.stderr
                );
            }
        }
    }
    Ok(())
}

fn write_summary(
    out_dir: &std::path::Path,
    stem: &str,
    rows: &[SummaryRowDoc],
    format: OutputFormat,
) -> ofdm_pa_cli::Result<PathBuf> {
    match format {
        OutputFormat::Csv => {
            let converted: Vec<runner::SummaryRow> = rows
                .iter()
                .map(|r| runner::SummaryRow {
                    metric: r.metric.clone(),
                    empirical: r.empirical,
                    theory: r.theory,
                    stderr: r.stderr,
                })
                .collect();
            let path = out_dir.join(format!("{stem}.csv"));
            io::write_summary_csv(&path, &converted)?;
            Ok(path)
        }
        OutputFormat::Json => {
            let path = out_dir.join(format!("{stem}.json"));
            io::write_json(
                &path,
                &SummaryDoc {
                    label: stem.into(),
                    rows: rows
                        .iter()
                        .map(|r| SummaryRowDoc {
                            metric: r.metric.clone(),
                            empirical: r.empirical,
                            theory: r.theory,
                            stderr: r.stderr,
                        })
                        .collect(),
                },
            )?;
            Ok(path)
        }
    }
}

fn write_optimizer_outputs(
    out_dir: &std::path::Path,
    stem: &str,
    objectives: &[f64],
    pa: &PowerAllocation64,
    format: OutputFormat,
) -> ofdm_pa_cli::Result<()> {
    match format {
        OutputFormat::Csv => {
            let trace_path = out_dir.join(format!("{stem}_trace.csv"));
            io::write_trace_csv(&trace_path, objectives)?;
            println!("wrote {}", trace_path.display());
            let pa_path = out_dir.join(format!("{stem}_pa.csv"));
            io::write_pa_csv(&pa_path, pa)?;
            println!("wrote {}", pa_path.display());
        }
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct TraceDoc<'a> {
                objectives: &'a [f64],
                pa: &'a [f64],
            }
            let path = out_dir.join(format!("{stem}.json"));
            io::write_json(
                &path,
                &TraceDoc {
                    objectives,
                    pa: pa.as_slice(),
                },
            )?;
            println!("wrote {}", path.display());
        }
    }
    Ok(())
}

fn resolve_mu4(
    constellation: &Option<String>,
    mu4: &Option<f64>,
) -> ofdm_pa_cli::Result<(f64, Option<String>)> {
    match (constellation, mu4) {
        (Some(tag), None) => Ok((Constellation64::from_tag(tag)?.mu4(), Some(tag.clone()))),
        (None, Some(v)) => Ok((*v, None)),
        (None, None) => Ok((Constellation64::from_tag("qpsk")?.mu4(), Some("qpsk".into()))),
        (Some(_), Some(_)) => unreachable!("clap conflicts_with prevents this"),
    }
}

fn pgd_config(
    args: &OptimizeArgs,
    _cli: &Cli,
) -> ofdm_pa_cli::Result<(PgdConfig<f64>, Option<String>)> {
    if let Some(path) = &args.config {
        let raw = std::fs::read_to_string(path).map_err(ofdm_pa_cli::Error::io(path))?;
        let file: PgdConfigFile = serde_json::from_str(&raw)?;
        let mut config = PgdConfig::new(file.n, file.pad_factor, file.mu4);
        if let Some(init) = file.initial {
            config.initial = PowerAllocation64::from_vec(init)?;
        }
        if let Some(m) = file.max_iters {
            config.max_iters = m;
        }
        if let Some(t) = file.tol {
            config.tol = t;
        }
        return Ok((config, None));
    }
    let (mu4, tag) = resolve_mu4(&args.constellation, &args.mu4)?;
    let n = args.n.expect("clap enforces --n without --config");
    let mut config = PgdConfig::new(n, args.pad_factor, mu4);
    if let Some(m) = args.max_iters {
        config.max_iters = m;
    }
    if let Some(t) = args.tol {
        config.tol = t;
    }
    Ok((config, tag))
}

fn sca_config(
    args: &OptimizeArgs,
    q_lag: Option<usize>,
    _cli: &Cli,
) -> ofdm_pa_cli::Result<(ScaConfig<f64>, Option<String>)> {
    if let Some(path) = &args.config {
        let raw = std::fs::read_to_string(path).map_err(ofdm_pa_cli::Error::io(path))?;
        let file: ScaConfigFile = serde_json::from_str(&raw)?;
        let mut config = ScaConfig::new(file.n, file.pad_factor, file.mu4, file.constraint_lag);
        if let Some(m) = file.max_iters {
            config.max_iters = m;
        }
        if let Some(t) = file.tol {
            config.tol = t;
        }
        if let Some(l) = file.line_search_tol {
            config.line_search_tol = l;
        }
        return Ok((config, None));
    }
    let (mu4, tag) = resolve_mu4(&args.constellation, &args.mu4)?;
    let n = args.n.expect("clap enforces --n without --config");
    let q = q_lag.unwrap_or_else(|| {
        Cli::command()
            .error(
                ErrorKind::MissingRequiredArgument,
                "optimize-sca requires --q-lag (or --config)",
            )
            .exit()
    });
    let mut config = ScaConfig::new(n, args.pad_factor, mu4, q);
    if let Some(m) = args.max_iters {
        config.max_iters = m;
    }
    if let Some(t) = args.tol {
        config.tol = t;
    }
    Ok((config, tag))
}
