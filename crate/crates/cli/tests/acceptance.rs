//! Acceptance suite: one test per release criterion, each printing a
//! `criterion N: PASS` line (run with `--nocapture` to see them alongside
//! the per-test verdicts). Tolerances and runtime budgets are pinned in the
//! assertions themselves.

use std::time::Instant;

use num_complex::Complex;
use ofdm_pa::acf::{pacf, reference, zp_pacf};
use ofdm_pa::optimizer::{pgd, sca, width_constraint, PgdConfig, ScaConfig};
use ofdm_pa::theory::{self, zp_normalized_eisl, zp_width_3db, AacfBasis};
use ofdm_pa::{modulate, AcfKind, Constellation64, PowerAllocation64};
use ofdm_pa_cli::{run_scenario, PaScheme, Scenario};

/// Absolute floor added to every 4-standard-error band so exactly-zero
/// quantities (PSK sidelobes) compare cleanly.
const SE_FLOOR: f64 = 1e-9;

#[test]
fn criterion_01_pacf_monte_carlo_matches_closed_form() {
    let start = Instant::now();
    let constellation = Constellation64::from_tag("16qam").unwrap();
    let mu4 = constellation.mu4();
    assert!((mu4 - 1.32).abs() < 1e-12, "enumerated mu4 should be 1.32");
    let expected_sidelobe = (mu4 - 1.0) * 64.0;
    assert!((expected_sidelobe - 20.48).abs() < 1e-9);

    let scenario = Scenario::new("16qam", 64, PaScheme::Uniform, AcfKind::Periodic)
        .with_trials(1000)
        .with_seed(42);
    let result = run_scenario(&scenario).unwrap();
    for k in 1..64 {
        let band = 4.0 * result.empirical_se[k] + SE_FLOOR;
        assert!(
            (result.empirical_mean[k] - expected_sidelobe).abs() <= band,
            "lag {k}: mean {} vs 20.48 (band {band})",
            result.empirical_mean[k]
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
    println!(
        "criterion 1: PASS: 63 sidelobe lags within 4 SE of 20.48 in {:.2?}",
        elapsed
    );
}

#[test]
fn criterion_02_psk_impulse_property() {
    for tag in ["qpsk", "16psk"] {
        let constellation = Constellation64::from_tag(tag).unwrap();
        for n in [16usize, 64, 256] {
            let pa = PowerAllocation64::uniform(n);
            for seed in [3u64, 77] {
                let frame = modulate(&constellation.sample_symbols(n, seed), &pa).unwrap();
                let profile = pacf(&frame);
                let main = profile.mag_sq(0);
                for k in 1..n {
                    // < 1e-12 relative in magnitude, i.e. 1e-24 in power.
                    assert!(
                        profile.mag_sq(k) / main < 1e-24,
                        "{tag} n={n} seed={seed} lag {k}"
                    );
                }
            }
        }
    }
    println!("criterion 2: PASS: per-realization P-ACF sidelobes < 1e-12 of mainlobe");
}

#[test]
fn criterion_03_psl_gain_3db_on_doubling_n() {
    let psl_db = |n: usize| {
        let scenario = Scenario::new("64qam", n, PaScheme::Uniform, AcfKind::Periodic)
            .with_trials(1000)
            .with_seed(42);
        let result = run_scenario(&scenario).unwrap();
        result.summary("psl_db").unwrap().empirical
    };
    let gain = psl_db(64) - psl_db(128);
    assert!(
        (gain - 3.0).abs() <= 0.5,
        "peak-sidelobe gain {gain:.3} dB not within 3 ± 0.5 dB"
    );
    println!("criterion 3: PASS: doubling N improves normalized PSL by {gain:.3} dB");
}

#[test]
fn criterion_04_exhaustive_enumeration_reproduces_closed_forms() {
    let start = Instant::now();
    const TOL: f64 = 1e-10;

    // Direct unitary IDFT, independent of the FFT code paths.
    fn idft(c: &[Complex<f64>]) -> Vec<Complex<f64>> {
        let n = c.len();
        (0..n)
            .map(|k| {
                let mut acc = Complex::new(0.0, 0.0);
                for (m, &cm) in c.iter().enumerate() {
                    let ang = 2.0 * std::f64::consts::PI * (k * m) as f64 / n as f64;
                    acc += cm * Complex::from_polar(1.0, ang);
                }
                acc / (n as f64).sqrt()
            })
            .collect()
    }

    let qpsk = Constellation64::from_tag("qpsk").unwrap();
    let mu4 = qpsk.mu4();
    for pa in [
        PowerAllocation64::uniform(2),
        PowerAllocation64::from_vec(vec![1.5, 0.5]).unwrap(),
        PowerAllocation64::uniform(3),
        PowerAllocation64::from_vec(vec![1.2, 1.0, 0.8]).unwrap(),
    ] {
        let n = pa.len();
        let pad = 2;
        let tuples = 4usize.pow(n as u32);
        let mut pacf_acc = vec![0.0; n];
        let mut aacf_acc = vec![0.0; n];
        let mut zp_acc = vec![0.0; n * pad];
        let mut symbols = vec![Complex::new(0.0, 0.0); n];
        for mut idx in 0..tuples {
            for slot in symbols.iter_mut() {
                *slot = qpsk.points()[idx % 4];
                idx /= 4;
            }
            let weighted: Vec<Complex<f64>> = symbols
                .iter()
                .zip(pa.as_slice())
                .map(|(s, &p)| s * p.sqrt())
                .collect();
            let x = idft(&weighted);
            for (k, v) in reference::pacf(&x).into_iter().enumerate() {
                pacf_acc[k] += v.norm_sqr() / tuples as f64;
            }
            for (k, v) in reference::aacf(&x).into_iter().enumerate() {
                aacf_acc[k] += v.norm_sqr() / tuples as f64;
            }
            for (k, v) in reference::zp_pacf(&weighted, pad).into_iter().enumerate() {
                zp_acc[k] += v.norm_sqr() / tuples as f64;
            }
        }
        // Per-lag periodic expectation and its integrated total.
        for k in 0..n {
            assert!((pacf_acc[k] - theory::pacf_expected_sq(&pa, mu4, k)).abs() < TOL);
        }
        let isl: f64 = pacf_acc[1..].iter().sum();
        assert!((isl - theory::pacf_eisl(&pa, mu4)).abs() < TOL);
        // Aperiodic mainlobe and integrated level.
        assert!((aacf_acc[0] - theory::aacf_mainlobe(&pa, mu4)).abs() < TOL);
        let aacf_isl: f64 = aacf_acc[1..].iter().sum();
        assert!((aacf_isl - theory::aacf_eisl(&pa, mu4)).abs() < TOL);
        // Zero-padded per-lag and integrated level.
        for k in 0..n * pad {
            assert!((zp_acc[k] - theory::zp_expected_sq(&pa, mu4, k, pad)).abs() < TOL);
        }
        let zp_isl: f64 = (pad..n * pad / 2).map(|k| zp_acc[k]).sum();
        assert!((zp_isl - theory::zp_eisl(&pa, mu4, pad)).abs() < TOL);
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!(
        "criterion 4: PASS: exhaustive QPSK enumeration at N = 2, 3 matches to 1e-10 in {:.2?}",
        elapsed
    );
}

#[test]
fn criterion_05_uniform_optimality_over_random_sweeps() {
    let start = Instant::now();
    let n = 16;
    let basis = AacfBasis::<f64>::new(n);
    let uniform = PowerAllocation64::uniform(n);
    for mu4 in [1.0, 1.32] {
        let best_eisl = theory::pacf_normalized_eisl(&uniform, mu4);
        let best_lag = (mu4 - 1.0) * n as f64 / theory::pacf_mainlobe(&uniform, mu4);
        let best_aacf = basis.normalized_eisl(&uniform, mu4);
        for seed in 0..10_000u64 {
            let pa = PowerAllocation64::random(n, seed);
            assert!(
                theory::pacf_normalized_eisl(&pa, mu4) > best_eisl,
                "mu4 {mu4} seed {seed}: integrated level not above uniform"
            );
            let main = theory::pacf_mainlobe(&pa, mu4);
            for k in 1..n {
                assert!(
                    theory::pacf_expected_sq(&pa, mu4, k) / main > best_lag,
                    "mu4 {mu4} seed {seed} lag {k}: per-lag level not above uniform"
                );
            }
            assert!(
                basis.normalized_eisl(&pa, mu4) > best_aacf,
                "mu4 {mu4} seed {seed}: aperiodic level not above uniform"
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}");
    println!(
        "criterion 5: PASS: uniform strictly minimal over 2x10^4 random allocations in {:.2?}",
        elapsed
    );
}

#[test]
fn criterion_06_parseval_and_overlap_structure() {
    // Parseval: sum_k |sum_n p_n e^{j2pi kn/N}|^2 = N sum p^2.
    let n = 64;
    for seed in 0..100u64 {
        let pa = PowerAllocation64::random(n, seed);
        let mut lhs = 0.0;
        for k in 0..n {
            let mut acc = Complex::new(0.0, 0.0);
            for (i, &p) in pa.as_slice().iter().enumerate() {
                let ang = 2.0 * std::f64::consts::PI * (k * (i + 1)) as f64 / n as f64;
                acc += Complex::from_polar(p, ang);
            }
            lhs += acc.norm_sqr();
        }
        let rhs = n as f64 * pa.sum_sq();
        assert!((lhs - rhs).abs() <= 1e-9 * rhs, "seed {seed}");
    }

    // Overlap structure: odd-numbered (1-based) columns of the dense
    // product form I/sqrt(2); even-numbered columns have all singular
    // values 1/sqrt(2).
    for n in [8usize, 64] {
        let f = |rows: usize, r: usize, c: usize| -> Complex<f64> {
            let ang = -2.0 * std::f64::consts::PI * (r * c) as f64 / rows as f64;
            Complex::from_polar(1.0 / (rows as f64).sqrt(), ang)
        };
        let mut w = vec![Complex::new(0.0, 0.0); n * 2 * n];
        for i in 0..n {
            for c in 0..2 * n {
                let mut acc = Complex::new(0.0, 0.0);
                for m in 0..n {
                    acc += f(n, i, m) * f(2 * n, c, m).conj();
                }
                w[i * 2 * n + c] = acc;
            }
        }
        let inv_sqrt2 = 1.0 / 2.0f64.sqrt();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let v = w[i * 2 * n + 2 * j]; // 0-based even = 1-based odd
                let target = if i == j { inv_sqrt2 } else { 0.0 };
                worst = worst.max((v - Complex::new(target, 0.0)).norm());
            }
        }
        assert!(worst < 1e-12, "n {n}: odd-column deviation {worst:e}");

        // Even 1-based columns: W2 W2^H = I/2.
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex::new(0.0, 0.0);
                for m in 0..n {
                    acc += w[i * 2 * n + 2 * m + 1] * w[j * 2 * n + 2 * m + 1].conj();
                }
                let target = if i == j { 0.5 } else { 0.0 };
                assert!(
                    (acc - Complex::new(target, 0.0)).norm() < 1e-12,
                    "n {n}: circulant-block gram deviates at ({i},{j})"
                );
            }
        }
    }
    println!("criterion 6: PASS: Parseval to 1e-9 and overlap identities to 1e-12");
}

#[test]
fn criterion_07_gradient_matches_finite_differences() {
    let geo = theory::ZpGeometry::<f64>::new(16, 4);
    let h = 1e-6;
    let mu4 = 1.32;
    for seed in 0..20u64 {
        let pa = PowerAllocation64::random(16, seed);
        let grad = geo.gradient(pa.as_slice(), mu4);
        let scale = grad.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
        let mut worst = 0.0f64;
        for i in 0..16 {
            let mut hi = pa.as_slice().to_vec();
            let mut lo = hi.clone();
            hi[i] += h;
            lo[i] -= h;
            let fd = (geo.objective(&hi, mu4) - geo.objective(&lo, mu4)) / (2.0 * h);
            worst = worst.max((grad[i] - fd).abs());
        }
        assert!(worst / scale < 1e-6, "seed {seed}: rel err {:e}", worst / scale);
    }
    println!("criterion 7: PASS: gradient within 1e-6 of central differences at 20 points");
}

#[test]
fn criterion_08_pgd_improves_on_uniform() {
    let start = Instant::now();
    let (n, pad) = (64usize, 10usize);

    // 16-PSK: at least 1 dB below uniform, monotone trace.
    let mu4_psk = Constellation64::from_tag("16psk").unwrap().mu4();
    let trace = pgd(&PgdConfig::new(n, pad, mu4_psk)).unwrap();
    let f_uniform = trace.objectives()[0];
    assert!(
        (f_uniform - zp_normalized_eisl(&PowerAllocation64::uniform(n), mu4_psk, pad)).abs()
            < 1e-12
    );
    let psk_gain_db = 10.0 * (trace.final_objective() / f_uniform).log10();
    assert!(
        psk_gain_db <= -1.0,
        "16psk improvement only {psk_gain_db:.3} dB"
    );
    for w in trace.objectives().windows(2) {
        assert!(w[1] <= w[0] + 1e-12, "non-monotone descent");
    }

    // 16-QAM: no worse than uniform, monotone trace.
    let mu4_qam = Constellation64::from_tag("16qam").unwrap().mu4();
    let trace_qam = pgd(&PgdConfig::new(n, pad, mu4_qam)).unwrap();
    assert!(trace_qam.final_objective() <= trace_qam.objectives()[0]);
    for w in trace_qam.objectives().windows(2) {
        assert!(w[1] <= w[0] + 1e-12, "non-monotone descent");
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    println!(
        "criterion 8: PASS: descent gains of {psk_gain_db:.2} dB (16psk) and {:.3} dB (16qam) in {:.2?}",
        10.0 * (trace_qam.final_objective() / trace_qam.objectives()[0]).log10(),
        elapsed
    );
}

#[test]
fn criterion_09_sca_ordering_feasibility_and_width_tradeoff() {
    let (n, pad) = (64usize, 10usize);
    let lags = [pad / 2, pad / 2 + 2, pad / 2 + 4];
    // Converged objectives compare up to solver precision: the loose-lag
    // problems share their optimum with the unconstrained one, so the
    // ordering is an equality there and needs numerical slack.
    let rel_slack = 1e-3;

    for tag in ["16qam", "16psk"] {
        let mu4 = Constellation64::from_tag(tag).unwrap().mu4();
        let uniform = PowerAllocation64::uniform(n);

        let mut pgd_config = PgdConfig::new(n, pad, mu4);
        pgd_config.tol = 1e-12;
        pgd_config.max_iters = 20_000;
        let pgd_trace = pgd(&pgd_config).unwrap();
        let f_pgd = pgd_trace.final_objective();

        let mut finals = Vec::new();
        for &q in &lags {
            let mut config = ScaConfig::new(n, pad, mu4, q);
            config.max_iters = 4000;
            let trace = sca(&config).unwrap();
            for w in trace.objectives().windows(2) {
                assert!(w[1] <= w[0] + 1e-12, "{tag} q={q}: non-monotone");
            }
            for it in trace.iterates() {
                assert!(
                    width_constraint(it, mu4, pad, q) >= -1e-9,
                    "{tag} q={q}: infeasible iterate"
                );
                let sum: f64 = it.as_slice().iter().sum();
                assert!((sum - n as f64).abs() <= 1e-9 * n as f64);
                assert!(it.as_slice().iter().all(|&v| v >= -1e-12));
            }
            finals.push((q, trace));
        }

        let f5 = finals[0].1.final_objective();
        let f7 = finals[1].1.final_objective();
        let f9 = finals[2].1.final_objective();
        assert!(f5 >= f7 - rel_slack * f7.abs(), "{tag}: f(q=5) {f5} < f(q=7) {f7}");
        assert!(f7 >= f9 - rel_slack * f9.abs(), "{tag}: f(q=7) {f7} < f(q=9) {f9}");
        assert!(f9 >= f_pgd - rel_slack * f_pgd.abs(), "{tag}: f(q=9) {f9} < pgd {f_pgd}");

        // Width tradeoff on the expected profile. The tight constraint pins
        // the width to the uniform value; the unconstrained optimum trades
        // width for sidelobes: strictly so for 16-PSK, within the integer
        // lag grid for 16-QAM (its sub-bin broadening does not move a full
        // grid cell).
        // The tightest constraint keeps the solution closest to uniform.
        let max_dev = |pa: &PowerAllocation64| {
            pa.as_slice()
                .iter()
                .map(|p| (p - 1.0).abs())
                .fold(0.0f64, f64::max)
        };
        let dev5 = max_dev(finals[0].1.final_pa());
        assert!(dev5 < max_dev(finals[1].1.final_pa()), "{tag}: q=5 not closest to uniform");
        assert!(dev5 < max_dev(finals[2].1.final_pa()), "{tag}: q=5 not closest to uniform");

        let w_uniform = zp_width_3db(&uniform, mu4, pad);
        let w_tight = zp_width_3db(finals[0].1.final_pa(), mu4, pad);
        let w_pgd = zp_width_3db(pgd_trace.final_pa(), mu4, pad);
        assert_eq!(w_tight, w_uniform, "{tag}: constrained width moved");
        if tag == "16psk" {
            assert!(
                w_pgd > w_uniform,
                "{tag}: unconstrained width {w_pgd} not above uniform {w_uniform}"
            );
        } else {
            assert!(w_pgd >= w_uniform);
        }
        println!(
            "criterion 9 ({tag}): f(q=5) {f5:.6} >= f(q=7) {f7:.6} >= f(q=9) {f9:.6} >= pgd {f_pgd:.6}; widths uniform {w_uniform}, q=5 {w_tight}, pgd {w_pgd}"
        );
    }
    println!("criterion 9: PASS: ordering, feasibility, and width tradeoff hold");
}

#[test]
fn criterion_10_reproduce_is_byte_deterministic() {
    use std::process::Command;

    let bin = env!("CARGO_BIN_EXE_ofdm-pa");
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    for dir in [&dir_a, &dir_b] {
        let status = Command::new(bin)
            .args([
                "reproduce",
                "fig1",
                "--seed",
                "7",
                "--out-dir",
                dir.path().to_str().unwrap(),
            ])
            .status()
            .unwrap();
        assert!(status.success());
    }

    let list = |dir: &std::path::Path| {
        let mut names: Vec<String> = std::fs::read_dir(dir)
            .unwrap()
            .map(|e| e.unwrap().file_name().into_string().unwrap())
            .collect();
        names.sort();
        names
    };
    let names_a = list(dir_a.path());
    let names_b = list(dir_b.path());
    assert_eq!(names_a, names_b);
    let csv_count = names_a.iter().filter(|n| n.ends_with(".csv")).count();
    assert!(csv_count >= 4, "fig1 must write at least 4 CSVs, got {csv_count}");
    assert!(names_a.contains(&"manifest.json".to_string()));

    for name in &names_a {
        let a = std::fs::read(dir_a.path().join(name)).unwrap();
        let b = std::fs::read(dir_b.path().join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between identical runs");
    }
    println!(
        "criterion 10: PASS: two fig1 runs produced {} byte-identical files",
        names_a.len()
    );
}

/// Not a numbered criterion: the reproduce presets exposed through the
/// library surface agree with the qualitative claims the presets encode
/// (uniform below random at matched lags). Kept here because it shares the
/// runner plumbing with criteria 1 and 3.
#[test]
fn uniform_power_beats_random_power_at_every_lag_bucket() {
    let n = 64;
    let uniform = Scenario::new("64qam", n, PaScheme::Uniform, AcfKind::Periodic)
        .with_trials(500)
        .with_seed(11);
    let random = Scenario::new(
        "64qam",
        n,
        PaScheme::Random { seed: 112 },
        AcfKind::Periodic,
    )
    .with_trials(500)
    .with_seed(11);
    let ru = run_scenario(&uniform).unwrap();
    let rr = run_scenario(&random).unwrap();
    let mu = ru.empirical_mean[0];
    let mr = rr.empirical_mean[0];
    for k in 1..n {
        assert!(
            ru.empirical_mean[k] / mu < rr.empirical_mean[k] / mr,
            "lag {k}: uniform not below random"
        );
    }
}

/// Not a numbered criterion: the zero-padded profile agrees with its direct
/// evaluation on the padded grid (spot check at the preset scale).
#[test]
fn zero_padded_profile_spot_check_at_preset_scale() {
    let c = Constellation64::from_tag("16qam").unwrap();
    let pa = PowerAllocation64::uniform(64);
    let frame = modulate(&c.sample_symbols(64, 5), &pa).unwrap();
    let fast = zp_pacf(&frame, 10);
    let slow = reference::zp_pacf(frame.weighted(), 10);
    for k in (0..640).step_by(37) {
        assert!((fast.values()[k] - slow[k]).norm() <= 1e-9 * fast.mainlobe());
    }
}
