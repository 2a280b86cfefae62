//! Property tests for the structural invariants: simplex constraints,
//! conjugate symmetry, transform-vs-direct correlator agreement, Parseval,
//! and projection behaviour.

use num_complex::Complex;
use ofdm_pa::acf::{self, aacf, pacf, zp_pacf};
use ofdm_pa::optimizer::project_simplex;
use ofdm_pa::{modulate, Constellation, PowerAllocation, SignalFrame};
use proptest::prelude::*;

fn random_frame(n: usize, sym_seed: u64, pa_seed: u64, qam: bool) -> SignalFrame<f64> {
    let c = if qam {
        Constellation::<f64>::qam(16).unwrap()
    } else {
        Constellation::<f64>::psk(8).unwrap()
    };
    let pa = PowerAllocation::<f64>::random(n, pa_seed);
    modulate(&c.sample_symbols(n, sym_seed), &pa).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn power_allocations_always_satisfy_simplex_constraints(
        n in 1usize..200,
        seed in any::<u64>(),
    ) {
        let pa = PowerAllocation::<f64>::random(n, seed);
        let sum: f64 = pa.as_slice().iter().sum();
        prop_assert!((sum - n as f64).abs() <= 1e-9 * n as f64);
        prop_assert!(pa.as_slice().iter().all(|&v| v >= 0.0));
    }

    #[test]
    fn projection_lands_on_the_simplex_and_fixes_feasible_points(
        v in prop::collection::vec(-10.0f64..10.0, 2..32),
    ) {
        match project_simplex(&v) {
            Ok(p) => {
                let n = v.len() as f64;
                let sum: f64 = p.as_slice().iter().sum();
                prop_assert!((sum - n).abs() <= 1e-9 * n);
                prop_assert!(p.as_slice().iter().all(|&x| x >= 0.0));
                // Feasible inputs are fixed points.
                let again = project_simplex(p.as_slice()).unwrap();
                for (a, b) in again.as_slice().iter().zip(p.as_slice()) {
                    prop_assert!((a - b).abs() <= 1e-9);
                }
            }
            Err(_) => prop_assert!(v.iter().all(|&x| x <= 0.0)),
        }
    }

    #[test]
    fn transform_and_direct_correlators_agree(
        n in 2usize..64,
        sym_seed in any::<u64>(),
        pa_seed in any::<u64>(),
        qam in any::<bool>(),
    ) {
        let frame = random_frame(n, sym_seed, pa_seed, qam);
        let scale = frame.time_domain().iter().map(|z| z.norm_sqr()).sum::<f64>();

        let fast = pacf(&frame);
        let slow = acf::reference::pacf(frame.time_domain());
        for k in 0..n {
            prop_assert!((fast.values()[k] - slow[k]).norm() <= 1e-10 * scale);
        }

        let fast = aacf(&frame);
        let slow = acf::reference::aacf(frame.time_domain());
        for k in 0..n {
            prop_assert!((fast.values()[k] - slow[k]).norm() <= 1e-10 * scale);
        }
    }

    #[test]
    fn conjugate_symmetry_holds_for_random_frames(
        n in 2usize..64,
        sym_seed in any::<u64>(),
        pa_seed in any::<u64>(),
    ) {
        let frame = random_frame(n, sym_seed, pa_seed, true);
        let prof = pacf(&frame);
        let scale = prof.mainlobe().abs();
        for k in 1..n {
            let a = prof.values()[k];
            let b = prof.values()[n - k].conj();
            prop_assert!((a - b).norm() <= 1e-10 * scale);
        }
        // Lag-0 values are real and nonnegative for both correlators.
        prop_assert!(prof.values()[0].im.abs() <= 1e-10 * scale);
        prop_assert!(prof.values()[0].re >= 0.0);
        let aprof = aacf(&frame);
        prop_assert!(aprof.values()[0].im.abs() <= 1e-10 * scale);
        prop_assert!(aprof.values()[0].re >= 0.0);
    }

    #[test]
    fn unit_padding_is_bitwise_identical_to_the_periodic_route(
        n in 2usize..48,
        sym_seed in any::<u64>(),
        pa_seed in any::<u64>(),
    ) {
        let frame = random_frame(n, sym_seed, pa_seed, true);
        let a = pacf(&frame);
        let b = zp_pacf(&frame, 1);
        prop_assert_eq!(a.values(), b.values());
    }

    #[test]
    fn pacf_energy_parseval_identity(
        n in 2usize..64,
        sym_seed in any::<u64>(),
        pa_seed in any::<u64>(),
    ) {
        // sum_k |r[k]|^2 = N * sum_n |c[n]|^4.
        let frame = random_frame(n, sym_seed, pa_seed, true);
        let prof = pacf(&frame);
        let lhs: f64 = prof.values().iter().map(|v| v.norm_sqr()).sum();
        let rhs: f64 = n as f64
            * frame
                .weighted()
                .iter()
                .map(|c| c.norm_sqr() * c.norm_sqr())
                .sum::<f64>();
        prop_assert!((lhs - rhs).abs() <= 1e-9 * rhs.max(1.0));
    }

    #[test]
    fn frame_energy_is_conserved(
        n in 1usize..96,
        sym_seed in any::<u64>(),
        pa_seed in any::<u64>(),
    ) {
        let frame = random_frame(n, sym_seed, pa_seed, false);
        let freq: f64 = frame.weighted().iter().map(Complex::norm_sqr).sum();
        let time: f64 = frame.time_domain().iter().map(Complex::norm_sqr).sum();
        prop_assert!((freq - time).abs() <= 1e-10 * freq.max(1.0));
    }
}
