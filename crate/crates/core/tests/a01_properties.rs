use std::f64::consts::PI;

use grover_noise::continuous::{self, ContinuousParams, System};
use grover_noise::discrete::{monte_carlo, noisy_iterate, SearchInstance};
use grover_noise::harness::bisect::{bisect, Monotone};
use grover_noise::harness::fit::fit_line;
use grover_noise::noise::{eps_for_size, sample_stream, NoiseSpec, ScalingLaw};
use grover_noise::polar::{grover_map, success_from_theta, threshold_theta, PolarPoint};
use grover_noise::spinor::{axis_angle_decompose, polar_angles, to_bloch, ComplexPair, Unitary2};
use num_complex::Complex64;
use proptest::prelude::*;

fn unit_axis(polar: f64, azimuth: f64) -> [f64; 3] {
    [polar.sin() * azimuth.cos(), polar.sin() * azimuth.sin(), polar.cos()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn iterate_is_unitary(n_bits in 2u32..=60, eps in -PI..PI) {
        let g = noisy_iterate((n_bits as f64).exp2(), eps);
        prop_assert!(g.unitarity_residual() < 1e-12);
    }

    #[test]
    fn decomposition_round_trips(
        polar in 0.0..PI,
        azimuth in 0.0..2.0 * PI,
        phi in 0.0..2.0 * PI,
        alpha in -PI..PI,
    ) {
        let u = Unitary2::rotation(unit_axis(polar, azimuth), phi).scale(Complex64::from_polar(1.0, alpha));
        let d = axis_angle_decompose(&u).unwrap();
        prop_assert!(d.to_unitary().max_abs_diff(&u) < 1e-10);
        prop_assert!((u.det() - Complex64::from_polar(1.0, 2.0 * d.alpha)).norm() < 1e-10);
        prop_assert!(d.alpha > -PI / 2.0 && d.alpha <= PI / 2.0);
        prop_assert!((0.0..=PI * 2.0).contains(&d.phi));
    }

    #[test]
    fn iterate_phase_is_half_the_error(n_bits in 2u32..=40, eps in -3.0f64..3.0) {
        let d = axis_angle_decompose(&noisy_iterate((n_bits as f64).exp2(), eps)).unwrap();
        prop_assert!((d.alpha - eps / 2.0).abs() < 1e-10);
    }
}

proptest! {
    #[test]
    fn bloch_vector_is_unit(re1 in -1.0f64..1.0, im1 in -1.0f64..1.0, re2 in -1.0f64..1.0, im2 in -1.0f64..1.0) {
        let norm = (re1 * re1 + im1 * im1 + re2 * re2 + im2 * im2).sqrt();
        prop_assume!(norm > 1e-3);
        let s = ComplexPair::new(Complex64::new(re1 / norm, im1 / norm), Complex64::new(re2 / norm, im2 / norm));
        let v = to_bloch(&s).unwrap();
        prop_assert!((v.norm() - 1.0).abs() < 1e-12);
        let (theta, phi) = polar_angles(&v).unwrap();
        prop_assert!((0.0..=PI).contains(&theta));
        prop_assert!((0.0..2.0 * PI).contains(&phi));
        prop_assert!((success_from_theta(theta) - s.marked_probability()).abs() < 1e-12);
    }

    #[test]
    fn stream_prefixes_agree(seed in any::<u64>(), stream in any::<u64>(), short in 0usize..50, extra in 0usize..50) {
        let spec = NoiseSpec::gaussian(0.3, seed);
        let a = sample_stream(&spec, stream, short);
        let b = sample_stream(&spec, stream, short + extra);
        prop_assert_eq!(&a[..], &b[..short]);
    }

    #[test]
    fn scaling_law_is_positive_power(delta in 0.0f64..1.0, prefactor in 1e-3f64..10.0, n_bits in 2u32..=60) {
        let law = ScalingLaw::new(delta, prefactor).unwrap();
        let size = (n_bits as f64).exp2();
        let eps = eps_for_size(&law, size);
        prop_assert!(eps > 0.0);
        let ratio = eps_for_size(&law, 2.0 * size) / eps;
        prop_assert!((ratio - 2f64.powf(-delta)).abs() < 1e-12);
    }

    #[test]
    fn map_keeps_theta_inside_sphere(theta in 0.0..PI, phi in 0.0..2.0 * PI, eps in -1.0f64..1.0, n_bits in 2u32..=40) {
        let size = (n_bits as f64).exp2();
        let s = grover_map(PolarPoint::new(theta, phi), eps, size);
        prop_assert!(s.point.theta >= 1.0 / size && s.point.theta <= PI - 1.0 / size);
    }

    #[test]
    fn threshold_inverts_success(p in 0.0f64..=1.0) {
        prop_assert!((success_from_theta(threshold_theta(p).unwrap()) - p).abs() < 1e-12);
    }

    #[test]
    fn dephasing_contracts(log_n in 2.0f64..8.0, gamma_frac in 0.01f64..10.0) {
        let size = 10f64.powf(log_n);
        let p = ContinuousParams::new(size, gamma_frac * 4.0 / size.sqrt()).unwrap();
        let t_end = 2.0 * PI * size.sqrt();
        let tr = continuous::integrate(&p, t_end, continuous::max_step(&p), System::Reduced).unwrap();
        for w in tr.states.windows(2) {
            prop_assert!(w[1].norm() <= w[0].norm() + 1e-9);
        }
    }

    #[test]
    fn closed_form_stays_on_ball(log_n in 2.0f64..12.0, gamma_frac in 0.0f64..100.0, t_frac in 0.0f64..100.0) {
        let size = 10f64.powf(log_n);
        let p = ContinuousParams::new(size, gamma_frac * 4.0 / size.sqrt()).unwrap();
        let (ny, nz) = continuous::closed_form(t_frac * size.sqrt(), &p);
        prop_assert!((ny * ny + nz * nz).sqrt() <= 1.0 + 1e-12);
    }

    #[test]
    fn first_passage_time_grows_with_dephasing(log_n in 2.0f64..12.0, a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let size = 10f64.powf(log_n);
        let crit = 4.0 / size.sqrt();
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let t_lo = continuous::find_min_time(&ContinuousParams::new(size, lo * crit).unwrap(), 0.25).unwrap();
        let t_hi = continuous::find_min_time(&ContinuousParams::new(size, hi * crit).unwrap(), 0.25).unwrap();
        prop_assert!(t_hi >= t_lo - 1e-8 * size.sqrt());
    }

    #[test]
    fn planted_power_law_is_recovered(
        exponent in 0.25f64..3.0,
        scale in 0.1f64..10.0,
        seed in any::<u64>(),
    ) {
        let noise = sample_stream(&NoiseSpec::gaussian(0.01, seed), 0, 12);
        let xs: Vec<f64> = (0..12).map(|i| (10f64.powf(i as f64 / 3.0)).ln()).collect();
        let ys: Vec<f64> = xs
            .iter()
            .zip(&noise)
            .map(|(x, z)| (scale * (exponent * x).exp() * (1.0 + z)).ln())
            .collect();
        let fit = fit_line(&xs, &ys).unwrap();
        prop_assert!((fit.slope / exponent - 1.0).abs() < 0.02);
        prop_assert!((0.0..=1.0).contains(&fit.r_squared));
        // Normal equations: residuals are orthogonal to 1 and x.
        let r_sum: f64 = fit.residuals.iter().sum();
        let rx_sum: f64 = fit.residuals.iter().zip(&xs).map(|(r, x)| r * x).sum();
        prop_assert!(r_sum.abs() < 1e-10 && rx_sum.abs() < 1e-10);
    }

    #[test]
    fn bisection_finds_planted_crossing(x0 in -2.9f64..-0.1, steep in 0.5f64..20.0, tol in 1e-9f64..1e-2) {
        let f = |x: f64| 1.0 / (1.0 + (steep * (x - x0)).exp());
        let br = bisect(f, -3.0, 0.0, 0.5, tol, Monotone::Decreasing).unwrap();
        prop_assert!(br.width() < tol);
        prop_assert!((br.mid() - x0).abs() <= tol);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn ensemble_probabilities_are_probabilities(n_bits in 2u32..=12, eps in 0.0f64..2.0, seed in any::<u64>()) {
        let inst = SearchInstance::with_bits(n_bits).unwrap();
        let stats = monte_carlo(&inst, &NoiseSpec::gaussian(eps, seed), 2 * inst.grover_iterations(), 16).unwrap();
        prop_assert!((stats.mean_p[0] - 1.0 / inst.size_f64()).abs() < 1e-12);
        prop_assert!(stats.mean_p.iter().all(|p| (0.0..=1.0 + 1e-12).contains(p)));
    }
}
