// Ensemble motion on the sphere: azimuthal random walk, polar drift and
// the approximate polar map.

use std::f64::consts::PI;

use grover_noise::discrete::{monte_carlo_from, InitialState, SearchInstance};
use grover_noise::noise::NoiseSpec;
use grover_noise::polar::{compare_with_exact, MapKind};

pub fn run_example() -> grover_noise::Result<()> {
    let inst = SearchInstance::with_bits(30)?;
    let eps = 0.02;
    let t = 250;
    let equator = InitialState::Meridian { theta: PI / 2.0 };
    let stats = monte_carlo_from(&inst, &NoiseSpec::gaussian(eps, 5), t, 500, equator)?;
    println!("N = 2^30, eps_rms = {eps}, start on the equator, 500 trials");
    for k in [10, 50, 100, 250] {
        println!(
            "  t = {k:>3}  phi_rms / (eps sqrt t) = {:.3}  theta drift / (4t/sqrt N) = {:.3}",
            stats.phi_rms[k] / (eps * (k as f64).sqrt()),
            (stats.theta_mean[k] - stats.theta_mean[0]) / (4.0 * k as f64 / inst.size_f64().sqrt())
        );
    }

    let inst = SearchInstance::with_bits(16)?;
    let r = compare_with_exact(&inst, &NoiseSpec::gaussian(0.05, 5), 150, 200, InitialState::Uniform, MapKind::Full)?;
    let worst = r.theta_diff().iter().map(|d| d.abs()).fold(0.0, f64::max);
    println!("N = 2^16: polar map vs exact mean theta, worst gap {worst:.2e} rad, {} clamped steps", r.flagged_steps);
    Ok(())
}

fn main() {
    run_example().unwrap();
}
