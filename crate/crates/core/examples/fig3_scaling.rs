// How fast the tolerable error must shrink with N to hold P = 1/2.

use grover_noise::harness::experiments::fig3_fit;
use grover_noise::harness::{ExperimentConfig, ExperimentKind};

pub fn run_example() -> grover_noise::Result<()> {
    let cfg = ExperimentConfig::defaults(ExperimentKind::Fig3);
    let res = fig3_fit(&cfg)?;
    for e in &res.estimates {
        println!("n = {:>2}: eps_rms = {:.4} in [{:.4}, {:.4}], P = {:.4}", e.n_bits, e.eps_mid, e.eps_lo, e.eps_hi, e.p_achieved);
    }
    println!(
        "slope of log2 N against -log2 eps_rms: {:.3} (r^2 = {:.4}), so eps_rms ~ N^-{:.3}",
        res.fit.fit.slope, res.fit.fit.r_squared, res.fit.delta
    );
    Ok(())
}

fn main() {
    run_example().unwrap();
}
