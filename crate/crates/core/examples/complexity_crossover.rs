// Expected cost t/P(t) of repeated short runs, at fixed and at shrinking
// error.

use grover_noise::harness::experiments::complexity_sweep;
use grover_noise::harness::{ExperimentConfig, ExperimentKind};

pub fn run_example() -> grover_noise::Result<()> {
    let mut cfg = ExperimentConfig::defaults(ExperimentKind::Complexity);
    for (label, schedule, bits) in [
        ("fixed eps_rms = 0.1", None, (10..=18).collect::<Vec<_>>()),
        ("eps_rms = 0.1 (N/1024)^-1/4", Some(0.25), (10..=18).collect()),
        ("fixed eps_rms = 0.1, large N", None, vec![20, 22, 24, 26, 28]),
    ] {
        cfg.schedule_delta = schedule;
        cfg.n_bits = bits;
        let res = complexity_sweep(&cfg)?;
        println!("{label}: cost ~ N^{:.3}", res.fit.slope);
        for p in &res.points {
            println!("  n = {:>2}  t_opt = {:>4}  P = {:.3}  cost = {:.1}", p.n_bits, p.t_opt, p.p_opt, p.cost);
        }
    }
    Ok(())
}

fn main() {
    run_example().unwrap();
}
