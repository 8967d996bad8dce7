// Search-time exponent of the continuous algorithm when the dephasing rate
// scales as N^(-2 delta).

use grover_noise::harness::experiments::fig4_sweep;
use grover_noise::harness::{ExperimentConfig, ExperimentKind};

pub fn run_example() -> grover_noise::Result<()> {
    let mut cfg = ExperimentConfig::defaults(ExperimentKind::Fig4);
    cfg.n_bits = vec![20, 30, 40];
    cfg.deltas = (0..=10).map(|i| i as f64 * 0.05).collect();
    let rows = fig4_sweep(&cfg)?;
    println!("{:>6} {:>10} {:>10} {:>10}", "delta", "N = 2^20", "N = 2^30", "N = 2^40");
    for chunk in rows.chunks(cfg.n_bits.len()) {
        print!("{:>6.2}", chunk[0].delta);
        for r in chunk {
            print!(" {:>10.4}", r.log_n_t_prime);
        }
        println!();
    }
    Ok(())
}

fn main() {
    run_example().unwrap();
}
