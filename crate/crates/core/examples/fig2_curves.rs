// Mean peak success against library size for several error magnitudes.

use grover_noise::harness::experiments::fig2_sweep;
use grover_noise::harness::{ExperimentConfig, ExperimentKind};

pub fn run_example() -> grover_noise::Result<()> {
    let mut cfg = ExperimentConfig::defaults(ExperimentKind::Fig2);
    cfg.n_bits = (8..=16).step_by(2).collect();
    let res = fig2_sweep(&cfg)?;
    print!("{:>10}", "eps_rms");
    for n in &cfg.n_bits {
        print!(" {:>7}", format!("2^{n}"));
    }
    println!();
    for curve in &res.curves {
        print!("{:>10.4}", curve.eps_rms);
        for row in res.curve(curve.eps_rms) {
            print!(" {:>7.4}", row.mean_max_p);
        }
        println!("{}", if curve.monotone { "" } else { "  (not monotone)" });
    }
    Ok(())
}

fn main() {
    run_example().unwrap();
}
