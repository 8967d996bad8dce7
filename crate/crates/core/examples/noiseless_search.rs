// Ideal search: success probability after the standard iteration count.

use grover_noise::discrete::{run_trajectory, SearchInstance};
use grover_noise::noise::NoiseSpec;

pub fn run_example() -> grover_noise::Result<()> {
    println!("{:>6} {:>8} {:>6} {:>12}", "n_bits", "N", "T", "P(T)");
    for n_bits in [4, 8, 12, 16, 20] {
        let inst = SearchInstance::with_bits(n_bits)?;
        let t = inst.grover_iterations();
        let tr = run_trajectory(&inst, &NoiseSpec::noiseless(), t, 0);
        println!("{:>6} {:>8} {:>6} {:>12.9}", n_bits, inst.size(), t, tr.success_prob[t]);
    }
    Ok(())
}

fn main() {
    run_example().unwrap();
}
