// Two-dimensional simulation against the brute-force N-amplitude one.

use grover_noise::discrete::{full_vector_reference, run_trajectory, SearchInstance};
use grover_noise::noise::{sample_stream, NoiseSpec};

pub fn run_example() -> grover_noise::Result<()> {
    let inst = SearchInstance::new(10, 617)?;
    let spec = NoiseSpec::gaussian(0.3, 7);
    let t = 100;
    let sub = run_trajectory(&inst, &spec, t, 0);
    let full = full_vector_reference(&inst, &sample_stream(&spec, 0, t), t)?;
    let gap = sub
        .success_prob
        .iter()
        .zip(&full.success_prob)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    println!("N = {}, eps_rms = 0.3, {t} steps", inst.size());
    for k in (0..=t).step_by(20) {
        println!("  t = {k:>3}  P = {:.6}", sub.success_prob[k]);
    }
    println!("largest difference from the full state vector: {gap:.2e}");
    Ok(())
}

fn main() {
    run_example().unwrap();
}
