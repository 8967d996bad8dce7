// The noisy iterate as a rotation of the Bloch sphere.

use grover_noise::discrete::{noiseless_iterate, noisy_iterate};
use grover_noise::spinor::{axis_angle_decompose, bch_factorization_error};

pub fn run_example() -> grover_noise::Result<()> {
    let d = axis_angle_decompose(&noiseless_iterate(4.0))?;
    println!("N = 4, no error: angle {:.6} (2 pi / 3 = {:.6}), axis {:?}", d.phi, 2.0 * std::f64::consts::PI / 3.0, d.axis);

    let size = 1024.0;
    for eps in [0.0, 0.05, 0.2] {
        let d = axis_angle_decompose(&noisy_iterate(size, eps))?;
        println!(
            "N = {size}, eps = {eps:<4}: angle {:.6}, axis [{:+.4}, {:+.4}, {:+.4}], phase {:.4}, split error {:.2e}",
            d.phi,
            d.axis[0],
            d.axis[1],
            d.axis[2],
            d.alpha,
            bch_factorization_error(size, eps)
        );
    }
    Ok(())
}

fn main() {
    run_example().unwrap();
}
