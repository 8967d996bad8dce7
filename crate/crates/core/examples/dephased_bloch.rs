// Continuous-time search with dephasing: integrated Bloch vector, closed
// form and the first time the success probability reaches 1/4.

use std::f64::consts::PI;

use grover_noise::continuous::{self, ContinuousParams, System};

pub fn run_example() -> grover_noise::Result<()> {
    let size = 1e6;
    let crit = 4.0 / f64::sqrt(size);
    println!("N = 1e6, critical Gamma = {crit:.1e}");
    for gamma in [0.0, 0.5 * crit, crit, 2.5 * crit] {
        let p = ContinuousParams::new(size, gamma)?;
        let t_end = PI * size.sqrt() / 2.0;
        let tr = continuous::integrate(&p, t_end, continuous::max_step(&p) / 4.0, System::Full)?;
        let end = tr.last();
        let t_prime = continuous::find_min_time(&p, 0.25)?;
        println!(
            "  Gamma = {gamma:.2e} ({:?}): P(pi sqrt(N)/2) = {:.5} integrated, {:.5} closed form; t' = {t_prime:.1}",
            p.regime(),
            continuous::success_prob_ct(end.nz)?,
            continuous::success_prob_ct(continuous::closed_form_nz(t_end, &p))?,
        );
    }
    Ok(())
}

fn main() {
    run_example().unwrap();
}
