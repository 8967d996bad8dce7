//! Every example runs to completion.

mod noiseless_search {
    #![allow(dead_code)]
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/noiseless_search.rs"));
}

#[test]
fn noiseless_search_runs() {
    noiseless_search::run_example().expect("example runs");
}

mod axis_angle {
    #![allow(dead_code)]
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/axis_angle.rs"));
}

#[test]
fn axis_angle_runs() {
    axis_angle::run_example().expect("example runs");
}

mod noisy_vs_full_vector {
    #![allow(dead_code)]
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/noisy_vs_full_vector.rs"));
}

#[test]
fn noisy_vs_full_vector_runs() {
    noisy_vs_full_vector::run_example().expect("example runs");
}

mod bloch_random_walk {
    #![allow(dead_code)]
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/bloch_random_walk.rs"));
}

#[test]
fn bloch_random_walk_runs() {
    bloch_random_walk::run_example().expect("example runs");
}

mod dephased_bloch {
    #![allow(dead_code)]
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/dephased_bloch.rs"));
}

#[test]
fn dephased_bloch_runs() {
    dephased_bloch::run_example().expect("example runs");
}

mod fig2_curves {
    #![allow(dead_code)]
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/fig2_curves.rs"));
}

#[test]
fn fig2_curves_runs() {
    fig2_curves::run_example().expect("example runs");
}

mod fig3_scaling {
    #![allow(dead_code)]
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/fig3_scaling.rs"));
}

#[test]
fn fig3_scaling_runs() {
    fig3_scaling::run_example().expect("example runs");
}

mod fig4_transition {
    #![allow(dead_code)]
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/fig4_transition.rs"));
}

#[test]
fn fig4_transition_runs() {
    fig4_transition::run_example().expect("example runs");
}

mod complexity_crossover {
    #![allow(dead_code)]
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/complexity_crossover.rs"));
}

#[test]
fn complexity_crossover_runs() {
    complexity_crossover::run_example().expect("example runs");
}

mod config_and_outputs {
    #![allow(dead_code)]
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/config_and_outputs.rs"));
}

#[test]
fn config_and_outputs_runs() {
    config_and_outputs::run_example().expect("example runs");
}
