// Drive an experiment from a TOML config and write CSV, SVG and manifest.

use grover_noise::harness::{execute, ExperimentConfig, ExperimentKind};

const CONFIG: &str = r#"
n_bits = [10, 20, 30]
deltas = [0.0, 0.125, 0.25, 0.375, 0.5]
alpha = 1.0
"#;

pub fn run_example() -> grover_noise::Result<()> {
    let cfg = ExperimentConfig::from_toml_str(ExperimentKind::Fig4, CONFIG)?;
    let dir = std::env::temp_dir().join(format!("grover-noise-example-{}", std::process::id()));
    let manifest = execute(&cfg, &dir)?;
    for (file, digest) in &manifest.files {
        println!("{digest}  {}", dir.join(file).display());
    }
    print!("{}", std::fs::read_to_string(dir.join("fig4.csv")).unwrap_or_default());
    let _ = std::fs::remove_dir_all(&dir);
    Ok(())
}

fn main() {
    run_example().unwrap();
}
