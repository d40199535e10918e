//! Builds an experiment config in code, writes its outputs and shows the
//! JSON that reproduces the run from the command line.
//!
//! cargo run --example experiment_config

use heavytail::app::{self, Experiment, ExperimentConfig, OutputFormat};

fn main() {
    let mut config = ExperimentConfig::new(Experiment::default_for("theorem1").unwrap());
    config.seed = Some(42);
    config.format = OutputFormat::Svg;
    let out = std::env::temp_dir().join("heavytail-theorem1");
    match app::run(&config, &out) {
        Ok(summary) => {
            println!("{}", summary.line);
            for f in &summary.files {
                println!("  wrote {}", f.display());
            }
            println!(
                "\nre-run with: heavytail theorem1 --config {}",
                out.join("config.json").display()
            );
            print!("{}", config.to_json());
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
