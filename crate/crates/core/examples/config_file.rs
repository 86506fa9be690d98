//! Loads an experiment from key=value text, applies overrides and runs it.

use rootnot::harness::{self, ExperimentConfig};

const TEXT: &str = "
# quantum learner, fixed memory
label = custom
machine = quantum
k = 8
trial_budget = 5000
log_interval = 1000
merit_orders = 1,10
sigma_gamma = pi/4
sigma_beta = pi/8
teacher = fixed
teacher_memory = 50
seeds = 1-6
";

fn main() -> rootnot::Result<()> {
    let config = ExperimentConfig::parse(TEXT)?.with_overrides(&["seeds=1-3"])?;
    println!("fingerprint {}", config.fingerprint());
    print!("{}", config.to_text());
    let o = harness::run_experiment(&config)?;
    println!("final P10 median {:.4}", o.curve.final_median(10).unwrap());

    match ExperimentConfig::parse("k = 6\n") {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
