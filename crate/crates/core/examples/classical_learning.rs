//! Reward/penalty training of a classical machine for the square root of NOT.

use rootnot::classical::{learn_classical, ClassicalConfig};
use rootnot::UpdateGains;

fn main() -> rootnot::Result<()> {
    let config = ClassicalConfig {
        k: 2,
        gains: UpdateGains::new(0.25, 0.25)?,
        budget: 20_000,
        log_interval: 4_000,
        orders: vec![1, 10],
    };
    for seed in 1..=4 {
        let s = learn_classical(&config, seed)?;
        let curve: Vec<String> = s.points.iter().map(|p| format!("{:.3}", p.values[&10])).collect();
        println!("seed {seed}: P10 over time {}", curve.join(" "));
    }
    Ok(())
}
