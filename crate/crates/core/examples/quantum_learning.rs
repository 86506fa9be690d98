//! Trains one quantum learner for the 4th root of NOT and prints its merits.

use rootnot::harness::presets::default_widths;
use rootnot::quantum::{learn_quantum, QuantumConfig};
use rootnot::TeacherSchedule;

fn main() -> rootnot::Result<()> {
    let config = QuantumConfig {
        k: 4,
        widths: default_widths(),
        schedule: TeacherSchedule::variable(),
        budget: 20_000,
        log_interval: 2_000,
        orders: vec![1, 5, 10],
    };
    let series = learn_quantum(&config, 7)?;
    println!("trial      M    P1      P5      P10");
    for p in &series.points {
        println!(
            "{:>6} {:>5}  {:.4}  {:.4}  {:.4}",
            p.trial, p.teacher_memory, p.values[&1], p.values[&5], p.values[&10]
        );
    }
    Ok(())
}
