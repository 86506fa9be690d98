//! Quantum learner with growing teacher memory: median P1, P5, P10 over seeds.
//!
//! Pass a directory to write CSV and SVG output:
//! `cargo run --release --example fig2 -- out/`

use std::path::PathBuf;

use rootnot::harness;

fn main() -> rootnot::Result<()> {
    let config = harness::preset_fig2().remove(0);
    let outcome = harness::run_experiment(&config)?;
    for n in &config.merit_orders {
        let s = outcome.curve.final_stats(*n).unwrap();
        println!("P{n}: median {:.4}, range [{:.4}, {:.4}]", s.median, s.min, s.max);
    }
    if let Some(dir) = std::env::args().nth(1).map(PathBuf::from) {
        println!("wrote {}", outcome.write_to(&dir)?.display());
    }
    Ok(())
}
