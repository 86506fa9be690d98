//! Fixed teacher memories 50, 100 and 300. Larger memories learn more slowly
//! but end higher. Takes about a minute in release mode.

use rootnot::harness;

fn main() -> rootnot::Result<()> {
    for config in harness::preset_fig3() {
        let o = harness::run_experiment(&config)?;
        let medians = o.curve.medians(10).unwrap();
        let at = |t: u64| medians.iter().find(|p| p.0 == t).map_or(f64::NAN, |p| p.1);
        println!(
            "{}: P10 median at 10k {:.4}, 100k {:.4}, 500k {:.4}",
            config.label,
            at(10_000),
            at(100_000),
            at(500_000)
        );
    }
    Ok(())
}
