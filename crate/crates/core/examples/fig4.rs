//! Quantum against classical learning for k = 2, 4, 8 at the same budget.

use rootnot::harness;

fn main() -> rootnot::Result<()> {
    let outcomes = harness::preset_fig4()
        .iter()
        .map(harness::run_experiment)
        .collect::<rootnot::Result<Vec<_>>>()?;
    for pair in outcomes.chunks(2) {
        let cmp = harness::compare_curves(&pair[0].curve, &pair[1].curve, 10, 0.9)?;
        println!("k={}: {cmp}", pair[0].config.k);
    }
    Ok(())
}
