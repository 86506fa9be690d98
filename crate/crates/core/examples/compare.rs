//! Compares both learners on a custom root and budget, then plots the medians.
//!
//! `cargo run --release --example compare -- 8 20000 plot.svg`

use std::path::PathBuf;

use rootnot::harness::{self, presets};
use rootnot::TeacherSchedule;

fn main() -> rootnot::Result<()> {
    let mut args = std::env::args().skip(1);
    let k: usize = args.next().map_or(4, |a| a.parse().expect("k"));
    let budget: u64 = args.next().map_or(20_000, |a| a.parse().expect("budget"));
    let plot = args.next().map(PathBuf::from);

    let q = presets::quantum("quantum", k, TeacherSchedule::variable(), budget, vec![10]);
    let c = presets::classical("classical", k, presets::default_gains(k), budget, vec![10]);
    let (q, c) = (harness::run_experiment(&q)?, harness::run_experiment(&c)?);

    let cmp = harness::compare_curves(&q.curve, &c.curve, 10, 0.9)?;
    for (t, d) in cmp.differences().step_by((cmp.rows.len() / 10).max(1)) {
        println!("trial {t:>7}: quantum - classical = {d:+.4}");
    }
    println!("{cmp}");

    if let Some(path) = plot {
        let mut curves = q.curve.plot_curves("quantum ");
        curves.extend(c.curve.plot_curves("classical "));
        harness::emit_plot(&format!("k = {k}"), "trials", &curves, &path)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
