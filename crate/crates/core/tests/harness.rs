use std::fs;

use rootnot::harness::{self, csv, presets, render_svg, ExperimentConfig};
use rootnot::TeacherSchedule;

fn small(mut c: ExperimentConfig, budget: u64, seeds: &[u64]) -> ExperimentConfig {
    c.trial_budget = budget;
    c.log_interval = 100;
    c.seeds = seeds.to_vec();
    c
}

#[test]
fn zero_budget_yields_initial_point() {
    let c = small(harness::preset_fig2().remove(0), 0, &[1, 2, 3]);
    let o = harness::run_experiment(&c).unwrap();
    assert_eq!(o.curve.checkpoints, vec![0]);
    for s in &o.series {
        assert_eq!(s.points.len(), 1);
        assert_eq!(s.points[0].trial, 0);
    }
}

#[test]
fn seed_order_does_not_change_aggregate() {
    let base = small(harness::preset_fig2().remove(0), 500, &[1, 2, 3, 4, 5]);
    let mut shuffled = base.clone();
    shuffled.seeds = vec![4, 2, 5, 1, 3];
    let a = harness::run_experiment(&base).unwrap();
    let b = harness::run_experiment(&shuffled).unwrap();
    assert_eq!(csv::aggregate_to_csv(&a.curve), csv::aggregate_to_csv(&b.curve));
    for s in &b.series {
        let same = a.series.iter().find(|t| t.seed == s.seed).unwrap();
        assert_eq!(s, same);
    }
}

#[test]
fn worker_count_does_not_change_output() {
    let base = small(
        presets::classical("c", 2, presets::default_gains(2), 2_000, vec![1, 10]),
        2_000,
        &[7, 8, 9],
    );
    let seq = harness::run_experiment_sequential(&base).unwrap();
    for workers in [1, 2, 3] {
        let mut c = base.clone();
        c.workers = workers;
        let par = harness::run_experiment(&c).unwrap();
        assert_eq!(par.series, seq.series);
        assert_eq!(par.curve, seq.curve);
    }
}

#[test]
fn outputs_are_byte_identical_and_svg_regenerates_from_csv() {
    let c = small(harness::preset_fig2().remove(0), 1_000, &[1, 2]);
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let da = harness::run_experiment(&c).unwrap().write_to(a.path()).unwrap();
    let db = harness::run_experiment(&c).unwrap().write_to(b.path()).unwrap();
    for name in [
        "config.txt",
        "series.csv",
        "seed-1.csv",
        "seed-2.csv",
        "aggregate.csv",
        "curves.svg",
    ] {
        assert_eq!(
            fs::read(da.join(name)).unwrap(),
            fs::read(db.join(name)).unwrap(),
            "{name}"
        );
    }

    let o = harness::run_experiment(&c).unwrap();
    let curve = csv::aggregate_from_csv(&fs::read_to_string(da.join("aggregate.csv")).unwrap()).unwrap();
    let svg = render_svg(&o.plot_title(), "trials", &curve.plot_curves("")).unwrap();
    assert_eq!(svg, fs::read_to_string(da.join("curves.svg")).unwrap());

    let series = csv::series_from_csv(&fs::read_to_string(da.join("series.csv")).unwrap()).unwrap();
    assert_eq!(
        csv::aggregate_to_csv(&harness::AggregateCurve::from_series(&series).unwrap()),
        csv::aggregate_to_csv(&curve)
    );
}

#[test]
fn fig2_plot_has_three_curves() {
    let c = small(harness::preset_fig2().remove(0), 300, &[1]);
    let o = harness::run_experiment(&c).unwrap();
    let svg = render_svg("fig2", "trials", &o.curve.plot_curves("")).unwrap();
    assert_eq!(svg.matches("<polyline").count(), 3);
}

#[test]
fn config_file_round_trip_reproduces_run() {
    let c = small(
        presets::quantum("q", 2, TeacherSchedule::Fixed(5), 400, vec![1, 10]),
        400,
        &[3],
    );
    let dir = tempfile::tempdir().unwrap();
    let out = harness::run_experiment(&c).unwrap().write_to(dir.path()).unwrap();
    let text = fs::read_to_string(out.join("config.txt")).unwrap();
    let parsed = ExperimentConfig::parse(&text).unwrap();
    assert_eq!(parsed.fingerprint(), c.fingerprint());
    assert_eq!(
        harness::run_experiment(&parsed).unwrap().series,
        harness::run_experiment(&c).unwrap().series
    );
}

#[test]
fn fingerprints_separate_configs() {
    let a = harness::preset_fig3();
    let prints: std::collections::BTreeSet<String> = a.iter().map(|c| c.fingerprint()).collect();
    assert_eq!(prints.len(), 3);
    let o = harness::run_experiment(&small(a[0].clone(), 100, &[1])).unwrap();
    assert!(o.series.iter().all(|s| !s.fingerprint.is_empty()));
}
