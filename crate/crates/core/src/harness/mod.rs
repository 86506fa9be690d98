//! Experiment orchestration: seeded multi-run execution, aggregation across
//! seeds, CSV/SVG output and quantum-versus-classical comparison.

pub mod config;
pub mod csv;
pub mod plot;
pub mod presets;

use std::fmt;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

pub use config::{ExperimentConfig, LearnerParams, RawConfig};
pub use plot::{emit_plot, render_svg, PlotCurve};
pub use presets::{preset_fig2, preset_fig3, preset_fig4};

use crate::classical::learn_classical;
use crate::error::{Error, Result};
use crate::merit::MeritSeries;
use crate::quantum::learn_quantum;

/// Summary of one merit order across seeds at one checkpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stats {
    pub median: f64,
    pub mean: f64,
    pub min: f64,
    pub max: f64,
}

impl Stats {
    /// Order-independent: values are sorted before any arithmetic.
    pub fn of(values: &[f64]) -> Stats {
        assert!(!values.is_empty());
        let mut v = values.to_vec();
        v.sort_by(f64::total_cmp);
        let n = v.len();
        let median = if n % 2 == 1 {
            v[n / 2]
        } else {
            (v[n / 2 - 1] + v[n / 2]) / 2.0
        };
        Stats {
            median,
            mean: v.iter().sum::<f64>() / n as f64,
            min: v[0],
            max: v[n - 1],
        }
    }
}

/// Per-checkpoint statistics over seeds; `stats[i][j]` is checkpoint `i`,
/// merit order `orders[j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateCurve {
    pub orders: Vec<usize>,
    pub checkpoints: Vec<u64>,
    pub stats: Vec<Vec<Stats>>,
}

impl AggregateCurve {
    pub fn from_series(series: &[MeritSeries]) -> Result<Self> {
        let first = series.first().ok_or(Error::EmptyCurve)?;
        let checkpoints: Vec<u64> = first.points.iter().map(|p| p.trial).collect();
        for s in series {
            let same = s.orders == first.orders
                && s.points.len() == checkpoints.len()
                && s.points.iter().zip(&checkpoints).all(|(p, t)| p.trial == *t);
            if !same {
                return Err(Error::field(
                    "seeds",
                    "series do not share checkpoints and merit orders",
                ));
            }
        }
        let stats = (0..checkpoints.len())
            .map(|i| {
                first
                    .orders
                    .iter()
                    .map(|n| {
                        let vals: Vec<f64> = series.iter().map(|s| s.points[i].values[n]).collect();
                        Stats::of(&vals)
                    })
                    .collect()
            })
            .collect();
        Ok(Self {
            orders: first.orders.clone(),
            checkpoints,
            stats,
        })
    }

    fn order_index(&self, n: usize) -> Option<usize> {
        self.orders.iter().position(|&o| o == n)
    }

    /// Median of `P^n` at every checkpoint.
    pub fn medians(&self, n: usize) -> Option<Vec<(u64, f64)>> {
        let j = self.order_index(n)?;
        Some(
            self.checkpoints
                .iter()
                .zip(&self.stats)
                .map(|(t, row)| (*t, row[j].median))
                .collect(),
        )
    }

    pub fn final_stats(&self, n: usize) -> Option<Stats> {
        let j = self.order_index(n)?;
        self.stats.last().map(|row| row[j])
    }

    pub fn final_median(&self, n: usize) -> Option<f64> {
        self.final_stats(n).map(|s| s.median)
    }

    /// One median curve per merit order, labelled `<prefix>P<n>`.
    pub fn plot_curves(&self, prefix: &str) -> Vec<PlotCurve> {
        self.orders
            .iter()
            .map(|&n| PlotCurve {
                label: format!("{prefix}P{n}"),
                points: self
                    .medians(n)
                    .unwrap_or_default()
                    .into_iter()
                    .map(|(t, v)| (t as f64, v))
                    .collect(),
            })
            .collect()
    }
}

/// Seed results plus their aggregate.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentOutcome {
    pub config: ExperimentConfig,
    pub series: Vec<MeritSeries>,
    pub curve: AggregateCurve,
}

/// Runs one learner for `seed`.
pub fn run_seed(config: &ExperimentConfig, seed: u64) -> Result<MeritSeries> {
    match (config.quantum_config(), config.classical_config()) {
        (Some(q), _) => learn_quantum(&q, seed),
        (_, Some(c)) => learn_classical(&c, seed),
        _ => unreachable!("a config is either quantum or classical"),
    }
}

/// Runs every seed (concurrently, up to `config.workers` threads) and
/// aggregates. Per-seed results are independent of scheduling.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentOutcome> {
    config.validate()?;
    let run = || -> Result<Vec<MeritSeries>> { config.seeds.par_iter().map(|&s| run_seed(config, s)).collect() };
    let series = if config.workers > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(config.workers)
            .build()
            .map_err(|e| Error::field("workers", e.to_string()))?
            .install(run)?
    } else {
        run()?
    };
    let curve = AggregateCurve::from_series(&series)?;
    Ok(ExperimentOutcome {
        config: config.clone(),
        series,
        curve,
    })
}

/// Runs seeds one after another on the calling thread.
pub fn run_experiment_sequential(config: &ExperimentConfig) -> Result<ExperimentOutcome> {
    config.validate()?;
    let series = config
        .seeds
        .iter()
        .map(|&s| run_seed(config, s))
        .collect::<Result<Vec<_>>>()?;
    let curve = AggregateCurve::from_series(&series)?;
    Ok(ExperimentOutcome {
        config: config.clone(),
        series,
        curve,
    })
}

fn write(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::io(path, e))
}

impl ExperimentOutcome {
    /// Writes `<dir>/<label>/`: `config.txt`, `series.csv`, one
    /// `seed-<s>.csv` per seed, `aggregate.csv` and `curves.svg`.
    /// Returns the directory.
    pub fn write_to(&self, dir: &Path) -> Result<PathBuf> {
        let out = dir.join(&self.config.label);
        std::fs::create_dir_all(&out).map_err(|e| Error::io(&out, e))?;
        let mut cfg = self.config.clone();
        cfg.output = None;
        write(
            &out.join("config.txt"),
            &format!("# fingerprint {}\n{}", self.config.fingerprint(), cfg.to_text()),
        )?;
        write(&out.join("series.csv"), &csv::series_to_csv(&self.series))?;
        for s in &self.series {
            write(
                &out.join(format!("seed-{}.csv", s.seed)),
                &csv::series_to_csv(std::slice::from_ref(s)),
            )?;
        }
        write(&out.join("aggregate.csv"), &csv::aggregate_to_csv(&self.curve))?;
        emit_plot(
            &self.plot_title(),
            "trials",
            &self.curve.plot_curves(""),
            &out.join("curves.svg"),
        )?;
        Ok(out)
    }

    pub fn plot_title(&self) -> String {
        format!(
            "{} learner, k = {}, median of {} seeds",
            self.config.machine(),
            self.config.k,
            self.config.seeds.len()
        )
    }
}

/// Per-checkpoint comparison of two median curves for one merit order.
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub order: usize,
    pub threshold: f64,
    /// `(trial, quantum median, classical median)`
    pub rows: Vec<(u64, f64, f64)>,
    pub quantum_crossing: Option<u64>,
    pub classical_crossing: Option<u64>,
}

impl Comparison {
    pub fn differences(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        self.rows.iter().map(|&(t, q, c)| (t, q - c))
    }

    pub fn final_difference(&self) -> f64 {
        self.rows.last().map(|&(_, q, c)| q - c).unwrap_or(0.0)
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let crossing = |c: Option<u64>| c.map_or("not reached".to_string(), |t| format!("trial {t}"));
        let (t, q, c) = self.rows.last().copied().unwrap_or((0, f64::NAN, f64::NAN));
        write!(
            f,
            "P{} at trial {t}: quantum {q:.4}, classical {c:.4}, difference {:+.4}; \
             reaching {}: quantum {}, classical {}",
            self.order,
            q - c,
            self.threshold,
            crossing(self.quantum_crossing),
            crossing(self.classical_crossing)
        )
    }
}

/// Linear interpolation of `curve` at `t`; `t` must lie within its range.
fn interpolate(curve: &[(u64, f64)], t: u64) -> f64 {
    match curve.binary_search_by_key(&t, |p| p.0) {
        Ok(i) => curve[i].1,
        Err(i) => {
            let (t0, v0) = curve[i - 1];
            let (t1, v1) = curve[i];
            v0 + (v1 - v0) * (t - t0) as f64 / (t1 - t0) as f64
        }
    }
}

/// Compares median `P^order` curves. When checkpoints differ both curves are
/// resampled linearly onto the union of checkpoints in their common range.
pub fn compare_curves(
    quantum: &AggregateCurve,
    classical: &AggregateCurve,
    order: usize,
    threshold: f64,
) -> Result<Comparison> {
    let q = quantum
        .medians(order)
        .ok_or_else(|| Error::field("merit_orders", format!("quantum curve lacks P{order}")))?;
    let c = classical
        .medians(order)
        .ok_or_else(|| Error::field("merit_orders", format!("classical curve lacks P{order}")))?;
    if q.is_empty() || c.is_empty() {
        return Err(Error::EmptyCurve);
    }
    let lo = q[0].0.max(c[0].0);
    let hi = q[q.len() - 1].0.min(c[c.len() - 1].0);
    if lo > hi {
        return Err(Error::field("checkpoints", "curves do not overlap"));
    }
    let mut grid: Vec<u64> = q
        .iter()
        .chain(&c)
        .map(|p| p.0)
        .filter(|t| (lo..=hi).contains(t))
        .collect();
    grid.sort_unstable();
    grid.dedup();
    let rows: Vec<(u64, f64, f64)> = grid
        .iter()
        .map(|&t| (t, interpolate(&q, t), interpolate(&c, t)))
        .collect();
    let crossing = |pick: fn(&(u64, f64, f64)) -> f64| rows.iter().find(|r| pick(r) >= threshold).map(|r| r.0);
    Ok(Comparison {
        order,
        threshold,
        quantum_crossing: crossing(|r| r.1),
        classical_crossing: crossing(|r| r.2),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(points: &[(u64, f64)]) -> AggregateCurve {
        AggregateCurve {
            orders: vec![10],
            checkpoints: points.iter().map(|p| p.0).collect(),
            stats: points
                .iter()
                .map(|p| {
                    vec![Stats {
                        median: p.1,
                        mean: p.1,
                        min: p.1,
                        max: p.1,
                    }]
                })
                .collect(),
        }
    }

    #[test]
    fn stats_are_ordered() {
        let s = Stats::of(&[0.3, 0.9, 0.1, 0.5]);
        assert_eq!((s.min, s.median, s.max), (0.1, 0.4, 0.9));
        assert_eq!(Stats::of(&[0.2, 0.7, 0.4]).median, 0.4);
    }

    #[test]
    fn identical_curves_do_not_differ() {
        let a = curve(&[(0, 0.5), (100, 0.7), (200, 0.95)]);
        let cmp = compare_curves(&a, &a, 10, 0.9).unwrap();
        assert!(cmp.differences().all(|(_, d)| d == 0.0));
        assert_eq!(cmp.quantum_crossing, Some(200));
        assert_eq!(cmp.classical_crossing, Some(200));
    }

    #[test]
    fn flat_classical_never_crosses() {
        let q = curve(&[(0, 0.5), (100, 0.8), (200, 0.97)]);
        let c = curve(&[(0, 0.5), (100, 0.5), (200, 0.5)]);
        let cmp = compare_curves(&q, &c, 10, 0.9).unwrap();
        assert_eq!(cmp.quantum_crossing, Some(200));
        assert_eq!(cmp.classical_crossing, None);
        assert!(cmp.to_string().contains("classical not reached"));
    }

    #[test]
    fn differing_grids_are_resampled() {
        let q = curve(&[(0, 0.0), (100, 1.0)]);
        let c = curve(&[(0, 0.5), (50, 0.5), (150, 0.5)]);
        let cmp = compare_curves(&q, &c, 10, 0.9).unwrap();
        assert_eq!(cmp.rows, vec![(0, 0.0, 0.5), (50, 0.5, 0.5), (100, 1.0, 0.5)]);
    }

    #[test]
    fn missing_order_and_empty_curves_are_rejected() {
        let q = curve(&[(0, 0.0)]);
        assert!(compare_curves(&q, &q, 5, 0.9).is_err());
        let empty = AggregateCurve {
            orders: vec![10],
            checkpoints: vec![],
            stats: vec![],
        };
        assert!(matches!(compare_curves(&empty, &q, 10, 0.9), Err(Error::EmptyCurve)));
        assert!(AggregateCurve::from_series(&[]).is_err());
    }
}
