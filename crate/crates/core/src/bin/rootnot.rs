use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use rootnot::harness::{self, config::parse_seeds, ExperimentConfig, ExperimentOutcome, RawConfig};
use rootnot::merit::MachineKind;
use rootnot::oracle;
use rootnot::{Error, Result};

#[derive(Parser)]
#[command(
    name = "rootnot",
    version,
    about = "Learn the k-th root of NOT with quantum and classical machines"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// key=value configuration file layered over the command's defaults
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Directory for CSV and SVG output
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seeds, e.g. `1-20` or `3,5,8`
    #[arg(long, global = true)]
    seeds: Option<String>,
    /// Extra KEY=VALUE assignments, applied last
    #[arg(long = "override", global = true, value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Train the quantum learner (defaults: k=4, variable teacher memory)
    LearnQuantum,
    /// Train the classical learner (defaults: k=2, K_s=K_f=0.25)
    LearnClassical,
    /// Train both learners at one k and compare median merits
    Compare {
        #[arg(long, default_value_t = 4)]
        k: usize,
        #[arg(long, default_value_t = 10)]
        order: usize,
        #[arg(long, default_value_t = 0.9)]
        threshold: f64,
    },
    /// Exhaustively search small deterministic machines for perfect roots
    OracleLemma {
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        /// Allow enumerations above the default work budget
        #[arg(long)]
        budget: Option<u128>,
    },
    /// Count perfect functions on 2k states and compare with the closed form
    OracleCount {
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long)]
        budget: Option<u128>,
    },
    /// Merits P1, P5, P10 of the quantum learner with variable teacher memory
    Fig2,
    /// P10 of the quantum learner for fixed teacher memories 50, 100, 300
    Fig3,
    /// Quantum versus classical P10 for k = 2, 4, 8
    Fig4,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let g = &cli.global;
    match cli.command {
        Command::LearnQuantum => {
            let base = harness::presets::quantum(
                "learn-quantum",
                4,
                rootnot::TeacherSchedule::variable(),
                100_000,
                vec![1, 5, 10],
            );
            let outcome = harness::run_experiment(&configure(&base, g)?)?;
            report(&outcome, g)
        }
        Command::LearnClassical => {
            let base = harness::presets::classical(
                "learn-classical",
                2,
                harness::presets::default_gains(2),
                100_000,
                vec![1, 5, 10],
            );
            let outcome = harness::run_experiment(&configure(&base, g)?)?;
            report(&outcome, g)
        }
        Command::Compare { k, order, threshold } => {
            let pair: Vec<ExperimentConfig> = harness::preset_fig4()
                .into_iter()
                .filter(|c| c.k == 4)
                .map(|mut c| {
                    c.k = k;
                    c.label = format!("compare-{}-k{k}", c.machine());
                    c.merit_orders = vec![order];
                    if let harness::LearnerParams::Classical { gains } = &mut c.learner {
                        *gains = harness::presets::default_gains(k);
                    }
                    c
                })
                .collect();
            compare(&pair, order, threshold, g)
        }
        Command::OracleLemma { k, n_max, budget } => {
            let rows = oracle::lemma_scan_with_budget(k, n_max, budget.unwrap_or(oracle::DEFAULT_WORK_BUDGET))?;
            let mut csv = String::from("k,N,machines,perfect\n");
            for r in &rows {
                println!("{r}");
                csv.push_str(&format!("{},{},{},{}\n", r.k, r.n_states, r.machines, r.perfect));
            }
            write_out(g, "lemma.csv", &csv)
        }
        Command::OracleCount { k, budget } => {
            let r = oracle::count_target_functions_with_budget(k, budget.unwrap_or(oracle::DEFAULT_WORK_BUDGET))?;
            println!("{r}");
            let csv = format!(
                "k,N,perfect_count,total_count,formula_numerator,formula_denominator,agrees\n{},{},{},{},{},{},{}\n",
                r.k, r.n_states, r.perfect_count, r.total_count, r.formula.numerator, r.formula.denominator, r.agrees
            );
            write_out(g, "count.csv", &csv)
        }
        Command::Fig2 => figure("fig2", harness::preset_fig2(), g),
        Command::Fig3 => figure("fig3", harness::preset_fig3(), g),
        Command::Fig4 => {
            let configs = harness::preset_fig4();
            let mut outcomes = Vec::new();
            for c in &configs {
                let o = harness::run_experiment(&configure(c, g)?)?;
                report(&o, g)?;
                outcomes.push(o);
            }
            for pair in outcomes.chunks(2) {
                let cmp = harness::compare_curves(&pair[0].curve, &pair[1].curve, 10, 0.9)?;
                println!("k={}: {cmp}", pair[0].config.k);
            }
            combined_plot("fig4", &outcomes, g)
        }
    }
}

/// Layers the config file, `--seeds` and `--override` over `base`.
fn configure(base: &ExperimentConfig, g: &Global) -> Result<ExperimentConfig> {
    let mut raw = base.raw();
    if let Some(path) = &g.config {
        let file = RawConfig::load(path)?;
        // a file may not switch a preset's label or machine
        let mut file_only = file.clone();
        file_only.set("label", raw.get("label").unwrap_or_default())?;
        file_only.set("machine", raw.get("machine").unwrap_or_default())?;
        raw.merge(&file_only);
    }
    if let Some(seeds) = &g.seeds {
        parse_seeds(seeds).map_err(|r| Error::InvalidField {
            field: "seeds".into(),
            reason: r,
        })?;
        raw.set("seeds", seeds)?;
    }
    for o in &g.overrides {
        raw.assign(o)?;
    }
    raw.build()
}

fn output_dir(g: &Global, config: &ExperimentConfig) -> Option<PathBuf> {
    g.out.clone().or_else(|| config.output.clone())
}

fn report(outcome: &ExperimentOutcome, g: &Global) -> Result<()> {
    let c = &outcome.config;
    let stats: Vec<String> = c
        .merit_orders
        .iter()
        .filter_map(|&n| {
            outcome
                .curve
                .final_stats(n)
                .map(|s| format!("P{n} median {:.4} [{:.4}, {:.4}]", s.median, s.min, s.max))
        })
        .collect();
    println!(
        "{} ({} k={}, {} trials, {} seeds): {}",
        c.label,
        c.machine(),
        c.k,
        c.trial_budget,
        c.seeds.len(),
        stats.join("; ")
    );
    if let Some(dir) = output_dir(g, c) {
        let path = outcome.write_to(&dir)?;
        println!("  wrote {}", path.display());
    }
    Ok(())
}

fn figure(name: &str, configs: Vec<ExperimentConfig>, g: &Global) -> Result<()> {
    let mut outcomes = Vec::new();
    for c in &configs {
        let o = harness::run_experiment(&configure(c, g)?)?;
        report(&o, g)?;
        outcomes.push(o);
    }
    combined_plot(name, &outcomes, g)
}

fn combined_plot(name: &str, outcomes: &[ExperimentOutcome], g: &Global) -> Result<()> {
    let Some(dir) = g.out.as_deref() else { return Ok(()) };
    let curves: Vec<_> = outcomes
        .iter()
        .flat_map(|o| o.curve.plot_curves(&format!("{} ", o.config.label)))
        .collect();
    let path = dir.join(format!("{name}.svg"));
    harness::emit_plot(name, "trials", &curves, &path)?;
    println!("  wrote {}", path.display());
    Ok(())
}

fn compare(pair: &[ExperimentConfig], order: usize, threshold: f64, g: &Global) -> Result<()> {
    let mut outcomes = Vec::new();
    for c in pair {
        let o = harness::run_experiment(&configure(c, g)?)?;
        report(&o, g)?;
        outcomes.push(o);
    }
    let (q, c) = match (outcomes[0].config.machine(), outcomes[1].config.machine()) {
        (MachineKind::Quantum, MachineKind::Classical) => (&outcomes[0], &outcomes[1]),
        _ => (&outcomes[1], &outcomes[0]),
    };
    let cmp = harness::compare_curves(&q.curve, &c.curve, order, threshold)?;
    println!("{cmp}");
    if let Some(dir) = g.out.as_deref() {
        let mut csv = String::from("trial,quantum_median,classical_median,difference\n");
        for (t, qv, cv) in &cmp.rows {
            csv.push_str(&format!(
                "{t},{},{},{}\n",
                harness::csv::format_real(*qv),
                harness::csv::format_real(*cv),
                harness::csv::format_real(qv - cv)
            ));
        }
        write_file(&dir.join(format!("compare-k{}.csv", q.config.k)), &csv)?;
        combined_plot(&format!("compare-k{}", q.config.k), &outcomes, g)?;
    }
    Ok(())
}

fn write_out(g: &Global, name: &str, contents: &str) -> Result<()> {
    match g.out.as_deref() {
        Some(dir) => write_file(&dir.join(name), contents),
        None => Ok(()),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent).map_err(|e| Error::Io {
            path: parent.into(),
            source: e,
        })?;
    }
    std::fs::write(path, contents).map_err(|e| Error::Io {
        path: path.into(),
        source: e,
    })?;
    println!("  wrote {}", path.display());
    Ok(())
}
