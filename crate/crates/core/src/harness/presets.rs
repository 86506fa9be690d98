//! Parameter sets of the three standard experiments.

use std::f64::consts::PI;

use super::config::{ExperimentConfig, LearnerParams};
use crate::classical::UpdateGains;
use crate::quantum::{TeacherSchedule, WalkWidths};

pub const DEFAULT_SEEDS: std::ops::RangeInclusive<u64> = 1..=20;

/// `σγ = π/4`, `σβ = σδ = π/8`, used by every quantum experiment.
pub fn default_widths() -> WalkWidths {
    WalkWidths::new(PI / 4.0, PI / 8.0).expect("positive widths")
}

/// Classical gains used for each root in the quantum/classical comparison.
pub fn default_gains(k: usize) -> UpdateGains {
    let (s, f) = match k {
        2 => (0.25, 0.25),
        4 => (0.75, 0.75),
        _ => (0.75, 0.25),
    };
    UpdateGains::new(s, f).expect("gains in [0, 1]")
}

pub fn quantum(label: &str, k: usize, schedule: TeacherSchedule, budget: u64, orders: Vec<usize>) -> ExperimentConfig {
    ExperimentConfig {
        label: label.to_string(),
        k,
        trial_budget: budget,
        log_interval: 100,
        merit_orders: orders,
        learner: LearnerParams::Quantum {
            widths: default_widths(),
            schedule,
        },
        seeds: DEFAULT_SEEDS.collect(),
        workers: 0,
        output: None,
    }
}

pub fn classical(label: &str, k: usize, gains: UpdateGains, budget: u64, orders: Vec<usize>) -> ExperimentConfig {
    ExperimentConfig {
        label: label.to_string(),
        k,
        trial_budget: budget,
        log_interval: 100,
        merit_orders: orders,
        learner: LearnerParams::Classical { gains },
        seeds: DEFAULT_SEEDS.collect(),
        workers: 0,
        output: None,
    }
}

/// Quantum learner, `k = 4`, variable teacher memory, `P^1`, `P^5`, `P^10`.
pub fn preset_fig2() -> Vec<ExperimentConfig> {
    vec![quantum("fig2", 4, TeacherSchedule::variable(), 100_000, vec![1, 5, 10])]
}

/// Quantum learner, `k = 4`, fixed teacher memory `M ∈ {50, 100, 300}`, `P^10`.
pub fn preset_fig3() -> Vec<ExperimentConfig> {
    [50usize, 100, 300]
        .into_iter()
        .map(|m| {
            let mut c = quantum(&format!("fig3-m{m}"), 4, TeacherSchedule::Fixed(m), 500_000, vec![10]);
            c.log_interval = 1_000;
            c
        })
        .collect()
}

/// Quantum and classical learners for `k ∈ {2, 4, 8}`, `P^10`.
pub fn preset_fig4() -> Vec<ExperimentConfig> {
    let mut out = Vec::new();
    for k in [2usize, 4, 8] {
        out.push(quantum(
            &format!("fig4-quantum-k{k}"),
            k,
            TeacherSchedule::variable(),
            100_000,
            vec![10],
        ));
        out.push(classical(
            &format!("fig4-classical-k{k}"),
            k,
            default_gains(k),
            100_000,
            vec![10],
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::merit::MachineKind;

    #[test]
    fn fig2_orders() {
        let p = preset_fig2();
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].merit_orders, vec![1, 5, 10]);
        assert_eq!(p[0].k, 4);
        let q = p[0].quantum_config().unwrap();
        assert_eq!(q.schedule, TeacherSchedule::Variable { initial: 1 });
        assert_eq!(q.widths.sigma_gamma(), PI / 4.0);
        assert_eq!(q.widths.sigma_beta(), PI / 8.0);
    }

    #[test]
    fn fig3_differs_only_in_memory() {
        let p = preset_fig3();
        assert_eq!(p.len(), 3);
        let memories: Vec<TeacherSchedule> = p.iter().map(|c| c.quantum_config().unwrap().schedule).collect();
        assert_eq!(
            memories,
            vec![
                TeacherSchedule::Fixed(50),
                TeacherSchedule::Fixed(100),
                TeacherSchedule::Fixed(300)
            ]
        );
        for c in &p {
            let mut q = c.quantum_config().unwrap();
            q.schedule = TeacherSchedule::Fixed(50);
            assert_eq!(q, p[0].quantum_config().unwrap());
            assert_eq!(c.merit_orders, vec![10]);
        }
    }

    #[test]
    fn fig4_gains() {
        let p = preset_fig4();
        assert_eq!(p.len(), 6);
        let gains = |k: usize| {
            p.iter()
                .find(|c| c.k == k && c.machine() == MachineKind::Classical)
                .and_then(|c| c.classical_config())
                .map(|c| (c.gains.success(), c.gains.failure()))
                .unwrap()
        };
        assert_eq!(gains(2), (0.25, 0.25));
        assert_eq!(gains(4), (0.75, 0.75));
        assert_eq!(gains(8), (0.75, 0.25));
        assert!(p.iter().all(|c| c.merit_orders == vec![10]));
        assert!(p.iter().all(|c| c.validate().is_ok()));
    }
}
