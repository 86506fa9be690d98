//! Exact figures of merit `P^n`.
//!
//! `P^n` averages `2n` probabilities: for every block count `j = 1..=n` and both
//! start bits, the probability that `j·k` applications leave the target bit
//! negated (odd `j`) or restored (even `j`). Quantum merits come from powers of
//! the unitary, classical ones from powers of the transition matrix. Sampling
//! is never involved except in [`classical_merit_mc`], which exists to
//! cross-check the exact route.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use sha2::{Digest, Sha256};

use crate::classical::ClassicalMachine;
use crate::error::Error;
use crate::qcore::Unitary2;

/// `P^n` for a single-qubit machine trained on the `k`-th root.
pub fn quantum_merit(u: &Unitary2, k: usize, n: usize) -> f64 {
    quantum_merits(u, k, &[n])[0]
}

/// `P^n` for each requested order, sharing one sweep over `U^{jk}`.
pub fn quantum_merits(u: &Unitary2, k: usize, orders: &[usize]) -> Vec<f64> {
    let block = u.pow(k as u64);
    sweep(orders, Unitary2::identity(), |j, acc| {
        *acc = *acc * block;
        if j % 2 == 1 {
            acc.transition_prob(0, 1) + acc.transition_prob(1, 0)
        } else {
            acc.transition_prob(0, 0) + acc.transition_prob(1, 1)
        }
    })
}

/// `P^n` for a classical machine, normalized by `1/(2n)` like the quantum one.
///
/// Both start states carry all-zero auxiliary bits.
pub fn classical_merit(machine: &ClassicalMachine, n: usize) -> f64 {
    classical_merits(machine, &[n])[0]
}

pub fn classical_merits(machine: &ClassicalMachine, orders: &[usize]) -> Vec<f64> {
    let k = machine.k();
    let states = machine.n_states();
    let block = machine.block_matrix();
    let mut from0 = vec![0.0; states];
    let mut from1 = vec![0.0; states];
    from0[0] = 1.0;
    from1[k] = 1.0;
    sweep(orders, (), |j, _| {
        from0 = block.left_apply(&from0);
        from1 = block.left_apply(&from1);
        let ones0: f64 = from0[k..].iter().sum();
        let ones1: f64 = from1[k..].iter().sum();
        if j % 2 == 1 {
            ones0 + (1.0 - ones1)
        } else {
            (1.0 - ones0) + ones1
        }
    })
}

/// Runs `term(j)` for `j = 1..=max(orders)` and turns prefix sums into
/// `P^n = sum / 2n`, clamped into `[0, 1]`.
fn sweep<S>(orders: &[usize], mut state: S, mut term: impl FnMut(usize, &mut S) -> f64) -> Vec<f64> {
    let max = orders.iter().copied().max().unwrap_or(0);
    let mut prefix = Vec::with_capacity(max + 1);
    prefix.push(0.0);
    for j in 1..=max {
        let last = prefix[j - 1];
        prefix.push(last + term(j, &mut state));
    }
    orders
        .iter()
        .map(|&n| {
            assert!(n >= 1, "merit order must be >= 1");
            (prefix[n] / (2 * n) as f64).clamp(0.0, 1.0)
        })
        .collect()
}

/// Monte-Carlo estimate of [`classical_merit`].
///
/// Each sample picks a block count `j` uniformly from `1..=n` and a start bit
/// uniformly, walks `j·k` steps and scores one Bernoulli outcome, so the
/// estimate is binomial with mean exactly `P^n`.
pub fn classical_merit_mc<R: Rng + ?Sized>(machine: &ClassicalMachine, n: usize, samples: usize, rng: &mut R) -> f64 {
    assert!(n >= 1 && samples >= 1);
    let k = machine.k();
    let mut hits = 0usize;
    for _ in 0..samples {
        let j = rng.random_range(1..=n);
        let start_target = rng.random_bool(0.5) as usize;
        let mut state = start_target * k;
        for _ in 0..j * k {
            state = machine.step(state, rng);
        }
        let end_target = (state >= k) as usize;
        let want = if j % 2 == 1 { 1 - start_target } else { start_target };
        if end_target == want {
            hits += 1;
        }
    }
    hits as f64 / samples as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MachineKind {
    Quantum,
    Classical,
}

impl fmt::Display for MachineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MachineKind::Quantum => "quantum",
            MachineKind::Classical => "classical",
        })
    }
}

impl FromStr for MachineKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "quantum" => Ok(MachineKind::Quantum),
            "classical" => Ok(MachineKind::Classical),
            other => Err(Error::field(
                "machine",
                format!("expected quantum or classical, got {other:?}"),
            )),
        }
    }
}

/// Exact merits of the current machine at one checkpoint.
#[derive(Debug, Clone, PartialEq)]
pub struct MeritPoint {
    pub trial: u64,
    pub values: BTreeMap<usize, f64>,
    /// Teacher memory at the checkpoint; 0 for classical machines.
    pub teacher_memory: usize,
}

impl MeritPoint {
    pub fn value(&self, n: usize) -> Option<f64> {
        self.values.get(&n).copied()
    }
}

/// The checkpointed merits of one learning run.
#[derive(Debug, Clone, PartialEq)]
pub struct MeritSeries {
    pub fingerprint: String,
    pub seed: u64,
    pub k: usize,
    pub machine: MachineKind,
    pub orders: Vec<usize>,
    pub points: Vec<MeritPoint>,
}

impl MeritSeries {
    pub fn last(&self) -> &MeritPoint {
        self.points.last().expect("series always holds the initial point")
    }

    pub fn final_value(&self, n: usize) -> Option<f64> {
        self.last().value(n)
    }
}

pub(crate) fn point(trial: u64, orders: &[usize], values: Vec<f64>, teacher_memory: usize) -> MeritPoint {
    MeritPoint {
        trial,
        values: orders.iter().copied().zip(values).collect(),
        teacher_memory,
    }
}

/// Short hex digest of a canonical configuration text.
pub fn fingerprint(canonical: &str) -> String {
    let digest = Sha256::digest(canonical.as_bytes());
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

/// Trials at which a run of `budget` trials records merits: trial 0, every
/// multiple of `interval`, and the final trial.
pub fn is_checkpoint(trial: u64, budget: u64, interval: u64) -> bool {
    trial == 0 || trial == budget || trial.is_multiple_of(interval)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::EulerAngles;
    use crate::stream;
    use std::f64::consts::PI;

    #[test]
    fn exact_root_is_perfect() {
        for k in [2usize, 4, 8, 16] {
            let u = Unitary2::exact_root(k).unwrap();
            let orders: Vec<usize> = (1..=50).collect();
            for p in quantum_merits(&u, k, &orders) {
                assert!((p - 1.0).abs() < 1e-12, "k={k} p={p}");
            }
        }
    }

    #[test]
    fn identity_and_not() {
        assert_eq!(quantum_merit(&Unitary2::identity(), 4, 1), 0.0);
        let not = Unitary2::not();
        assert_eq!(quantum_merit(&not, 2, 1), 0.0);
        assert!((quantum_merit(&not, 2, 2) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn first_order_is_mean_of_flip_probabilities() {
        let mut rng = stream(11);
        for _ in 0..100 {
            let u = EulerAngles::haar_random(&mut rng).to_unitary();
            for k in [1usize, 2, 4, 8] {
                let uk = u.pow(k as u64);
                let want = (uk.transition_prob(0, 1) + uk.transition_prob(1, 0)) / 2.0;
                assert_eq!(quantum_merit(&u, k, 1), want);
            }
        }
    }

    #[test]
    fn merit_ignores_global_phase() {
        let mut rng = stream(12);
        for i in 0..100 {
            let u = EulerAngles::haar_random(&mut rng).to_unitary();
            let alpha = i as f64 * 0.0731 * PI;
            let a = quantum_merits(&u, 4, &[1, 5, 10]);
            let b = quantum_merits(&u.with_phase(alpha), 4, &[1, 5, 10]);
            for (x, y) in a.iter().zip(&b) {
                assert!((x - y).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn order_list_matches_single_calls() {
        let u = EulerAngles::new(0.3, 1.1, 0.9).to_unitary();
        let all = quantum_merits(&u, 4, &[10, 1, 5]);
        assert_eq!(all[0], quantum_merit(&u, 4, 10));
        assert_eq!(all[1], quantum_merit(&u, 4, 1));
        assert_eq!(all[2], quantum_merit(&u, 4, 5));
    }

    #[test]
    fn classical_reference_machines() {
        for k in [2usize, 4, 8] {
            let uniform = ClassicalMachine::uniform(k).unwrap();
            for n in [1usize, 2, 5, 10] {
                assert!((classical_merit(&uniform, n) - 0.5).abs() < 1e-12);
            }
            let lp = ClassicalMachine::perfect_loop(k).unwrap();
            for n in 1..=50 {
                assert!((classical_merit(&lp, n) - 1.0).abs() < 1e-12);
            }
            let id = ClassicalMachine::identity(k).unwrap();
            assert_eq!(classical_merit(&id, 1), 0.0);
        }
    }

    #[test]
    fn classical_mc_reference_machines() {
        let mut rng = stream(13);
        let lp = ClassicalMachine::perfect_loop(4).unwrap();
        assert_eq!(classical_merit_mc(&lp, 10, 2_000, &mut rng), 1.0);
        let uniform = ClassicalMachine::uniform(2).unwrap();
        let est = classical_merit_mc(&uniform, 10, 100_000, &mut rng);
        assert!((est - 0.5).abs() < 0.006, "{est}");
    }

    #[test]
    fn checkpoints() {
        let hits: Vec<u64> = (0..=250).filter(|&t| is_checkpoint(t, 250, 100)).collect();
        assert_eq!(hits, vec![0, 100, 200, 250]);
    }

    #[test]
    fn fingerprint_is_stable() {
        assert_eq!(fingerprint("a=1"), fingerprint("a=1"));
        assert_ne!(fingerprint("a=1"), fingerprint("a=2"));
        assert_eq!(fingerprint("x").len(), 16);
    }
}
