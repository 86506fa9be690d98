//! Gaussian random-walk learner for a single-qubit root of NOT.
//!
//! Each trial perturbs the accepted Euler angles, asks the teacher to run
//! `U^k` on `M` random basis inputs and keeps the proposal when its success
//! count is at least the stored one. Only sampled counts drive the walk; the
//! exact merits recorded in the series are observations.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{check_root, Error, Result};
use crate::merit::{self, quantum_merits, MachineKind, MeritSeries};
use crate::qcore::{EulerAngles, Unitary2};
use crate::{stream, Stream};

/// Standard deviations of the angle proposals; `delta` shares `sigma_beta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkWidths {
    sigma_gamma: f64,
    sigma_beta: f64,
}

impl WalkWidths {
    pub fn new(sigma_gamma: f64, sigma_beta: f64) -> Result<Self> {
        for (name, v) in [("sigma_gamma", sigma_gamma), ("sigma_beta", sigma_beta)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::field(name, format!("{v} is not a positive finite width")));
            }
        }
        Ok(Self {
            sigma_gamma,
            sigma_beta,
        })
    }

    pub fn sigma_gamma(&self) -> f64 {
        self.sigma_gamma
    }

    pub fn sigma_beta(&self) -> f64 {
        self.sigma_beta
    }
}

/// How many executions the teacher evaluates per trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TeacherSchedule {
    Fixed(usize),
    /// Starts at `initial` and grows by one every time a trial scores `M / M`.
    Variable {
        initial: usize,
    },
}

impl TeacherSchedule {
    pub fn variable() -> Self {
        TeacherSchedule::Variable { initial: 1 }
    }

    pub fn initial_memory(&self) -> usize {
        match *self {
            TeacherSchedule::Fixed(m) => m,
            TeacherSchedule::Variable { initial } => initial,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.initial_memory() == 0 {
            return Err(Error::field("teacher_memory", "must be >= 1"));
        }
        Ok(())
    }
}

/// Perturbs every angle with an independent normal draw around `center`.
pub fn propose_angles<R: Rng + ?Sized>(center: &EulerAngles, widths: &WalkWidths, rng: &mut R) -> EulerAngles {
    let db: f64 = rng.sample(StandardNormal);
    let dd: f64 = rng.sample(StandardNormal);
    let dg: f64 = rng.sample(StandardNormal);
    EulerAngles::new(
        center.beta() + widths.sigma_beta * db,
        center.delta() + widths.sigma_beta * dd,
        center.gamma() + widths.sigma_gamma * dg,
    )
}

/// Runs `U^k` on `memory` uniformly random basis inputs, measures each output
/// and returns how many came out negated.
pub fn run_trial<R: Rng + ?Sized>(u: &Unitary2, k: usize, memory: usize, rng: &mut R) -> usize {
    run_block_trial(&u.pow(k as u64), memory, rng)
}

fn run_block_trial<R: Rng + ?Sized>(block: &Unitary2, memory: usize, rng: &mut R) -> usize {
    // P(output = 1 | input b)
    let one_given = [block.transition_prob(0, 1), block.transition_prob(1, 1)];
    let mut successes = 0;
    for _ in 0..memory {
        let input = rng.random_bool(0.5) as usize;
        let output = (rng.random::<f64>() < one_given[input]) as usize;
        if output != input {
            successes += 1;
        }
    }
    successes
}

/// What happened in one trial. `memory` is the teacher memory the trial ran with.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialRecord {
    pub trial_index: u64,
    pub accepted: bool,
    pub new_s: usize,
    pub memory: usize,
    pub proposal: EulerAngles,
}

/// The walker: accepted angles, stored success count and teacher memory.
#[derive(Debug, Clone)]
pub struct QuantumLearner {
    k: usize,
    widths: WalkWidths,
    schedule: TeacherSchedule,
    accepted: EulerAngles,
    old_s: usize,
    memory: usize,
    trial_index: u64,
    rng: Stream,
}

impl QuantumLearner {
    /// Starts from Haar-random angles drawn from `rng`.
    pub fn new(k: usize, widths: WalkWidths, schedule: TeacherSchedule, mut rng: Stream) -> Result<Self> {
        let start = EulerAngles::haar_random(&mut rng);
        Self::from_angles(k, widths, schedule, start, rng)
    }

    pub fn from_angles(
        k: usize,
        widths: WalkWidths,
        schedule: TeacherSchedule,
        start: EulerAngles,
        rng: Stream,
    ) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidRoot { k, min: 1 });
        }
        schedule.validate()?;
        Ok(Self {
            k,
            widths,
            schedule,
            accepted: start,
            old_s: 0,
            memory: schedule.initial_memory(),
            trial_index: 0,
            rng,
        })
    }

    pub fn accepted(&self) -> &EulerAngles {
        &self.accepted
    }

    pub fn unitary(&self) -> Unitary2 {
        self.accepted.to_unitary()
    }

    pub fn old_s(&self) -> usize {
        self.old_s
    }

    pub fn memory(&self) -> usize {
        self.memory
    }

    pub fn trial_index(&self) -> u64 {
        self.trial_index
    }

    /// One propose/evaluate/accept cycle. Ties accept the proposal.
    pub fn step(&mut self) -> TrialRecord {
        let proposal = propose_angles(&self.accepted, &self.widths, &mut self.rng);
        let memory = self.memory;
        let new_s = run_trial(&proposal.to_unitary(), self.k, memory, &mut self.rng);
        let accepted = new_s >= self.old_s;
        if accepted {
            self.accepted = proposal;
            self.old_s = new_s;
        }
        if matches!(self.schedule, TeacherSchedule::Variable { .. }) && new_s == memory {
            // old_s keeps the count that triggered the increment
            self.memory += 1;
            self.old_s = new_s;
        }
        self.trial_index += 1;
        TrialRecord {
            trial_index: self.trial_index,
            accepted,
            new_s,
            memory,
            proposal,
        }
    }
}

/// Parameters of one quantum learning run.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumConfig {
    pub k: usize,
    pub budget: u64,
    pub log_interval: u64,
    pub orders: Vec<usize>,
    pub widths: WalkWidths,
    pub schedule: TeacherSchedule,
}

impl QuantumConfig {
    pub fn validate(&self) -> Result<()> {
        check_root(self.k, 2)?;
        self.schedule.validate()?;
        if self.log_interval == 0 {
            return Err(Error::field("log_interval", "must be >= 1"));
        }
        if self.orders.is_empty() || self.orders.contains(&0) {
            return Err(Error::field("merit_orders", "need at least one order, all >= 1"));
        }
        Ok(())
    }

    pub fn canonical(&self) -> String {
        let teacher = match self.schedule {
            TeacherSchedule::Fixed(m) => format!("teacher=fixed\nteacher_memory={m}"),
            TeacherSchedule::Variable { initial } => format!("teacher=variable\nteacher_memory={initial}"),
        };
        format!(
            "machine=quantum\nk={}\ntrial_budget={}\nlog_interval={}\nmerit_orders={:?}\nsigma_gamma={:?}\nsigma_beta={:?}\n{teacher}\n",
            self.k, self.budget, self.log_interval, self.orders, self.widths.sigma_gamma, self.widths.sigma_beta
        )
    }
}

/// Runs the walk from Haar-random angles for `config.budget` trials.
pub fn learn_quantum(config: &QuantumConfig, seed: u64) -> Result<MeritSeries> {
    config.validate()?;
    let learner = QuantumLearner::new(config.k, config.widths, config.schedule, stream(seed))?;
    run_learner(config, learner, seed)
}

/// Like [`learn_quantum`] but from chosen starting angles.
pub fn learn_quantum_from(config: &QuantumConfig, start: EulerAngles, seed: u64) -> Result<MeritSeries> {
    config.validate()?;
    let learner = QuantumLearner::from_angles(config.k, config.widths, config.schedule, start, stream(seed))?;
    run_learner(config, learner, seed)
}

fn run_learner(config: &QuantumConfig, mut learner: QuantumLearner, seed: u64) -> Result<MeritSeries> {
    let observe = |l: &QuantumLearner, t: u64| {
        merit::point(
            t,
            &config.orders,
            quantum_merits(&l.unitary(), config.k, &config.orders),
            l.memory(),
        )
    };
    let mut points = vec![observe(&learner, 0)];
    for t in 1..=config.budget {
        learner.step();
        if merit::is_checkpoint(t, config.budget, config.log_interval) {
            points.push(observe(&learner, t));
        }
    }
    Ok(MeritSeries {
        fingerprint: merit::fingerprint(&config.canonical()),
        seed,
        k: config.k,
        machine: MachineKind::Quantum,
        orders: config.orders.clone(),
        points,
    })
}
