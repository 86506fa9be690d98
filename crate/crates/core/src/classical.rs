//! The probabilistic classical machine and its reward/penalty learner.
//!
//! A machine for the `k`-th root has `2k` internal states: one target bit plus
//! `m = log2 k` auxiliary bits. State indices put the target bit first (most
//! significant), so index `i` has target `i >= k` and the two start states
//! `(0, aux 0)` and `(1, aux 0)` are indices `0` and `k`.

use std::fmt::Write as _;

use rand::Rng;

use crate::error::{check_root, Error, Result};
use crate::merit::{self, classical_merits, MachineKind, MeritSeries};
use crate::{stream, Stream};

/// Mass below which a punished row counts as stranded and is reset to uniform.
const DEAD_ROW: f64 = 1e-12;

/// Trials between full renormalization passes in the learner.
const RENORMALIZE_EVERY: u64 = 10_000;

/// A target bit plus `m` auxiliary bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MachineState {
    pub target: u8,
    pub aux: usize,
}

impl MachineState {
    pub fn encode(&self, k: usize) -> usize {
        debug_assert!(self.target < 2 && self.aux < k);
        self.target as usize * k + self.aux
    }

    pub fn decode(index: usize, k: usize) -> Self {
        debug_assert!(index < 2 * k);
        Self {
            target: (index >= k) as u8,
            aux: index % k,
        }
    }

    /// Episode start: the given target bit, all auxiliary bits zero.
    pub fn start(target: u8) -> Self {
        Self { target, aux: 0 }
    }
}

/// Square row-major matrix of reals.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        Self { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.n + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.data[row * self.n..(row + 1) * self.n]
    }

    pub fn mul(&self, rhs: &DenseMatrix) -> DenseMatrix {
        let n = self.n;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for l in 0..n {
                let a = self.data[i * n + l];
                if a == 0.0 {
                    continue;
                }
                let src = &rhs.data[l * n..(l + 1) * n];
                let dst = &mut data[i * n..(i + 1) * n];
                for (d, s) in dst.iter_mut().zip(src) {
                    *d += a * s;
                }
            }
        }
        DenseMatrix { n, data }
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut out = vec![0.0; n];
        for (i, &w) in v.iter().enumerate() {
            if w == 0.0 {
                continue;
            }
            for (o, p) in out.iter_mut().zip(self.row(i)) {
                *o += w * p;
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> DenseMatrix {
        let mut acc = DenseMatrix::identity(self.n);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

/// Row-stochastic `2k × 2k` transition matrix; row `i` is `p(i, ·)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalMachine {
    k: usize,
    p: DenseMatrix,
}

impl ClassicalMachine {
    /// Every transition equally likely, `p(i, j) = 1/2k`.
    pub fn uniform(k: usize) -> Result<Self> {
        check_root(k, 2)?;
        let n = 2 * k;
        Ok(Self {
            k,
            p: DenseMatrix {
                n,
                data: vec![1.0 / n as f64; n * n],
            },
        })
    }

    /// Deterministic machine stepping `i -> i + 1 (mod 2k)`. The two start
    /// states sit at distance `k` on the loop, so it realizes the root exactly.
    pub fn perfect_loop(k: usize) -> Result<Self> {
        check_root(k, 2)?;
        let n = 2 * k;
        Self::deterministic(k, &(0..n).map(|i| (i + 1) % n).collect::<Vec<_>>())
    }

    /// Every state maps to itself.
    pub fn identity(k: usize) -> Result<Self> {
        check_root(k, 2)?;
        Self::deterministic(k, &(0..2 * k).collect::<Vec<_>>())
    }

    /// The machine whose row `i` is the unit vector onto `table[i]`.
    pub fn deterministic(k: usize, table: &[usize]) -> Result<Self> {
        check_root(k, 2)?;
        let n = 2 * k;
        if table.len() != n || table.iter().any(|&t| t >= n) {
            return Err(Error::field("table", format!("need {n} entries below {n}")));
        }
        let mut p = DenseMatrix {
            n,
            data: vec![0.0; n * n],
        };
        for (i, &t) in table.iter().enumerate() {
            p.data[i * n + t] = 1.0;
        }
        Ok(Self { k, p })
    }

    /// Builds a machine from explicit rows, checking shape and stochasticity.
    pub fn from_rows(k: usize, rows: &[Vec<f64>]) -> Result<Self> {
        check_root(k, 2)?;
        let n = 2 * k;
        if rows.len() != n {
            return Err(Error::field("rows", format!("expected {n} rows, got {}", rows.len())));
        }
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::field(
                    "rows",
                    format!("row {i} has {} entries, expected {n}", row.len()),
                ));
            }
            if row.iter().any(|x| !x.is_finite() || *x < 0.0 || *x > 1.0) {
                return Err(Error::field("rows", format!("row {i} has an entry outside [0, 1]")));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > 1e-9 {
                return Err(Error::field("rows", format!("row {i} sums to {sum}")));
            }
            data.extend_from_slice(row);
        }
        Ok(Self {
            k,
            p: DenseMatrix { n, data },
        })
    }

    /// A machine with independently random rows (uniform weights, normalized).
    pub fn random<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Result<Self> {
        check_root(k, 2)?;
        let n = 2 * k;
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|_| {
                let w: Vec<f64> = (0..n).map(|_| rng.random::<f64>() + 1e-3).collect();
                let s: f64 = w.iter().sum();
                w.into_iter().map(|x| x / s).collect()
            })
            .collect();
        Self::from_rows(k, &rows)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n_states(&self) -> usize {
        2 * self.k
    }

    /// `N² − N` for `N = 2k`: each row has `N − 1` free entries.
    pub fn independent_parameters(&self) -> usize {
        let n = self.n_states();
        n * n - n
    }

    pub fn prob(&self, from: usize, to: usize) -> f64 {
        self.p.get(from, to)
    }

    pub fn row(&self, from: usize) -> &[f64] {
        self.p.row(from)
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.p
    }

    /// `P^k`, the transition matrix of one block of `k` applications.
    pub fn block_matrix(&self) -> DenseMatrix {
        self.p.pow(self.k as u64)
    }

    /// Largest `|row sum − 1|`.
    pub fn max_row_deviation(&self) -> f64 {
        (0..self.n_states())
            .map(|i| (self.row(i).iter().sum::<f64>() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// Draws the successor of `from`.
    pub fn step<R: Rng + ?Sized>(&self, from: usize, rng: &mut R) -> usize {
        let row = self.row(from);
        let mut u = rng.random::<f64>();
        let mut last = from;
        for (j, &p) in row.iter().enumerate() {
            if p > 0.0 {
                if u < p {
                    return j;
                }
                u -= p;
                last = j;
            }
        }
        // rounding left a sliver of mass past the end
        last
    }

    /// Applies the machine `k` times from `start`; returns `j_0 = start, j_1, …, j_k`.
    pub fn sample_block<R: Rng + ?Sized>(&self, start: usize, rng: &mut R) -> Vec<usize> {
        let mut traj = Vec::with_capacity(self.k + 1);
        traj.push(start);
        let mut s = start;
        for _ in 0..self.k {
            s = self.step(s, rng);
            traj.push(s);
        }
        traj
    }

    /// Adds `gain` to every traversed transition, once per occurrence, then
    /// renormalizes the rows that were touched.
    pub fn reinforce(&mut self, trajectory: &[usize], gain: f64) {
        if gain == 0.0 {
            return;
        }
        let touched = self.adjust(trajectory, gain);
        for row in touched {
            self.normalize_row(row);
        }
    }

    /// Subtracts `gain` from every traversed transition, once per occurrence,
    /// clamps at zero and renormalizes the touched rows. A row is reset to
    /// uniform when it has no mass left, or when all its remaining mass sits
    /// on punished transitions, since renormalizing would then undo the
    /// penalty.
    pub fn punish(&mut self, trajectory: &[usize], gain: f64) {
        if gain == 0.0 {
            return;
        }
        let touched = self.adjust(trajectory, -gain);
        let n = self.n_states();
        let mut hit = vec![false; n];
        for row in touched {
            hit.fill(false);
            for w in trajectory.windows(2).filter(|w| w[0] == row) {
                hit[w[1]] = true;
            }
            let r = &mut self.p.data[row * n..(row + 1) * n];
            for x in r.iter_mut() {
                *x = x.max(0.0);
            }
            let spare: f64 = r.iter().zip(&hit).filter(|(_, &h)| !h).map(|(x, _)| x).sum();
            if spare < DEAD_ROW {
                r.fill(1.0 / n as f64);
            } else {
                self.normalize_row(row);
            }
        }
    }

    fn adjust(&mut self, trajectory: &[usize], delta: f64) -> Vec<usize> {
        let n = self.n_states();
        let mut touched = Vec::new();
        for w in trajectory.windows(2) {
            let (from, to) = (w[0], w[1]);
            self.p.data[from * n + to] += delta;
            if !touched.contains(&from) {
                touched.push(from);
            }
        }
        touched
    }

    fn normalize_row(&mut self, row: usize) {
        let n = self.n_states();
        let r = &mut self.p.data[row * n..(row + 1) * n];
        let sum: f64 = r.iter().sum();
        for x in r.iter_mut() {
            *x /= sum;
        }
    }

    /// Renormalizes every row, clearing accumulated rounding drift.
    pub fn renormalize_all(&mut self) {
        for row in 0..self.n_states() {
            self.normalize_row(row);
        }
    }

    /// Row-major CSV, `2k` values per line, shortest round-trip float format.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.n_states() {
            let line: Vec<String> = self.row(i).iter().map(|x| format!("{x:?}")).collect();
            let _ = writeln!(out, "{}", line.join(","));
        }
        out
    }

    /// Parses [`ClassicalMachine::to_csv`] output; `k` is inferred from the row count.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let row = line
                .split(',')
                .map(|c| c.trim().parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Csv {
                    line: i + 1,
                    reason: e.to_string(),
                })?;
            rows.push(row);
        }
        if rows.len() % 2 != 0 {
            return Err(Error::Csv {
                line: rows.len(),
                reason: "odd number of rows".into(),
            });
        }
        Self::from_rows(rows.len() / 2, &rows)
    }
}

/// Additive reward and penalty gains, both in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UpdateGains {
    success: f64,
    failure: f64,
}

impl UpdateGains {
    pub fn new(success: f64, failure: f64) -> Result<Self> {
        for (name, v) in [("k_s", success), ("k_f", failure)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::field(name, format!("{v} is outside [0, 1]")));
            }
        }
        Ok(Self { success, failure })
    }

    pub fn success(&self) -> f64 {
        self.success
    }

    pub fn failure(&self) -> f64 {
        self.failure
    }
}

/// Outcome of one classical trial.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockRecord {
    pub trial_index: u64,
    pub trajectory: Vec<usize>,
    pub success: bool,
}

/// Reward/penalty learner driving one [`ClassicalMachine`].
#[derive(Debug, Clone)]
pub struct ClassicalLearner {
    machine: ClassicalMachine,
    gains: UpdateGains,
    state: usize,
    trial_index: u64,
    rng: Stream,
}

impl ClassicalLearner {
    /// Starts from `machine` with a fresh episode.
    pub fn new(machine: ClassicalMachine, gains: UpdateGains, mut rng: Stream) -> Self {
        let state = fresh_episode(machine.k(), &mut rng);
        Self {
            machine,
            gains,
            state,
            trial_index: 0,
            rng,
        }
    }

    pub fn machine(&self) -> &ClassicalMachine {
        &self.machine
    }

    pub fn current_state(&self) -> usize {
        self.state
    }

    pub fn trial_index(&self) -> u64 {
        self.trial_index
    }

    /// Runs one block. Success (the target bit flipped across the block)
    /// reinforces and continues from the block's last state; failure punishes
    /// and starts a new episode.
    pub fn step(&mut self) -> BlockRecord {
        let k = self.machine.k();
        let traj = self.machine.sample_block(self.state, &mut self.rng);
        let first = traj[0] >= k;
        let last = traj[k] >= k;
        let success = first != last;
        if success {
            self.machine.reinforce(&traj, self.gains.success);
            self.state = traj[k];
        } else {
            self.machine.punish(&traj, self.gains.failure);
            self.state = fresh_episode(k, &mut self.rng);
        }
        self.trial_index += 1;
        if self.trial_index.is_multiple_of(RENORMALIZE_EVERY) {
            self.machine.renormalize_all();
        }
        BlockRecord {
            trial_index: self.trial_index,
            trajectory: traj,
            success,
        }
    }
}

fn fresh_episode<R: Rng + ?Sized>(k: usize, rng: &mut R) -> usize {
    MachineState::start(rng.random_bool(0.5) as u8).encode(k)
}

/// Parameters of one classical learning run.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalConfig {
    pub k: usize,
    pub budget: u64,
    pub log_interval: u64,
    pub orders: Vec<usize>,
    pub gains: UpdateGains,
}

impl ClassicalConfig {
    pub fn validate(&self) -> Result<()> {
        check_root(self.k, 2)?;
        if self.log_interval == 0 {
            return Err(Error::field("log_interval", "must be >= 1"));
        }
        if self.orders.is_empty() || self.orders.contains(&0) {
            return Err(Error::field("merit_orders", "need at least one order, all >= 1"));
        }
        Ok(())
    }

    pub fn canonical(&self) -> String {
        format!(
            "machine=classical\nk={}\ntrial_budget={}\nlog_interval={}\nmerit_orders={:?}\nk_s={:?}\nk_f={:?}\n",
            self.k, self.budget, self.log_interval, self.orders, self.gains.success, self.gains.failure
        )
    }
}

/// Trains a uniform machine for `config.budget` trials.
pub fn learn_classical(config: &ClassicalConfig, seed: u64) -> Result<MeritSeries> {
    config.validate()?;
    let machine = ClassicalMachine::uniform(config.k)?;
    learn_classical_from(config, machine, seed)
}

/// Like [`learn_classical`] but starting from a given machine.
pub fn learn_classical_from(config: &ClassicalConfig, machine: ClassicalMachine, seed: u64) -> Result<MeritSeries> {
    config.validate()?;
    if machine.k() != config.k {
        return Err(Error::field(
            "k",
            format!("machine has k={}, config has k={}", machine.k(), config.k),
        ));
    }
    let mut learner = ClassicalLearner::new(machine, config.gains, stream(seed));
    let observe =
        |m: &ClassicalMachine, t: u64| merit::point(t, &config.orders, classical_merits(m, &config.orders), 0);
    let mut points = vec![observe(learner.machine(), 0)];
    for t in 1..=config.budget {
        learner.step();
        if merit::is_checkpoint(t, config.budget, config.log_interval) {
            points.push(observe(learner.machine(), t));
        }
    }
    Ok(MeritSeries {
        fingerprint: merit::fingerprint(&config.canonical()),
        seed,
        k: config.k,
        machine: MachineKind::Classical,
        orders: config.orders.clone(),
        points,
    })
}
