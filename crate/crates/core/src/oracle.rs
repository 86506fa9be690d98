//! Exhaustive ground truth over small deterministic machines.
//!
//! A deterministic machine on `N` states is a function table plus a readout
//! bit per state. It realizes the `k`-th root of NOT when `n·k` applications
//! from either start state negate the start's readout for odd `n` and restore
//! it for even `n`, for every `n`. Iterating the block map `f^k` from a start
//! traces a rho-shaped orbit with tail and cycle each at most `N` long, so
//! checking `n = 1..=2N` decides the property for all `n`.

use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::error::{check_root, Error, Result};

/// Default cap on predicate evaluations for one enumeration job.
pub const DEFAULT_WORK_BUDGET: u128 = 100_000_000;

/// A function table on `N` states with a readout bit per state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeterministicMachine {
    table: Vec<usize>,
    readout: Vec<u8>,
    start0: usize,
    start1: usize,
}

impl DeterministicMachine {
    pub fn new(table: Vec<usize>, readout: Vec<u8>, start0: usize, start1: usize) -> Result<Self> {
        let n = table.len();
        if n < 2 {
            return Err(Error::field("table", "need at least two states"));
        }
        if readout.len() != n || table.iter().any(|&t| t >= n) || readout.iter().any(|&r| r > 1) {
            return Err(Error::field("table", "table and readout must both cover every state"));
        }
        if start0 >= n || start1 >= n || start0 == start1 {
            return Err(Error::field("start", "need two distinct start states"));
        }
        if readout[start0] != 0 || readout[start1] != 1 {
            return Err(Error::field("start", "start0 must read 0 and start1 must read 1"));
        }
        Ok(Self {
            table,
            readout,
            start0,
            start1,
        })
    }

    /// Bit-vector encoding on `2k` states: readout is the leading bit, starts
    /// are `(0, aux 0)` and `(1, aux 0)`.
    pub fn canonical(k: usize, table: Vec<usize>) -> Result<Self> {
        let readout = (0..2 * k).map(|i| (i >= k) as u8).collect();
        Self::new(table, readout, 0, k)
    }

    /// A single cycle visiting `order` in sequence, canonical encoding.
    pub fn cycle(k: usize, order: &[usize]) -> Result<Self> {
        let n = order.len();
        let mut table = vec![usize::MAX; n];
        for i in 0..n {
            let from = order[i];
            if from >= n || table[from] != usize::MAX {
                return Err(Error::field("order", "must be a permutation"));
            }
            table[from] = order[(i + 1) % n];
        }
        Self::canonical(k, table)
    }

    pub fn n_states(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn readout(&self) -> &[u8] {
        &self.readout
    }

    pub fn starts(&self) -> (usize, usize) {
        (self.start0, self.start1)
    }

    /// Applies the table `times` times.
    pub fn iterate(&self, mut s: usize, times: usize) -> usize {
        for _ in 0..times {
            s = self.table[s];
        }
        s
    }
}

/// Whether `machine` performs the `k`-th root of NOT for every `n`.
pub fn is_perfect_root(machine: &DeterministicMachine, k: usize) -> bool {
    perfect_up_to(machine, k, 2 * machine.n_states())
}

/// Checks the alternation for block counts `1..=blocks` only.
pub fn perfect_up_to(machine: &DeterministicMachine, k: usize, blocks: usize) -> bool {
    [machine.start0, machine.start1].into_iter().all(|start| {
        let bit = machine.readout[start];
        let mut s = start;
        (1..=blocks).all(|n| {
            s = machine.iterate(s, k);
            machine.readout[s] == bit ^ (n % 2 == 1) as u8
        })
    })
}

/// Result of scanning every machine with `n_states` states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaRow {
    pub k: usize,
    pub n_states: usize,
    /// (table, readout, start pair) combinations checked.
    pub machines: u128,
    pub perfect: u64,
}

impl fmt::Display for LemmaRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "k={} N={}: {} of {} machines perfect{}",
            self.k,
            self.n_states,
            self.perfect,
            self.machines,
            if self.perfect > 0 { "" } else { " (none)" }
        )
    }
}

/// Number of (table, readout, start pair) combinations on `n` states.
pub fn lemma_work(n: usize) -> u128 {
    let n128 = n as u128;
    // sum over readouts of zeros·ones = n(n-1)·2^(n-2)
    n128.pow(n as u32) * n128 * (n128 - 1) * (1u128 << (n - 2))
}

/// Enumerates every deterministic machine with `2..=n_max` states, every
/// readout labeling and every valid start pair, and counts the perfect ones.
pub fn lemma_scan(k: usize, n_max: usize) -> Result<Vec<LemmaRow>> {
    lemma_scan_with_budget(k, n_max, DEFAULT_WORK_BUDGET)
}

pub fn lemma_scan_with_budget(k: usize, n_max: usize, budget: u128) -> Result<Vec<LemmaRow>> {
    check_root(k, 1)?;
    if n_max < 2 {
        return Err(Error::field("n_max", "must be >= 2"));
    }
    let work: u128 = (2..=n_max).map(lemma_work).sum();
    if work > budget {
        return Err(Error::WorkBudget { work, budget });
    }
    Ok((2..=n_max).map(|n| scan_size(k, n)).collect())
}

fn scan_size(k: usize, n: usize) -> LemmaRow {
    let tables = (n as u64).pow(n as u32);
    let perfect = (0..tables)
        .into_par_iter()
        .map_init(
            || (vec![0usize; n], vec![0u32; n]),
            |(table, orbit), index| {
                decode_table(index, n, table);
                count_readouts(table, k, orbit)
            },
        )
        .sum();
    LemmaRow {
        k,
        n_states: n,
        machines: lemma_work(n),
        perfect,
    }
}

/// Counts (readout, start0, start1) choices that make `table` perfect.
///
/// Block orbits do not depend on the readout, so they are traced once per
/// table; `block` is scratch space for the map `f^k`.
fn count_readouts(table: &[usize], k: usize, block: &mut [u32]) -> u64 {
    let n = table.len();
    for (s, b) in block.iter_mut().enumerate() {
        let mut x = s;
        for _ in 0..k {
            x = table[x];
        }
        *b = x as u32;
    }
    // orbit[s][j] = state after j+1 blocks from s
    let blocks = 2 * n;
    let mut orbit = vec![0u32; n * blocks];
    for s in 0..n {
        let mut x = s as u32;
        for j in 0..blocks {
            x = block[x as usize];
            orbit[s * blocks + j] = x;
        }
    }
    let alternates = |readout: u32, s: usize| {
        let bit = (readout >> s) & 1;
        orbit[s * blocks..(s + 1) * blocks]
            .iter()
            .enumerate()
            .all(|(j, &x)| (readout >> x) & 1 == bit ^ ((j % 2 == 0) as u32))
    };
    let mut count = 0;
    for readout in 0u32..(1 << n) {
        let good: Vec<usize> = (0..n).filter(|&s| alternates(readout, s)).collect();
        let ones = good.iter().filter(|&&s| (readout >> s) & 1 == 1).count() as u64;
        let zeros = good.len() as u64 - ones;
        count += zeros * ones;
    }
    count
}

fn decode_table(mut index: u64, n: usize, table: &mut [usize]) {
    for slot in table.iter_mut() {
        *slot = (index % n as u64) as usize;
        index /= n as u64;
    }
}

/// Exact value of the closed-form target-function fraction, unreduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedForm {
    pub numerator: BigUint,
    pub denominator: BigUint,
}

impl ClosedForm {
    pub fn ratio(&self) -> BigRational {
        BigRational::new(self.numerator.clone().into(), self.denominator.clone().into())
    }

    pub fn to_f64(&self) -> f64 {
        self.ratio().to_f64().unwrap_or(0.0)
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// `(2k−4)!·(2k−2)·(k²−2) / (2k)^{2k}` for `k >= 2`.
pub fn eq4_fraction(k: usize) -> Result<ClosedForm> {
    if k < 2 {
        return Err(Error::InvalidRoot { k, min: 2 });
    }
    let numerator = factorial(2 * k - 4) * BigUint::from(2 * k - 2) * BigUint::from(k * k - 2);
    let denominator = BigUint::from(2 * k).pow(2 * k as u32);
    Ok(ClosedForm { numerator, denominator })
}

/// Exhaustive count of perfect functions on the canonical `2k`-state space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    pub k: usize,
    pub n_states: usize,
    pub perfect_count: u64,
    pub total_count: u128,
    pub formula: ClosedForm,
    pub agrees: bool,
}

impl fmt::Display for CountReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "k={} N={}: enumerated {}/{}, closed form {} -> {}",
            self.k,
            self.n_states,
            self.perfect_count,
            self.total_count,
            self.formula,
            if self.agrees { "agree" } else { "DISAGREE" }
        )
    }
}

pub fn count_target_functions(k: usize) -> Result<CountReport> {
    count_target_functions_with_budget(k, DEFAULT_WORK_BUDGET)
}

/// Enumerates all `(2k)^{2k}` tables with the canonical readout and starts.
/// The enumeration is ground truth; the closed form is only compared.
pub fn count_target_functions_with_budget(k: usize, budget: u128) -> Result<CountReport> {
    check_root(k, 2)?;
    let n = 2 * k;
    let total = (n as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if total > budget {
        return Err(Error::WorkBudget { work: total, budget });
    }
    let perfect = (0..total as u64)
        .into_par_iter()
        .map_init(
            || vec![0usize; n],
            |table, index| {
                decode_table(index, n, table);
                canonical_perfect(table, k) as u64
            },
        )
        .sum();
    let formula = eq4_fraction(k)?;
    let agrees = BigUint::from(perfect) == formula.numerator && BigUint::from(total) == formula.denominator;
    Ok(CountReport {
        k,
        n_states: n,
        perfect_count: perfect,
        total_count: total,
        formula,
        agrees,
    })
}

/// [`is_perfect_root`] specialised to the canonical encoding without allocating.
fn canonical_perfect(table: &[usize], k: usize) -> bool {
    let n = table.len();
    [0usize, k].into_iter().all(|start| {
        let bit = start >= k;
        let mut s = start;
        (1..=2 * n).all(|j| {
            for _ in 0..k {
                s = table[s];
            }
            (s >= k) == (bit ^ (j % 2 == 1))
        })
    })
}

/// Counts the single `2k`-cycles whose start states sit `k` steps apart and
/// how many of them are perfect; the construction predicts all `(2k−2)!`.
pub fn single_cycle_constructions(k: usize) -> Result<(u64, u64)> {
    check_root(k, 2)?;
    let n = 2 * k;
    if n > 10 {
        return Err(Error::field("k", "cycle enumeration is limited to 2k <= 10"));
    }
    let mut rest: Vec<usize> = (1..n).collect();
    let mut total = 0;
    let mut perfect = 0;
    permute(&mut rest, 0, &mut |perm| {
        if perm[k - 1] != k {
            return;
        }
        let mut order = Vec::with_capacity(n);
        order.push(0);
        order.extend_from_slice(perm);
        let machine = DeterministicMachine::cycle(k, &order).expect("valid permutation");
        total += 1;
        if is_perfect_root(&machine, k) {
            perfect += 1;
        }
    });
    Ok((total, perfect))
}

fn permute(items: &mut [usize], at: usize, visit: &mut impl FnMut(&[usize])) {
    if at == items.len() {
        visit(items);
        return;
    }
    for i in at..items.len() {
        items.swap(at, i);
        permute(items, at + 1, visit);
        items.swap(at, i);
    }
}

/// The `2k`-cycle `0 → 1 → … → 2k−1 → 0`, starts at distance `k`.
pub fn loop_construction(k: usize) -> Result<DeterministicMachine> {
    check_root(k, 1)?;
    let order: Vec<usize> = (0..2 * k).collect();
    DeterministicMachine::cycle(k, &order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn swap2() -> DeterministicMachine {
        DeterministicMachine::new(vec![1, 0], vec![0, 1], 0, 1).unwrap()
    }

    #[test]
    fn not_is_its_own_first_root() {
        assert!(is_perfect_root(&swap2(), 1));
        assert!(!is_perfect_root(&swap2(), 2));
    }

    #[test]
    fn four_cycle_is_square_root() {
        // s0 -> a -> s1 -> b -> s0
        let m = DeterministicMachine::new(vec![1, 2, 3, 0], vec![0, 0, 1, 1], 0, 2).unwrap();
        assert!(is_perfect_root(&m, 2));
        assert!(!is_perfect_root(&m, 1));
    }

    #[test]
    fn constructor_rejects_bad_machines() {
        assert!(DeterministicMachine::new(vec![0], vec![0], 0, 0).is_err());
        assert!(DeterministicMachine::new(vec![1, 0], vec![0, 0], 0, 1).is_err());
        assert!(DeterministicMachine::new(vec![1, 2], vec![0, 1], 0, 1).is_err());
        assert!(DeterministicMachine::new(vec![1, 0], vec![0, 1], 1, 1).is_err());
    }

    #[test]
    fn loop_construction_is_perfect() {
        for k in [1usize, 2, 4, 8, 16] {
            assert!(is_perfect_root(&loop_construction(k).unwrap(), k));
        }
    }

    #[test]
    fn small_lemma_scans() {
        let rows = lemma_scan(2, 4).unwrap();
        let counts: Vec<u64> = rows.iter().map(|r| r.perfect).collect();
        assert_eq!(counts, vec![0, 0, 144]);
        let rows = lemma_scan(1, 3).unwrap();
        assert_eq!(rows[0].perfect, 2);
        assert_eq!(rows[1].perfect, 48);
    }

    #[test]
    fn scan_refuses_large_jobs() {
        assert!(matches!(lemma_scan(2, 7), Err(Error::WorkBudget { .. })));
        assert!(lemma_scan(3, 4).is_err());
    }

    #[test]
    fn work_formula() {
        // 2^2 tables, readouts with one zero and one one: 2 of them, one pair each
        assert_eq!(lemma_work(2), 4 * 2);
        assert_eq!(lemma_work(3), 27 * 3 * 2 * 2);
    }

    #[test]
    fn closed_form_values() {
        let v = eq4_fraction(2).unwrap();
        assert_eq!(v.numerator, BigUint::from(4u32));
        assert_eq!(v.denominator, BigUint::from(256u32));
        let v = eq4_fraction(4).unwrap();
        assert_eq!(v.numerator, BigUint::from(2016u32));
        assert_eq!(v.denominator, BigUint::from(16_777_216u32));
        assert!(eq4_fraction(1).is_err());
    }

    #[test]
    fn closed_form_order_is_bounded() {
        for k in 2..=64usize {
            let scaled = eq4_fraction(k).unwrap().ratio()
                * BigRational::from_integer((k as u64).into())
                * BigRational::from_integer(BigUint::from(4u32).pow(k as u32).into());
            assert!(scaled < BigRational::from_integer(1.into()), "k={k}");
        }
    }

    #[test]
    fn count_k2() {
        let report = count_target_functions(2).unwrap();
        assert_eq!(report.total_count, 256);
        assert_eq!(report.perfect_count, 4);
        assert!(report.agrees);
        assert!(count_target_functions(8).is_err());
    }

    #[test]
    fn single_cycles() {
        assert_eq!(single_cycle_constructions(2).unwrap(), (2, 2));
        assert_eq!(single_cycle_constructions(4).unwrap(), (720, 720));
    }
}
