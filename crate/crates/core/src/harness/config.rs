//! Flat `key=value` experiment configuration.
//!
//! One key per line, `#` starts a comment, blank lines are ignored. Angles
//! accept `pi` expressions such as `pi/8` or `3*pi/4`.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::classical::{ClassicalConfig, UpdateGains};
use crate::error::{check_root, Error, Result};
use crate::merit::{self, MachineKind};
use crate::quantum::{QuantumConfig, TeacherSchedule, WalkWidths};

const KNOWN_KEYS: &[&str] = &[
    "label",
    "machine",
    "k",
    "trial_budget",
    "log_interval",
    "merit_orders",
    "sigma_gamma",
    "sigma_beta",
    "teacher",
    "teacher_memory",
    "k_s",
    "k_f",
    "seeds",
    "workers",
    "output",
];

/// Learner-specific parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum LearnerParams {
    Quantum {
        widths: WalkWidths,
        schedule: TeacherSchedule,
    },
    Classical {
        gains: UpdateGains,
    },
}

/// Everything needed to run one learner over a list of seeds.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub label: String,
    pub k: usize,
    pub trial_budget: u64,
    pub log_interval: u64,
    pub merit_orders: Vec<usize>,
    pub learner: LearnerParams,
    pub seeds: Vec<u64>,
    /// Worker threads for per-seed runs; 0 uses the global pool.
    pub workers: usize,
    pub output: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn machine(&self) -> MachineKind {
        match self.learner {
            LearnerParams::Quantum { .. } => MachineKind::Quantum,
            LearnerParams::Classical { .. } => MachineKind::Classical,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_root(self.k, 2)?;
        if self.log_interval == 0 {
            return Err(Error::field("log_interval", "must be >= 1"));
        }
        if self.merit_orders.is_empty() || self.merit_orders.contains(&0) {
            return Err(Error::field("merit_orders", "need at least one order, all >= 1"));
        }
        if self.seeds.is_empty() {
            return Err(Error::field("seeds", "need at least one seed"));
        }
        if self.label.is_empty() || self.label.contains(['/', '\\']) {
            return Err(Error::field("label", "must be a non-empty file-name-safe string"));
        }
        if let LearnerParams::Quantum { schedule, .. } = &self.learner {
            schedule.validate()?;
        }
        Ok(())
    }

    pub fn quantum_config(&self) -> Option<QuantumConfig> {
        match self.learner {
            LearnerParams::Quantum { widths, schedule } => Some(QuantumConfig {
                k: self.k,
                budget: self.trial_budget,
                log_interval: self.log_interval,
                orders: self.merit_orders.clone(),
                widths,
                schedule,
            }),
            LearnerParams::Classical { .. } => None,
        }
    }

    pub fn classical_config(&self) -> Option<ClassicalConfig> {
        match self.learner {
            LearnerParams::Classical { gains } => Some(ClassicalConfig {
                k: self.k,
                budget: self.trial_budget,
                log_interval: self.log_interval,
                orders: self.merit_orders.clone(),
                gains,
            }),
            LearnerParams::Quantum { .. } => None,
        }
    }

    /// The configuration as key=value text; [`ExperimentConfig::parse`] reads it back.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut put = |key: &str, value: String| {
            let _ = writeln!(out, "{key}={value}");
        };
        put("label", self.label.clone());
        put("machine", self.machine().to_string());
        put("k", self.k.to_string());
        put("trial_budget", self.trial_budget.to_string());
        put("log_interval", self.log_interval.to_string());
        put("merit_orders", join(&self.merit_orders));
        match &self.learner {
            LearnerParams::Quantum { widths, schedule } => {
                put("sigma_gamma", format!("{:?}", widths.sigma_gamma()));
                put("sigma_beta", format!("{:?}", widths.sigma_beta()));
                let (mode, m) = match *schedule {
                    TeacherSchedule::Fixed(m) => ("fixed", m),
                    TeacherSchedule::Variable { initial } => ("variable", initial),
                };
                put("teacher", mode.into());
                put("teacher_memory", m.to_string());
            }
            LearnerParams::Classical { gains } => {
                put("k_s", format!("{:?}", gains.success()));
                put("k_f", format!("{:?}", gains.failure()));
            }
        }
        put("seeds", join(&self.seeds));
        put("workers", self.workers.to_string());
        if let Some(p) = &self.output {
            put("output", p.display().to_string());
        }
        out
    }

    /// Digest of everything that influences results (seeds, workers and
    /// output location excluded).
    pub fn fingerprint(&self) -> String {
        match (self.quantum_config(), self.classical_config()) {
            (Some(q), _) => merit::fingerprint(&q.canonical()),
            (_, Some(c)) => merit::fingerprint(&c.canonical()),
            _ => unreachable!(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        RawConfig::parse(text)?.build()
    }

    pub fn load(path: &Path) -> Result<Self> {
        RawConfig::load(path)?.build()
    }

    pub fn raw(&self) -> RawConfig {
        RawConfig::parse(&self.to_text()).expect("emitted config always parses")
    }

    /// Re-parses with extra `key=value` assignments applied on top.
    pub fn with_overrides<S: AsRef<str>>(&self, overrides: &[S]) -> Result<Self> {
        let mut raw = self.raw();
        for o in overrides {
            raw.assign(o.as_ref())?;
        }
        raw.build()
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

/// Unvalidated key/value pairs, later keys winning.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RawConfig {
    values: BTreeMap<String, String>,
}

impl RawConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut raw = RawConfig::default();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            raw.assign(line).map_err(|e| match e {
                Error::InvalidField { field, reason } => Error::InvalidField {
                    field,
                    reason: format!("line {}: {reason}", i + 1),
                },
                other => other,
            })?;
        }
        Ok(raw)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    /// Applies one `key=value` assignment.
    pub fn assign(&mut self, assignment: &str) -> Result<()> {
        let (key, value) = assignment
            .split_once('=')
            .ok_or_else(|| Error::field(assignment.trim(), "expected key=value"))?;
        self.set(key.trim(), value.trim())
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        if !KNOWN_KEYS.contains(&key) {
            return Err(Error::field(key, "unknown key"));
        }
        self.values.insert(key.to_string(), value.to_string());
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// Layers `other` on top of `self`.
    pub fn merge(&mut self, other: &RawConfig) {
        for (k, v) in &other.values {
            self.values.insert(k.clone(), v.clone());
        }
    }

    fn required(&self, key: &str) -> Result<&str> {
        self.get(key).ok_or_else(|| Error::MissingField(key.to_string()))
    }

    fn number<T: std::str::FromStr>(&self, key: &str, default: Option<T>) -> Result<T>
    where
        T::Err: std::fmt::Display,
    {
        match (self.get(key), default) {
            (Some(v), _) => v.parse().map_err(|e| Error::field(key, format!("{v:?}: {e}"))),
            (None, Some(d)) => Ok(d),
            (None, None) => Err(Error::MissingField(key.to_string())),
        }
    }

    fn angle(&self, key: &str) -> Result<f64> {
        parse_angle(self.required(key)?).map_err(|reason| Error::field(key, reason))
    }

    pub fn build(&self) -> Result<ExperimentConfig> {
        let machine: MachineKind = self.required("machine")?.parse()?;
        let k: usize = self.number("k", None)?;
        let learner = match machine {
            MachineKind::Quantum => {
                let widths = WalkWidths::new(self.angle("sigma_gamma")?, self.angle("sigma_beta")?)?;
                let memory: usize = self.number("teacher_memory", Some(1))?;
                let schedule = match self.get("teacher").unwrap_or("variable") {
                    "variable" => TeacherSchedule::Variable { initial: memory },
                    "fixed" => TeacherSchedule::Fixed(memory),
                    other => {
                        return Err(Error::field(
                            "teacher",
                            format!("expected fixed or variable, got {other:?}"),
                        ))
                    }
                };
                LearnerParams::Quantum { widths, schedule }
            }
            MachineKind::Classical => {
                let gains = UpdateGains::new(self.number("k_s", None)?, self.number("k_f", None)?)?;
                LearnerParams::Classical { gains }
            }
        };
        let merit_orders = match self.get("merit_orders") {
            Some(v) => parse_list::<usize>(v).map_err(|r| Error::field("merit_orders", r))?,
            None => vec![1, 5, 10],
        };
        let seeds = match self.get("seeds") {
            Some(v) => parse_seeds(v).map_err(|r| Error::field("seeds", r))?,
            None => (1..=20).collect(),
        };
        let config = ExperimentConfig {
            label: self
                .get("label")
                .map(str::to_string)
                .unwrap_or_else(|| format!("{machine}-k{k}")),
            k,
            trial_budget: self.number("trial_budget", None)?,
            log_interval: self.number("log_interval", Some(100))?,
            merit_orders,
            learner,
            seeds,
            workers: self.number("workers", Some(0))?,
            output: self.get("output").map(PathBuf::from),
        };
        config.validate()?;
        Ok(config)
    }
}

fn parse_list<T: std::str::FromStr>(v: &str) -> std::result::Result<Vec<T>, String>
where
    T::Err: std::fmt::Display,
{
    v.split(',')
        .map(|x| x.trim().parse::<T>().map_err(|e| format!("{x:?}: {e}")))
        .collect()
}

/// Comma-separated seeds; `a-b` expands to the inclusive range.
pub fn parse_seeds(v: &str) -> std::result::Result<Vec<u64>, String> {
    let mut out = Vec::new();
    for part in v.split(',').map(str::trim) {
        match part.split_once('-') {
            Some((a, b)) => {
                let a: u64 = a.trim().parse().map_err(|e| format!("{part:?}: {e}"))?;
                let b: u64 = b.trim().parse().map_err(|e| format!("{part:?}: {e}"))?;
                if a > b {
                    return Err(format!("{part:?}: empty range"));
                }
                out.extend(a..=b);
            }
            None => out.push(part.parse().map_err(|e| format!("{part:?}: {e}"))?),
        }
    }
    Ok(out)
}

/// Parses a real number or an expression `[a*]pi[/b]`.
pub fn parse_angle(v: &str) -> std::result::Result<f64, String> {
    let v = v.trim();
    if let Ok(x) = v.parse::<f64>() {
        return Ok(x);
    }
    let (num, den) = match v.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim().parse::<f64>().map_err(|e| format!("{v:?}: {e}"))?),
        None => (v, 1.0),
    };
    let scale = match num.strip_suffix("pi") {
        Some("") => 1.0,
        Some(s) => s
            .trim_end_matches('*')
            .trim()
            .parse::<f64>()
            .map_err(|e| format!("{v:?}: {e}"))?,
        None => num.parse::<f64>().map_err(|e| format!("{v:?}: {e}"))? / PI,
    };
    Ok(scale * PI / den)
}

#[cfg(test)]
mod tests {
    use super::*;

    const QUANTUM: &str = "
# fig 2 style run
machine = quantum
k = 4
trial_budget = 1000
sigma_gamma = pi/4
sigma_beta = pi/8   # shared with delta
seeds = 1-3,7
";

    #[test]
    fn parses_quantum_config() {
        let c = ExperimentConfig::parse(QUANTUM).unwrap();
        assert_eq!(c.machine(), MachineKind::Quantum);
        assert_eq!(c.seeds, vec![1, 2, 3, 7]);
        assert_eq!(c.merit_orders, vec![1, 5, 10]);
        assert_eq!(c.log_interval, 100);
        let q = c.quantum_config().unwrap();
        assert_eq!(q.widths.sigma_gamma(), PI / 4.0);
        assert_eq!(q.schedule, TeacherSchedule::Variable { initial: 1 });
        assert_eq!(c.label, "quantum-k4");
    }

    #[test]
    fn text_round_trips() {
        let c = ExperimentConfig::parse(QUANTUM).unwrap();
        assert_eq!(ExperimentConfig::parse(&c.to_text()).unwrap(), c);
        let d = c.with_overrides(&["machine=classical", "k_s=0.25", "k_f=0.5"]).unwrap();
        assert_eq!(ExperimentConfig::parse(&d.to_text()).unwrap(), d);
    }

    #[test]
    fn errors_name_the_field() {
        let err = ExperimentConfig::parse("machine=quantum\nk=4\ntrial_budget=10\nsigma_gamma=1").unwrap_err();
        assert!(matches!(err, Error::MissingField(ref f) if f == "sigma_beta"), "{err}");
        let err = ExperimentConfig::parse("machine=classical\nk=6\ntrial_budget=10\nk_s=0.1\nk_f=0.1").unwrap_err();
        assert!(matches!(err, Error::InvalidRoot { k: 6, .. }));
        let err = ExperimentConfig::parse("colour=blue").unwrap_err();
        assert!(err.to_string().contains("colour"));
        let err = ExperimentConfig::parse(&QUANTUM.replace("k = 4", "k = four")).unwrap_err();
        assert!(err.to_string().contains("`k`"));
    }

    #[test]
    fn angles() {
        assert_eq!(parse_angle("0.5").unwrap(), 0.5);
        assert_eq!(parse_angle("pi").unwrap(), PI);
        assert_eq!(parse_angle("pi/8").unwrap(), PI / 8.0);
        assert!((parse_angle("3*pi/4").unwrap() - 0.75 * PI).abs() < 1e-15);
        assert!(parse_angle("tau").is_err());
    }

    #[test]
    fn seeds() {
        assert_eq!(parse_seeds("5").unwrap(), vec![5]);
        assert_eq!(parse_seeds("1-3, 9").unwrap(), vec![1, 2, 3, 9]);
        assert!(parse_seeds("3-1").is_err());
    }
}
