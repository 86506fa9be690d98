//! CSV encodings of merit series and aggregate curves.
//!
//! Series rows follow `trial,seed,k,machine,M,P<n>...` with one row per
//! (seed, checkpoint). Reals are written with 17 significant digits in
//! scientific notation, which reads back to the identical `f64`.

use std::fmt::Write as _;

use super::{AggregateCurve, Stats};
use crate::error::{Error, Result};
use crate::merit::{MachineKind, MeritPoint, MeritSeries};

pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

fn merit_header(orders: &[usize]) -> String {
    orders.iter().map(|n| format!("P{n}")).collect::<Vec<_>>().join(",")
}

/// Header plus rows for every series, in the given order. All series must
/// share their merit orders.
pub fn series_to_csv(series: &[MeritSeries]) -> String {
    let orders = series
        .first()
        .map(|s| s.orders.clone())
        .unwrap_or_else(|| vec![1, 5, 10]);
    let mut out = format!("trial,seed,k,machine,M,{}\n", merit_header(&orders));
    for s in series {
        assert_eq!(
            s.orders, orders,
            "series with different merit orders cannot share a file"
        );
        for p in &s.points {
            let _ = write!(out, "{},{},{},{},{}", p.trial, s.seed, s.k, s.machine, p.teacher_memory);
            for n in &orders {
                let _ = write!(out, ",{}", format_real(p.values[n]));
            }
            out.push('\n');
        }
    }
    out
}

fn csv_err(line: usize, reason: impl Into<String>) -> Error {
    Error::Csv {
        line,
        reason: reason.into(),
    }
}

fn parse_orders(cols: &[&str], line: usize) -> Result<Vec<usize>> {
    cols.iter()
        .map(|c| {
            c.strip_prefix('P')
                .and_then(|n| n.parse().ok())
                .ok_or_else(|| csv_err(line, format!("bad merit column {c:?}")))
        })
        .collect()
}

fn field<T: std::str::FromStr>(value: &str, line: usize, what: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| csv_err(line, format!("bad {what} {value:?}")))
}

/// Parses [`series_to_csv`] output, grouping rows by consecutive seed.
/// Fingerprints are not stored in the CSV and come back empty.
pub fn series_from_csv(text: &str) -> Result<Vec<MeritSeries>> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| csv_err(1, "missing header"))?;
    let cols: Vec<&str> = header.split(',').collect();
    if cols.len() < 6 || cols[..5] != ["trial", "seed", "k", "machine", "M"] {
        return Err(csv_err(1, format!("unexpected header {header:?}")));
    }
    let orders = parse_orders(&cols[5..], 1)?;
    let mut out: Vec<MeritSeries> = Vec::new();
    for (i, line) in lines {
        let no = i + 1;
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != cols.len() {
            return Err(csv_err(no, format!("expected {} fields, got {}", cols.len(), f.len())));
        }
        let seed: u64 = field(f[1], no, "seed")?;
        let k: usize = field(f[2], no, "k")?;
        let machine: MachineKind = f[3]
            .parse()
            .map_err(|_| csv_err(no, format!("bad machine {:?}", f[3])))?;
        let mut values = std::collections::BTreeMap::new();
        for (n, v) in orders.iter().zip(&f[5..]) {
            values.insert(*n, field::<f64>(v, no, "merit")?);
        }
        let point = MeritPoint {
            trial: field(f[0], no, "trial")?,
            values,
            teacher_memory: field(f[4], no, "M")?,
        };
        match out.last_mut() {
            Some(s) if s.seed == seed && s.k == k && s.machine == machine => {
                if s.last().trial >= point.trial {
                    return Err(csv_err(no, "trial indices must increase within a seed"));
                }
                s.points.push(point);
            }
            _ => out.push(MeritSeries {
                fingerprint: String::new(),
                seed,
                k,
                machine,
                orders: orders.clone(),
                points: vec![point],
            }),
        }
    }
    Ok(out)
}

const STAT_NAMES: [&str; 4] = ["median", "mean", "min", "max"];

/// `trial,P<n>_median,P<n>_mean,P<n>_min,P<n>_max,...`
pub fn aggregate_to_csv(curve: &AggregateCurve) -> String {
    let mut out = String::from("trial");
    for n in &curve.orders {
        for s in STAT_NAMES {
            let _ = write!(out, ",P{n}_{s}");
        }
    }
    out.push('\n');
    for (t, row) in curve.checkpoints.iter().zip(&curve.stats) {
        let _ = write!(out, "{t}");
        for st in row {
            for v in [st.median, st.mean, st.min, st.max] {
                let _ = write!(out, ",{}", format_real(v));
            }
        }
        out.push('\n');
    }
    out
}

pub fn aggregate_from_csv(text: &str) -> Result<AggregateCurve> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| csv_err(1, "missing header"))?;
    let cols: Vec<&str> = header.split(',').collect();
    if cols.first() != Some(&"trial") || !(cols.len() - 1).is_multiple_of(4) || cols.len() < 5 {
        return Err(csv_err(1, format!("unexpected header {header:?}")));
    }
    let mut orders = Vec::new();
    for chunk in cols[1..].chunks(4) {
        let n = chunk[0]
            .strip_suffix("_median")
            .and_then(|c| c.strip_prefix('P'))
            .and_then(|n| n.parse::<usize>().ok())
            .ok_or_else(|| csv_err(1, format!("bad column {:?}", chunk[0])))?;
        for (c, s) in chunk.iter().zip(STAT_NAMES) {
            if *c != format!("P{n}_{s}") {
                return Err(csv_err(1, format!("bad column {c:?}")));
            }
        }
        orders.push(n);
    }
    let mut checkpoints = Vec::new();
    let mut stats = Vec::new();
    for (i, line) in lines {
        let no = i + 1;
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != cols.len() {
            return Err(csv_err(no, "wrong field count"));
        }
        checkpoints.push(field(f[0], no, "trial")?);
        let mut row = Vec::new();
        for chunk in f[1..].chunks(4) {
            row.push(Stats {
                median: field(chunk[0], no, "median")?,
                mean: field(chunk[1], no, "mean")?,
                min: field(chunk[2], no, "min")?,
                max: field(chunk[3], no, "max")?,
            });
        }
        stats.push(row);
    }
    if checkpoints.is_empty() {
        return Err(Error::EmptyCurve);
    }
    Ok(AggregateCurve {
        orders,
        checkpoints,
        stats,
    })
}
