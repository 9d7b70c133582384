//! Budget and threshold sweeps over synthetic authors, written as CSV.
//!
//! Every row records, for one merged profile and one problem setting, the
//! h-index of the merged profile and the largest h-index reachable by
//! splitting. Rows are sorted before writing, so the output depends only
//! on the inputs.

use std::collections::BTreeMap;
use std::io;
use std::ops::RangeInclusive;

use crate::error::Result;
use crate::instance::{Operation, ProblemInstance, Variant};
use crate::limits::Limits;
use crate::measures::{h_index, Measure};
use crate::profile_gen::{synthetic_author, CompatibilityThreshold, SyntheticAuthor};
use crate::solvers::solve;

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub thresholds: Vec<CompatibilityThreshold>,
    pub measures: Vec<Measure>,
    pub operations: Vec<Operation>,
    pub variants: Vec<Variant>,
    /// Budgets swept for non-plain variants.
    pub budgets: RangeInclusive<usize>,
    pub limits: Limits,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            thresholds: ["0.4", "0.6", "0.8"].iter().map(|t| t.parse().unwrap()).collect(),
            measures: vec![Measure::Sum, Measure::Union],
            operations: Operation::ALL.to_vec(),
            variants: vec![Variant::Conservative],
            budgets: 0..=10,
            limits: Limits::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExperimentRow {
    pub profile_id: String,
    pub threshold: CompatibilityThreshold,
    pub measure: Measure,
    pub operation: Operation,
    pub variant: Variant,
    /// `None` for the plain variant.
    pub k: Option<usize>,
    pub base_h: usize,
    pub max_h: usize,
    pub delta_h: usize,
}

/// `count` synthetic authors with ids `author00`, `author01`, ...; author
/// `i` is generated from `seed + i`.
pub fn synthetic_authors(count: usize, works: usize, seed: u64) -> Vec<(String, SyntheticAuthor)> {
    (0..count)
        .map(|i| {
            (
                format!("author{i:02}"),
                synthetic_author(works, seed.wrapping_add(i as u64)),
            )
        })
        .collect()
}

pub fn run_experiment(authors: &[(String, SyntheticAuthor)], config: &ExperimentConfig) -> Result<Vec<ExperimentRow>> {
    let mut rows = Vec::new();
    for (id, author) in authors {
        for &t in &config.thresholds {
            let profile = author.profile(t)?;
            for &measure in &config.measures {
                let base_h = h_index(&author.graph, &profile, measure);
                for &operation in &config.operations {
                    for &variant in &config.variants {
                        let budgets: Vec<Option<usize>> = match variant {
                            Variant::Plain => vec![None],
                            _ => config.budgets.clone().map(Some).collect(),
                        };
                        for k in budgets {
                            let instance = ProblemInstance::new(
                                author.graph.clone(),
                                profile.clone(),
                                operation,
                                variant,
                                measure,
                                base_h + 1,
                                k,
                            )?;
                            let max_h = solve(&instance, &config.limits)?.achieved_h;
                            rows.push(ExperimentRow {
                                profile_id: id.clone(),
                                threshold: t,
                                measure,
                                operation,
                                variant: instance.variant,
                                k,
                                base_h,
                                max_h,
                                delta_h: max_h - base_h,
                            });
                        }
                    }
                }
            }
        }
    }
    rows.sort();
    rows.dedup();
    Ok(rows)
}

pub const CSV_HEADER: [&str; 9] = [
    "profile_id",
    "threshold",
    "measure",
    "operation",
    "variant",
    "k",
    "base_h",
    "max_h",
    "delta_h",
];

pub fn write_csv<W: io::Write>(rows: &[ExperimentRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.profile_id.clone(),
            r.threshold.to_string(),
            r.measure.to_string(),
            r.operation.to_string(),
            r.variant.to_string(),
            r.k.map(|k| k.to_string()).unwrap_or_default(),
            r.base_h.to_string(),
            r.max_h.to_string(),
            r.delta_h.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Reads rows written by [`write_csv`].
pub fn read_csv<R: io::Read>(input: R) -> Result<Vec<ExperimentRow>, String> {
    let mut reader = csv::Reader::from_reader(input);
    let mut rows = Vec::new();
    for record in reader.records() {
        let r = record.map_err(|e| e.to_string())?;
        if r.len() != CSV_HEADER.len() {
            return Err(format!("expected {} fields, got {}", CSV_HEADER.len(), r.len()));
        }
        let num = |i: usize| r[i].parse::<usize>().map_err(|e| format!("{}: {e}", CSV_HEADER[i]));
        rows.push(ExperimentRow {
            profile_id: r[0].to_string(),
            threshold: r[1].parse().map_err(|e| format!("{e}"))?,
            measure: r[2].parse().map_err(|e| format!("{e}"))?,
            operation: r[3].parse().map_err(|e| format!("{e}"))?,
            variant: r[4].parse().map_err(|e| format!("{e}"))?,
            k: if r[5].is_empty() { None } else { Some(num(5)?) },
            base_h: num(6)?,
            max_h: num(7)?,
            delta_h: num(8)?,
        });
    }
    Ok(rows)
}

/// Checks that `delta_h` never drops as `k` grows, and that for the sum
/// and union measures atomizing ≤ extracting ≤ dividing at equal budget
/// (not for the cautious variant, whose budgets count different things).
/// Returns one message per violation.
pub fn sweep_violations(rows: &[ExperimentRow]) -> Vec<String> {
    let mut out = Vec::new();
    type Series<'a> = (&'a str, CompatibilityThreshold, Measure, Operation, Variant);
    type Budget<'a> = (&'a str, CompatibilityThreshold, Measure, Variant, Option<usize>);
    let mut by_budget: BTreeMap<Series, Vec<(Option<usize>, usize)>> = BTreeMap::new();
    let mut by_operation: BTreeMap<Budget, Vec<(Operation, usize)>> = BTreeMap::new();
    for r in rows {
        by_budget
            .entry((&r.profile_id, r.threshold, r.measure, r.operation, r.variant))
            .or_default()
            .push((r.k, r.delta_h));
        by_operation
            .entry((&r.profile_id, r.threshold, r.measure, r.variant, r.k))
            .or_default()
            .push((r.operation, r.delta_h));
    }
    for (key, mut series) in by_budget {
        series.sort();
        for pair in series.windows(2) {
            if pair[1].1 < pair[0].1 {
                out.push(format!("{key:?}: delta_h drops from {:?} to {:?}", pair[0], pair[1]));
            }
        }
    }
    for ((id, t, measure, variant, k), mut ops) in by_operation {
        if measure == Measure::Fusion || variant == Variant::Cautious {
            continue;
        }
        ops.sort();
        for pair in ops.windows(2) {
            if pair[1].1 < pair[0].1 {
                out.push(format!(
                    "{id} t={t} {measure} {variant} k={k:?}: {} gives {} but {} gives {}",
                    pair[0].0, pair[0].1, pair[1].0, pair[1].1
                ));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_config() -> ExperimentConfig {
        ExperimentConfig {
            budgets: 0..=3,
            ..ExperimentConfig::default()
        }
    }

    #[test]
    fn sweep_is_monotone_and_deterministic() {
        let authors = synthetic_authors(2, 10, 11);
        let rows = run_experiment(&authors, &small_config()).unwrap();
        assert_eq!(rows.len(), 2 * 3 * 2 * 3 * 4);
        assert!(sweep_violations(&rows).is_empty());
        let mut a = Vec::new();
        let mut b = Vec::new();
        write_csv(&rows, &mut a).unwrap();
        write_csv(&run_experiment(&authors, &small_config()).unwrap(), &mut b).unwrap();
        assert_eq!(a, b);
        assert_eq!(read_csv(&a[..]).unwrap(), rows);
        let text = String::from_utf8(a).unwrap();
        assert!(text.starts_with("profile_id,threshold,measure,operation,variant,k,base_h,max_h,delta_h\n"));
    }

    #[test]
    fn violations_are_reported() {
        let authors = synthetic_authors(1, 10, 5);
        let mut rows = run_experiment(&authors, &small_config()).unwrap();
        let last = rows
            .iter_mut()
            .rev()
            .find(|r| r.operation == Operation::Dividing)
            .unwrap();
        last.delta_h = 0;
        last.max_h = last.base_h;
        let first = rows.iter_mut().find(|r| r.k == Some(0)).unwrap();
        first.delta_h = 100;
        assert!(!sweep_violations(&rows).is_empty());
    }
}
