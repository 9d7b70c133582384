//! Exhaustive reference solver for every operation, variant and measure.
//!
//! Refinements are built part by part: each part of `P` independently picks
//! one of its allowed replacements, and a running budget prunes choices
//! whose cost no longer fits. Nothing else is pruned.

use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::graph::Article;
use crate::instance::{Operation, ProblemInstance, Variant};
use crate::limits::Limits;
use crate::measures::Evaluator;
use crate::partitions::{stirling_row, SetPartitions};
use crate::profile::{Partition, Profile, Refinement};
use crate::solvers::{Method, SolveResult};

/// Cautious atomizing is the same problem as conservative atomizing.
fn normalize(operation: Operation, variant: Variant) -> Variant {
    match (operation, variant) {
        (Operation::Atomizing, Variant::Cautious) => Variant::Conservative,
        (_, v) => v,
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Number of replacements of one part of size `s`, by cost.
fn cost_profile(s: usize, operation: Operation, variant: Variant) -> Vec<u128> {
    if s == 1 {
        return vec![1];
    }
    // (options, cautious cost) pairs; the first entry is "keep".
    let mut options: Vec<(u128, usize)> = vec![(1, 0)];
    match operation {
        Operation::Atomizing => options.push((1, s - 1)),
        Operation::Extracting => {
            for rest in 2..s {
                options.push((binomial(s, rest), s - rest));
            }
            options.push((1, s - 1));
        }
        Operation::Dividing => {
            let row = stirling_row(s);
            for (blocks, &count) in row.iter().enumerate().skip(2) {
                options.push((count, blocks - 1));
            }
        }
    }
    let mut by_cost = Vec::new();
    for (count, cautious_cost) in options {
        let cost = match variant {
            Variant::Plain => 0,
            Variant::Conservative => (cautious_cost > 0) as usize,
            Variant::Cautious => cautious_cost,
        };
        if by_cost.len() <= cost {
            by_cost.resize(cost + 1, 0);
        }
        by_cost[cost] = u128::saturating_add(by_cost[cost], count);
    }
    by_cost
}

fn check_part_sizes(profile: &Profile, operation: Operation, limits: &Limits) -> Result<()> {
    let s = profile.partition().max_part_size();
    let (what, limit) = match operation {
        Operation::Atomizing => return Ok(()),
        Operation::Extracting => ("extraction subsets of one part", limits.max_subset_parts),
        Operation::Dividing => ("set-partition enumeration", limits.max_partition_elements),
    };
    if s > limit {
        return Err(Error::BoundExceeded {
            what,
            size: s as u128,
            limit: limit as u128,
        });
    }
    Ok(())
}

/// Exact number of refinements [`for_each_refinement`] would visit.
pub fn refinement_count(
    profile: &Profile,
    operation: Operation,
    variant: Variant,
    k: Option<usize>,
    limits: &Limits,
) -> Result<u128> {
    check_part_sizes(profile, operation, limits)?;
    let variant = normalize(operation, variant);
    let budget = match variant {
        Variant::Plain => None,
        _ => Some(k.unwrap_or(0)),
    };
    let mut poly = vec![1u128];
    for part in profile.parts() {
        let costs = cost_profile(part.len(), operation, variant);
        let mut len = poly.len() + costs.len() - 1;
        if let Some(b) = budget {
            len = len.min(b + 1);
        }
        let mut next = vec![0u128; len];
        for (i, &a) in poly.iter().enumerate() {
            for (j, &c) in costs.iter().enumerate() {
                if i + j < len {
                    next[i + j] = next[i + j].saturating_add(a.saturating_mul(c));
                }
            }
        }
        poly = next;
    }
    Ok(poly.into_iter().fold(0u128, u128::saturating_add))
}

struct Walk<'a, F> {
    parts: &'a [Vec<Article>],
    operation: Operation,
    variant: Variant,
    current: Vec<Vec<Article>>,
    visit: F,
}

impl<F> Walk<'_, F>
where
    F: FnMut(&[Vec<Article>]) -> ControlFlow<()>,
{
    fn cost(&self, blocks: usize) -> usize {
        match self.variant {
            Variant::Plain => 0,
            Variant::Conservative => (blocks > 1) as usize,
            Variant::Cautious => blocks - 1,
        }
    }

    /// Pushes `blocks`, recurses, and pops them again.
    fn with_blocks(&mut self, blocks: Vec<Vec<Article>>, i: usize, budget: usize) -> ControlFlow<()> {
        let cost = self.cost(blocks.len());
        if cost > budget {
            return ControlFlow::Continue(());
        }
        let mark = self.current.len();
        self.current.extend(blocks);
        let flow = self.step(i + 1, budget - cost);
        self.current.truncate(mark);
        flow
    }

    fn step(&mut self, i: usize, budget: usize) -> ControlFlow<()> {
        let Some(part) = self.parts.get(i) else {
            return (self.visit)(&self.current);
        };
        let s = part.len();
        let singletons = || part.iter().map(|&v| vec![v]).collect::<Vec<_>>();
        self.with_blocks(vec![part.clone()], i, budget)?;
        if s == 1 {
            return ControlFlow::Continue(());
        }
        match self.operation {
            Operation::Atomizing => self.with_blocks(singletons(), i, budget),
            Operation::Extracting => {
                for mask in 1u32..(1u32 << s) - 1 {
                    let rest = s - mask.count_ones() as usize;
                    if rest < 2 {
                        continue;
                    }
                    let mut blocks = Vec::with_capacity(s - rest + 1);
                    let mut remainder = Vec::with_capacity(rest);
                    for (bit, &v) in part.iter().enumerate() {
                        if mask >> bit & 1 == 1 {
                            blocks.push(vec![v]);
                        } else {
                            remainder.push(v);
                        }
                    }
                    blocks.push(remainder);
                    self.with_blocks(blocks, i, budget)?;
                }
                self.with_blocks(singletons(), i, budget)
            }
            Operation::Dividing => {
                let cap = match self.variant {
                    Variant::Cautious => s.min(budget.saturating_add(1)),
                    _ => s,
                };
                let mut rgs = SetPartitions::with_max_blocks(s, cap);
                rgs.advance();
                while rgs.advance() {
                    self.with_blocks(rgs.blocks(part), i, budget)?;
                }
                ControlFlow::Continue(())
            }
        }
    }
}

/// Calls `visit` once for every refinement of `profile` allowed by the
/// operation, variant and budget `k` (ignored for the plain variant). The
/// parts handed to `visit` are in no particular order. Stops early if
/// `visit` breaks.
pub fn for_each_refinement<F>(
    profile: &Profile,
    operation: Operation,
    variant: Variant,
    k: Option<usize>,
    limits: &Limits,
    visit: F,
) -> Result<()>
where
    F: FnMut(&[Vec<Article>]) -> ControlFlow<()>,
{
    let count = refinement_count(profile, operation, variant, k, limits)?;
    if count > limits.max_refinements {
        return Err(Error::BoundExceeded {
            what: "refinements to enumerate",
            size: count,
            limit: limits.max_refinements,
        });
    }
    let variant = normalize(operation, variant);
    let budget = match variant {
        Variant::Plain => usize::MAX,
        _ => k.unwrap_or(0),
    };
    let (merged, singles): (Vec<Vec<Article>>, Vec<Vec<Article>>) =
        profile.parts().iter().cloned().partition(|p| p.len() > 1);
    let mut walk = Walk {
        parts: &merged,
        operation,
        variant,
        current: singles,
        visit,
    };
    let _ = walk.step(0, budget);
    Ok(())
}

/// All allowed refinements, in canonical form.
pub fn enumerate_refinements(
    profile: &Profile,
    operation: Operation,
    variant: Variant,
    k: Option<usize>,
    limits: &Limits,
) -> Result<Vec<Refinement>> {
    let mut out = Vec::new();
    let mut failure = None;
    for_each_refinement(profile, operation, variant, k, limits, |parts| {
        match Refinement::new(profile, Partition::new(parts.to_vec())) {
            Ok(r) => {
                out.push(r);
                ControlFlow::Continue(())
            }
            Err(e) => {
                failure = Some(e);
                ControlFlow::Break(())
            }
        }
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Maximum h-index over all allowed refinements, with the canonically
/// smallest refinement attaining it as witness.
pub fn oracle_solve(instance: &ProblemInstance, limits: &Limits) -> Result<SolveResult> {
    let mut eval = Evaluator::new(&instance.graph);
    let mut best_h = 0usize;
    let mut best: Option<Partition> = None;
    for_each_refinement(
        &instance.profile,
        instance.operation,
        instance.variant,
        instance.k,
        limits,
        |parts| {
            let h = eval.h_index(parts, instance.measure);
            if best.is_none() || h >= best_h {
                let candidate = Partition::new(parts.to_vec());
                let better = h > best_h || best.as_ref().is_none_or(|b| candidate < *b);
                if better {
                    best_h = h;
                    best = Some(candidate);
                }
            }
            ControlFlow::Continue(())
        },
    )?;
    crate::solvers::result_from(instance, best, best_h, Method::Oracle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{FOUR_CITERS, SIX_ARTICLES};
    use crate::instance::parse_instance;
    use crate::measures::Measure;
    use crate::validate::validate_refinement;
    use crate::CitationGraph;
    use std::collections::BTreeSet;

    fn single_part(s: usize) -> Profile {
        let names: Vec<String> = (0..s).map(|i| format!("a{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let g = CitationGraph::from_tokens(&refs, &[]).unwrap();
        Profile::new(&g, (0..s).collect(), vec![(0..s).collect()]).unwrap()
    }

    fn count(p: &Profile, op: Operation, v: Variant, k: Option<usize>) -> usize {
        let all = enumerate_refinements(p, op, v, k, &Limits::default()).unwrap();
        let distinct: BTreeSet<Partition> = all.iter().map(|r| r.partition().clone()).collect();
        assert_eq!(distinct.len(), all.len(), "duplicates");
        let predicted = refinement_count(p, op, v, k, &Limits::default()).unwrap();
        assert_eq!(predicted, all.len() as u128);
        all.len()
    }

    #[test]
    fn small_counts() {
        assert_eq!(count(&single_part(2), Operation::Atomizing, Variant::Plain, None), 2);
        assert_eq!(count(&single_part(3), Operation::Dividing, Variant::Plain, None), 5);
        // keep, three single extractions, full atomization
        assert_eq!(count(&single_part(3), Operation::Extracting, Variant::Plain, None), 5);
        assert_eq!(count(&single_part(4), Operation::Extracting, Variant::Plain, None), 12);
        assert_eq!(count(&single_part(4), Operation::Dividing, Variant::Plain, None), 15);
    }

    #[test]
    fn budgets_restrict_counts() {
        let p = single_part(4);
        assert_eq!(count(&p, Operation::Dividing, Variant::Cautious, Some(0)), 1);
        // S(4,2) = 7 partitions into two blocks
        assert_eq!(count(&p, Operation::Dividing, Variant::Cautious, Some(1)), 8);
        assert_eq!(count(&p, Operation::Dividing, Variant::Conservative, Some(1)), 15);
        assert_eq!(count(&p, Operation::Extracting, Variant::Cautious, Some(1)), 5);
        assert_eq!(count(&p, Operation::Atomizing, Variant::Cautious, Some(1)), 2);
    }

    #[test]
    fn every_refinement_is_valid() {
        let inst = parse_instance(SIX_ARTICLES).unwrap();
        for op in Operation::ALL {
            for v in Variant::ALL {
                for k in 0..3 {
                    let k = (v != Variant::Plain).then_some(k);
                    let inst = inst.with_problem(op, v, Measure::Union, 1, k).unwrap();
                    for r in enumerate_refinements(&inst.profile, op, v, k, &Limits::default()).unwrap() {
                        assert!(validate_refinement(&inst, &r).is_valid(), "{op} {v} {k:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn figure_examples() {
        let lim = Limits::default();
        let inst = parse_instance(SIX_ARTICLES).unwrap();
        assert!(oracle_solve(&inst, &lim).unwrap().feasible);

        let four_citers = parse_instance(FOUR_CITERS).unwrap();
        let div = four_citers
            .with_problem(Operation::Dividing, Variant::Plain, Measure::Union, 2, None)
            .unwrap();
        let res = oracle_solve(&div, &lim).unwrap();
        assert_eq!(res.achieved_h, 2);
        let zero = four_citers
            .with_problem(Operation::Atomizing, Variant::Plain, Measure::Union, 0, None)
            .unwrap();
        assert!(oracle_solve(&zero, &lim).unwrap().feasible);
    }

    #[test]
    fn witness_is_canonically_smallest() {
        let four_citers = parse_instance(FOUR_CITERS)
            .unwrap()
            .with_problem(Operation::Dividing, Variant::Plain, Measure::Union, 2, None)
            .unwrap();
        let lim = Limits::default();
        let res = oracle_solve(&four_citers, &lim).unwrap();
        let witness = res.refinement.unwrap().partition().clone();
        let mut eval = Evaluator::new(&four_citers.graph);
        for r in enumerate_refinements(&four_citers.profile, Operation::Dividing, Variant::Plain, None, &lim).unwrap() {
            if eval.h_index(r.parts(), Measure::Union) == 2 {
                assert!(witness <= *r.partition());
            }
        }
    }

    #[test]
    fn bound_exceeded_is_reported() {
        let lim = Limits {
            max_refinements: 10,
            ..Limits::default()
        };
        let err = oracle_solve(
            &parse_instance(FOUR_CITERS)
                .unwrap()
                .with_problem(Operation::Dividing, Variant::Plain, Measure::Sum, 1, None)
                .unwrap(),
            &lim,
        )
        .unwrap_err();
        assert!(matches!(
            err,
            Error::BoundExceeded {
                size: 15,
                limit: 10,
                ..
            }
        ));
    }
}
