//! Exact solvers for the tractable problem variants.
//!
//! Each solver is built around a decision routine for a fixed target `h`
//! (the `*_for_target` functions). The public `*_solve` entry points run
//! that routine under a binary search over `h`, which is sound because
//! feasibility is monotone: a partition with `h` parts cited `h` times also
//! has `h - 1` parts cited `h - 1` times. They therefore report the maximum
//! achievable h-index together with a witness attaining it.

mod atomize;
mod divide;
mod extract;
mod fusion;

pub use atomize::{atomize_conservative_for_target, atomize_conservative_solve, atomize_for_target, atomize_solve};
pub use divide::{best_division, divide_conservative_for_target, divide_conservative_solve, merge_subroutine};
pub use extract::{
    extract_cautious_for_target, extract_cautious_solve, extract_conservative_for_target, extract_conservative_solve,
    extract_for_target, extract_solve,
};
pub use fusion::{atomize_fusion_for_target, atomize_fusion_solve, FusionPath};

use crate::error::{Error, Result};
use crate::graph::Article;
use crate::instance::{Operation, ProblemInstance, Variant};
use crate::limits::Limits;
use crate::measures::{h_index_of, Evaluator, Measure};
use crate::oracle::oracle_solve;
use crate::profile::{Partition, Refinement};

/// Which algorithm produced a [`SolveResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Atomize,
    AtomizeConservative,
    Extract,
    ExtractCautious,
    ExtractConservative,
    DivideConservative,
    AtomizeFusion,
    Oracle,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Atomize => "atomize",
            Method::AtomizeConservative => "atomize-conservative",
            Method::Extract => "extract",
            Method::ExtractCautious => "extract-cautious",
            Method::ExtractConservative => "extract-conservative",
            Method::DivideConservative => "divide-conservative",
            Method::AtomizeFusion => "atomize-fusion",
            Method::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    /// `achieved_h >= instance.h`
    pub feasible: bool,
    /// Witness attaining `achieved_h`; present iff `feasible`.
    pub refinement: Option<Refinement>,
    /// Maximum h-index reachable under the instance's constraints.
    pub achieved_h: usize,
    /// Atomized parts for atomizing, `|R| - |P|` otherwise.
    pub operations_used: usize,
    /// `|P \ R|`
    pub parts_changed: usize,
    pub method: Method,
}

/// Gain of splitting one part of `P`: how many additional parts with at
/// least `h` citations it yields. `-1` marks a consumed part.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartGain {
    pub part: usize,
    pub gain: isize,
}

/// Indices of the (at most) `k` parts with the largest positive gains,
/// ties going to the smaller part index. Counting sort on the gain value.
pub(crate) fn top_k_positive(gains: &[PartGain], k: usize) -> Vec<usize> {
    let max = gains.iter().map(|g| g.gain).max().unwrap_or(0);
    if max <= 0 || k == 0 {
        return Vec::new();
    }
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); max as usize + 1];
    for g in gains.iter().filter(|g| g.gain > 0) {
        buckets[g.gain as usize].push(g.part);
    }
    let mut chosen: Vec<usize> = buckets.into_iter().rev().flatten().take(k).collect();
    chosen.sort_unstable();
    chosen
}

pub(crate) fn require(
    instance: &ProblemInstance,
    solver: &'static str,
    operation: Operation,
    variants: &[Variant],
    measures: &[Measure],
) -> Result<()> {
    let ok =
        instance.operation == operation && variants.contains(&instance.variant) && measures.contains(&instance.measure);
    if ok {
        Ok(())
    } else {
        Err(Error::Unsupported {
            solver,
            what: format!("{} / {} / {}", instance.operation, instance.variant, instance.measure),
        })
    }
}

pub(crate) const LOCAL: [Measure; 2] = [Measure::Sum, Measure::Union];

/// Packs a partition into a result for the instance's operation.
pub(crate) fn result_from(
    instance: &ProblemInstance,
    partition: Option<Partition>,
    achieved_h: usize,
    method: Method,
) -> Result<SolveResult> {
    let feasible = achieved_h >= instance.h;
    let refinement = match partition.filter(|_| feasible) {
        Some(p) => Some(Refinement::new(&instance.profile, p)?),
        None => None,
    };
    let (operations_used, parts_changed) = match &refinement {
        Some(r) => {
            let changed = r.parts_changed(&instance.profile);
            let ops = match instance.operation {
                Operation::Atomizing => changed,
                _ => r.splits(&instance.profile),
            };
            (ops, changed)
        }
        None => (0, 0),
    };
    Ok(SolveResult {
        feasible,
        refinement,
        achieved_h,
        operations_used,
        parts_changed,
        method,
    })
}

/// Search window for the maximum h-index. Keeping `P` is always allowed,
/// so its h-index is a lower bound. `h` parts with `h` citations each need
/// `h²` citations, and no measure exceeds the sum of in-degrees. Under a
/// local measure a piece never has more citations than its original part,
/// so part `p` contributes at most `|p|` pieces of at most `μ(p)` each.
pub(crate) fn h_window(instance: &ProblemInstance, eval: &mut Evaluator<'_>) -> (usize, usize) {
    let g = &instance.graph;
    let parts = instance.profile.parts();
    let counts = eval.counts(parts, instance.measure);
    let lo = h_index_of(counts.iter().copied());
    let total: usize = instance.profile.owned().iter().map(|&v| g.in_degree(v)).sum();
    let mut hi = total.isqrt().min(instance.profile.owned().len());
    if instance.measure.is_local() {
        let mut pieces = vec![0usize; hi + 1];
        for (p, &c) in parts.iter().zip(&counts) {
            pieces[c.min(hi)] += p.len();
        }
        let mut at_least = 0;
        while hi > 0 {
            at_least += pieces[hi];
            if at_least >= hi {
                break;
            }
            hi -= 1;
        }
    }
    (lo, hi.max(lo))
}

/// Like [`maximize`], but probes with a cheap feasibility test and builds a
/// witness only for the final `h`.
pub(crate) fn maximize_by<F, B>(
    instance: &ProblemInstance,
    method: Method,
    mut feasible: F,
    build: B,
) -> Result<SolveResult>
where
    F: FnMut(usize) -> bool,
    B: FnOnce(usize) -> Partition,
{
    let (mut lo, mut hi) = h_window(instance, &mut Evaluator::new(&instance.graph));
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if feasible(mid) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    result_from(instance, Some(build(lo)), lo, method)
}

/// Binary search for the largest `h` whose decision succeeds. `decide(h)`
/// returns parts with h-index at least `h`, or `None`. Only the final
/// answer is canonicalized.
pub(crate) fn maximize<F>(instance: &ProblemInstance, method: Method, mut decide: F) -> Result<SolveResult>
where
    F: FnMut(&mut Evaluator<'_>, usize) -> Result<Option<Vec<Vec<Article>>>>,
{
    // one scratch evaluator for all probes
    let mut eval = Evaluator::new(&instance.graph);
    let mut best = instance.profile.parts().to_vec();
    let (mut lo, mut hi) = h_window(instance, &mut eval);
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        match decide(&mut eval, mid)? {
            Some(p) => {
                lo = mid;
                best = p;
            }
            None => hi = mid - 1,
        }
    }
    let best = Partition::new(best);
    debug_assert_eq!(eval.h_index(best.parts(), instance.measure), lo);
    result_from(instance, Some(best), lo, method)
}

/// Wraps a target-`h` construction that always returns its best partition
/// into a decision: accept iff the partition reaches `h`.
pub(crate) fn decide_by_h_index(
    eval: &mut Evaluator<'_>,
    measure: Measure,
    h: usize,
    parts: Vec<Vec<Article>>,
) -> Option<Vec<Vec<Article>>> {
    let counts = eval.counts(&parts, measure);
    (h_index_of(counts) >= h).then_some(parts)
}

/// Routes an instance to its dedicated solver, or to the oracle for the
/// variants without one (cautious dividing, and fusion beyond plain
/// atomizing).
pub fn solve(instance: &ProblemInstance, limits: &Limits) -> Result<SolveResult> {
    use Measure::*;
    use Operation::*;
    use Variant::*;
    match (instance.operation, instance.variant, instance.measure) {
        (Atomizing, Plain, Sum | Union) => atomize_solve(instance),
        (Atomizing, Conservative | Cautious, Sum | Union) => atomize_conservative_solve(instance),
        (Extracting, Plain, Sum | Union) => extract_solve(instance),
        (Extracting, Cautious, Sum | Union) => extract_cautious_solve(instance),
        (Extracting, Conservative, Sum | Union) => extract_conservative_solve(instance),
        (Dividing, Plain | Conservative, Sum | Union) => divide_conservative_solve(instance, limits),
        (Atomizing, Plain, Fusion) => atomize_fusion_solve(instance, limits),
        _ => oracle_solve(instance, limits),
    }
}

/// True if [`solve`] has a dedicated (non-oracle) algorithm for the instance.
pub fn has_dedicated_solver(operation: Operation, variant: Variant, measure: Measure) -> bool {
    match measure {
        Measure::Sum | Measure::Union => !(operation == Operation::Dividing && variant == Variant::Cautious),
        Measure::Fusion => operation == Operation::Atomizing && variant == Variant::Plain,
    }
}
