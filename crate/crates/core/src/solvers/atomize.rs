use crate::error::Result;
use crate::graph::Article;
use crate::instance::{Operation, ProblemInstance, Variant};
use crate::measures::{Evaluator, Measure};
use crate::profile::Partition;

use super::{decide_by_h_index, maximize, maximize_by, require, top_k_positive, Method, PartGain, SolveResult, LOCAL};

fn singletons(part: &[Article]) -> impl Iterator<Item = Vec<Article>> + '_ {
    part.iter().map(|&v| vec![v])
}

/// Local measure of a part (`Sum` or `Union`).
pub(crate) fn local_citations(eval: &mut Evaluator<'_>, part: &[Article], measure: Measure) -> usize {
    match measure {
        Measure::Sum => part.iter().map(|&v| eval.graph().in_degree(v)).sum(),
        _ => eval.union_of(part),
    }
}

/// Atomizes every part containing an article with at least `h` citations.
/// For a singleton all local measures equal the in-degree.
pub fn atomize_for_target(instance: &ProblemInstance, h: usize) -> Partition {
    Partition::new(atomize_parts(instance, h))
}

fn atomize_parts(instance: &ProblemInstance, h: usize) -> Vec<Vec<Article>> {
    let g = &instance.graph;
    let mut parts = Vec::with_capacity(instance.profile.owned().len());
    for part in instance.profile.parts() {
        if part.len() > 1 && part.iter().any(|&v| g.in_degree(v) >= h) {
            parts.extend(singletons(part));
        } else {
            parts.push(part.clone());
        }
    }
    parts
}

pub fn atomize_solve(instance: &ProblemInstance) -> Result<SolveResult> {
    require(
        instance,
        "atomize_solve",
        Operation::Atomizing,
        &[Variant::Plain],
        &LOCAL,
    )?;
    let g = &instance.graph;
    let mut eval = Evaluator::new(g);
    let parts = instance.profile.parts();
    let kept: Vec<usize> = parts
        .iter()
        .map(|p| local_citations(&mut eval, p, instance.measure))
        .collect();
    let peak: Vec<usize> = parts
        .iter()
        .map(|p| p.iter().map(|&v| g.in_degree(v)).max().unwrap_or(0))
        .collect();
    // parts with at least `h` citations after atomizing for target `h`
    let reaching = |h: usize| -> usize {
        parts
            .iter()
            .enumerate()
            .map(|(i, part)| match part.len() > 1 && peak[i] >= h {
                true => part.iter().filter(|&&v| g.in_degree(v) >= h).count(),
                false => (kept[i] >= h) as usize,
            })
            .sum()
    };
    maximize_by(
        instance,
        Method::Atomize,
        |h| reaching(h) >= h,
        |h| atomize_for_target(instance, h),
    )
}

/// Atomizes the `k` parts whose atomization gains the most parts with at
/// least `h` citations.
pub fn atomize_conservative_for_target(instance: &ProblemInstance, h: usize, k: usize) -> Partition {
    let mut eval = Evaluator::new(&instance.graph);
    Partition::new(atomize_conservative_parts(&mut eval, instance, h, k))
}

fn atomize_conservative_parts(
    eval: &mut Evaluator<'_>,
    instance: &ProblemInstance,
    h: usize,
    k: usize,
) -> Vec<Vec<Article>> {
    let g = &instance.graph;
    let parts = instance.profile.parts();
    let gains: Vec<PartGain> = parts
        .iter()
        .enumerate()
        .map(|(i, part)| {
            let mut gain = part.iter().filter(|&&v| g.in_degree(v) >= h).count() as isize;
            if local_citations(eval, part, instance.measure) >= h {
                gain -= 1;
            }
            PartGain { part: i, gain }
        })
        .collect();
    let chosen = top_k_positive(&gains, k);
    let mut out = Vec::with_capacity(instance.profile.owned().len());
    let mut next = chosen.iter().peekable();
    for (i, part) in parts.iter().enumerate() {
        if next.peek() == Some(&&i) {
            next.next();
            out.extend(singletons(part));
        } else {
            out.push(part.clone());
        }
    }
    out
}

pub fn atomize_conservative_solve(instance: &ProblemInstance) -> Result<SolveResult> {
    require(
        instance,
        "atomize_conservative_solve",
        Operation::Atomizing,
        &[Variant::Conservative, Variant::Cautious],
        &LOCAL,
    )?;
    let k = instance.budget();
    maximize(instance, Method::AtomizeConservative, |eval, h| {
        let parts = atomize_conservative_parts(eval, instance, h, k);
        Ok(decide_by_h_index(eval, instance.measure, h, parts))
    })
}
