use crate::error::{Error, Result};
use crate::graph::{Article, CitationGraph};
use crate::instance::{Operation, ProblemInstance, Variant};
use crate::limits::Limits;
use crate::measures::{count_at_least, Evaluator, Measure};
use crate::partitions::SetPartitions;
use crate::profile::Partition;

use super::atomize::local_citations;
use super::{maximize, require, top_k_positive, Method, PartGain, SolveResult, LOCAL};

fn check_size(len: usize, limits: &Limits) -> Result<()> {
    if len > limits.max_partition_elements {
        return Err(Error::BoundExceeded {
            what: "set-partition enumeration",
            size: len as u128,
            limit: limits.max_partition_elements as u128,
        });
    }
    Ok(())
}

/// Local measure of every subset of `articles`, indexed by bitmask.
fn subset_values(graph: &CitationGraph, articles: &[Article], measure: Measure) -> Vec<usize> {
    let s = articles.len();
    let mut values = vec![0usize; 1 << s];
    let mut eval = Evaluator::new(graph);
    let mut members = Vec::with_capacity(s);
    for mask in 1usize..(1 << s) {
        values[mask] = match measure {
            Measure::Sum => {
                let low = mask.trailing_zeros() as usize;
                values[mask & (mask - 1)] + graph.in_degree(articles[low])
            }
            _ => {
                members.clear();
                members.extend((0..s).filter(|i| mask >> i & 1 == 1).map(|i| articles[i]));
                local_citations(&mut eval, &members, measure)
            }
        };
    }
    values
}

/// Largest number of parts with at least `h` citations over all partitions
/// of `articles`, and the first partition (in restricted-growth order)
/// attaining it. Exhaustive over set partitions.
///
/// For `Fusion` the owned set is taken to be `articles` itself.
pub fn best_division(
    graph: &CitationGraph,
    articles: &[Article],
    h: usize,
    measure: Measure,
    limits: &Limits,
) -> Result<(usize, Vec<Vec<Article>>)> {
    check_size(articles.len(), limits)?;
    let mut rgs = SetPartitions::new(articles.len());
    let mut best: Option<(usize, Vec<usize>)> = None;
    if measure.is_local() {
        let values = subset_values(graph, articles, measure);
        let mut masks = Vec::new();
        while rgs.advance() {
            rgs.block_masks(&mut masks);
            let good = masks.iter().filter(|&&m| values[m as usize] >= h).count();
            if best.as_ref().is_none_or(|(b, _)| good > *b) {
                best = Some((good, rgs.labels().to_vec()));
            }
        }
    } else {
        let mut eval = Evaluator::new(graph);
        while rgs.advance() {
            let blocks = rgs.blocks(articles);
            let good = count_at_least(&eval.counts(&blocks, measure), h);
            if best.as_ref().is_none_or(|(b, _)| good > *b) {
                best = Some((good, rgs.labels().to_vec()));
            }
        }
    }
    let (count, labels) = best.unwrap_or((0, Vec::new()));
    let blocks_len = labels.iter().max().map_or(0, |&m| m + 1);
    let mut blocks = vec![Vec::new(); blocks_len];
    for (&l, &v) in labels.iter().zip(articles) {
        blocks[l].push(v);
    }
    Ok((count, blocks))
}

/// Decides whether some partition of `articles` has h-index at least `h`.
///
/// Exact stand-in for a dedicated merging algorithm: plain enumeration of
/// all set partitions, so `articles` is capped by
/// [`Limits::max_partition_elements`].
pub fn merge_subroutine(
    graph: &CitationGraph,
    articles: &[Article],
    h: usize,
    measure: Measure,
    limits: &Limits,
) -> Result<bool> {
    if h == 0 {
        return Ok(true);
    }
    if articles.is_empty() {
        return Ok(false);
    }
    let (count, _) = best_division(graph, articles, h, measure, limits)?;
    Ok(count >= h)
}

/// Splits the (at most `k`) parts whose best division gains the most parts
/// with `h` or more citations. Gains count the undivided part itself as
/// lost when it already reaches `h`.
pub fn divide_conservative_for_target(
    instance: &ProblemInstance,
    h: usize,
    k: usize,
    limits: &Limits,
) -> Result<Partition> {
    if h == 0 {
        return Ok(instance.profile.partition().clone());
    }
    let g = &instance.graph;
    let mut eval = Evaluator::new(g);
    let parts = instance.profile.parts();
    let mut gains = Vec::with_capacity(parts.len());
    let mut divisions = Vec::with_capacity(parts.len());
    for (i, part) in parts.iter().enumerate() {
        if part.len() == 1 {
            gains.push(PartGain { part: i, gain: 0 });
            divisions.push(None);
            continue;
        }
        let (best, blocks) = best_division(g, part, h, instance.measure, limits)?;
        let baseline = (local_citations(&mut eval, part, instance.measure) >= h) as usize;
        gains.push(PartGain {
            part: i,
            gain: best as isize - baseline as isize,
        });
        divisions.push(Some(blocks));
    }
    let chosen = top_k_positive(&gains, k);
    let mut out = Vec::with_capacity(instance.profile.owned().len());
    let mut next = chosen.iter().peekable();
    for (i, division) in divisions.into_iter().enumerate() {
        match division {
            Some(blocks) if next.peek() == Some(&&i) => {
                next.next();
                out.extend(blocks);
            }
            _ => out.push(parts[i].clone()),
        }
    }
    Ok(Partition::new(out))
}

/// Conservative dividing; the plain variant is the special case `k = |P|`.
pub fn divide_conservative_solve(instance: &ProblemInstance, limits: &Limits) -> Result<SolveResult> {
    require(
        instance,
        "divide_conservative_solve",
        Operation::Dividing,
        &[Variant::Plain, Variant::Conservative],
        &LOCAL,
    )?;
    let k = match instance.variant {
        Variant::Plain => instance.profile.parts().len(),
        _ => instance.budget(),
    };
    if let Some(big) = instance
        .profile
        .parts()
        .iter()
        .find(|p| p.len() > limits.max_partition_elements)
    {
        check_size(big.len(), limits)?;
    }
    let measure = instance.measure;
    maximize(instance, Method::DivideConservative, |eval, h| {
        let p = divide_conservative_for_target(instance, h, k, limits)?;
        let counts = eval.counts(p.parts(), measure);
        Ok((crate::measures::h_index_of(counts) >= h).then_some(p.into_parts()))
    })
}
