use crate::error::Result;
use crate::graph::{Article, CitationGraph};
use crate::instance::{Operation, ProblemInstance, Variant};
use crate::measures::Measure;
use crate::profile::Partition;

use super::{decide_by_h_index, maximize, require, top_k_positive, Method, PartGain, SolveResult, LOCAL};

/// Running citation count of a shrinking part. For `Union` it keeps, per
/// citing article `w`, how many current members `w` cites, so removing `v`
/// costs `O(deg(v))`.
struct RunningPart<'g> {
    graph: &'g CitationGraph,
    measure: Measure,
    cites_members: Vec<u32>,
    value: usize,
}

impl<'g> RunningPart<'g> {
    fn new(graph: &'g CitationGraph, measure: Measure) -> Self {
        RunningPart {
            graph,
            measure,
            cites_members: vec![0; graph.article_count()],
            value: 0,
        }
    }

    fn load(&mut self, part: &[Article]) {
        self.value = 0;
        for &v in part {
            match self.measure {
                Measure::Sum => self.value += self.graph.in_degree(v),
                _ => {
                    for &w in self.graph.citers(v) {
                        if self.cites_members[w] == 0 {
                            self.value += 1;
                        }
                        self.cites_members[w] += 1;
                    }
                }
            }
        }
    }

    /// Value of the current part without `v`.
    fn without(&self, v: Article) -> usize {
        match self.measure {
            Measure::Sum => self.value - self.graph.in_degree(v),
            _ => {
                let lost = self
                    .graph
                    .citers(v)
                    .iter()
                    .filter(|&&w| self.cites_members[w] == 1)
                    .count();
                self.value - lost
            }
        }
    }

    fn remove(&mut self, v: Article) {
        self.value = self.without(v);
        if self.measure != Measure::Sum {
            for &w in self.graph.citers(v) {
                self.cites_members[w] -= 1;
            }
        }
    }

    /// Resets the counters touched by the remaining members.
    fn unload(&mut self, remaining: &[Article]) {
        if self.measure != Measure::Sum {
            for &v in remaining {
                for &w in self.graph.citers(v) {
                    self.cites_members[w] = 0;
                }
            }
        }
        self.value = 0;
    }
}

/// Extracts every article with at least `h` citations from its part.
pub fn extract_for_target(instance: &ProblemInstance, h: usize) -> Partition {
    Partition::new(extract_parts(instance, h))
}

fn extract_parts(instance: &ProblemInstance, h: usize) -> Vec<Vec<Article>> {
    let g = &instance.graph;
    let mut out = Vec::with_capacity(instance.profile.owned().len());
    for part in instance.profile.parts() {
        if part.len() == 1 {
            out.push(part.clone());
            continue;
        }
        let (hits, rest): (Vec<Article>, Vec<Article>) = part.iter().partition(|&&v| g.in_degree(v) >= h);
        out.extend(hits.into_iter().map(|v| vec![v]));
        if !rest.is_empty() {
            out.push(rest);
        }
    }
    out
}

pub fn extract_solve(instance: &ProblemInstance) -> Result<SolveResult> {
    require(
        instance,
        "extract_solve",
        Operation::Extracting,
        &[Variant::Plain],
        &LOCAL,
    )?;
    maximize(instance, Method::Extract, |eval, h| {
        Ok(decide_by_h_index(eval, instance.measure, h, extract_parts(instance, h)))
    })
}

/// Extractions from one part that keep both the extracted article and the
/// remainder at `h` or more citations, in ascending article order, stopping
/// after `limit` extractions.
fn guarded_extractions(
    running: &mut RunningPart<'_>,
    part: &[Article],
    h: usize,
    limit: usize,
) -> (Vec<Article>, Vec<Article>) {
    let g = running.graph;
    running.load(part);
    let mut extracted = Vec::new();
    let mut rest = Vec::with_capacity(part.len());
    for &v in part {
        if extracted.len() < limit && g.in_degree(v) >= h && running.without(v) >= h {
            running.remove(v);
            extracted.push(v);
        } else {
            rest.push(v);
        }
    }
    running.unload(&rest);
    (extracted, rest)
}

/// At most `k` extractions overall, each creating one more part with at
/// least `h` citations without pushing the remainder below `h`.
pub fn extract_cautious_for_target(instance: &ProblemInstance, h: usize, k: usize) -> Partition {
    let mut running = RunningPart::new(&instance.graph, instance.measure);
    Partition::new(extract_cautious_parts(&mut running, instance, h, k))
}

fn extract_cautious_parts(
    running: &mut RunningPart<'_>,
    instance: &ProblemInstance,
    h: usize,
    k: usize,
) -> Vec<Vec<Article>> {
    let mut budget = k;
    let mut out = Vec::with_capacity(instance.profile.owned().len());
    for part in instance.profile.parts() {
        if part.len() == 1 || budget == 0 {
            out.push(part.clone());
            continue;
        }
        let (extracted, rest) = guarded_extractions(running, part, h, budget);
        budget -= extracted.len();
        out.extend(extracted.into_iter().map(|v| vec![v]));
        out.push(rest);
    }
    out
}

pub fn extract_cautious_solve(instance: &ProblemInstance) -> Result<SolveResult> {
    require(
        instance,
        "extract_cautious_solve",
        Operation::Extracting,
        &[Variant::Cautious],
        &LOCAL,
    )?;
    let k = instance.budget();
    let mut running = RunningPart::new(&instance.graph, instance.measure);
    maximize(instance, Method::ExtractCautious, |eval, h| {
        let parts = extract_cautious_parts(&mut running, instance, h, k);
        Ok(decide_by_h_index(eval, instance.measure, h, parts))
    })
}

/// Per part, the guarded extraction set and its size as gain; the
/// extractions of the `k` parts with the largest gains are applied.
pub fn extract_conservative_for_target(instance: &ProblemInstance, h: usize, k: usize) -> Partition {
    let mut running = RunningPart::new(&instance.graph, instance.measure);
    Partition::new(extract_conservative_parts(&mut running, instance, h, k))
}

fn extract_conservative_parts(
    running: &mut RunningPart<'_>,
    instance: &ProblemInstance,
    h: usize,
    k: usize,
) -> Vec<Vec<Article>> {
    let parts = instance.profile.parts();
    let mut plans = Vec::with_capacity(parts.len());
    let mut gains = Vec::with_capacity(parts.len());
    for (i, part) in parts.iter().enumerate() {
        let plan = if part.len() > 1 {
            guarded_extractions(running, part, h, usize::MAX)
        } else {
            (Vec::new(), part.clone())
        };
        gains.push(PartGain {
            part: i,
            gain: plan.0.len() as isize,
        });
        plans.push(plan);
    }
    let chosen = top_k_positive(&gains, k);
    let mut out = Vec::with_capacity(instance.profile.owned().len());
    let mut next = chosen.iter().peekable();
    for (i, (extracted, rest)) in plans.into_iter().enumerate() {
        if next.peek() == Some(&&i) {
            next.next();
            out.extend(extracted.into_iter().map(|v| vec![v]));
            out.push(rest);
        } else {
            out.push(parts[i].clone());
        }
    }
    out
}

pub fn extract_conservative_solve(instance: &ProblemInstance) -> Result<SolveResult> {
    require(
        instance,
        "extract_conservative_solve",
        Operation::Extracting,
        &[Variant::Conservative],
        &LOCAL,
    )?;
    let k = instance.budget();
    let mut running = RunningPart::new(&instance.graph, instance.measure);
    maximize(instance, Method::ExtractConservative, |eval, h| {
        let parts = extract_conservative_parts(&mut running, instance, h, k);
        Ok(decide_by_h_index(eval, instance.measure, h, parts))
    })
}
