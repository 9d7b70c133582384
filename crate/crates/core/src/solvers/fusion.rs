//! Atomizing under the fusion measure.
//!
//! Atomizing a part never lowers the fusion count of any other part: a
//! citing part is replaced by its members, at least one of which still
//! cites. So a part that cannot reach `h` even when every other owned
//! article is a singleton may be atomized for free, and what is left is a
//! bounded search over the remaining merged parts.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Article, CitationGraph};
use crate::instance::{Operation, ProblemInstance, Variant};
use crate::limits::Limits;
use crate::measures::{count_at_least, h_index_of, Evaluator, Measure};
use crate::profile::Partition;

use super::{maximize, require, Method, SolveResult};

/// Which step of the decision procedure settled a target `h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FusionPath {
    /// The profile already has `h` parts with fusion count at least `h`.
    AlreadyFeasible,
    /// Atomizing every part that can never reach `h` was enough.
    Filtered,
    /// Many candidate parts: an independent set of `h` of them in the
    /// citation conflict graph, everything else atomized.
    IndependentSet,
    /// Exhaustive search over which remaining merged parts to atomize.
    Search,
}

const NONE: usize = usize::MAX;

/// `|∪_{v∈P} N_{D-P}(v)|` for every part: its fusion count once every
/// other owned article is a singleton.
fn potentials(parts: &[Vec<Article>], eval_n: usize, graph: &CitationGraph) -> Vec<usize> {
    let mut owner = vec![NONE; eval_n];
    for (i, p) in parts.iter().enumerate() {
        for &v in p {
            owner[v] = i;
        }
    }
    let mut seen = vec![NONE; eval_n];
    parts
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let mut count = 0;
            for &v in p {
                for &u in graph.citers(v) {
                    if owner[u] != i && seen[u] != i {
                        seen[u] = i;
                        count += 1;
                    }
                }
            }
            count
        })
        .collect()
}

/// Greedy independent set: take a vertex of minimum remaining degree
/// (smallest index on ties), drop its neighbours, repeat.
fn greedy_independent_set(adj: &[Vec<usize>], want: usize) -> Vec<usize> {
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut alive = vec![true; adj.len()];
    let mut queue: BTreeSet<(usize, usize)> = (0..adj.len()).map(|v| (degree[v], v)).collect();
    let mut chosen = Vec::new();
    while chosen.len() < want {
        let Some((_, v)) = queue.pop_first() else { break };
        chosen.push(v);
        alive[v] = false;
        for &w in &adj[v] {
            if !alive[w] {
                continue;
            }
            alive[w] = false;
            queue.remove(&(degree[w], w));
            for &x in &adj[w] {
                if alive[x] {
                    queue.remove(&(degree[x], x));
                    degree[x] -= 1;
                    queue.insert((degree[x], x));
                }
            }
        }
    }
    chosen
}

fn atomize_where(parts: &[Vec<Article>], keep: impl Fn(usize) -> bool) -> Vec<Vec<Article>> {
    let mut out = Vec::new();
    for (i, p) in parts.iter().enumerate() {
        if keep(i) {
            out.push(p.clone());
        } else {
            out.extend(p.iter().map(|&v| vec![v]));
        }
    }
    out
}

/// Decides whether atomizing some parts yields h-index at least `h` under
/// the fusion measure; returns the step that decided and a witness.
pub fn atomize_fusion_for_target(
    instance: &ProblemInstance,
    h: usize,
    limits: &Limits,
) -> Result<(FusionPath, Option<Partition>)> {
    let g = &instance.graph;
    let n = g.article_count();
    let mut eval = Evaluator::new(g);
    let parts = instance.profile.parts();

    if count_at_least(&eval.counts(parts, Measure::Fusion), h) >= h {
        return Ok((FusionPath::AlreadyFeasible, Some(instance.profile.partition().clone())));
    }

    let pot = potentials(parts, n, g);
    let filtered = atomize_where(parts, |i| parts[i].len() == 1 || pot[i] >= h);
    let counts = eval.counts(&filtered, Measure::Fusion);
    if count_at_least(&counts, h) >= h {
        return Ok((FusionPath::Filtered, Some(Partition::new(filtered))));
    }

    let pot = potentials(&filtered, n, g);
    let below: Vec<usize> = (0..filtered.len()).filter(|&i| pot[i] >= h && counts[i] < h).collect();
    let threshold = (2 * h * h).saturating_sub(h);
    if h > 0 && below.len() >= threshold {
        let mut owner = vec![NONE; n];
        for (j, &i) in below.iter().enumerate() {
            for &v in &filtered[i] {
                owner[v] = j;
            }
        }
        let mut adj = vec![Vec::new(); below.len()];
        for (j, &i) in below.iter().enumerate() {
            for &v in &filtered[i] {
                for &u in g.citers(v) {
                    let o = owner[u];
                    if o != NONE && o != j {
                        adj[j].push(o);
                        adj[o].push(j);
                    }
                }
            }
        }
        for a in adj.iter_mut() {
            a.sort_unstable();
            a.dedup();
        }
        let chosen = greedy_independent_set(&adj, h);
        let keep: BTreeSet<usize> = chosen.iter().map(|&j| below[j]).collect();
        let witness = atomize_where(&filtered, |i| keep.contains(&i));
        let reached = h_index_of(eval.counts(&witness, Measure::Fusion));
        assert!(
            chosen.len() == h && reached >= h,
            "independent-set step produced h-index {reached} < {h}"
        );
        return Ok((FusionPath::IndependentSet, Some(Partition::new(witness))));
    }

    let merged: Vec<usize> = (0..filtered.len()).filter(|&i| filtered[i].len() > 1).collect();
    if merged.len() > limits.max_subset_parts {
        return Err(Error::BoundExceeded {
            what: "atomization subsets",
            size: merged.len() as u128,
            limit: limits.max_subset_parts as u128,
        });
    }
    let mut atomized = vec![false; filtered.len()];
    for mask in 0u64..(1u64 << merged.len()) {
        for (bit, &i) in merged.iter().enumerate() {
            atomized[i] = mask >> bit & 1 == 1;
        }
        let candidate = atomize_where(&filtered, |i| !atomized[i]);
        if h_index_of(eval.counts(&candidate, Measure::Fusion)) >= h {
            return Ok((FusionPath::Search, Some(Partition::new(candidate))));
        }
    }
    Ok((FusionPath::Search, None))
}

pub fn atomize_fusion_solve(instance: &ProblemInstance, limits: &Limits) -> Result<SolveResult> {
    require(
        instance,
        "atomize_fusion_solve",
        Operation::Atomizing,
        &[Variant::Plain],
        &[Measure::Fusion],
    )?;
    maximize(instance, Method::AtomizeFusion, |_, h| {
        Ok(atomize_fusion_for_target(instance, h, limits)?
            .1
            .map(Partition::into_parts))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::SIX_ARTICLES;
    use crate::instance::parse_instance;
    use crate::oracle::oracle_solve;
    use crate::Profile;

    fn build(
        articles: &[String],
        owned: &[&str],
        arcs: &[(String, String)],
        parts: &[&[&str]],
        h: usize,
    ) -> ProblemInstance {
        let a: Vec<&str> = articles.iter().map(String::as_str).collect();
        let arcs: Vec<(&str, &str)> = arcs.iter().map(|(s, d)| (s.as_str(), d.as_str())).collect();
        let g = CitationGraph::from_tokens(&a, &arcs).unwrap();
        let idx = |t: &str| g.index_of_str(t).unwrap();
        let owned = owned.iter().map(|t| idx(t)).collect();
        let parts = parts.iter().map(|p| p.iter().map(|t| idx(t)).collect()).collect();
        let profile = Profile::new(&g, owned, parts).unwrap();
        ProblemInstance::new(
            g,
            profile,
            Operation::Atomizing,
            Variant::Plain,
            Measure::Fusion,
            h,
            None,
        )
        .unwrap()
    }

    #[test]
    fn six_articles_is_feasible_for_two() {
        let inst = parse_instance(SIX_ARTICLES).unwrap();
        let (path, witness) = atomize_fusion_for_target(&inst, 2, &Limits::default()).unwrap();
        assert_eq!(path, FusionPath::Filtered);
        let w = witness.unwrap();
        assert_eq!(Evaluator::new(&inst.graph).h_index(w.parts(), Measure::Fusion), 2);
        let res = atomize_fusion_solve(&inst, &Limits::default()).unwrap();
        assert!(res.feasible);
        assert_eq!(
            res.achieved_h,
            oracle_solve(&inst, &Limits::default()).unwrap().achieved_h
        );
    }

    #[test]
    fn externally_cited_parts_are_accepted_as_is() {
        let mut articles = Vec::new();
        let mut arcs = Vec::new();
        for p in 0..2 {
            articles.push(format!("p{p}a"));
            articles.push(format!("p{p}b"));
            for e in 0..2 {
                let citer = format!("e{p}{e}");
                articles.push(citer.clone());
                arcs.push((citer, format!("p{p}a")));
            }
        }
        let inst = build(
            &articles,
            &["p0a", "p0b", "p1a", "p1b"],
            &arcs,
            &[&["p0a", "p0b"], &["p1a", "p1b"]],
            2,
        );
        let (path, witness) = atomize_fusion_for_target(&inst, 2, &Limits::default()).unwrap();
        assert_eq!(path, FusionPath::AlreadyFeasible);
        assert_eq!(&witness.unwrap(), inst.profile.partition());
    }

    /// Seven parts `{a_i, b_i}` in a ring; both members of the next part
    /// cite `a_i`. Every part has potential 2 but fusion 1, and 7 ≥ 2h²-h
    /// for h = 2, so the independent-set step decides.
    #[test]
    fn ring_takes_independent_set_path() {
        let mut articles = Vec::new();
        let mut owned = Vec::new();
        let mut arcs = Vec::new();
        for i in 0..7 {
            articles.push(format!("a{i}"));
            articles.push(format!("b{i}"));
        }
        for i in 0..7 {
            let next = (i + 1) % 7;
            arcs.push((format!("a{next}"), format!("a{i}")));
            arcs.push((format!("b{next}"), format!("a{i}")));
        }
        owned.extend(articles.iter().map(String::as_str));
        let names: Vec<(String, String)> = (0..7).map(|i| (format!("a{i}"), format!("b{i}"))).collect();
        let parts: Vec<[&str; 2]> = names.iter().map(|(a, b)| [a.as_str(), b.as_str()]).collect();
        let part_refs: Vec<&[&str]> = parts.iter().map(|p| &p[..]).collect();
        let inst = build(&articles, &owned, &arcs, &part_refs, 2);
        let (path, witness) = atomize_fusion_for_target(&inst, 2, &Limits::default()).unwrap();
        assert_eq!(path, FusionPath::IndependentSet);
        let w = witness.unwrap();
        assert!(Evaluator::new(&inst.graph).h_index(w.parts(), Measure::Fusion) >= 2);
    }

    #[test]
    fn greedy_set_is_independent() {
        // 5-cycle plus a pendant vertex on 0.
        let adj = vec![vec![1, 4, 5], vec![0, 2], vec![1, 3], vec![2, 4], vec![3, 0], vec![0]];
        let set = greedy_independent_set(&adj, 6);
        assert_eq!(set[0], 5);
        for &u in &set {
            for &v in &set {
                assert!(!adj[u].contains(&v));
            }
        }
        assert_eq!(set.len(), 3);
    }

    #[test]
    fn rejects_local_measures() {
        let inst = parse_instance(SIX_ARTICLES)
            .unwrap()
            .with_problem(Operation::Atomizing, Variant::Plain, Measure::Union, 2, None)
            .unwrap();
        assert!(atomize_fusion_solve(&inst, &Limits::default()).is_err());
    }
}
