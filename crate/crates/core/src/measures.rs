//! Citation measures of merged articles and the h-index of a partition.
//!
//! * `Sum`: sum of the in-degrees of the part's atomic articles.
//! * `Union`: number of distinct articles citing some member of the part.
//! * `Fusion`: distinct citers outside the owned set `W`, plus one citation
//!   for every *other part* containing an article that cites the part.
//!   Citations between members of the same part are dropped.
//!
//! The first term of `Fusion` uses the citers outside `W`, not the citers
//! outside the part itself: owned citers are already counted once per citing
//! part by the second term, so counting them again would double count.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Article, CitationGraph};
use crate::profile::{Partition, Profile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Measure {
    Sum,
    Union,
    Fusion,
}

impl Measure {
    pub const ALL: [Measure; 3] = [Measure::Sum, Measure::Union, Measure::Fusion];

    pub fn as_str(self) -> &'static str {
        match self {
            Measure::Sum => "sum",
            Measure::Union => "union",
            Measure::Fusion => "fusion",
        }
    }

    /// `Sum` and `Union` values of a part do not depend on how the other
    /// owned articles are grouped.
    pub fn is_local(self) -> bool {
        !matches!(self, Measure::Fusion)
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sum" | "sumcite" | "sumCite" => Ok(Measure::Sum),
            "union" | "unioncite" | "unionCite" => Ok(Measure::Union),
            "fusion" | "fusioncite" | "fusionCite" => Ok(Measure::Fusion),
            other => Err(Error::Syntax {
                line: 0,
                message: format!("unknown measure {other:?}"),
            }),
        }
    }
}

/// Citers of `v` that are not owned.
pub fn external_citers<'a>(
    graph: &'a CitationGraph,
    owned: &'a [bool],
    v: Article,
) -> impl Iterator<Item = Article> + 'a {
    graph.citers(v).iter().copied().filter(move |&u| !owned[u])
}

/// Citation count of `part`, which must be one of the parts of `partition`
/// when the measure is `Fusion`. The owned set is the union of `partition`.
pub fn citations(graph: &CitationGraph, partition: &Partition, part: &[Article], measure: Measure) -> Result<usize> {
    let mut sorted = part.to_vec();
    sorted.sort_unstable();
    match measure {
        Measure::Sum => Ok(sorted.iter().map(|&v| graph.in_degree(v)).sum()),
        Measure::Union => Ok(Evaluator::new(graph).union_of(&sorted)),
        Measure::Fusion => {
            let idx = partition
                .parts()
                .iter()
                .position(|p| *p == sorted)
                .ok_or_else(|| Error::Unsupported {
                    solver: "fusion citations",
                    what: "a part that is not in the partition".into(),
                })?;
            Ok(Evaluator::new(graph).counts(partition.parts(), measure)[idx])
        }
    }
}

/// Citation counts of all parts, in partition order.
pub fn part_citations(graph: &CitationGraph, partition: &Partition, measure: Measure) -> Vec<usize> {
    Evaluator::new(graph).counts(partition.parts(), measure)
}

/// Largest `h` such that at least `h` of the counts are `>= h`.
pub fn h_index_of<I: IntoIterator<Item = usize>>(counts: I) -> usize {
    let counts: Vec<usize> = counts.into_iter().collect();
    let len = counts.len();
    let mut buckets = vec![0usize; len + 1];
    for c in counts {
        buckets[c.min(len)] += 1;
    }
    let mut at_least = 0;
    for h in (0..=len).rev() {
        at_least += buckets[h];
        if at_least >= h {
            return h;
        }
    }
    0
}

/// h-index of the profile's partition under `measure`.
pub fn h_index(graph: &CitationGraph, profile: &Profile, measure: Measure) -> usize {
    h_index_of(part_citations(graph, profile.partition(), measure))
}

/// Number of counts reaching `h`.
pub fn count_at_least(counts: &[usize], h: usize) -> usize {
    counts.iter().filter(|&&c| c >= h).count()
}

const NONE: u32 = u32::MAX;

/// Reusable scratch space for evaluating many partitions of one graph.
#[derive(Debug, Clone)]
pub struct Evaluator<'g> {
    graph: &'g CitationGraph,
    owner: Vec<u32>,
    seen: Vec<u32>,
    part_seen: Vec<u32>,
    stamp: u32,
}

impl<'g> Evaluator<'g> {
    pub fn new(graph: &'g CitationGraph) -> Self {
        let n = graph.article_count();
        Evaluator {
            graph,
            owner: vec![NONE; n],
            seen: vec![0; n],
            part_seen: Vec::new(),
            stamp: 0,
        }
    }

    pub fn graph(&self) -> &'g CitationGraph {
        self.graph
    }

    fn next_stamp(&mut self) -> u32 {
        if self.stamp == u32::MAX {
            self.seen.fill(0);
            self.part_seen.fill(0);
            self.stamp = 0;
        }
        self.stamp += 1;
        self.stamp
    }

    /// `|N_D(part)|`
    pub fn union_of(&mut self, part: &[Article]) -> usize {
        let stamp = self.next_stamp();
        let mut count = 0;
        for &v in part {
            for &u in self.graph.citers(v) {
                if self.seen[u] != stamp {
                    self.seen[u] = stamp;
                    count += 1;
                }
            }
        }
        count
    }

    /// Counts for every part; `parts` is treated as the whole owned set.
    pub fn counts(&mut self, parts: &[Vec<Article>], measure: Measure) -> Vec<usize> {
        match measure {
            Measure::Sum => parts
                .iter()
                .map(|p| p.iter().map(|&v| self.graph.in_degree(v)).sum())
                .collect(),
            Measure::Union => parts.iter().map(|p| self.union_of(p)).collect(),
            Measure::Fusion => {
                for (i, p) in parts.iter().enumerate() {
                    for &v in p {
                        self.owner[v] = i as u32;
                    }
                }
                if self.part_seen.len() < parts.len() {
                    self.part_seen.resize(parts.len(), 0);
                }
                let mut out = Vec::with_capacity(parts.len());
                for (i, p) in parts.iter().enumerate() {
                    let stamp = self.next_stamp();
                    let mut count = 0;
                    for &v in p {
                        for &u in self.graph.citers(v) {
                            let o = self.owner[u];
                            if o == NONE {
                                if self.seen[u] != stamp {
                                    self.seen[u] = stamp;
                                    count += 1;
                                }
                            } else if o as usize != i && self.part_seen[o as usize] != stamp {
                                self.part_seen[o as usize] = stamp;
                                count += 1;
                            }
                        }
                    }
                    out.push(count);
                }
                for p in parts {
                    for &v in p {
                        self.owner[v] = NONE;
                    }
                }
                out
            }
        }
    }

    pub fn h_index(&mut self, parts: &[Vec<Article>], measure: Measure) -> usize {
        h_index_of(self.counts(parts, measure))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{FOUR_CITERS, SIX_ARTICLES};
    use crate::instance::parse_instance;

    fn part(inst: &crate::instance::ProblemInstance, ids: &[&str]) -> Vec<Article> {
        ids.iter().map(|t| inst.graph.index_of_str(t).unwrap()).collect()
    }

    #[test]
    fn six_articles_counts() {
        let inst = parse_instance(SIX_ARTICLES).unwrap();
        let p = inst.profile.partition();
        let g = &inst.graph;
        let v45 = part(&inst, &["v4", "v5"]);
        let v6 = part(&inst, &["v6"]);
        assert_eq!(citations(g, p, &v45, Measure::Sum).unwrap(), 3);
        assert_eq!(citations(g, p, &v45, Measure::Union).unwrap(), 2);
        assert_eq!(citations(g, p, &v6, Measure::Union).unwrap(), 2);
        assert_eq!(citations(g, p, &v45, Measure::Fusion).unwrap(), 1);
        assert_eq!(citations(g, p, &v6, Measure::Fusion).unwrap(), 1);
    }

    #[test]
    fn six_articles_h_index() {
        let inst = parse_instance(SIX_ARTICLES).unwrap();
        assert_eq!(h_index(&inst.graph, &inst.profile, Measure::Union), 2);
        assert_eq!(h_index(&inst.graph, &inst.profile, Measure::Fusion), 1);
        assert_eq!(h_index(&inst.graph, &inst.profile, Measure::Sum), 2);
    }

    #[test]
    fn fusion_requires_member_part() {
        let inst = parse_instance(SIX_ARTICLES).unwrap();
        let bogus = part(&inst, &["v4"]);
        assert!(citations(&inst.graph, inst.profile.partition(), &bogus, Measure::Fusion).is_err());
        // Sum and Union ignore the partition entirely.
        assert_eq!(
            citations(&inst.graph, inst.profile.partition(), &bogus, Measure::Union).unwrap(),
            1
        );
    }

    #[test]
    fn external_singleton_all_measures_agree() {
        let inst = parse_instance(FOUR_CITERS).unwrap();
        let g = &inst.graph;
        let atomized = Partition::new(inst.profile.owned().iter().map(|&v| vec![v]).collect());
        for v in inst.profile.owned() {
            for m in Measure::ALL {
                assert_eq!(citations(g, &atomized, &[*v], m).unwrap(), g.in_degree(*v));
            }
        }
    }

    #[test]
    fn h_index_basics() {
        assert_eq!(h_index_of(Vec::<usize>::new()), 0);
        assert_eq!(h_index_of([0, 0, 0]), 0);
        assert_eq!(h_index_of([0, 2, 2]), 2);
        assert_eq!(h_index_of([0, 1, 1]), 1);
        assert_eq!(h_index_of([10, 10, 10]), 3);
        assert_eq!(h_index_of([5, 4, 3, 2, 1]), 3);
    }

    #[test]
    fn external_citers_filter_owned() {
        let inst = parse_instance(SIX_ARTICLES).unwrap();
        let owned = inst.profile.owned_mask(inst.graph.article_count());
        let v5 = inst.graph.index_of_str("v5").unwrap();
        let ext: Vec<_> = external_citers(&inst.graph, &owned, v5).collect();
        assert_eq!(ext, vec![inst.graph.index_of_str("v1").unwrap()]);
    }
}
