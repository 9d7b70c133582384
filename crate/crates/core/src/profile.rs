//! Profiles (owned articles grouped into merged articles) and refinements.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Article, CitationGraph};

/// A set of disjoint, non-empty parts kept in canonical form: every part
/// sorted ascending and parts ordered by their smallest member.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition(Vec<Vec<Article>>);

impl Partition {
    /// Canonicalizes `parts`. Disjointness is the caller's responsibility;
    /// use [`Partition::try_new`] for untrusted input.
    pub fn new(mut parts: Vec<Vec<Article>>) -> Self {
        for p in parts.iter_mut() {
            p.sort_unstable();
        }
        parts.retain(|p| !p.is_empty());
        // disjoint sorted parts compare like their first elements
        parts.sort_unstable_by_key(|p| p[0]);
        Partition(parts)
    }

    pub fn try_new(parts: Vec<Vec<Article>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for p in &parts {
            if p.is_empty() {
                return Err(Error::EmptyPart);
            }
            for &v in p {
                if !seen.insert(v) {
                    return Err(Error::OverlappingParts(v.to_string()));
                }
            }
        }
        Ok(Partition::new(parts))
    }

    pub fn parts(&self) -> &[Vec<Article>] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_parts(self) -> Vec<Vec<Article>> {
        self.0
    }

    /// All covered articles, ascending.
    pub fn elements(&self) -> Vec<Article> {
        let mut all: Vec<Article> = self.0.iter().flatten().copied().collect();
        all.sort_unstable();
        all
    }

    /// Part index of every article in `0..n`, `None` for uncovered articles.
    pub fn owner_map(&self, n: usize) -> Vec<Option<usize>> {
        let mut owner = vec![None; n];
        for (i, p) in self.0.iter().enumerate() {
            for &v in p {
                owner[v] = Some(i);
            }
        }
        owner
    }

    pub fn max_part_size(&self) -> usize {
        self.0.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// An author profile: owned articles `W` and a partition `P` of `W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    owned: Vec<Article>,
    partition: Partition,
}

impl Profile {
    /// Builds a profile over a graph with `n` articles. Owned articles that
    /// appear in no explicit part become singleton parts.
    pub fn new(graph: &CitationGraph, owned: Vec<Article>, parts: Vec<Vec<Article>>) -> Result<Self> {
        let n = graph.article_count();
        let mut is_owned = vec![false; n];
        for &v in &owned {
            if v >= n {
                return Err(Error::UnknownArticle(v.to_string()));
            }
            is_owned[v] = true;
        }
        let mut covered = vec![false; n];
        for p in &parts {
            if p.is_empty() {
                return Err(Error::EmptyPart);
            }
            for &v in p {
                if v >= n {
                    return Err(Error::UnknownArticle(v.to_string()));
                }
                if !is_owned[v] {
                    return Err(Error::NotOwned(graph.id(v).to_string()));
                }
                if covered[v] {
                    return Err(Error::OverlappingParts(graph.id(v).to_string()));
                }
                covered[v] = true;
            }
        }
        let mut all_parts = parts;
        let mut owned_sorted: Vec<Article> = (0..n).filter(|&v| is_owned[v]).collect();
        all_parts.extend(owned_sorted.iter().filter(|&&v| !covered[v]).map(|&v| vec![v]));
        owned_sorted.dedup();
        Ok(Profile {
            owned: owned_sorted,
            partition: Partition::new(all_parts),
        })
    }

    /// Profile whose owned set is exactly the union of `partition`.
    pub fn from_partition(partition: Partition) -> Self {
        Profile {
            owned: partition.elements(),
            partition,
        }
    }

    pub fn owned(&self) -> &[Article] {
        &self.owned
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn parts(&self) -> &[Vec<Article>] {
        self.partition.parts()
    }

    pub fn owned_mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for &v in &self.owned {
            mask[v] = true;
        }
        mask
    }
}

/// A refinement `R` of a profile's partition, with the originating part of
/// `P` recorded for every part of `R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refinement {
    partition: Partition,
    provenance: Vec<usize>,
}

impl Refinement {
    /// Checks that `partition` covers `W` and that each of its parts lies
    /// inside a single part of `P`.
    pub fn new(profile: &Profile, partition: Partition) -> Result<Self> {
        let n = profile.owned.last().map_or(0, |&v| v + 1);
        let mut owner = vec![u32::MAX; n];
        for (i, p) in profile.partition.parts().iter().enumerate() {
            for &v in p {
                owner[v] = i as u32;
            }
        }
        let mut covered = 0usize;
        let mut seen = vec![false; n];
        let mut provenance = Vec::with_capacity(partition.len());
        for part in partition.parts() {
            for &v in part {
                if v < n {
                    if seen[v] {
                        return Err(Error::OverlappingParts(v.to_string()));
                    }
                    seen[v] = true;
                }
            }
            let origin = |v: Article| owner.get(v).copied().filter(|&o| o != u32::MAX);
            let first =
                origin(part[0]).ok_or_else(|| Error::NotARefinement(format!("article #{} is not owned", part[0])))?;
            if part.iter().any(|&v| origin(v) != Some(first)) {
                return Err(Error::NotARefinement(format!(
                    "part starting at #{} spans several original parts",
                    part[0]
                )));
            }
            covered += part.len();
            provenance.push(first as usize);
        }
        if covered != profile.owned.len() {
            return Err(Error::NotARefinement(format!(
                "covers {covered} of {} owned articles",
                profile.owned.len()
            )));
        }
        Ok(Refinement { partition, provenance })
    }

    /// The unchanged refinement `R = P`.
    pub fn identity(profile: &Profile) -> Self {
        Refinement {
            partition: profile.partition.clone(),
            provenance: (0..profile.partition.len()).collect(),
        }
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn parts(&self) -> &[Vec<Article>] {
        self.partition.parts()
    }

    /// Index into `P.parts()` of the part each part of `R` came from.
    pub fn provenance(&self) -> &[usize] {
        &self.provenance
    }

    /// `|P \ R|`: original parts that were split.
    pub fn parts_changed(&self, profile: &Profile) -> usize {
        let mut pieces = vec![0usize; profile.partition.len()];
        for &o in &self.provenance {
            pieces[o] += 1;
        }
        pieces.iter().filter(|&&c| c > 1).count()
    }

    /// `|R| - |P|`: number of extractions or divisions performed.
    pub fn splits(&self, profile: &Profile) -> usize {
        self.partition.len() - profile.partition.len()
    }
}
