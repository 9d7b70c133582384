//! Citation graphs over opaque article identifiers.
//!
//! Articles are interned into dense indices in ascending [`ArticleId`] order,
//! so "smallest id" and "smallest index" coincide everywhere in the crate.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};

/// Dense index of an article inside one [`CitationGraph`].
pub type Article = usize;

/// Opaque article identifier: non-empty, no whitespace, no `#`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArticleId(String);

impl ArticleId {
    pub fn new(token: impl Into<String>) -> Result<Self> {
        let token = token.into();
        if token.is_empty() || token.chars().any(|c| c.is_whitespace() || c == '#') {
            return Err(Error::InvalidId(token));
        }
        Ok(ArticleId(token))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ArticleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::str::FromStr for ArticleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ArticleId::new(s)
    }
}

/// Neighbour lists packed into one array: the neighbours of `v` are
/// `targets[offsets[v]..offsets[v + 1]]`, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Adjacency {
    offsets: Vec<usize>,
    targets: Vec<Article>,
}

impl Adjacency {
    /// Groups `(from, to)` pairs by `from` with a counting sort.
    fn from_pairs(n: usize, pairs: &[(Article, Article)]) -> Self {
        let mut offsets = vec![0usize; n + 1];
        for &(u, _) in pairs {
            offsets[u + 1] += 1;
        }
        for v in 0..n {
            offsets[v + 1] += offsets[v];
        }
        let mut fill = offsets.clone();
        let mut targets = vec![0; pairs.len()];
        for &(u, v) in pairs {
            targets[fill[u]] = v;
            fill[u] += 1;
        }
        for v in 0..n {
            targets[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        Adjacency { offsets, targets }
    }

    fn of(&self, v: Article) -> &[Article] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    fn len_of(&self, v: Article) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }
}

/// Directed citation graph `D = (V, A)`; an arc `u -> v` means `u` cites `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CitationGraph {
    ids: Vec<ArticleId>,
    lookup: HashMap<ArticleId, Article>,
    citers: Adjacency,
    cited: Adjacency,
}

impl CitationGraph {
    /// Builds a graph, rejecting duplicate articles, duplicate arcs, self-loops
    /// and arcs with undeclared endpoints.
    pub fn new<I, A>(articles: I, arcs: A) -> Result<Self>
    where
        I: IntoIterator<Item = ArticleId>,
        A: IntoIterator<Item = (ArticleId, ArticleId)>,
    {
        let mut set = BTreeSet::new();
        for id in articles {
            if let Some(dup) = set.replace(id) {
                return Err(Error::DuplicateArticle(dup.0));
            }
        }
        let ids: Vec<ArticleId> = set.into_iter().collect();
        let lookup: HashMap<ArticleId, Article> = ids.iter().cloned().enumerate().map(|(i, id)| (id, i)).collect();

        let mut seen = std::collections::HashSet::new();
        let mut pairs = Vec::new();
        for (src, dst) in arcs {
            let s = *lookup.get(&src).ok_or_else(|| Error::UnknownArticle(src.0.clone()))?;
            let d = *lookup.get(&dst).ok_or_else(|| Error::UnknownArticle(dst.0.clone()))?;
            if s == d {
                return Err(Error::SelfLoop(src.0));
            }
            if !seen.insert((s, d)) {
                return Err(Error::DuplicateArc(src.0, dst.0));
            }
            pairs.push((s, d));
        }
        let cited = Adjacency::from_pairs(ids.len(), &pairs);
        let reversed: Vec<(Article, Article)> = pairs.iter().map(|&(s, d)| (d, s)).collect();
        let citers = Adjacency::from_pairs(ids.len(), &reversed);
        Ok(CitationGraph {
            ids,
            lookup,
            citers,
            cited,
        })
    }

    /// Convenience constructor from string tokens.
    pub fn from_tokens(articles: &[&str], arcs: &[(&str, &str)]) -> Result<Self> {
        let articles = articles
            .iter()
            .map(|a| ArticleId::new(*a))
            .collect::<Result<Vec<_>>>()?;
        let arcs = arcs
            .iter()
            .map(|(s, d)| Ok((ArticleId::new(*s)?, ArticleId::new(*d)?)))
            .collect::<Result<Vec<_>>>()?;
        CitationGraph::new(articles, arcs)
    }

    /// `n = |V|`
    pub fn article_count(&self) -> usize {
        self.ids.len()
    }

    /// `m = |A|`
    pub fn arc_count(&self) -> usize {
        self.cited.targets.len()
    }

    pub fn id(&self, v: Article) -> &ArticleId {
        &self.ids[v]
    }

    pub fn ids(&self) -> &[ArticleId] {
        &self.ids
    }

    pub fn index_of(&self, id: &ArticleId) -> Option<Article> {
        self.lookup.get(id).copied()
    }

    pub fn index_of_str(&self, token: &str) -> Option<Article> {
        ArticleId::new(token).ok().and_then(|id| self.index_of(&id))
    }

    /// Articles citing `v`, ascending.
    pub fn citers(&self, v: Article) -> &[Article] {
        self.citers.of(v)
    }

    /// Articles cited by `v`, ascending.
    pub fn cited_by(&self, v: Article) -> &[Article] {
        self.cited.of(v)
    }

    pub fn in_degree(&self, v: Article) -> usize {
        self.citers.len_of(v)
    }

    pub fn arcs(&self) -> impl Iterator<Item = (Article, Article)> + '_ {
        (0..self.article_count()).flat_map(move |u| self.cited_by(u).iter().map(move |&v| (u, v)))
    }

    /// True if the graph has a topological order (Kahn's algorithm).
    pub fn is_acyclic(&self) -> bool {
        let mut indeg: Vec<usize> = (0..self.article_count()).map(|v| self.in_degree(v)).collect();
        let mut stack: Vec<Article> = (0..indeg.len()).filter(|&v| indeg[v] == 0).collect();
        let mut visited = 0;
        while let Some(u) = stack.pop() {
            visited += 1;
            for &v in self.cited_by(u) {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    stack.push(v);
                }
            }
        }
        visited == self.article_count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_ids() {
        assert!(ArticleId::new("").is_err());
        assert!(ArticleId::new("a b").is_err());
        assert!(ArticleId::new("a#b").is_err());
        assert!(ArticleId::new("XF1_3").is_ok());
    }

    #[test]
    fn indices_follow_id_order() {
        let g = CitationGraph::from_tokens(&["b", "a", "c"], &[("c", "a"), ("b", "a")]).unwrap();
        assert_eq!(g.id(0).as_str(), "a");
        assert_eq!(g.citers(0), &[1, 2]);
        assert_eq!(g.in_degree(0), 2);
        assert_eq!(g.arc_count(), 2);
    }

    #[test]
    fn structural_errors() {
        assert_eq!(
            CitationGraph::from_tokens(&["a", "a"], &[]),
            Err(Error::DuplicateArticle("a".into()))
        );
        assert!(matches!(
            CitationGraph::from_tokens(&["a"], &[("a", "b")]),
            Err(Error::UnknownArticle(_))
        ));
        assert!(matches!(
            CitationGraph::from_tokens(&["a", "b"], &[("a", "b"), ("a", "b")]),
            Err(Error::DuplicateArc(..))
        ));
        assert!(matches!(
            CitationGraph::from_tokens(&["a"], &[("a", "a")]),
            Err(Error::SelfLoop(_))
        ));
    }

    #[test]
    fn acyclicity() {
        let dag = CitationGraph::from_tokens(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        assert!(dag.is_acyclic());
        let cyc = CitationGraph::from_tokens(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap();
        assert!(!cyc.is_acyclic());
    }
}
