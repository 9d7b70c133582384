//! Assembling instances from string ids, for generators and tests.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{ArticleId, CitationGraph};
use crate::instance::{Operation, ProblemInstance, Variant};
use crate::measures::Measure;
use crate::profile::Profile;

#[derive(Debug, Clone, Default)]
pub struct InstanceBuilder {
    articles: Vec<String>,
    arcs: Vec<(String, String)>,
    owned: Vec<String>,
    parts: Vec<Vec<String>>,
}

impl InstanceBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn article(&mut self, id: impl Into<String>) -> &mut Self {
        self.articles.push(id.into());
        self
    }

    /// Declares an owned article.
    pub fn owned(&mut self, id: impl Into<String>) -> &mut Self {
        let id = id.into();
        self.articles.push(id.clone());
        self.owned.push(id);
        self
    }

    /// `src` cites `dst`.
    pub fn cite(&mut self, src: impl Into<String>, dst: impl Into<String>) -> &mut Self {
        self.arcs.push((src.into(), dst.into()));
        self
    }

    pub fn part<I, S>(&mut self, members: I) -> &mut Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.parts.push(members.into_iter().map(Into::into).collect());
        self
    }

    pub fn graph(&self) -> Result<CitationGraph> {
        let articles = self
            .articles
            .iter()
            .map(|a| ArticleId::new(a.as_str()))
            .collect::<Result<Vec<_>>>()?;
        let arcs = self
            .arcs
            .iter()
            .map(|(s, d)| Ok((ArticleId::new(s.as_str())?, ArticleId::new(d.as_str())?)))
            .collect::<Result<Vec<_>>>()?;
        CitationGraph::new(articles, arcs)
    }

    pub fn profile(&self, graph: &CitationGraph) -> Result<Profile> {
        let index: HashMap<&str, usize> = graph.ids().iter().enumerate().map(|(i, id)| (id.as_str(), i)).collect();
        let look = |id: &String| {
            index
                .get(id.as_str())
                .copied()
                .ok_or_else(|| Error::UnknownArticle(id.clone()))
        };
        let owned = self.owned.iter().map(look).collect::<Result<Vec<_>>>()?;
        let parts = self
            .parts
            .iter()
            .map(|p| p.iter().map(look).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Profile::new(graph, owned, parts)
    }

    pub fn build(
        &self,
        operation: Operation,
        variant: Variant,
        measure: Measure,
        h: usize,
        k: Option<usize>,
    ) -> Result<ProblemInstance> {
        let graph = self.graph()?;
        let profile = self.profile(&graph)?;
        ProblemInstance::new(graph, profile, operation, variant, measure, h, k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::SIX_ARTICLES;
    use crate::instance::parse_instance;

    #[test]
    fn rebuilds_six_articles() {
        let mut b = InstanceBuilder::new();
        b.article("v1");
        for v in ["v2", "v3", "v4", "v5", "v6"] {
            b.owned(v);
        }
        for (s, d) in [("v1", "v4"), ("v1", "v5"), ("v2", "v6"), ("v3", "v6"), ("v4", "v5")] {
            b.cite(s, d);
        }
        b.part(["v2", "v3"]).part(["v4", "v5"]);
        let built = b
            .build(Operation::Atomizing, Variant::Plain, Measure::Fusion, 2, None)
            .unwrap();
        assert_eq!(built, parse_instance(SIX_ARTICLES).unwrap());
    }

    #[test]
    fn unknown_part_member() {
        let mut b = InstanceBuilder::new();
        b.owned("a").part(["a", "b"]);
        let g = b.graph().unwrap();
        assert!(matches!(b.profile(&g), Err(Error::UnknownArticle(_))));
    }
}
