//! Simple undirected graphs with named vertices.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Vertices are kept sorted by name, so index order is name order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UndirectedGraph {
    names: Vec<String>,
    adj: Vec<BTreeSet<usize>>,
    edge_count: usize,
}

impl UndirectedGraph {
    /// Edgeless graph on the given (deduplicated) vertex names.
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: BTreeSet<String> = names.into_iter().map(Into::into).collect();
        let n = names.len();
        UndirectedGraph {
            names: names.into_iter().collect(),
            adj: vec![BTreeSet::new(); n],
            edge_count: 0,
        }
    }

    /// Graph on vertices `0..n`, named by their index.
    pub fn with_vertices(n: usize) -> Self {
        let width = n.saturating_sub(1).to_string().len();
        Self::new((0..n).map(|i| format!("{i:0width$}")))
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::with_vertices(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Adds `{u, v}`; returns `false` if it was already present. Panics on
    /// a self-loop or an out-of-range vertex.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert_ne!(u, v, "self-loop on vertex {u}");
        let fresh = self.adj[u].insert(v);
        self.adj[v].insert(u);
        self.edge_count += fresh as usize;
        fresh
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.binary_search_by(|n| n.as_str().cmp(name)).ok()
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    /// Edges `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.range(u + 1..).map(move |&v| (u, v)))
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    /// Whether some `k` vertices are pairwise adjacent (backtracking).
    pub fn has_clique(&self, k: usize) -> bool {
        fn extend(g: &UndirectedGraph, candidates: &[usize], need: usize) -> bool {
            if need == 0 {
                return true;
            }
            for (i, &v) in candidates.iter().enumerate() {
                if candidates.len() - i < need {
                    break;
                }
                let next: Vec<usize> = candidates[i + 1..]
                    .iter()
                    .copied()
                    .filter(|&w| g.has_edge(v, w))
                    .collect();
                if extend(g, &next, need - 1) {
                    return true;
                }
            }
            false
        }
        let all: Vec<usize> = (0..self.vertex_count()).collect();
        extend(self, &all, k)
    }

    /// Reads an edge list: `u v` per line declares an edge, a lone `v`
    /// declares an isolated vertex. `#` starts a comment.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut names = BTreeSet::new();
        let mut pairs = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match tokens.as_slice() {
                [] => {}
                [v] => {
                    names.insert(v.to_string());
                }
                [u, v] => {
                    if u == v {
                        return Err(Error::Syntax {
                            line: i + 1,
                            message: format!("self-loop on {u}"),
                        });
                    }
                    names.insert(u.to_string());
                    names.insert(v.to_string());
                    pairs.push((u.to_string(), v.to_string()));
                }
                _ => {
                    return Err(Error::Syntax {
                        line: i + 1,
                        message: "expected `u v` or `v`".into(),
                    })
                }
            }
        }
        let mut g = UndirectedGraph::new(names);
        for (u, v) in pairs {
            let (u, v) = (g.index_of(&u).unwrap(), g.index_of(&v).unwrap());
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for v in 0..self.vertex_count() {
            if self.degree(v) == 0 {
                out.push_str(&self.names[v]);
                out.push('\n');
            }
        }
        for (u, v) in self.edges() {
            out.push_str(&format!("{} {}\n", self.names[u], self.names[v]));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_round_trip() {
        let g = UndirectedGraph::parse_edge_list("b a\nc\na b # again\n").unwrap();
        assert_eq!(g.names(), ["a", "b", "c"]);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(UndirectedGraph::parse_edge_list(&g.to_edge_list()).unwrap(), g);
        assert!(UndirectedGraph::parse_edge_list("a a").is_err());
        assert!(UndirectedGraph::parse_edge_list("a b c").is_err());
    }

    #[test]
    fn cliques() {
        let k4 = UndirectedGraph::complete(4);
        assert_eq!(k4.edge_count(), 6);
        assert!(k4.has_clique(4));
        assert!(!k4.has_clique(5));
        let mut g = k4.clone();
        g.adj[0].remove(&1);
        g.adj[1].remove(&0);
        assert!(!g.has_clique(4));
        assert!(g.has_clique(3));
        assert!(g.has_clique(0));
        assert!(UndirectedGraph::with_vertices(3).has_clique(1));
        assert!(!UndirectedGraph::with_vertices(3).has_clique(2));
    }
}
