use crate::builder::InstanceBuilder;
use crate::error::{Error, Result};
use crate::instance::{Operation, Variant};
use crate::measures::Measure;
use crate::ugraph::UndirectedGraph;

use super::Reduced;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CliqueOptions {
    /// Atomizing gives conservative atomizing with budget `k`; extracting
    /// and dividing give the cautious variant with budget `k·(r-1)`, where
    /// `r` is the size of each vertex part.
    pub operation: Operation,
    /// For `k < 4`, add `4 - k` vertices adjacent to everything and look
    /// for a 4-clique instead. Without it the construction is unsound for
    /// `k = 3` (a star with three leaves already reaches the target).
    pub pad_small_k: bool,
}

impl Default for CliqueOptions {
    fn default() -> Self {
        CliqueOptions {
            operation: Operation::Atomizing,
            pad_small_k: false,
        }
    }
}

fn pad(g: &UndirectedGraph, extra: usize) -> UndirectedGraph {
    let mut names: Vec<String> = g.names().to_vec();
    let mut added = Vec::new();
    let mut i = 0;
    while added.len() < extra {
        i += 1;
        let name = format!("pad{i}");
        if g.index_of(&name).is_none() {
            added.push(name.clone());
            names.push(name);
        }
    }
    let mut out = UndirectedGraph::new(names);
    for (u, v) in g.edges() {
        let (u, v) = (out.index_of(g.name(u)).unwrap(), out.index_of(g.name(v)).unwrap());
        out.add_edge(u, v);
    }
    for name in &added {
        let p = out.index_of(name).unwrap();
        for v in 0..out.vertex_count() {
            if v != p {
                out.add_edge(p, v);
            }
        }
    }
    out
}

/// Encodes "does `g` have a `k`-clique" as atomizing under the fusion
/// measure with `h = C(k,2)`.
///
/// Vertex `v` becomes a merged part `R<v>_1..R<v>_r` with `r = ⌈C(k,2)/2⌉`;
/// edge `{v,w}` becomes a singleton `e_<v>_<w>` cited by every article of
/// both parts. An edge article reaches `h` only once both endpoint parts
/// are atomized, and `k` atomizations produce `C(k,2)` such edges only on
/// a clique.
pub fn reduce_clique(g: &UndirectedGraph, k: usize, options: CliqueOptions) -> Result<Reduced> {
    if k == 0 {
        return Err(Error::InvalidReduction("clique size must be positive".into()));
    }
    let mut warnings = Vec::new();
    let (graph, k) = if options.pad_small_k && k < 4 {
        warnings.push(format!("added {} universal vertices; looking for a 4-clique", 4 - k));
        (pad(g, 4 - k), 4)
    } else {
        if k < 4 {
            warnings.push(format!(
                "k = {k} < 4: the encoding may accept graphs without a {k}-clique"
            ));
        }
        (g.clone(), k)
    };
    let h = k * (k - 1) / 2;
    let r = h.div_ceil(2).max(1);
    let mut b = InstanceBuilder::new();
    let member = |v: usize, l: usize| format!("R{}_{l}", graph.name(v));
    for v in 0..graph.vertex_count() {
        let part: Vec<String> = (1..=r).map(|l| member(v, l)).collect();
        for a in &part {
            b.owned(a.clone());
        }
        b.part(part);
    }
    for (v, w) in graph.edges() {
        let e = format!("e_{}_{}", graph.name(v), graph.name(w));
        b.owned(e.clone());
        for l in 1..=r {
            b.cite(member(v, l), e.clone());
            b.cite(member(w, l), e.clone());
        }
    }
    let (variant, budget) = match options.operation {
        Operation::Atomizing => (Variant::Conservative, k),
        _ => (Variant::Cautious, k * (r - 1)),
    };
    let instance = b.build(options.operation, variant, Measure::Fusion, h, Some(budget))?;
    Ok(Reduced { instance, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::oracle_solve;
    use crate::Limits;

    fn feasible(g: &UndirectedGraph, k: usize, options: CliqueOptions) -> bool {
        let r = reduce_clique(g, k, options).unwrap();
        assert!(r.instance.graph.is_acyclic());
        oracle_solve(&r.instance, &Limits::default()).unwrap().feasible
    }

    #[test]
    fn complete_graph_on_four() {
        let k4 = UndirectedGraph::complete(4);
        let r = reduce_clique(&k4, 4, CliqueOptions::default()).unwrap();
        let inst = &r.instance;
        assert!(r.warnings.is_empty());
        assert_eq!((inst.h, inst.k), (6, Some(4)));
        assert_eq!(inst.profile.parts().iter().filter(|p| p.len() == 3).count(), 4);
        assert_eq!(inst.profile.parts().iter().filter(|p| p.len() == 1).count(), 6);
        assert!(feasible(&k4, 4, CliqueOptions::default()));
    }

    #[test]
    fn missing_edge_breaks_the_clique() {
        let g = UndirectedGraph::parse_edge_list("0 1\n0 2\n0 3\n1 2\n1 3\n").unwrap();
        assert!(!feasible(&g, 4, CliqueOptions::default()));
    }

    #[test]
    fn single_edge_degenerates() {
        let g = UndirectedGraph::complete(2);
        let r = reduce_clique(&g, 2, CliqueOptions::default()).unwrap();
        assert_eq!(r.instance.h, 1);
        assert!(!r.warnings.is_empty());
    }

    /// A star with three leaves has no triangle, yet atomizing its center
    /// alone gives three edge articles 2 + 1 = 3 citations each.
    #[test]
    fn literal_encoding_fails_for_triangles() {
        let star = UndirectedGraph::parse_edge_list("c a\nc b\nc d\n").unwrap();
        assert!(!star.has_clique(3));
        assert!(feasible(&star, 3, CliqueOptions::default()));
        let padded = CliqueOptions {
            pad_small_k: true,
            ..CliqueOptions::default()
        };
        assert!(!feasible(&star, 3, padded));
        assert!(feasible(&UndirectedGraph::complete(3), 3, padded));
    }

    #[test]
    fn other_operations_use_cautious_budget() {
        let k4 = UndirectedGraph::complete(4);
        let options = CliqueOptions {
            operation: Operation::Extracting,
            ..CliqueOptions::default()
        };
        let r = reduce_clique(&k4, 4, options).unwrap();
        assert_eq!(r.instance.variant, Variant::Cautious);
        assert_eq!(r.instance.k, Some(8));
    }
}
