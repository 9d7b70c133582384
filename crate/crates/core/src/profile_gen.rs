//! Merged profiles from article titles, and random instances for testing.
//!
//! Two articles are *compatible* when their title word sets overlap enough:
//! `|T(u) ∩ T(v)| >= t·|T(u) ∪ T(v)|`. Merged articles are then formed by
//! repeatedly cutting a greedy maximal clique out of the compatibility graph.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::builder::InstanceBuilder;
use crate::error::{Error, Result};
use crate::graph::{Article, ArticleId, CitationGraph};
use crate::instance::{Operation, ProblemInstance, Variant};
use crate::measures::Measure;
use crate::profile::Profile;
use crate::ugraph::UndirectedGraph;

/// Lowercase alphanumeric runs of `title`.
pub fn title_words(title: &str) -> BTreeSet<String> {
    title
        .split(|c: char| !c.is_alphanumeric())
        .filter(|w| !w.is_empty())
        .map(str::to_lowercase)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TitledArticle {
    pub id: ArticleId,
    pub title: String,
}

impl TitledArticle {
    pub fn words(&self) -> BTreeSet<String> {
        title_words(&self.title)
    }
}

/// One `<id>\t<title>` per line; blank lines and `#` lines are skipped.
pub fn parse_titles(text: &str) -> Result<Vec<TitledArticle>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let (id, title) = line.split_once('\t').ok_or_else(|| Error::Syntax {
            line: i + 1,
            message: "expected `<id>\\t<title>`".into(),
        })?;
        out.push(TitledArticle {
            id: ArticleId::new(id.trim())?,
            title: title.to_string(),
        });
    }
    Ok(out)
}

/// A threshold `t` in `[0, 1]`, held as an exact fraction.
#[derive(Debug, Clone, Copy)]
pub struct CompatibilityThreshold {
    num: u64,
    den: u64,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl CompatibilityThreshold {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num > den {
            return Err(Error::InvalidReduction(format!("threshold {num}/{den} outside [0, 1]")));
        }
        let g = gcd(num, den);
        Ok(CompatibilityThreshold {
            num: num / g,
            den: den / g,
        })
    }

    pub fn numerator(self) -> u64 {
        self.num
    }

    pub fn denominator(self) -> u64 {
        self.den
    }

    /// `|a ∩ b| >= t·|a ∪ b|`, with both sets non-empty.
    pub fn admits(self, a: &BTreeSet<String>, b: &BTreeSet<String>) -> bool {
        if a.is_empty() || b.is_empty() {
            return false;
        }
        let common = a.intersection(b).count() as u64;
        let union = (a.len() + b.len()) as u64 - common;
        common * self.den >= self.num * union
    }
}

impl PartialEq for CompatibilityThreshold {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for CompatibilityThreshold {}

impl PartialOrd for CompatibilityThreshold {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CompatibilityThreshold {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

/// Accepts `0.4`, `1`, `.25` or `2/5`.
impl FromStr for CompatibilityThreshold {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidReduction(format!("bad threshold {s:?}"));
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            return Self::new(n.parse().map_err(|_| bad())?, d.parse().map_err(|_| bad())?);
        }
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if frac.len() > 18 || !frac.bytes().all(|b| b.is_ascii_digit()) || (int.is_empty() && frac.is_empty()) {
            return Err(bad());
        }
        let int: u64 = if int.is_empty() {
            0
        } else {
            int.parse().map_err(|_| bad())?
        };
        let den = 10u64.pow(frac.len() as u32);
        let frac: u64 = if frac.is_empty() {
            0
        } else {
            frac.parse().map_err(|_| bad())?
        };
        let num = int.checked_mul(den).and_then(|x| x.checked_add(frac)).ok_or_else(bad)?;
        Self::new(num, den)
    }
}

/// Short decimal when exact, `num/den` otherwise.
impl fmt::Display for CompatibilityThreshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == self.den {
            return write!(f, "1");
        }
        if self.num == 0 {
            return write!(f, "0");
        }
        for digits in 1..=6u32 {
            let scale = 10u64.pow(digits);
            if scale % self.den == 0 {
                let value = self.num * (scale / self.den);
                let text = format!("{value:0width$}", width = digits as usize);
                return write!(f, "0.{}", text.trim_end_matches('0'));
            }
        }
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Vertices are the article ids; an edge joins compatible articles.
pub fn compatibility_graph(articles: &[TitledArticle], t: CompatibilityThreshold) -> UndirectedGraph {
    let mut g = UndirectedGraph::new(articles.iter().map(|a| a.id.as_str().to_string()));
    let mut sorted: Vec<(usize, BTreeSet<String>)> = articles
        .iter()
        .map(|a| (g.index_of(a.id.as_str()).unwrap(), a.words()))
        .collect();
    sorted.sort_by_key(|(i, _)| *i);
    sorted.dedup_by_key(|(i, _)| *i);
    for (x, (u, wu)) in sorted.iter().enumerate() {
        for (v, wv) in &sorted[x + 1..] {
            if t.admits(wu, wv) {
                g.add_edge(*u, *v);
            }
        }
    }
    g
}

/// Repeatedly removes a greedy maximal clique while edges remain: seed is
/// the smallest vertex of maximum degree, then the smallest vertex adjacent
/// to all members joins until none is left. Remaining vertices become
/// singletons. Parts are returned in canonical order.
pub fn greedy_merge(g: &UndirectedGraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut parts = Vec::new();
    while let Some(seed) = (0..n)
        .filter(|&v| alive[v] && degree[v] > 0)
        .max_by(|&a, &b| degree[a].cmp(&degree[b]).then(b.cmp(&a)))
    {
        let mut clique = vec![seed];
        for &c in g.neighbors(seed) {
            if alive[c] && clique.iter().all(|&m| g.has_edge(c, m)) {
                clique.push(c);
            }
        }
        debug_assert!(
            (0..n).all(|v| !alive[v] || clique.contains(&v) || !clique.iter().all(|&m| g.has_edge(v, m))),
            "greedy clique is not maximal"
        );
        for &v in &clique {
            alive[v] = false;
            for &w in g.neighbors(v) {
                degree[w] -= 1;
            }
        }
        clique.sort_unstable();
        parts.push(clique);
    }
    parts.extend((0..n).filter(|&v| alive[v]).map(|v| vec![v]));
    parts.sort_unstable();
    parts
}

/// Profile over `graph` whose owned articles are the titled ones, merged
/// by [`greedy_merge`] on their compatibility graph.
pub fn merge_by_titles(
    graph: &CitationGraph,
    articles: &[TitledArticle],
    t: CompatibilityThreshold,
) -> Result<Profile> {
    let compat = compatibility_graph(articles, t);
    let index = |v: usize| {
        graph
            .index_of_str(compat.name(v))
            .ok_or_else(|| Error::UnknownArticle(compat.name(v).to_string()))
    };
    let owned = (0..compat.vertex_count())
        .map(index)
        .collect::<Result<Vec<Article>>>()?;
    let parts = greedy_merge(&compat)
        .into_iter()
        .map(|p| p.into_iter().map(index).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Profile::new(graph, owned, parts)
}

/// Random acyclic instance: `n_articles` owned articles `w<i>`,
/// `n_external` others `x<i>`, each arc consistent with a random
/// topological order present with probability `arc_density`, and owned
/// articles grouped in random order, each joining the previous group with
/// probability `merge_rate`. The problem is atomizing/plain/union, `h = 0`.
pub fn random_profile(
    n_articles: usize,
    n_external: usize,
    arc_density: f64,
    merge_rate: f64,
    seed: u64,
) -> ProblemInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = InstanceBuilder::new();
    let mut order: Vec<String> = Vec::with_capacity(n_articles + n_external);
    for i in 0..n_articles {
        let id = format!("w{i}");
        b.owned(id.clone());
        order.push(id);
    }
    for i in 0..n_external {
        let id = format!("x{i}");
        b.article(id.clone());
        order.push(id);
    }
    order.shuffle(&mut rng);
    for j in 0..order.len() {
        for i in 0..j {
            if rng.gen_bool(arc_density) {
                b.cite(order[j].clone(), order[i].clone());
            }
        }
    }
    let mut owned: Vec<usize> = (0..n_articles).collect();
    owned.shuffle(&mut rng);
    let mut groups: Vec<Vec<String>> = Vec::new();
    for v in owned {
        let id = format!("w{v}");
        match groups.last_mut() {
            Some(g) if rng.gen_bool(merge_rate) => g.push(id),
            _ => groups.push(vec![id]),
        }
    }
    for g in groups.into_iter().filter(|g| g.len() > 1) {
        b.part(g);
    }
    b.build(Operation::Atomizing, Variant::Plain, Measure::Union, 0, None)
        .expect("generated instance is well formed")
}

/// A synthetic author: citation graph, owned articles with titles.
#[derive(Debug, Clone)]
pub struct SyntheticAuthor {
    pub graph: CitationGraph,
    pub titles: Vec<TitledArticle>,
}

impl SyntheticAuthor {
    pub fn profile(&self, t: CompatibilityThreshold) -> Result<Profile> {
        merge_by_titles(&self.graph, &self.titles, t)
    }
}

const VOCABULARY: usize = 600;

/// An author with `works` works, each published in one to four versions.
/// Versions of a work share the title or differ in one word, and draw their
/// citers from a common pool, so merging them overlaps citations. Later
/// articles occasionally cite earlier ones of the same author.
pub fn synthetic_author(works: usize, seed: u64) -> SyntheticAuthor {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_external = 4 * works + 10;
    let mut b = InstanceBuilder::new();
    for i in 0..n_external {
        b.article(format!("x{i:03}"));
    }
    let word = |i: usize| format!("t{i}");
    let mut titles = Vec::new();
    let mut ids: Vec<String> = Vec::new();
    for _ in 0..works {
        let len = rng.gen_range(4..=6);
        let mut words: Vec<usize> = rand::seq::index::sample(&mut rng, VOCABULARY, len).into_vec();
        let versions = *[1, 1, 1, 2, 2, 3, 4].choose(&mut rng).unwrap();
        let popularity = (rng.gen::<f64>().powi(2) * 14.0) as usize;
        let pool_size = (popularity * 3 / 2 + 1).min(n_external);
        let pool: Vec<usize> = rand::seq::index::sample(&mut rng, n_external, pool_size).into_vec();
        for _ in 0..versions {
            if rng.gen_bool(0.4) {
                let slot = rng.gen_range(0..words.len());
                words[slot] = rng.gen_range(0..VOCABULARY);
            }
            let id = format!("a{:03}", ids.len());
            b.owned(id.clone());
            let degree = (popularity as f64 * rng.gen_range(0.3..1.0)).round() as usize;
            for &c in pool.choose_multiple(&mut rng, degree.min(pool.len())) {
                b.cite(format!("x{c:03}"), id.clone());
            }
            if !ids.is_empty() && rng.gen_bool(0.3) {
                let earlier = &ids[rng.gen_range(0..ids.len())];
                b.cite(id.clone(), earlier.clone());
            }
            let title: Vec<String> = words.iter().map(|&w| word(w)).collect();
            titles.push((id.clone(), title.join(" ")));
            ids.push(id);
        }
    }
    let graph = b.graph().expect("generated graph is well formed");
    let titles = titles
        .into_iter()
        .map(|(id, title)| TitledArticle {
            id: ArticleId::new(id).unwrap(),
            title,
        })
        .collect();
    SyntheticAuthor { graph, titles }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::parse_instance;

    fn t(s: &str) -> CompatibilityThreshold {
        s.parse().unwrap()
    }

    fn titled(pairs: &[(&str, &str)]) -> Vec<TitledArticle> {
        pairs
            .iter()
            .map(|(id, title)| TitledArticle {
                id: ArticleId::new(*id).unwrap(),
                title: title.to_string(),
            })
            .collect()
    }

    #[test]
    fn thresholds_parse_exactly() {
        assert_eq!(t("0.4"), t("2/5"));
        assert_eq!(t(".25").to_string(), "0.25");
        assert_eq!(t("1").to_string(), "1");
        assert_eq!(t("0").to_string(), "0");
        assert_eq!(t("1/3").to_string(), "1/3");
        assert!(t("0.6") > t("0.4"));
        for bad in ["1.5", "-0.1", "abc", "3/2", "", "0.4.1"] {
            assert!(bad.parse::<CompatibilityThreshold>().is_err(), "{bad}");
        }
    }

    #[test]
    fn tokenization() {
        let w = title_words("On h-Index Manipulation, Part 2");
        let want: BTreeSet<String> = ["on", "h", "index", "manipulation", "part", "2"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(w, want);
    }

    #[test]
    fn threshold_boundaries() {
        let arts = titled(&[("u", "a b c"), ("v", "a b d")]);
        assert_eq!(compatibility_graph(&arts, t("0.5")).edge_count(), 1);
        assert_eq!(compatibility_graph(&arts, t("0.6")).edge_count(), 0);

        let arts = titled(&[("p", "x y"), ("q", "z"), ("r", "Y x"), ("s", "")]);
        // t = 0 joins every pair of non-empty titles
        assert_eq!(compatibility_graph(&arts, t("0")).edge_count(), 3);
        let same = compatibility_graph(&arts, t("1"));
        assert_eq!(same.edge_count(), 1);
        assert!(same.has_edge(same.index_of("p").unwrap(), same.index_of("r").unwrap()));
    }

    #[test]
    fn greedy_merge_examples() {
        let tri = UndirectedGraph::complete(3);
        assert_eq!(greedy_merge(&tri), vec![vec![0, 1, 2]]);
        let path = UndirectedGraph::parse_edge_list("a b\nb c\n").unwrap();
        assert_eq!(greedy_merge(&path), vec![vec![0, 1], vec![2]]);
        let empty = UndirectedGraph::with_vertices(3);
        assert_eq!(greedy_merge(&empty), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn random_profiles() {
        let a = random_profile(8, 4, 0.3, 0.5, 42);
        assert_eq!(a, random_profile(8, 4, 0.3, 0.5, 42));
        assert!(a.graph.is_acyclic());
        assert_eq!(parse_instance(&a.to_text()).unwrap(), a);
        let flat = random_profile(8, 4, 0.3, 0.0, 7);
        assert!(flat.profile.parts().iter().all(|p| p.len() == 1));
    }

    #[test]
    fn synthetic_authors_merge_versions() {
        let author = synthetic_author(15, 3);
        assert!(author.graph.is_acyclic());
        let loose = author.profile(t("0.4")).unwrap();
        assert!(loose.parts().iter().any(|p| p.len() > 1));
        assert_eq!(loose.owned().len(), author.titles.len());
    }
}
