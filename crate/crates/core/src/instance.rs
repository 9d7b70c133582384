//! Problem instances and the line-based instance file format.
//!
//! ```text
//! # comment
//! article <id>
//! own <id>
//! cite <src> <dst>
//! part <id> <id> ...
//! problem atomizing|extracting|dividing
//! variant plain|conservative|cautious
//! measure sum|union|fusion
//! h <int>
//! k <int>
//! ```
//!
//! Directives may appear in any order. `problem`, `variant` and `measure`
//! default to `atomizing`, `plain` and `union`; `h` is mandatory and `k` is
//! mandatory exactly when the variant is not `plain`.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{ArticleId, CitationGraph};
use crate::measures::Measure;
use crate::profile::Profile;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Operation {
    Atomizing,
    Extracting,
    Dividing,
}

impl Operation {
    pub const ALL: [Operation; 3] = [Operation::Atomizing, Operation::Extracting, Operation::Dividing];

    pub fn as_str(self) -> &'static str {
        match self {
            Operation::Atomizing => "atomizing",
            Operation::Extracting => "extracting",
            Operation::Dividing => "dividing",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variant {
    Plain,
    /// At most `k` parts of `P` change: `|P \ R| <= k`.
    Conservative,
    /// At most `k` split operations: `|R| - |P| <= k`.
    Cautious,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Plain, Variant::Conservative, Variant::Cautious];

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Plain => "plain",
            Variant::Conservative => "conservative",
            Variant::Cautious => "cautious",
        }
    }
}

macro_rules! impl_tag {
    ($ty:ty, $what:literal, $($s:literal => $v:expr),+) => {
        impl FromStr for $ty {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($s => Ok($v),)+
                    other => Err(Error::Syntax {
                        line: 0,
                        message: format!(concat!("unknown ", $what, " {:?}"), other),
                    }),
                }
            }
        }
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }
    };
}

impl_tag!(Operation, "problem", "atomizing" => Operation::Atomizing,
    "extracting" => Operation::Extracting, "dividing" => Operation::Dividing);
impl_tag!(Variant, "variant", "plain" => Variant::Plain,
    "conservative" => Variant::Conservative, "cautious" => Variant::Cautious);

/// Size statistics of an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Stats {
    /// `|V|`
    pub n: usize,
    /// `|A|`
    pub m: usize,
    /// Largest part of `P`.
    pub s: usize,
}

/// A full decision instance: graph, profile, operation, variant, measure,
/// target `h` and (for non-plain variants) budget `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemInstance {
    pub graph: CitationGraph,
    pub profile: Profile,
    pub operation: Operation,
    pub variant: Variant,
    pub measure: Measure,
    pub h: usize,
    pub k: Option<usize>,
}

impl ProblemInstance {
    /// Validates the budget and normalizes cautious atomizing to
    /// conservative atomizing (the two coincide for atomizing).
    pub fn new(
        graph: CitationGraph,
        profile: Profile,
        operation: Operation,
        variant: Variant,
        measure: Measure,
        h: usize,
        k: Option<usize>,
    ) -> Result<Self> {
        match (variant, k) {
            (Variant::Plain, Some(_)) => return Err(Error::UnexpectedBudget),
            (Variant::Conservative | Variant::Cautious, None) => return Err(Error::Missing("k")),
            _ => {}
        }
        let variant = match (operation, variant) {
            (Operation::Atomizing, Variant::Cautious) => Variant::Conservative,
            (_, v) => v,
        };
        Ok(ProblemInstance {
            graph,
            profile,
            operation,
            variant,
            measure,
            h,
            k,
        })
    }

    /// Same graph and profile with different problem parameters.
    pub fn with_problem(
        &self,
        operation: Operation,
        variant: Variant,
        measure: Measure,
        h: usize,
        k: Option<usize>,
    ) -> Result<Self> {
        ProblemInstance::new(
            self.graph.clone(),
            self.profile.clone(),
            operation,
            variant,
            measure,
            h,
            k,
        )
    }

    pub fn stats(&self) -> Stats {
        Stats {
            n: self.graph.article_count(),
            m: self.graph.arc_count(),
            s: self.profile.partition().max_part_size(),
        }
    }

    /// Budget as an operation count; `usize::MAX` for the plain variant.
    pub fn budget(&self) -> usize {
        self.k.unwrap_or(usize::MAX)
    }

    /// Canonical text form: header directives, then sorted `article`, `own`,
    /// `cite` lines and one `part` line per non-singleton part.
    pub fn to_text(&self) -> String {
        let g = &self.graph;
        let mut out = String::new();
        let _ = writeln!(out, "problem {}", self.operation);
        let _ = writeln!(out, "variant {}", self.variant);
        let _ = writeln!(out, "measure {}", self.measure);
        let _ = writeln!(out, "h {}", self.h);
        if let Some(k) = self.k {
            let _ = writeln!(out, "k {k}");
        }
        for id in g.ids() {
            let _ = writeln!(out, "article {id}");
        }
        for &v in self.profile.owned() {
            let _ = writeln!(out, "own {}", g.id(v));
        }
        for (u, v) in g.arcs() {
            let _ = writeln!(out, "cite {} {}", g.id(u), g.id(v));
        }
        for part in self.profile.parts().iter().filter(|p| p.len() > 1) {
            out.push_str("part");
            for &v in part {
                let _ = write!(out, " {}", g.id(v));
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for ProblemInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for ProblemInstance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_instance(s)
    }
}

struct Parsed {
    graph: CitationGraph,
    profile: Profile,
    operation: Option<Operation>,
    variant: Option<Variant>,
    measure: Option<Measure>,
    h: Option<usize>,
    k: Option<usize>,
}

/// Parses and validates an instance file.
pub fn parse_instance(text: &str) -> Result<ProblemInstance> {
    let p = parse(text)?;
    ProblemInstance::new(
        p.graph,
        p.profile,
        p.operation.unwrap_or(Operation::Atomizing),
        p.variant.unwrap_or(Variant::Plain),
        p.measure.unwrap_or(Measure::Union),
        p.h.ok_or(Error::Missing("h"))?,
        p.k,
    )
}

/// Graph and profile of an instance file; problem directives are checked
/// for syntax but otherwise ignored, and `h` may be absent.
pub fn parse_profile(text: &str) -> Result<(CitationGraph, Profile)> {
    let p = parse(text)?;
    Ok((p.graph, p.profile))
}

fn parse(text: &str) -> Result<Parsed> {
    let mut articles = Vec::new();
    let mut owned = Vec::new();
    let mut arcs = Vec::new();
    let mut parts: Vec<Vec<ArticleId>> = Vec::new();
    let mut operation = None;
    let mut variant = None;
    let mut measure = None;
    let mut h = None;
    let mut k = None;

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = content.split_whitespace();
        let Some(keyword) = tokens.next() else { continue };
        let args: Vec<&str> = tokens.collect();
        let syntax = |message: String| Error::Syntax { line, message };
        let id = |t: &str| ArticleId::new(t).map_err(|e| syntax(e.to_string()));
        let exactly = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(syntax(format!(
                    "`{keyword}` expects {n} argument(s), got {}",
                    args.len()
                )))
            }
        };
        let tag = |e: Error| match e {
            Error::Syntax { message, .. } => syntax(message),
            other => other,
        };
        let int = |t: &str| {
            t.parse::<usize>()
                .map_err(|_| syntax(format!("expected a non-negative integer, got {t:?}")))
        };
        match keyword {
            "article" => {
                exactly(1)?;
                articles.push(id(args[0])?);
            }
            "own" => {
                exactly(1)?;
                owned.push(id(args[0])?);
            }
            "cite" => {
                exactly(2)?;
                arcs.push((id(args[0])?, id(args[1])?));
            }
            "part" => {
                if args.is_empty() {
                    return Err(syntax("`part` needs at least one article".into()));
                }
                parts.push(args.iter().map(|t| id(t)).collect::<Result<_>>()?);
            }
            "problem" => {
                exactly(1)?;
                operation = Some(args[0].parse::<Operation>().map_err(tag)?);
            }
            "variant" => {
                exactly(1)?;
                variant = Some(args[0].parse::<Variant>().map_err(tag)?);
            }
            "measure" => {
                exactly(1)?;
                measure = Some(args[0].parse::<Measure>().map_err(tag)?);
            }
            "h" => {
                exactly(1)?;
                h = Some(int(args[0])?);
            }
            "k" => {
                exactly(1)?;
                k = Some(int(args[0])?);
            }
            other => return Err(syntax(format!("unknown directive {other:?}"))),
        }
    }

    let graph = CitationGraph::new(articles, arcs)?;
    let resolve = |id: &ArticleId| graph.index_of(id).ok_or_else(|| Error::UnknownArticle(id.to_string()));
    let mut owned_idx = Vec::with_capacity(owned.len());
    for id in &owned {
        owned_idx.push(resolve(id)?);
    }
    let mut part_idx = Vec::with_capacity(parts.len());
    for part in &parts {
        part_idx.push(part.iter().map(resolve).collect::<Result<Vec<_>>>()?);
    }
    let profile = Profile::new(&graph, owned_idx, part_idx)?;
    Ok(Parsed {
        graph,
        profile,
        operation,
        variant,
        measure,
        h,
        k,
    })
}
