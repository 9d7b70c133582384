//! Exact solvers for raising the h-index of a citation profile by splitting
//! merged articles.
//!
//! A [`Profile`] groups the owned articles of a [`CitationGraph`] into merged
//! articles. A [`ProblemInstance`] asks whether some refinement of that
//! grouping, reachable by atomizing, extracting or dividing parts (optionally
//! under a budget), reaches h-index `h` under a citation [`Measure`].

pub mod builder;
pub mod error;
pub mod experiment;
pub mod fixtures;
pub mod graph;
pub mod instance;
pub mod limits;
pub mod measures;
pub mod oracle;
pub mod partitions;
pub mod profile;
pub mod profile_gen;
pub mod reductions;
pub mod solvers;
pub mod ugraph;
pub mod validate;

pub use builder::InstanceBuilder;
pub use error::{Error, Result};
pub use graph::{Article, ArticleId, CitationGraph};
pub use instance::{parse_instance, parse_profile, Operation, ProblemInstance, Stats, Variant};
pub use limits::Limits;
pub use measures::{citations, h_index, Evaluator, Measure};
pub use oracle::{enumerate_refinements, for_each_refinement, oracle_solve, refinement_count};
pub use profile::{Partition, Profile, Refinement};
pub use solvers::{has_dedicated_solver, solve, Method, SolveResult};
pub use ugraph::UndirectedGraph;
pub use validate::{validate_refinement, ValidityReport, Violation};
