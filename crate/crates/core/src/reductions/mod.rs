//! Generators that encode hard source problems as splitting instances.
//!
//! * [`reduce_binpacking`]: unary bin packing → cautious dividing, sum measure.
//! * [`reduce_3sat`]: 3-CNF satisfiability → atomizing, fusion measure.
//! * [`reduce_clique`]: clique → conservative atomizing, fusion measure.
//!
//! Each source type also has a brute-force decision procedure, so a
//! generated instance can be checked against its source answer.

mod binpacking;
mod clique;
mod sat;

pub use binpacking::{reduce_binpacking, BinPacking};
pub use clique::{reduce_clique, CliqueOptions};
pub use sat::{reduce_3sat, CnfFormula};

use crate::instance::ProblemInstance;

/// A generated instance plus any caveats about the source input.
#[derive(Debug, Clone)]
pub struct Reduced {
    pub instance: ProblemInstance,
    pub warnings: Vec<String>,
}
