//! Feasibility conditions of a refinement under each operation and variant.

use crate::graph::Article;
use crate::instance::{Operation, ProblemInstance, Variant};
use crate::profile::{Partition, Profile, Refinement};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Some part of `R` is neither a singleton nor an original part.
    NotAtomizing { part: Vec<Article> },
    /// An original part was split into more than one non-singleton piece.
    NotExtracting { original: Vec<Article> },
    /// `|P \ R| > k`
    TooManyChangedParts { changed: usize, k: usize },
    /// `|R| - |P| > k`
    TooManySplits { splits: usize, k: usize },
}

/// Which operations and budgets a refinement is compatible with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidityReport {
    /// Every part is a singleton or an original part.
    pub atomizing: bool,
    /// At most one non-singleton strict subset per original part.
    pub extracting: bool,
    /// Always true for a refinement.
    pub dividing: bool,
    /// `|P \ R|`
    pub changed_parts: usize,
    /// `|R| - |P|`
    pub splits: usize,
    /// Violations for the instance's own operation, variant and budget.
    pub violations: Vec<Violation>,
}

impl ValidityReport {
    pub fn operation_ok(&self, op: Operation) -> bool {
        match op {
            Operation::Atomizing => self.atomizing,
            Operation::Extracting => self.extracting,
            Operation::Dividing => self.dividing,
        }
    }

    /// Validity under an arbitrary operation, variant and budget.
    pub fn valid_for(&self, op: Operation, variant: Variant, k: Option<usize>) -> bool {
        let variant = match (op, variant) {
            (Operation::Atomizing, Variant::Cautious) => Variant::Conservative,
            (_, v) => v,
        };
        let k = k.unwrap_or(usize::MAX);
        self.operation_ok(op)
            && match variant {
                Variant::Plain => true,
                Variant::Conservative => self.changed_parts <= k,
                Variant::Cautious => self.splits <= k,
            }
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `r` against the instance's operation, variant and budget.
pub fn validate_refinement(instance: &ProblemInstance, r: &Refinement) -> ValidityReport {
    let mut report = classify(&instance.profile, r);
    let violations = &mut report.violations;
    match instance.operation {
        Operation::Atomizing if !report.atomizing => violations.extend(non_atomizing_parts(&instance.profile, r)),
        Operation::Extracting if !report.extracting => {
            violations.extend(non_extracting_originals(&instance.profile, r))
        }
        _ => {}
    }
    let k = instance.budget();
    match instance.variant {
        Variant::Conservative if report.changed_parts > k => violations.push(Violation::TooManyChangedParts {
            changed: report.changed_parts,
            k,
        }),
        Variant::Cautious if report.splits > k => violations.push(Violation::TooManySplits {
            splits: report.splits,
            k,
        }),
        _ => {}
    }
    report
}

/// Operation flags and counters without reference to a particular instance.
pub fn classify(profile: &Profile, r: &Refinement) -> ValidityReport {
    let atomizing = non_atomizing_parts(profile, r).next().is_none();
    let extracting = non_extracting_originals(profile, r).next().is_none();
    ValidityReport {
        atomizing,
        extracting,
        dividing: true,
        changed_parts: r.parts_changed(profile),
        splits: r.splits(profile),
        violations: Vec::new(),
    }
}

fn non_atomizing_parts<'a>(profile: &'a Profile, r: &'a Refinement) -> impl Iterator<Item = Violation> + 'a {
    r.parts()
        .iter()
        .zip(r.provenance())
        .filter(move |(part, &o)| part.len() > 1 && part.len() != profile.parts()[o].len())
        .map(|(part, _)| Violation::NotAtomizing { part: part.clone() })
}

fn non_extracting_originals<'a>(profile: &'a Profile, r: &'a Refinement) -> impl Iterator<Item = Violation> + 'a {
    let mut strict_nonsingleton = vec![0usize; profile.parts().len()];
    for (part, &o) in r.parts().iter().zip(r.provenance()) {
        if part.len() > 1 && part.len() < profile.parts()[o].len() {
            strict_nonsingleton[o] += 1;
        }
    }
    strict_nonsingleton
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 1)
        .map(|(o, _)| Violation::NotExtracting {
            original: profile.parts()[o].clone(),
        })
}

/// Convenience: builds the refinement and reports, or `None` if `partition`
/// does not refine the profile.
pub fn validate_partition(instance: &ProblemInstance, partition: Partition) -> Option<ValidityReport> {
    Refinement::new(&instance.profile, partition)
        .ok()
        .map(|r| validate_refinement(instance, &r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::FOUR_CITERS;
    use crate::instance::parse_instance;

    fn four_citers() -> ProblemInstance {
        parse_instance(FOUR_CITERS).unwrap()
    }

    fn ids(inst: &ProblemInstance, parts: &[&[&str]]) -> Partition {
        Partition::new(
            parts
                .iter()
                .map(|p| p.iter().map(|t| inst.graph.index_of_str(t).unwrap()).collect())
                .collect(),
        )
    }

    #[test]
    fn identity_is_valid_everywhere() {
        let inst = four_citers();
        let r = Refinement::identity(&inst.profile);
        for op in Operation::ALL {
            for v in Variant::ALL {
                let k = (v != Variant::Plain).then_some(0);
                let i = inst.with_problem(op, v, inst.measure, 2, k).unwrap();
                assert!(validate_refinement(&i, &r).is_valid(), "{op} {v}");
            }
        }
    }

    #[test]
    fn single_extraction() {
        let inst = four_citers();
        let r = Refinement::new(&inst.profile, ids(&inst, &[&["r1", "r2", "r3"], &["r4"]])).unwrap();
        let rep = validate_refinement(&inst, &r);
        assert!(rep.is_valid());
        assert!(rep.extracting && !rep.atomizing);
        assert_eq!(rep.splits, 1);
        assert_eq!(rep.changed_parts, 1);
    }

    #[test]
    fn two_halves_divide_but_do_not_extract() {
        let inst = four_citers();
        let r = Refinement::new(&inst.profile, ids(&inst, &[&["r1", "r2"], &["r3", "r4"]])).unwrap();
        let rep = validate_refinement(&inst, &r);
        assert!(!rep.extracting);
        assert!(rep.dividing);
        assert!(matches!(rep.violations[..], [Violation::NotExtracting { .. }]));
        assert!(rep.valid_for(Operation::Dividing, Variant::Cautious, Some(1)));
        assert!(!rep.valid_for(Operation::Dividing, Variant::Cautious, Some(0)));
    }

    #[test]
    fn budgets() {
        let inst = four_citers()
            .with_problem(
                Operation::Extracting,
                Variant::Cautious,
                crate::Measure::Union,
                2,
                Some(1),
            )
            .unwrap();
        let r = Refinement::new(&inst.profile, ids(&inst, &[&["r1", "r2"], &["r3"], &["r4"]])).unwrap();
        let rep = validate_refinement(&inst, &r);
        assert_eq!(rep.violations, vec![Violation::TooManySplits { splits: 2, k: 1 }]);
        assert!(rep.valid_for(Operation::Extracting, Variant::Conservative, Some(1)));
    }
}
