use std::fmt;
use std::str::FromStr;

use crate::builder::InstanceBuilder;
use crate::error::{Error, Result};
use crate::instance::{Operation, Variant};
use crate::measures::Measure;

use super::Reduced;

/// A CNF formula whose clauses have exactly three literal slots. Literals
/// are non-zero signed variable numbers (`-2` is `¬x2`); repeating a
/// literal encodes a shorter clause.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    pub vars: usize,
    pub clauses: Vec<[i32; 3]>,
}

impl CnfFormula {
    pub fn new(vars: usize, clauses: Vec<[i32; 3]>) -> Result<Self> {
        for c in &clauses {
            for &lit in c {
                if lit == 0 || lit.unsigned_abs() as usize > vars {
                    return Err(Error::InvalidReduction(format!(
                        "literal {lit} outside variables 1..={vars}"
                    )));
                }
            }
        }
        Ok(CnfFormula { vars, clauses })
    }

    pub fn satisfied_by(&self, assignment: u64) -> bool {
        self.clauses.iter().all(|c| {
            c.iter().any(|&lit| {
                let value = assignment >> (lit.unsigned_abs() - 1) & 1 == 1;
                value == (lit > 0)
            })
        })
    }

    /// Tries all `2^n` assignments.
    pub fn is_satisfiable(&self) -> bool {
        assert!(self.vars < 64, "too many variables for brute force");
        (0..1u64 << self.vars).any(|a| self.satisfied_by(a))
    }
}

/// DIMACS CNF: `c` comment lines, a `p cnf <vars> <clauses>` header, then
/// zero-terminated clauses of one to three literals. Short clauses are
/// padded by repeating their last literal.
impl FromStr for CnfFormula {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut header = None;
        let mut clauses = Vec::new();
        let mut current: Vec<i32> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let syntax = |message: String| Error::Syntax { line: i + 1, message };
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if let Some(rest) = line.strip_prefix('p') {
                let fields: Vec<&str> = rest.split_whitespace().collect();
                match fields.as_slice() {
                    ["cnf", v, c] => {
                        let v = v.parse::<usize>().map_err(|e| syntax(e.to_string()))?;
                        let c = c.parse::<usize>().map_err(|e| syntax(e.to_string()))?;
                        header = Some((v, c));
                    }
                    _ => return Err(syntax("expected `p cnf <vars> <clauses>`".into())),
                }
                continue;
            }
            for token in line.split_whitespace() {
                let lit: i32 = token.parse().map_err(|_| syntax(format!("bad literal {token:?}")))?;
                if lit != 0 {
                    current.push(lit);
                    continue;
                }
                let padded = match current.as_slice() {
                    [] => return Err(syntax("empty clause".into())),
                    [a] => [*a, *a, *a],
                    [a, b] => [*a, *b, *b],
                    [a, b, c] => [*a, *b, *c],
                    _ => return Err(syntax("clause with more than three literals".into())),
                };
                clauses.push(padded);
                current.clear();
            }
        }
        if !current.is_empty() {
            return Err(Error::InvalidReduction("last clause is not terminated by 0".into()));
        }
        let (vars, count) = header.ok_or(Error::Missing("p cnf"))?;
        if count != clauses.len() {
            return Err(Error::InvalidReduction(format!(
                "header announces {count} clauses, found {}",
                clauses.len()
            )));
        }
        CnfFormula::new(vars, clauses)
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p cnf {} {}", self.vars, self.clauses.len())?;
        for [a, b, c] in &self.clauses {
            writeln!(f, "{a} {b} {c} 0")?;
        }
        Ok(())
    }
}

/// Encodes 3-SAT as atomizing under the fusion measure, with `h = n + m`.
///
/// Variable `i` gets two merged parts `XF<i>_*` and `XT<i>_*` of `2(n+m)`
/// articles each. For `l <= n+m`, `XF<i>_l` cites `XT<i>_2l` and `XT<i>_l`
/// cites `XF<i>_2l`, so atomizing one part gives the other `n+m` part-level
/// citations. Clause `C<j>` is a singleton cited by the first `n+m`
/// articles of `XT<i>` for a positive literal `x_i` (of `XF<i>` for `¬x_i`).
pub fn reduce_3sat(formula: &CnfFormula) -> Result<Reduced> {
    let n = formula.vars;
    let m = formula.clauses.len();
    let t = n + m;
    if t <= 3 {
        return Err(Error::InvalidReduction(format!(
            "needs more than three variables plus clauses, got {t}"
        )));
    }
    let mut b = InstanceBuilder::new();
    let article = |side: char, i: usize, l: usize| format!("X{side}{i}_{l}");
    for i in 1..=n {
        for side in ['F', 'T'] {
            let part: Vec<String> = (1..=2 * t).map(|l| article(side, i, l)).collect();
            for a in &part {
                b.owned(a.clone());
            }
            b.part(part);
        }
        for l in 1..=t {
            b.cite(article('F', i, l), article('T', i, 2 * l));
            b.cite(article('T', i, l), article('F', i, 2 * l));
        }
    }
    for (j, clause) in formula.clauses.iter().enumerate() {
        let c = format!("C{}", j + 1);
        b.owned(c.clone());
        let mut literals = clause.to_vec();
        literals.sort_unstable();
        literals.dedup();
        for lit in literals {
            let side = if lit > 0 { 'T' } else { 'F' };
            let i = lit.unsigned_abs() as usize;
            for l in 1..=t {
                b.cite(article(side, i, l), c.clone());
            }
        }
    }
    let instance = b.build(Operation::Atomizing, Variant::Plain, Measure::Fusion, t, None)?;
    Ok(Reduced {
        instance,
        warnings: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::oracle_solve;
    use crate::solvers::atomize_fusion_solve;
    use crate::Limits;

    #[test]
    fn dimacs_round_trip_and_padding() {
        let f: CnfFormula = "c demo\np cnf 3 2\n1 -2 0\n3\n -1 2 0\n".parse().unwrap();
        assert_eq!(f.clauses, vec![[1, -2, -2], [3, -1, 2]]);
        assert_eq!(f.to_string().parse::<CnfFormula>().unwrap(), f);
        assert!("p cnf 1 1\n2 0\n".parse::<CnfFormula>().is_err());
        assert!("p cnf 2 2\n1 0\n".parse::<CnfFormula>().is_err());
        assert!("p cnf 4 1\n1 2 3 4 0\n".parse::<CnfFormula>().is_err());
    }

    #[test]
    fn satisfiable_example() {
        let f = CnfFormula::new(2, vec![[1, -2, -2], [-1, 2, 2]]).unwrap();
        assert!(f.is_satisfiable());
        let r = reduce_3sat(&f).unwrap();
        let inst = &r.instance;
        let count = |p: &str| inst.graph.ids().iter().filter(|id| id.as_str().starts_with(p)).count();
        assert_eq!(count("X"), 32);
        assert_eq!(count("C"), 2);
        assert_eq!(inst.h, 4);
        assert!(inst.graph.is_acyclic());
        let lim = Limits::default();
        assert!(oracle_solve(inst, &lim).unwrap().feasible);
        assert!(atomize_fusion_solve(inst, &lim).unwrap().feasible);
    }

    #[test]
    fn unsatisfiable_core() {
        // (x1) and (¬x1), with an unused x2 so that n + m = 4
        let f = CnfFormula::new(2, vec![[1, 1, 1], [-1, -1, -1]]).unwrap();
        assert!(!f.is_satisfiable());
        let r = reduce_3sat(&f).unwrap();
        let lim = Limits::default();
        assert!(!oracle_solve(&r.instance, &lim).unwrap().feasible);
        assert!(!atomize_fusion_solve(&r.instance, &lim).unwrap().feasible);
    }

    #[test]
    fn too_small_formula() {
        let f = CnfFormula::new(2, vec![[1, 2, 2]]).unwrap();
        assert!(reduce_3sat(&f).is_err());
        assert!(CnfFormula::new(1, vec![[2, 1, 1]]).is_err());
    }
}
