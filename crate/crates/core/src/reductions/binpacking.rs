use std::fmt;
use std::str::FromStr;

use crate::builder::InstanceBuilder;
use crate::error::{Error, Result};
use crate::instance::{Operation, Variant};
use crate::measures::Measure;

use super::Reduced;

/// Items of the given sizes into `bins` bins of capacity `capacity`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinPacking {
    pub sizes: Vec<usize>,
    pub bins: usize,
    pub capacity: usize,
}

impl BinPacking {
    pub fn new(sizes: Vec<usize>, bins: usize, capacity: usize) -> Result<Self> {
        if sizes.contains(&0) || bins == 0 || capacity == 0 {
            return Err(Error::InvalidReduction(
                "sizes, bins and capacity must be positive".into(),
            ));
        }
        Ok(BinPacking { sizes, bins, capacity })
    }

    /// `s*`
    pub fn total(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// `ℓ·B - s*`: free capacity left after packing everything.
    pub fn slack(&self) -> isize {
        (self.bins * self.capacity) as isize - self.total() as isize
    }

    /// Backtracking over item-to-bin assignments, largest items first.
    pub fn is_solvable(&self) -> bool {
        fn place(items: &[usize], loads: &mut [usize], cap: usize) -> bool {
            let Some((&item, rest)) = items.split_first() else {
                return true;
            };
            for b in 0..loads.len() {
                // bins with equal load are interchangeable
                if loads[..b].contains(&loads[b]) || loads[b] + item > cap {
                    continue;
                }
                loads[b] += item;
                let ok = place(rest, loads, cap);
                loads[b] -= item;
                if ok {
                    return true;
                }
            }
            false
        }
        if self.slack() < 0 {
            return false;
        }
        let mut items = self.sizes.clone();
        items.sort_unstable_by(|a, b| b.cmp(a));
        place(&items, &mut vec![0; self.bins], self.capacity)
    }
}

impl fmt::Display for BinPacking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sizes: Vec<String> = self.sizes.iter().map(usize::to_string).collect();
        writeln!(f, "sizes {}", sizes.join(","))?;
        writeln!(f, "bins {}", self.bins)?;
        writeln!(f, "capacity {}", self.capacity)
    }
}

/// `sizes 3,2,2,1` (commas or spaces), `bins <int>`, `capacity <int>`.
impl FromStr for BinPacking {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut sizes = None;
        let mut bins = None;
        let mut capacity = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |message: String| Error::Syntax { line: i + 1, message };
            let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let numbers = rest
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|e| syntax(format!("{t:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            let single = || match numbers.as_slice() {
                [x] => Ok(*x),
                _ => Err(syntax(format!("`{key}` takes one integer"))),
            };
            match key {
                "sizes" => sizes = Some(numbers.clone()),
                "bins" => bins = Some(single()?),
                "capacity" => capacity = Some(single()?),
                other => return Err(syntax(format!("unknown directive {other:?}"))),
            }
        }
        BinPacking::new(
            sizes.ok_or(Error::Missing("sizes"))?,
            bins.ok_or(Error::Missing("bins"))?,
            capacity.ok_or(Error::Missing("capacity"))?,
        )
    }
}

/// Encodes bin packing as cautious dividing under the sum measure.
///
/// Articles `x1..` only cite. Item article `a<i>` is cited by the first
/// `s_i` of them, each filler `u<i>` by `x1`, and each of the `B - ℓ`
/// articles `h<i>` by `x1..xB`. All `a` and `u` articles form one merged
/// part with exactly `ℓ·B` citations; the `h` articles are singletons.
/// With `h = B` and `ℓ - 1` divisions the merged part must be cut into `ℓ`
/// pieces of exactly `B` citations each, i.e. a packing.
pub fn reduce_binpacking(bp: &BinPacking) -> Result<Reduced> {
    let (l, cap, total) = (bp.bins, bp.capacity, bp.total());
    let slack = bp.slack();
    if slack < 0 {
        return Err(Error::InvalidReduction(format!(
            "total size {total} exceeds {l} bins of capacity {cap}"
        )));
    }
    if l > cap {
        return Err(Error::InvalidReduction(format!(
            "{l} bins exceed the capacity {cap}; the construction needs B - ℓ >= 0 singleton parts"
        )));
    }
    let mut warnings = Vec::new();
    if cap >= total {
        warnings.push(format!("capacity {cap} is not below the total size {total}"));
    }
    if l == cap {
        warnings.push(format!("bins {l} is not below the capacity {cap}"));
    }

    let mut b = InstanceBuilder::new();
    let x_count = total.max(cap);
    if cap > total {
        warnings.push(format!("added {} citing articles to reach capacity {cap}", cap - total));
    }
    for j in 1..=x_count {
        b.article(format!("x{j}"));
    }
    let mut merged = Vec::new();
    for (i, &s) in bp.sizes.iter().enumerate() {
        let a = format!("a{}", i + 1);
        b.owned(a.clone());
        for j in 1..=s {
            b.cite(format!("x{j}"), a.clone());
        }
        merged.push(a);
    }
    for i in 1..=slack as usize {
        let u = format!("u{i}");
        b.owned(u.clone()).cite("x1", u.clone());
        merged.push(u);
    }
    for i in 1..=cap - l {
        let h = format!("h{i}");
        b.owned(h.clone());
        for j in 1..=cap {
            b.cite(format!("x{j}"), h.clone());
        }
    }
    if !merged.is_empty() {
        b.part(merged);
    }
    let instance = b.build(Operation::Dividing, Variant::Cautious, Measure::Sum, cap, Some(l - 1))?;
    Ok(Reduced { instance, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::oracle_solve;
    use crate::Limits;

    #[test]
    fn example_counts() {
        let bp: BinPacking = "sizes 3,2,2,1\nbins 2\ncapacity 4\n".parse().unwrap();
        assert_eq!(bp.to_string().parse::<BinPacking>().unwrap(), bp);
        let r = reduce_binpacking(&bp).unwrap();
        let inst = &r.instance;
        let g = &inst.graph;
        let count = |prefix: char| g.ids().iter().filter(|id| id.as_str().starts_with(prefix)).count();
        assert_eq!((count('x'), count('a'), count('u'), count('h')), (8, 4, 0, 2));
        let deg = |id: &str| g.in_degree(g.index_of_str(id).unwrap());
        assert_eq!([deg("a1"), deg("a2"), deg("a3"), deg("a4")], [3, 2, 2, 1]);
        assert_eq!([deg("h1"), deg("h2")], [4, 4]);
        assert_eq!((inst.h, inst.k), (4, Some(1)));
        assert!(bp.is_solvable());
        assert!(oracle_solve(inst, &Limits::default()).unwrap().feasible);
        assert!(g.is_acyclic());
    }

    #[test]
    fn single_bin_needs_no_division() {
        let bp = BinPacking::new(vec![2, 2], 1, 4).unwrap();
        let r = reduce_binpacking(&bp).unwrap();
        assert_eq!(r.instance.k, Some(0));
        let res = oracle_solve(&r.instance, &Limits::default()).unwrap();
        assert!(res.feasible);
        assert_eq!(res.operations_used, 0);
    }

    #[test]
    fn unpackable_instance_is_infeasible() {
        // total 6 = 2·3, but items of size 2 never fill a bin of capacity 3
        let bp = BinPacking::new(vec![2, 2, 2], 2, 3).unwrap();
        assert!(!bp.is_solvable());
        let r = reduce_binpacking(&bp).unwrap();
        assert!(!oracle_solve(&r.instance, &Limits::default()).unwrap().feasible);
    }

    #[test]
    fn rejects_overfull_and_too_many_bins() {
        assert!(reduce_binpacking(&BinPacking::new(vec![3, 3], 1, 4).unwrap()).is_err());
        assert!(reduce_binpacking(&BinPacking::new(vec![1], 3, 2).unwrap()).is_err());
        assert!(BinPacking::new(vec![0], 1, 1).is_err());
        assert!("sizes 1\nbins 1".parse::<BinPacking>().is_err());
    }
}
