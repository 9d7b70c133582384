//! Set partitions of a small ground set as restricted growth strings.
//!
//! A string `a[0..n]` with `a[0] = 0` and `a[i] <= 1 + max(a[..i])` encodes
//! the partition putting `i` and `j` together iff `a[i] == a[j]`. Every
//! partition has exactly one such string, so enumeration is duplicate-free.

/// Enumerates restricted growth strings of length `n` with at most
/// `max_blocks` distinct values, in lexicographic order.
#[derive(Debug, Clone)]
pub struct SetPartitions {
    labels: Vec<usize>,
    /// `prefix_max[i]` = max of `labels[..=i]`.
    prefix_max: Vec<usize>,
    max_blocks: usize,
    started: bool,
    done: bool,
}

impl SetPartitions {
    pub fn new(n: usize) -> Self {
        Self::with_max_blocks(n, n.max(1))
    }

    pub fn with_max_blocks(n: usize, max_blocks: usize) -> Self {
        SetPartitions {
            labels: vec![0; n],
            prefix_max: vec![0; n],
            max_blocks,
            started: false,
            done: max_blocks == 0 && n > 0,
        }
    }

    /// Advances to the next string; returns `false` when exhausted.
    pub fn advance(&mut self) -> bool {
        if self.done {
            return false;
        }
        if !self.started {
            self.started = true;
            return true;
        }
        let n = self.labels.len();
        for i in (1..n).rev() {
            let bound = self.prefix_max[i - 1] + 1;
            if self.labels[i] < bound && self.labels[i] + 1 < self.max_blocks {
                self.labels[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.labels[i]);
                for j in i + 1..n {
                    self.labels[j] = 0;
                    self.prefix_max[j] = self.prefix_max[i];
                }
                return true;
            }
        }
        self.done = true;
        false
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn block_count(&self) -> usize {
        self.prefix_max.last().map_or(0, |&m| m + 1)
    }

    /// Blocks of `items` under the current string, in order of first member.
    pub fn blocks<T: Copy>(&self, items: &[T]) -> Vec<Vec<T>> {
        let mut blocks = vec![Vec::new(); self.block_count()];
        for (&label, &item) in self.labels.iter().zip(items) {
            blocks[label].push(item);
        }
        blocks
    }

    /// Bitmask of each block over positions `0..n`.
    pub fn block_masks(&self, out: &mut Vec<u32>) {
        out.clear();
        out.resize(self.block_count(), 0);
        for (i, &label) in self.labels.iter().enumerate() {
            out[label] |= 1 << i;
        }
    }
}

/// Stirling numbers of the second kind `S(n, j)` for `j` in `0..=n`, saturating.
pub fn stirling_row(n: usize) -> Vec<u128> {
    let mut row = vec![1u128];
    for i in 1..=n {
        let mut next = vec![0u128; i + 1];
        for j in 1..=i {
            let stay = if j < i { (j as u128).saturating_mul(row[j]) } else { 0 };
            next[j] = stay.saturating_add(row[j - 1]);
        }
        row = next;
    }
    row
}

/// Bell number `B(n)`, saturating.
pub fn bell(n: usize) -> u128 {
    stirling_row(n).into_iter().fold(0u128, u128::saturating_add)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn all(n: usize, cap: usize) -> Vec<Vec<usize>> {
        let mut it = SetPartitions::with_max_blocks(n, cap);
        let mut out = Vec::new();
        while it.advance() {
            out.push(it.labels().to_vec());
        }
        out
    }

    #[test]
    fn bell_counts() {
        let expected = [1, 1, 2, 5, 15, 52, 203, 877, 4140];
        for (n, &b) in expected.iter().enumerate() {
            assert_eq!(all(n, n.max(1)).len() as u128, b, "n={n}");
            assert_eq!(bell(n), b);
        }
        assert_eq!(bell(12), 4_213_597);
    }

    #[test]
    fn capped_counts_match_stirling() {
        for n in 1..=7 {
            let row = stirling_row(n);
            for cap in 1..=n {
                let want: u128 = row[..=cap].iter().sum();
                assert_eq!(all(n, cap).len() as u128, want, "n={n} cap={cap}");
            }
        }
    }

    #[test]
    fn strings_are_distinct_partitions() {
        let strings = all(5, 5);
        let partitions: BTreeSet<Vec<Vec<usize>>> = strings
            .iter()
            .map(|s| {
                let mut it = SetPartitions::new(5);
                it.labels.copy_from_slice(s);
                let mut blocks = vec![Vec::new(); s.iter().max().unwrap() + 1];
                for (i, &l) in s.iter().enumerate() {
                    blocks[l].push(i);
                }
                blocks
            })
            .collect();
        assert_eq!(partitions.len(), strings.len());
    }

    #[test]
    fn blocks_follow_labels() {
        let mut it = SetPartitions::new(3);
        let mut seen = Vec::new();
        while it.advance() {
            seen.push(it.blocks(&['a', 'b', 'c']));
        }
        assert_eq!(seen[0], vec![vec!['a', 'b', 'c']]);
        assert_eq!(seen.last().unwrap(), &vec![vec!['a'], vec!['b'], vec!['c']]);
    }

    #[test]
    fn empty_set_has_one_partition() {
        assert_eq!(all(0, 1).len(), 1);
    }
}
