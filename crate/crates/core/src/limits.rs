/// Caps on the exhaustive routines. Exceeding one is reported as
/// [`Error::BoundExceeded`](crate::Error::BoundExceeded), never truncated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest ground set handed to set-partition enumeration.
    pub max_partition_elements: usize,
    /// Largest family enumerated by subsets (2^n candidates).
    pub max_subset_parts: usize,
    /// Largest number of refinements the oracle will visit.
    pub max_refinements: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_partition_elements: 12,
            max_subset_parts: 24,
            max_refinements: 1 << 24,
        }
    }
}
