//! Resource caps for the enumeration-style operations.
//!
//! Exact arithmetic makes every answer either correct or refused; these caps
//! decide where "refused" starts. Each limit is checked up front and reported
//! through [`Error::TooLarge`](crate::error::Error::TooLarge) rather than by
//! letting a call run away.

/// Caps shared by brute-force enumeration, witness peeling, block-map
/// construction, and dense operator work.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    /// Largest labeling space (product of bond dimensions) the brute-force
    /// evaluator will enumerate, and largest estimated intermediate entry
    /// count the peeling construction will contract through.
    pub max_labelings: u64,
    /// Largest dense operator dimension (D^n) for ground-space products,
    /// commutation checks, and basis-string sweeps.
    pub max_dense_dim: usize,
    /// Largest (rows * columns) size of a single block map in the
    /// injectivity check.
    pub max_block_cells: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_labelings: 1 << 24,
            max_dense_dim: 1 << 12,
            max_block_cells: 1 << 12,
        }
    }
}
