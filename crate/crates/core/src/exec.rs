//! Point-parallel map, sequential unless the `parallel` feature is enabled.

use alloc::vec::Vec;

use crate::error::Result;

/// `(0..n).map(f).collect()`, stopping at the first error.
pub fn map_indices<T, F>(n: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}
