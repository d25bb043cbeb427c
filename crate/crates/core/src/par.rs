//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (default) these dispatch to rayon; without it
//! they run in order on the calling thread. Outputs are always collected in
//! index order, and all arithmetic is exact, so both builds give identical
//! results.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Minimum amount of work (in scalar operations) before splitting across threads.
pub const PAR_THRESHOLD: usize = 4096;

/// `(0..n).map(f).collect()`, possibly in parallel.
pub fn map_range<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Like [`map_range`] but stays sequential when `work` is below [`PAR_THRESHOLD`].
pub fn map_range_weighted<T, F>(n: usize, work: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    if work < PAR_THRESHOLD {
        (0..n).map(f).collect()
    } else {
        map_range(n, f)
    }
}

/// Applies `f(index, chunk)` to consecutive chunks of `data` of length `chunk`.
pub fn for_each_chunk_mut<T, F>(data: &mut [T], chunk: usize, work: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Sync + Send,
{
    if chunk == 0 {
        return;
    }
    #[cfg(feature = "parallel")]
    if work >= PAR_THRESHOLD {
        data.par_chunks_mut(chunk).enumerate().for_each(|(i, c)| f(i, c));
        return;
    }
    let _ = work;
    data.chunks_mut(chunk).enumerate().for_each(|(i, c)| f(i, c));
}

/// Returns the first index in `0..n` where `pred` holds, scanning in order.
pub fn find_first<F>(n: usize, pred: F) -> Option<usize>
where
    F: Fn(usize) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().find_first(|&i| pred(i))
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).find(|&i| pred(i))
    }
}
