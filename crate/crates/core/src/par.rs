// Data-parallel helpers. With the `parallel` feature off, or when the caller
// asks for sequential execution, everything runs on the current thread and
// produces the same results in the same order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// True when this build can run work on the rayon pool.
pub const AVAILABLE: bool = cfg!(feature = "parallel");

/// Applies `f` to consecutive chunks of `items`; results come back in chunk
/// order.
pub fn chunks<T, R, F>(items: &[T], chunk: usize, parallel: bool, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&[T]) -> R + Sync + Send,
{
    let chunk = chunk.max(1);
    #[cfg(feature = "parallel")]
    if parallel && items.len() > chunk {
        return items.par_chunks(chunk).map(&f).collect();
    }
    let _ = parallel;
    items.chunks(chunk).map(f).collect()
}

/// `items.map(f)` preserving order.
pub fn map<T, R, F>(items: &[T], parallel: bool, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel && items.len() > 1 {
        return items.par_iter().map(&f).collect();
    }
    let _ = parallel;
    items.iter().map(f).collect()
}

/// Maps over `0..n` in parallel blocks, stopping at the first block that
/// contains a hit. Returns the smallest index `i` with `f(i)` = `Some`.
pub fn find_first<R, F>(n: usize, block: usize, parallel: bool, f: F) -> Option<(usize, R)>
where
    R: Send,
    F: Fn(usize) -> Option<R> + Sync + Send,
{
    let block = block.max(1);
    let mut start = 0;
    while start < n {
        let end = (start + block).min(n);
        let idx: Vec<usize> = (start..end).collect();
        let hits = map(&idx, parallel, |&i| f(i).map(|r| (i, r)));
        if let Some(hit) = hits.into_iter().flatten().next() {
            return Some(hit);
        }
        start = end;
    }
    None
}
