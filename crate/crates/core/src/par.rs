//! Execution strategy for the data-parallel inner loops.
//!
//! Every parallel path computes an exact value, so the result never depends
//! on the reduction order. With the `parallel` feature disabled all
//! strategies run sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Exec {
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    #[cfg_attr(feature = "parallel", default)]
    Parallel,
}

impl Exec {
    /// True when this strategy will actually fan out over worker threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// Caps the global worker pool. Returns false when the pool was already
/// initialised or the crate was built without the `parallel` feature.
pub fn configure_threads(threads: usize) -> bool {
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build_global()
            .is_ok()
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        false
    }
}

/// Order-preserving map over a slice.
pub fn map<T, R, F>(exec: Exec, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Order-preserving map over an index range.
pub fn map_range<R, F>(exec: Exec, range: std::ops::Range<usize>, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return range.into_par_iter().map(f).collect();
    }
    let _ = exec;
    range.map(f).collect()
}

/// Reduces with an associative, commutative operation.
pub fn reduce<T, Id, Op>(exec: Exec, items: Vec<T>, identity: Id, op: Op) -> T
where
    T: Send,
    Id: Fn() -> T + Sync + Send,
    Op: Fn(T, T) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.into_par_iter().reduce(identity, op);
    }
    let _ = exec;
    // Pairwise folding keeps operand sizes balanced, which matters for
    // polynomial products.
    let mut layer = items;
    if layer.is_empty() {
        return identity();
    }
    while layer.len() > 1 {
        let mut next = Vec::with_capacity(layer.len().div_ceil(2));
        let mut it = layer.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(op(a, b)),
                None => next.push(a),
            }
        }
        layer = next;
    }
    layer.pop().unwrap()
}

/// Splits `len` items into roughly one chunk per worker.
pub(crate) fn chunk_len(exec: Exec, len: usize) -> usize {
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        let workers = rayon::current_num_threads().max(1);
        return len.div_ceil(workers * 4).max(16);
    }
    let _ = exec;
    len.max(1)
}
