//! Data-parallel helpers. With the `parallel` feature the maps run on rayon;
//! without it, or after `set_parallel(false)`, they run sequentially.
//! Output order always matches input order.

use std::sync::atomic::{AtomicBool, Ordering};

static ENABLED: AtomicBool = AtomicBool::new(true);

/// Toggle the parallel path at runtime. No effect without the `parallel` feature.
pub fn set_parallel(on: bool) {
    ENABLED.store(on, Ordering::SeqCst);
}

/// True when maps will actually fan out across threads.
pub fn is_parallel() -> bool {
    cfg!(feature = "parallel") && ENABLED.load(Ordering::SeqCst)
}

/// Order-preserving map over a slice.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if is_parallel() {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
    }
    items.iter().map(f).collect()
}

/// Order-preserving map over an index range.
pub fn map_range<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if is_parallel() {
            use rayon::prelude::*;
            return (0..n).into_par_iter().map(f).collect();
        }
    }
    (0..n).map(f).collect()
}

/// Map then collect the first error, preserving order of successes.
pub fn try_map<T, R, E, F>(items: &[T], f: F) -> Result<Vec<R>, E>
where
    T: Sync,
    R: Send,
    E: Send,
    F: Fn(&T) -> Result<R, E> + Sync + Send,
{
    map(items, f).into_iter().collect()
}
