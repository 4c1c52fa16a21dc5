//! Order-preserving parallel map used by the census enumerations.
//!
//! With the `parallel` feature, `jobs = 0` uses rayon's default pool size,
//! `jobs = 1` runs inline, and larger values build a pool of that size.
//! Without the feature every call runs sequentially. Results are always in
//! input order, so merged output does not depend on the worker count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub fn par_map<T, R, F>(items: &[T], jobs: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if jobs != 1 {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .expect("thread pool");
            return pool.install(|| items.par_iter().map(&f).collect());
        }
    }
    let _ = jobs;
    items.iter().map(f).collect()
}

/// Whether this build can run work on more than one thread.
pub fn parallel_enabled() -> bool {
    cfg!(feature = "parallel")
}
