//! Trial-level parallelism with a deterministic merge.

use rayon::prelude::*;

/// Runs `f(0..trials)` on `jobs` threads and returns the results in trial
/// order, so the output never depends on `jobs` or on scheduling.
pub fn run_trials<T, F>(trials: usize, jobs: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    if jobs <= 1 {
        return (0..trials as u64).map(f).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    pool.install(|| (0..trials as u64).into_par_iter().map(&f).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_independent_of_jobs() {
        let serial = run_trials(50, 1, |t| t * t);
        assert_eq!(serial, run_trials(50, 4, |t| t * t));
        assert_eq!(serial[7], 49);
    }
}
