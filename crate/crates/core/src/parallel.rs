//! Scoped-thread fan-out with order-stable results.

use std::thread;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "TRACECODE_THREADS";

/// Worker count: `TRACECODE_THREADS` if set to a positive integer, else the
/// available parallelism.
pub fn worker_count() -> usize {
    let available = thread::available_parallelism().map_or(1, |n| n.get());
    match std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
    {
        Some(n) if n > 0 => n,
        _ => available,
    }
}

/// Splits `items` into at most `workers` contiguous chunks, runs `f` on each
/// in its own thread and returns the results in chunk order.
pub fn map_chunks<T, R, F>(items: &[T], workers: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&[T]) -> R + Sync,
{
    let workers = workers.clamp(1, items.len().max(1));
    if workers == 1 {
        return vec![f(items)];
    }
    let chunk = items.len().div_ceil(workers);
    thread::scope(|scope| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|c| {
                let f = &f;
                scope.spawn(move || f(c))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}
