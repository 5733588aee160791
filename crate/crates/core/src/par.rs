//! Order-preserving data parallelism over slices.

use std::thread;

/// Applies `f` to every item on a few scoped threads and concatenates the
/// `Some` results in input order, so the output never depends on scheduling.
pub fn par_flat_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync,
{
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(16);
    if workers <= 1 || items.len() < 64 {
        return items.iter().filter_map(&f).collect();
    }
    let chunk = items.len().div_ceil(workers * 4);
    let f = &f;
    thread::scope(|scope| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|part| scope.spawn(move || part.iter().filter_map(f).collect::<Vec<R>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}
