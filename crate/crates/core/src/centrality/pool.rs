use rayon::prelude::*;

/// Sources handled by one task. Fixed, so partial sums are formed the same
/// way whatever the worker count.
const SOURCES_PER_TASK: usize = 16;
/// Tasks whose partial vectors are held in memory at once.
const TASKS_PER_WAVE: usize = 64;

fn pool(workers: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("thread pool")
}

/// Sums `per_source(s, acc)` contributions over all sources `0..n`.
///
/// Sources are split into fixed-size tasks; each task accumulates into a
/// private vector, and task vectors are added to the total in task order.
/// The floating-point result is therefore identical for every `workers`.
pub(crate) fn sum_over_sources<F>(n: usize, workers: usize, per_source: F) -> Vec<f64>
where
    F: Fn(usize, &mut [f64]) + Sync,
{
    let mut total = vec![0.0; n];
    let tasks: Vec<std::ops::Range<usize>> = (0..n)
        .step_by(SOURCES_PER_TASK)
        .map(|start| start..(start + SOURCES_PER_TASK).min(n))
        .collect();
    let run = |range: &std::ops::Range<usize>| {
        let mut acc = vec![0.0; n];
        for s in range.clone() {
            per_source(s, &mut acc);
        }
        acc
    };
    let pool = (workers > 1).then(|| pool(workers));
    for wave in tasks.chunks(TASKS_PER_WAVE) {
        let partials: Vec<Vec<f64>> = match &pool {
            Some(pool) => pool.install(|| wave.par_iter().map(run).collect()),
            None => wave.iter().map(run).collect(),
        };
        for partial in partials {
            for (t, p) in total.iter_mut().zip(partial) {
                *t += p;
            }
        }
    }
    total
}

/// Maps every node independently; output is in node order.
pub(crate) fn map_nodes<T, F>(n: usize, workers: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    if workers <= 1 {
        return (0..n).map(f).collect();
    }
    pool(workers).install(|| (0..n).into_par_iter().map(f).collect())
}
