// SPDX-License-Identifier: Apache-2.0

//! Backend selection and the range-partitioned task runner used by the fused
//! kernels.
//!
//! Work is split by output index: `0..len` is cut into contiguous ranges of
//! near-equal width, each task writes only its own range, and results are
//! concatenated in range order. Nothing is combined across ranges, so the
//! output is the same for every worker count and every completion order.

use std::collections::HashMap;
use std::fmt;
use std::ops::Range;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuilder};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BackendKind {
    /// One call per kernel, every intermediate materialized.
    Unfused,
    /// Merged traversals, optionally run on several workers.
    Fused,
}

impl fmt::Display for BackendKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BackendKind::Unfused => "unfused",
            BackendKind::Fused => "fused",
        })
    }
}

/// Worker count and over-decomposition factor for partitioned kernels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Parallelism {
    workers: usize,
    chunks_per_worker: usize,
}

impl Parallelism {
    pub const SEQUENTIAL: Parallelism = Parallelism {
        workers: 1,
        chunks_per_worker: 1,
    };

    pub fn new(workers: usize, chunks_per_worker: usize) -> Result<Self> {
        if workers == 0 {
            return Err(Error::NoWorkers);
        }
        if chunks_per_worker == 0 {
            return Err(Error::NoChunks);
        }
        Ok(Self {
            workers,
            chunks_per_worker,
        })
    }

    pub fn workers(&self) -> usize {
        self.workers
    }

    pub fn chunks_per_worker(&self) -> usize {
        self.chunks_per_worker
    }

    /// Number of ranges the index space is cut into.
    pub fn tasks(&self) -> usize {
        self.workers.saturating_mul(self.chunks_per_worker)
    }
}

impl Default for Parallelism {
    fn default() -> Self {
        Self::SEQUENTIAL
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BackendChoice {
    pub kind: BackendKind,
    pub parallelism: Parallelism,
}

impl BackendChoice {
    pub fn unfused() -> Self {
        Self {
            kind: BackendKind::Unfused,
            parallelism: Parallelism::SEQUENTIAL,
        }
    }

    pub fn fused(workers: usize) -> Result<Self> {
        Ok(Self {
            kind: BackendKind::Fused,
            parallelism: Parallelism::new(workers, 1)?,
        })
    }

    pub fn with_chunks_per_worker(mut self, chunks: usize) -> Result<Self> {
        self.parallelism = Parallelism::new(self.parallelism.workers, chunks)?;
        Ok(self)
    }

    pub fn workers(&self) -> usize {
        self.parallelism.workers
    }
}

impl Default for BackendChoice {
    fn default() -> Self {
        Self::unfused()
    }
}

/// Cuts `0..len` into at most `tasks` contiguous non-empty ranges whose
/// widths differ by at most one.
pub fn partition(len: usize, tasks: usize) -> Vec<Range<usize>> {
    let parts = tasks.max(1).min(len);
    if parts == 0 {
        return Vec::new();
    }
    let (base, extra) = (len / parts, len % parts);
    let mut ranges = Vec::with_capacity(parts);
    let mut start = 0;
    for k in 0..parts {
        let end = start + base + usize::from(k < extra);
        ranges.push(start..end);
        start = end;
    }
    ranges
}

/// Threads actually started for `workers`: never more than the machine
/// offers. The partition still follows `workers`, so output is unaffected.
fn threads_for(workers: usize) -> usize {
    static CORES: OnceLock<usize> = OnceLock::new();
    let cores = *CORES.get_or_init(|| std::thread::available_parallelism().map_or(1, |c| c.get()));
    workers.min(cores)
}

fn pool(workers: usize) -> Arc<ThreadPool> {
    static POOLS: OnceLock<Mutex<HashMap<usize, Arc<ThreadPool>>>> = OnceLock::new();
    let mut pools = POOLS.get_or_init(Default::default).lock().unwrap();
    pools
        .entry(workers)
        .or_insert_with(|| {
            Arc::new(
                ThreadPoolBuilder::new()
                    .num_threads(workers)
                    .thread_name(move |k| format!("la-sssp-{workers}-{k}"))
                    .build()
                    .expect("failed to start worker pool"),
            )
        })
        .clone()
}

/// Runs `task` once per range of `partition(len, par.tasks())` and returns
/// the results in range order.
pub fn parallel_execute<T, F>(len: usize, par: Parallelism, task: F) -> Vec<T>
where
    T: Send,
    F: Fn(Range<usize>) -> T + Sync,
{
    let ranges = partition(len, par.tasks());
    let threads = threads_for(par.workers);
    if threads == 1 || ranges.len() <= 1 {
        return ranges.into_iter().map(task).collect();
    }
    pool(threads).install(|| ranges.into_par_iter().map(&task).collect())
}

/// Runs two independent closures, concurrently when `par` has more than one worker.
pub fn join<A, B, RA, RB>(par: Parallelism, a: A, b: B) -> (RA, RB)
where
    A: FnOnce() -> RA + Send,
    B: FnOnce() -> RB + Send,
    RA: Send,
    RB: Send,
{
    match threads_for(par.workers) {
        1 => (a(), b()),
        threads => pool(threads).install(|| rayon::join(a, b)),
    }
}
