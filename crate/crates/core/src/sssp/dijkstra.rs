// SPDX-License-Identifier: Apache-2.0

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::sparse::{SparseMatrix, SparseVector};

#[derive(Debug, Clone, Copy, PartialEq)]
struct Dist(f64);

impl Eq for Dist {}

impl PartialOrd for Dist {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dist {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Binary-heap Dijkstra with lazy deletion. Reference distances for
/// checking the delta-stepping backends; unreachable vertices are absent.
pub fn dijkstra_oracle(a: &SparseMatrix, source: usize) -> Result<SparseVector> {
    let n = a.n();
    if source >= n {
        return Err(Error::SourceOutOfRange { vertex: source, n });
    }
    let mut dist = vec![f64::INFINITY; n];
    let mut settled = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[source] = 0.0;
    heap.push(Reverse((Dist(0.0), source)));

    while let Some(Reverse((Dist(d), v))) = heap.pop() {
        if settled[v] {
            continue;
        }
        settled[v] = true;
        let (cols, weights) = a.row(v);
        for (&to, &weight) in cols.iter().zip(weights) {
            let candidate = d + weight;
            if candidate < dist[to] {
                dist[to] = candidate;
                heap.push(Reverse((Dist(candidate), to)));
            }
        }
    }

    let (indices, values) = dist
        .iter()
        .enumerate()
        .filter(|(_, d)| d.is_finite())
        .map(|(i, &d)| (i, d))
        .unzip();
    Ok(SparseVector::from_sorted_parts(n, indices, values))
}
