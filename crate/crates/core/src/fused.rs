// SPDX-License-Identifier: Apache-2.0

//! Loop-fused kernels.
//!
//! Each kernel computes exactly what a sequence of [`crate::ops`] calls
//! computes, in one traversal and without materializing the intermediates.
//! All of them partition the output index space with
//! [`parallel_execute`], so results are independent of the worker count.
//! Push relaxation also splits its sources, but only ever combines terms
//! with `min`, which is exact.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::ops::{prefers_pull, UnaryPredicate};
use crate::parallel::{join, parallel_execute, partition, Parallelism};
use crate::sparse::{Mask, SparseMatrix, SparseVector};
use crate::sssp::bucket_bounds;

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// Forward-only lookup into a sparse vector with galloping search; queries
/// must be non-decreasing.
struct Seeker<'a> {
    indices: &'a [usize],
    values: &'a [f64],
    pos: usize,
}

impl<'a> Seeker<'a> {
    fn new(v: &'a SparseVector) -> Self {
        Self {
            indices: v.indices(),
            values: v.values(),
            pos: 0,
        }
    }

    #[inline]
    fn seek(&mut self, index: usize) -> Option<f64> {
        let rest = &self.indices[self.pos..];
        let mut bound = 1;
        while bound < rest.len() && rest[bound] < index {
            bound *= 2;
        }
        let window = &rest[..bound.min(rest.len())];
        self.pos += window.partition_point(|&i| i < index);
        if self.pos < self.indices.len() && self.indices[self.pos] == index {
            Some(self.values[self.pos])
        } else {
            None
        }
    }
}

/// `vxm_min_plus(ewise_mult(t, selected), m)` without building the masked
/// vector: every out-edge of a selected vertex with a stored distance is
/// relaxed, keeping the minimum request per target.
pub fn fused_masked_relax(
    t: &SparseVector,
    selected: &Mask,
    m: &SparseMatrix,
    par: Parallelism,
) -> Result<SparseVector> {
    let n = m.n();
    check_len(n, t.len())?;
    check_len(n, selected.len())?;
    if selected.is_empty() || t.is_empty() {
        return Ok(SparseVector::new(n));
    }

    let frontier_edges: usize = selected.indices().iter().map(|&i| m.row_len(i)).sum();
    let pieces = if prefers_pull(frontier_edges, m.nnz()) {
        let mut dense = vec![f64::INFINITY; n];
        let mut seeker = Seeker::new(t);
        for &i in selected.indices() {
            if let Some(x) = seeker.seek(i) {
                dense[i] = x;
            }
        }
        let incoming = m.transposed_view();
        parallel_execute(n, par, |range| pull_range(&dense, incoming, range))
    } else {
        push(t, selected, m, par)
    };
    Ok(SparseVector::concat(n, pieces))
}

/// Push in two passes: slices of the selected vertices emit their terms
/// into one list per target range, then each target range sorts and
/// min-combines what it received. `min` is exact, so neither the grouping
/// nor the order of terms can change the result.
fn push(t: &SparseVector, selected: &Mask, m: &SparseMatrix, par: Parallelism) -> Vec<(Vec<usize>, Vec<f64>)> {
    let targets = partition(m.n(), par.tasks());
    let slot = RangeIndex::new(m.n(), targets.len());
    let sources = selected.indices();

    let emitted = parallel_execute(sources.len(), par, |range| {
        let mut lists: Vec<Vec<(usize, f64)>> = vec![Vec::new(); targets.len()];
        let mut seeker = Seeker::new(t);
        for &i in &sources[range] {
            let Some(x) = seeker.seek(i) else { continue };
            let (cols, weights) = m.row(i);
            for (&j, &w) in cols.iter().zip(weights) {
                lists[slot.of(j)].push((j, x + w));
            }
        }
        lists
    });

    let per_target = parallel_execute(targets.len(), par, |ks| {
        ks.map(|k| {
            let mut terms: Vec<(usize, f64)> = Vec::with_capacity(emitted.iter().map(|l| l[k].len()).sum());
            for lists in &emitted {
                terms.extend_from_slice(&lists[k]);
            }
            terms.sort_unstable_by_key(|&(j, _)| j);
            let mut indices = Vec::new();
            let mut values: Vec<f64> = Vec::new();
            for (j, d) in terms {
                if indices.last() == Some(&j) {
                    let last = values.last_mut().unwrap();
                    *last = last.min(d);
                } else {
                    indices.push(j);
                    values.push(d);
                }
            }
            (indices, values)
        })
        .collect::<Vec<_>>()
    });
    per_target.into_iter().flatten().collect()
}

/// Which range of `partition(len, parts)` holds an index, in O(1).
struct RangeIndex {
    wide: usize,
    base: usize,
    split: usize,
}

impl RangeIndex {
    fn new(len: usize, parts: usize) -> Self {
        let parts = parts.max(1);
        let (base, extra) = (len / parts, len % parts);
        Self {
            wide: base + 1,
            base: base.max(1),
            split: extra * (base + 1),
        }
    }

    fn of(&self, j: usize) -> usize {
        if j < self.split {
            j / self.wide
        } else {
            self.split / self.wide + (j - self.split) / self.base
        }
    }
}

fn pull_range(dense: &[f64], incoming: &SparseMatrix, range: Range<usize>) -> (Vec<usize>, Vec<f64>) {
    let mut indices = Vec::new();
    let mut values = Vec::new();
    for j in range {
        let (sources, weights) = incoming.row(j);
        let mut best: Option<f64> = None;
        for (&i, &w) in sources.iter().zip(weights) {
            let x = dense[i];
            if x != f64::INFINITY {
                let d = x + w;
                best = Some(best.map_or(d, |b| b.min(d)));
            }
        }
        if let Some(best) = best {
            indices.push(j);
            values.push(best);
        }
    }
    (indices, values)
}

/// The three vectors one light-relaxation phase leaves behind.
#[derive(Debug, Clone, PartialEq)]
pub struct BucketUpdate {
    /// `min(t, t_req)`
    pub tentative: SparseVector,
    /// `(iΔ <= t_req < (i+1)Δ) ∘ (t_req < t)`
    pub bucket: Mask,
    /// `processed ∪ old bucket`
    pub processed: Mask,
}

/// Computes, in one merged pass over `t`, `t_req`, `processed` and the old
/// `bucket`, the state a light phase produces after its requests are known:
/// the old bucket joins the processed set, the new bucket holds requests
/// that land in bucket `i` and improve on `t`, and `t` takes the min.
///
/// A request for a vertex absent from `t` counts as improving when it is
/// non-zero, matching the masked `ewise_add(t_req, t, <)` it replaces.
pub fn fused_bucket_update(
    t: &SparseVector,
    t_req: &SparseVector,
    processed: &Mask,
    bucket: &Mask,
    i: usize,
    delta: f64,
    par: Parallelism,
) -> Result<BucketUpdate> {
    let n = t.len();
    check_len(n, t_req.len())?;
    check_len(n, processed.len())?;
    check_len(n, bucket.len())?;
    let (lo, hi) = bucket_bounds(i, delta);

    let pieces = parallel_execute(n, par, |range| {
        let (ti, tv) = t.range_slices(&range);
        let (ri, rv) = t_req.range_slices(&range);
        let mut out_i = Vec::with_capacity(ti.len() + ri.len());
        let mut out_v = Vec::with_capacity(ti.len() + ri.len());
        let mut next_bucket = Vec::new();
        let (mut x, mut y) = (0, 0);
        while x < ti.len() || y < ri.len() {
            let take_t = y == ri.len() || (x < ti.len() && ti[x] <= ri[y]);
            let take_r = x == ti.len() || (y < ri.len() && ri[y] <= ti[x]);
            let (index, value, improves) = match (take_t, take_r) {
                (true, true) => (ti[x], tv[x].min(rv[y]), rv[y] < tv[x]),
                (true, false) => (ti[x], tv[x], false),
                _ => (ri[y], rv[y], rv[y] != 0.0),
            };
            if take_r && improves && lo <= rv[y] && rv[y] < hi {
                next_bucket.push(index);
            }
            if take_t {
                x += 1;
            }
            if take_r {
                y += 1;
            }
            out_i.push(index);
            out_v.push(value);
        }
        let seen = merge_union(processed.range_slice(&range), bucket.range_slice(&range));
        ((out_i, out_v), next_bucket, seen)
    });

    let mut tentative = Vec::with_capacity(pieces.len());
    let mut buckets = Vec::with_capacity(pieces.len());
    let mut seen = Vec::with_capacity(pieces.len());
    for (tv, b, s) in pieces {
        tentative.push(tv);
        buckets.push(b);
        seen.push(s);
    }
    Ok(BucketUpdate {
        tentative: SparseVector::concat(n, tentative),
        bucket: Mask::concat(n, buckets),
        processed: Mask::concat(n, seen),
    })
}

fn merge_union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut x, mut y) = (0, 0);
    while x < a.len() && y < b.len() {
        let (p, q) = (a[x], b[y]);
        out.push(p.min(q));
        x += usize::from(p <= q);
        y += usize::from(q <= p);
    }
    out.extend_from_slice(&a[x..]);
    out.extend_from_slice(&b[y..]);
    out
}

/// `min(t, t_req)` over the union of stored entries.
pub fn fused_min_merge(t: &SparseVector, t_req: &SparseVector, par: Parallelism) -> Result<SparseVector> {
    let n = t.len();
    check_len(n, t_req.len())?;
    if t_req.is_empty() {
        return Ok(t.clone());
    }
    let pieces = parallel_execute(n, par, |range| {
        let (ti, tv) = t.range_slices(&range);
        let (ri, rv) = t_req.range_slices(&range);
        let mut out_i = Vec::with_capacity(ti.len() + ri.len());
        let mut out_v = Vec::with_capacity(ti.len() + ri.len());
        let (mut x, mut y) = (0, 0);
        while x < ti.len() || y < ri.len() {
            let take_t = y == ri.len() || (x < ti.len() && ti[x] <= ri[y]);
            let take_r = x == ti.len() || (y < ri.len() && ri[y] <= ti[x]);
            let (index, value) = match (take_t, take_r) {
                (true, true) => (ti[x], tv[x].min(rv[y])),
                (true, false) => (ti[x], tv[x]),
                _ => (ri[y], rv[y]),
            };
            x += usize::from(take_t);
            y += usize::from(take_r);
            out_i.push(index);
            out_v.push(value);
        }
        (out_i, out_v)
    });
    Ok(SparseVector::concat(n, pieces))
}

/// Bucket `i` of `t`, evaluated range by range.
pub fn fused_bucket(t: &SparseVector, i: usize, delta: f64, par: Parallelism) -> Mask {
    let (lo, hi) = bucket_bounds(i, delta);
    let pieces = parallel_execute(t.len(), par, |range| {
        let (ti, tv) = t.range_slices(&range);
        ti.iter()
            .zip(tv)
            .filter(|&(_, &x)| lo <= x && x < hi)
            .map(|(&k, _)| k)
            .collect::<Vec<_>>()
    });
    Mask::concat(t.len(), pieces)
}

/// Light/heavy split with the two filters (and their column views) built as
/// independent tasks, each further split by row ranges.
pub fn fused_split_edges(a: &SparseMatrix, delta: f64, par: Parallelism) -> (SparseMatrix, SparseMatrix) {
    let light = UnaryPredicate::left_open(0.0, delta);
    let heavy = UnaryPredicate::greater_than(delta);
    let build = |pred: &UnaryPredicate| {
        let pieces = parallel_execute(a.n(), par, |rows| a.filter_rows(rows, |w| pred.eval(w)));
        let m = SparseMatrix::from_row_pieces(a.n(), pieces);
        m.transposed_view();
        m
    };
    join(par, || build(&light), || build(&heavy))
}
