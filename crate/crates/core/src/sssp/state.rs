// SPDX-License-Identifier: Apache-2.0

use crate::error::{Error, Result};
use crate::fused::{fused_bucket, fused_bucket_update, fused_masked_relax, fused_min_merge, fused_split_edges};
use crate::ops::{ewise_add_vector, ewise_mult_vector, filter_matrix, filter_vector, vxm_min_plus, BinaryOp, UnaryPredicate};
use crate::parallel::{BackendChoice, BackendKind};
use crate::sparse::{Mask, SparseMatrix, SparseVector};

/// Lower and upper bound of bucket `i`: distances in `[iΔ, (i+1)Δ)`.
#[inline]
pub fn bucket_bounds(i: usize, delta: f64) -> (f64, f64) {
    (i as f64 * delta, (i + 1) as f64 * delta)
}

/// Splits `a` into light edges (`0 < w <= delta`) and heavy edges
/// (`w > delta`), with both column views materialized.
pub fn split_edges(a: &SparseMatrix, delta: f64) -> (SparseMatrix, SparseMatrix) {
    let light = filter_matrix(a, &UnaryPredicate::left_open(0.0, delta));
    let heavy = filter_matrix(a, &UnaryPredicate::greater_than(delta));
    light.transposed_view();
    heavy.transposed_view();
    (light, heavy)
}

/// Vertices whose stored tentative distance lies in bucket `i`.
pub fn compute_bucket(t: &SparseVector, i: usize, delta: f64) -> Mask {
    let (lo, hi) = bucket_bounds(i, delta);
    filter_vector(t, &UnaryPredicate::half_open(lo, hi))
}

/// The composed-kernel form of one light phase's bookkeeping, given the
/// requests `t_req`: returns `(t', bucket', processed')`.
pub fn unfused_bucket_update(
    t: &SparseVector,
    t_req: &SparseVector,
    processed: &Mask,
    bucket: &Mask,
    i: usize,
    delta: f64,
) -> Result<(SparseVector, Mask, Mask)> {
    let processed = processed.union(bucket)?;

    let (lo, hi) = bucket_bounds(i, delta);
    let in_bucket = filter_vector(t_req, &UnaryPredicate::half_open(lo, hi));
    // dom(t_req) as the output mask keeps lone entries of t out; lone
    // requests pass through and read as true since they are never zero
    let compared = ewise_add_vector(t_req, t, BinaryOp::LESS_THAN, Some(&Mask::structure_of(t_req)))?;
    let improving = filter_vector(&compared, &UnaryPredicate::nonzero());
    let bucket = in_bucket.intersection(&improving)?;

    let t = ewise_add_vector(t, t_req, BinaryOp::MIN, None)?;
    Ok((t, bucket, processed))
}

/// Working set of one delta-stepping run.
#[derive(Debug, Clone)]
pub struct SsspState {
    /// Tentative distances; absent means infinity.
    pub t: SparseVector,
    /// Requests produced by the most recent relaxation.
    pub t_req: SparseVector,
    /// Current bucket.
    pub bucket: Mask,
    /// Vertices removed from the current bucket since the outer iteration began.
    pub processed: Mask,
    pub light: SparseMatrix,
    pub heavy: SparseMatrix,
    /// Bucket index.
    pub i: usize,
    pub delta: f64,
    pub source: usize,
    pub backend: BackendChoice,
}

impl SsspState {
    /// Splits the edges and seeds `t` with the source at distance zero.
    pub fn new(a: &SparseMatrix, source: usize, delta: f64, backend: BackendChoice) -> Result<Self> {
        let n = a.n();
        if !(delta.is_finite() && delta > 0.0) {
            return Err(Error::InvalidDelta(delta));
        }
        if source >= n {
            return Err(Error::SourceOutOfRange { vertex: source, n });
        }
        let (light, heavy) = match backend.kind {
            BackendKind::Unfused => split_edges(a, delta),
            BackendKind::Fused => fused_split_edges(a, delta, backend.parallelism),
        };
        Ok(Self {
            t: SparseVector::from_sorted_parts(n, vec![source], vec![0.0]),
            t_req: SparseVector::new(n),
            bucket: Mask::new(n),
            processed: Mask::new(n),
            light,
            heavy,
            i: 0,
            delta,
            source,
            backend,
        })
    }

    pub fn n(&self) -> usize {
        self.t.len()
    }

    /// True while some stored distance is at least `iΔ`.
    pub fn has_pending(&self) -> bool {
        let (lo, _) = bucket_bounds(self.i, self.delta);
        self.t.values().iter().any(|&x| x >= lo)
    }

    /// Moves `i` forward to the first bucket holding a stored distance.
    pub fn skip_to_nonempty_bucket(&mut self) {
        let (lo, _) = bucket_bounds(self.i, self.delta);
        let Some(next) = self.t.values().iter().copied().filter(|&x| x >= lo).reduce(f64::min) else {
            return;
        };
        let mut i = ((next / self.delta).floor() as usize).max(self.i);
        // floor() and the bucket bounds can disagree by one ulp
        while i > self.i && bucket_bounds(i, self.delta).0 > next {
            i -= 1;
        }
        while bucket_bounds(i, self.delta).1 <= next {
            i += 1;
        }
        self.i = i;
    }

    /// Outer-iteration prologue: clears the processed set and loads bucket `i`.
    pub fn begin_bucket(&mut self) {
        self.processed = Mask::new(self.n());
        self.bucket = match self.backend.kind {
            BackendKind::Unfused => compute_bucket(&self.t, self.i, self.delta),
            BackendKind::Fused => fused_bucket(&self.t, self.i, self.delta, self.backend.parallelism),
        };
    }

    /// One pass of the inner loop: relax the light edges leaving the current
    /// bucket, retire the bucket into the processed set, and rebuild the
    /// bucket from the requests that land in it and improve `t`.
    pub fn relax_light_phase(&mut self) -> Result<()> {
        match self.backend.kind {
            BackendKind::Unfused => {
                let frontier = ewise_mult_vector(&self.t, &self.bucket.to_vector(1.0), BinaryOp::TIMES)?;
                self.t_req = vxm_min_plus(&frontier, &self.light, None)?;
                let (t, bucket, processed) =
                    unfused_bucket_update(&self.t, &self.t_req, &self.processed, &self.bucket, self.i, self.delta)?;
                self.t = t;
                self.bucket = bucket;
                self.processed = processed;
            }
            BackendKind::Fused => {
                let par = self.backend.parallelism;
                self.t_req = fused_masked_relax(&self.t, &self.bucket, &self.light, par)?;
                let update = fused_bucket_update(&self.t, &self.t_req, &self.processed, &self.bucket, self.i, self.delta, par)?;
                self.t = update.tentative;
                self.bucket = update.bucket;
                self.processed = update.processed;
            }
        }
        Ok(())
    }

    /// Relaxes the heavy edges of every processed vertex once.
    pub fn relax_heavy(&mut self) -> Result<()> {
        match self.backend.kind {
            BackendKind::Unfused => {
                let frontier = ewise_mult_vector(&self.t, &self.processed.to_vector(1.0), BinaryOp::TIMES)?;
                self.t_req = vxm_min_plus(&frontier, &self.heavy, None)?;
                self.t = ewise_add_vector(&self.t, &self.t_req, BinaryOp::MIN, None)?;
            }
            BackendKind::Fused => {
                let par = self.backend.parallelism;
                self.t_req = fused_masked_relax(&self.t, &self.processed, &self.heavy, par)?;
                self.t = fused_min_merge(&self.t, &self.t_req, par)?;
            }
        }
        Ok(())
    }
}
