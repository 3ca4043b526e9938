// SPDX-License-Identifier: Apache-2.0

use std::time::{Duration, Instant};

use super::state::SsspState;
use crate::error::Result;
use crate::parallel::BackendChoice;
use crate::sparse::{SparseMatrix, SparseVector};

/// Hooks called between the phases of a run. Every method defaults to a
/// no-op; tests use them to check invariants on the live state.
pub trait Observer {
    /// Whether `t` should be cloned before each phase so hooks can compare.
    fn wants_snapshots(&self) -> bool {
        true
    }

    /// After the bucket for `state.i` is loaded, before any light phase.
    fn bucket_loaded(&mut self, _state: &SsspState) {}

    /// After one light phase. `before` is `t` prior to the phase when snapshots are on.
    fn light_phase(&mut self, _before: Option<&SparseVector>, _state: &SsspState) {}

    /// After the heavy relaxation closing bucket `state.i`.
    fn heavy_phase(&mut self, _before: Option<&SparseVector>, _state: &SsspState) {}
}

/// Observer that does nothing.
#[derive(Debug, Default, Clone, Copy)]
pub struct Silent;

impl Observer for Silent {
    fn wants_snapshots(&self) -> bool {
        false
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SsspResult {
    /// Shortest distances from the source; unreachable vertices are absent.
    pub distances: SparseVector,
    /// Bucket indices visited by the outer loop.
    pub outer_iterations: usize,
    /// Light phases summed over all buckets.
    pub inner_phases: usize,
    /// Light phases run for each visited bucket, in visiting order.
    pub light_phases_per_bucket: Vec<usize>,
    /// Wall time including the light/heavy edge split.
    pub elapsed: Duration,
}

/// Configured delta-stepping solver.
#[derive(Debug, Clone, Copy)]
pub struct DeltaStepping {
    pub delta: f64,
    pub backend: BackendChoice,
    /// Jump straight to the next bucket holding a distance instead of
    /// stepping `i` by one through empty buckets.
    pub skip_empty_buckets: bool,
}

impl DeltaStepping {
    pub fn new(delta: f64) -> Self {
        Self {
            delta,
            backend: BackendChoice::unfused(),
            skip_empty_buckets: false,
        }
    }

    pub fn backend(mut self, backend: BackendChoice) -> Self {
        self.backend = backend;
        self
    }

    pub fn skip_empty_buckets(mut self, skip: bool) -> Self {
        self.skip_empty_buckets = skip;
        self
    }

    pub fn run(&self, a: &SparseMatrix, source: usize) -> Result<SsspResult> {
        self.run_observed(a, source, &mut Silent)
    }

    pub fn run_observed<O: Observer>(&self, a: &SparseMatrix, source: usize, observer: &mut O) -> Result<SsspResult> {
        let start = Instant::now();
        let mut state = SsspState::new(a, source, self.delta, self.backend)?;
        let snapshots = observer.wants_snapshots();
        let mut phases = Vec::new();

        // only stored (finite) distances count, so unreachable vertices
        // cannot keep the loop alive
        while state.has_pending() {
            if self.skip_empty_buckets {
                state.skip_to_nonempty_bucket();
            }
            state.begin_bucket();
            observer.bucket_loaded(&state);

            let mut light = 0;
            while !state.bucket.is_empty() {
                let before = snapshots.then(|| state.t.clone());
                state.relax_light_phase()?;
                light += 1;
                observer.light_phase(before.as_ref(), &state);
            }

            let before = snapshots.then(|| state.t.clone());
            state.relax_heavy()?;
            observer.heavy_phase(before.as_ref(), &state);

            phases.push(light);
            state.i += 1;
        }

        Ok(SsspResult {
            distances: state.t,
            outer_iterations: phases.len(),
            inner_phases: phases.iter().sum(),
            light_phases_per_bucket: phases,
            elapsed: start.elapsed(),
        })
    }
}

/// Delta-stepping with the unfused backend and default options.
pub fn delta_stepping(a: &SparseMatrix, source: usize, delta: f64) -> Result<SsspResult> {
    DeltaStepping::new(delta).run(a, source)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn path(len: usize) -> SparseMatrix {
        let triples = (0..len).flat_map(|k| [(k, k + 1, 1.0), (k + 1, k, 1.0)]);
        SparseMatrix::from_triples(len + 1, triples).unwrap()
    }

    #[test]
    fn single_vertex() {
        let a = SparseMatrix::empty(1).unwrap();
        let r = delta_stepping(&a, 0, 1.0).unwrap();
        assert_eq!(r.distances.iter().collect::<Vec<_>>(), vec![(0, 0.0)]);
        assert_eq!(r.outer_iterations, 1);
    }

    #[test]
    fn unit_path_one_bucket_per_level() {
        let r = delta_stepping(&path(3), 0, 1.0).unwrap();
        assert_eq!(r.distances.values(), &[0.0, 1.0, 2.0, 3.0]);
        assert_eq!(r.outer_iterations, 4);
        assert_eq!(r.light_phases_per_bucket, vec![1, 1, 1, 1]);
    }

    #[test]
    fn unreachable_vertices_are_absent() {
        let a = SparseMatrix::from_triples(4, [(0, 1, 2.0), (2, 3, 1.0)]).unwrap();
        let r = delta_stepping(&a, 0, 1.0).unwrap();
        assert_eq!(r.distances.iter().collect::<Vec<_>>(), vec![(0, 0.0), (1, 2.0)]);
    }

    #[test]
    fn skipping_empty_buckets_keeps_distances() {
        let a = SparseMatrix::from_triples(3, [(0, 1, 50.0), (1, 2, 0.5)]).unwrap();
        let plain = delta_stepping(&a, 0, 1.0).unwrap();
        let skipping = DeltaStepping::new(1.0).skip_empty_buckets(true).run(&a, 0).unwrap();
        assert_eq!(plain.distances, skipping.distances);
        assert_eq!(plain.outer_iterations, 51);
        assert_eq!(skipping.outer_iterations, 2);
    }

    #[test]
    fn source_out_of_range() {
        assert_eq!(
            delta_stepping(&path(2), 3, 1.0).err(),
            Some(Error::SourceOutOfRange { vertex: 3, n: 3 })
        );
    }
}
