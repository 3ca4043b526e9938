// SPDX-License-Identifier: Apache-2.0

//! Randomized differential suite: delta-stepping on every backend against
//! the Dijkstra oracle. Each case derives its own seed so a failure can be
//! replayed alone.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gen::{random_graph, Weights};
use crate::parallel::BackendChoice;
use crate::sparse::SparseMatrix;
use crate::sssp::{compare_distances, dijkstra_oracle, DeltaStepping};

/// Relative tolerance for real-valued weights; integer weights must match exactly.
pub const REAL_TOLERANCE: f64 = 1e-9;

pub const DEFAULT_DELTAS: [f64; 4] = [0.5, 1.0, 3.0, 11.0];

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub seed: u64,
    pub cases: usize,
    pub deltas: Vec<f64>,
    pub backends: Vec<BackendChoice>,
    /// Corrupt one computed distance per run to prove failures are caught.
    pub inject_fault: bool,
}

impl SuiteConfig {
    pub fn new(seed: u64, cases: usize) -> Self {
        Self {
            seed,
            cases,
            deltas: DEFAULT_DELTAS.to_vec(),
            backends: vec![
                BackendChoice::unfused(),
                BackendChoice::fused(1).unwrap(),
                BackendChoice::fused(4).unwrap(),
            ],
            inject_fault: false,
        }
    }
}

/// A generated test case.
#[derive(Debug, Clone)]
pub struct Case {
    pub seed: u64,
    pub graph: SparseMatrix,
    pub source: usize,
    pub weights: Weights,
}

impl Case {
    /// Every fourth case uses real weights in `(0, 10]`, the rest integers in `1..=10`.
    pub fn generate(seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let weights = if seed % 4 == 3 {
            Weights::Real(10.0)
        } else {
            Weights::Integer(10)
        };
        let n = rng.gen_range(1..=200);
        let m = rng.gen_range(0..=2000);
        let graph = random_graph(&mut rng, n, m, weights);
        let source = rng.gen_range(0..n);
        Self {
            seed,
            graph,
            source,
            weights,
        }
    }

    pub fn tolerance(&self) -> f64 {
        if self.weights.is_integral() {
            0.0
        } else {
            REAL_TOLERANCE
        }
    }
}

#[derive(Debug, Clone)]
pub struct CaseFailure {
    pub seed: u64,
    pub delta: f64,
    pub backend: BackendChoice,
    pub detail: String,
}

impl fmt::Display for CaseFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "seed {} delta {} backend {} x{}: {}",
            self.seed,
            self.delta,
            self.backend.kind,
            self.backend.workers(),
            self.detail
        )
    }
}

#[derive(Debug, Clone, Default)]
pub struct SuiteReport {
    pub cases: usize,
    pub runs: usize,
    pub failures: Vec<CaseFailure>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn run_oracle_suite(config: &SuiteConfig) -> SuiteReport {
    let mut report = SuiteReport::default();
    for k in 0..config.cases {
        let case = Case::generate(config.seed.wrapping_add(k as u64));
        let expected = dijkstra_oracle(&case.graph, case.source).expect("source in range");
        report.cases += 1;
        for &delta in &config.deltas {
            for &backend in &config.backends {
                report.runs += 1;
                let fail = |detail: String| CaseFailure {
                    seed: case.seed,
                    delta,
                    backend,
                    detail,
                };
                let result = match DeltaStepping::new(delta).backend(backend).run(&case.graph, case.source) {
                    Ok(r) => r,
                    Err(e) => {
                        report.failures.push(fail(e.to_string()));
                        continue;
                    }
                };
                let mut distances = result.distances;
                if config.inject_fault {
                    distances = corrupt(&distances);
                }
                let cmp = compare_distances(&expected, &distances, case.tolerance());
                if let Some(first) = cmp.mismatches.first() {
                    report.failures.push(fail(first.to_string()));
                }
            }
        }
    }
    report
}

fn corrupt(v: &crate::SparseVector) -> crate::SparseVector {
    let mut pairs: Vec<(usize, f64)> = v.iter().collect();
    if let Some(last) = pairs.last_mut() {
        last.1 += 1.0;
    }
    crate::SparseVector::from_pairs(v.len(), pairs).expect("same shape")
}
