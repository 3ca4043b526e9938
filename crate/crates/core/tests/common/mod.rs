// SPDX-License-Identifier: Apache-2.0

#![allow(dead_code)]

use la_sssp::sssp::{bucket_bounds, Observer, SsspState};
use la_sssp::io::{GraphFile, GraphFormat, LoadError};
use la_sssp::{SparseMatrix, SparseVector};

/// Dense `(min, +)` product `out[j] = min_i v[i] + m[i][j]` with explicit
/// infinity padding. Independent of the sparse kernels.
pub fn dense_min_plus(v: &[f64], m: &[Vec<f64>]) -> Vec<f64> {
    let n = v.len();
    let mut out = vec![f64::INFINITY; n];
    for j in 0..n {
        for i in 0..n {
            let term = v[i] + m[i][j];
            if term < out[j] {
                out[j] = term;
            }
        }
    }
    out
}

pub fn dense_matrix(a: &SparseMatrix) -> Vec<Vec<f64>> {
    let mut dense = vec![vec![f64::INFINITY; a.n()]; a.n()];
    for (r, c, w) in a.entries() {
        dense[r][c] = w;
    }
    dense
}

/// Checks the run-time invariants of delta-stepping between phases and
/// records violations instead of panicking inside the solver.
#[derive(Debug, Default)]
pub struct InvariantChecker {
    pub violations: Vec<String>,
    pub light_phases: usize,
    pub min_weight: f64,
}

impl InvariantChecker {
    pub fn new(a: &SparseMatrix) -> Self {
        Self {
            violations: Vec::new(),
            light_phases: 0,
            min_weight: a.entries().map(|(_, _, w)| w).fold(f64::INFINITY, f64::min),
        }
    }

    fn check_monotone(&mut self, before: &SparseVector, after: &SparseVector, phase: &str) {
        for (i, old) in before.iter() {
            match after.get(i) {
                Some(new) if new <= old => {}
                other => self.violations.push(format!("{phase}: t[{i}] went from {old} to {other:?}")),
            }
        }
    }

    fn check_requests_positive(&mut self, state: &SsspState, phase: &str) {
        if let Some((i, x)) = state.t_req.iter().find(|&(_, x)| x.is_nan() || x <= 0.0) {
            self.violations.push(format!("{phase}: t_req[{i}] = {x} is not positive"));
        }
    }

    fn check_bucket(&mut self, state: &SsspState, phase: &str) {
        let (lo, hi) = bucket_bounds(state.i, state.delta);
        for &v in state.bucket.indices() {
            match state.t.get(v) {
                Some(d) if lo <= d && d < hi => {}
                other => self
                    .violations
                    .push(format!("{phase}: bucket {} holds vertex {v} with t = {other:?}", state.i)),
            }
        }
    }
}

impl Observer for InvariantChecker {
    fn bucket_loaded(&mut self, state: &SsspState) {
        self.check_bucket(state, "bucket load");
        if state.t.get(state.source) != Some(0.0) {
            self.violations.push("source distance is not 0".into());
        }
    }

    fn light_phase(&mut self, before: Option<&SparseVector>, state: &SsspState) {
        self.light_phases += 1;
        self.check_monotone(before.unwrap(), &state.t, "light");
        self.check_requests_positive(state, "light");
        self.check_bucket(state, "light");
    }

    fn heavy_phase(&mut self, before: Option<&SparseVector>, state: &SsspState) {
        self.check_monotone(before.unwrap(), &state.t, "heavy");
        self.check_requests_positive(state, "heavy");
        // a heavy request never lands back in the bucket just emptied
        let (_, hi) = bucket_bounds(state.i, state.delta);
        if let Some((v, x)) = state.t_req.iter().find(|&(_, x)| x < hi) {
            self.violations
                .push(format!("heavy request {x} for vertex {v} re-enters bucket {}", state.i));
        }
    }
}

pub fn fixture(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

/// Well-formed fixture with the triples it must load to, as external labels.
pub struct GoodFixture {
    pub name: &'static str,
    pub format: GraphFormat,
    pub directed: bool,
    pub triples: Vec<(u64, u64, f64)>,
    pub self_loops: usize,
    pub duplicates: usize,
}

pub struct BadFixture {
    pub name: &'static str,
    pub format: GraphFormat,
    pub line: usize,
    pub validation: bool,
}

pub fn good_fixtures() -> Vec<GoodFixture> {
    use GraphFormat::*;
    vec![
        GoodFixture {
            name: "symmetric_pattern.mtx",
            format: MatrixMarket,
            directed: false,
            triples: vec![
                (0, 1, 1.0),
                (0, 2, 1.0),
                (1, 0, 1.0),
                (1, 2, 1.0),
                (2, 0, 1.0),
                (2, 1, 1.0),
                (2, 3, 1.0),
                (3, 2, 1.0),
            ],
            self_loops: 0,
            duplicates: 0,
        },
        GoodFixture {
            name: "general_real.mtx",
            format: MatrixMarket,
            directed: true,
            triples: vec![(0, 1, 0.5), (0, 2, 10.0), (1, 2, 1.25), (2, 0, 4.0)],
            self_loops: 0,
            duplicates: 0,
        },
        GoodFixture {
            name: "loops_duplicates.mtx",
            format: MatrixMarket,
            directed: true,
            triples: vec![(0, 1, 2.0), (1, 2, 9.0)],
            self_loops: 2,
            duplicates: 1,
        },
        GoodFixture {
            name: "symmetric_real.mtx",
            format: MatrixMarket,
            directed: false,
            triples: vec![(0, 1, 1.5), (1, 0, 1.5)],
            self_loops: 1,
            duplicates: 0,
        },
        GoodFixture {
            name: "snap_undirected.edges",
            format: EdgeList,
            directed: false,
            triples: vec![
                (10, 20, 1.0),
                (10, 30, 1.0),
                (20, 10, 1.0),
                (20, 30, 1.0),
                (30, 10, 1.0),
                (30, 20, 1.0),
            ],
            self_loops: 0,
            duplicates: 0,
        },
        GoodFixture {
            name: "weighted_directed.edges",
            format: EdgeList,
            directed: true,
            triples: vec![(5, 9, 0.5), (7, 5, 4.0), (9, 7, 1.0)],
            self_loops: 1,
            duplicates: 1,
        },
    ]
}

pub fn bad_fixtures() -> Vec<BadFixture> {
    use GraphFormat::*;
    let bad = |name, format, line, validation| BadFixture {
        name,
        format,
        line,
        validation,
    };
    vec![
        bad("bad_header.mtx", MatrixMarket, 1, false),
        bad("bad_token.mtx", MatrixMarket, 4, false),
        bad("bad_weight.mtx", MatrixMarket, 5, true),
        bad("bad_index.mtx", MatrixMarket, 4, true),
        bad("short_count.mtx", MatrixMarket, 5, false),
        bad("bad_token.edges", EdgeList, 3, false),
        bad("bad_weight.edges", EdgeList, 3, true),
        bad("bad_arity.edges", EdgeList, 1, false),
    ]
}

/// Loads a good fixture and returns a description of the first difference.
pub fn check_good(f: &GoodFixture) -> Result<(), String> {
    let mut file = GraphFile::new(fixture(f.name), f.format);
    file.directed = f.directed;
    let g = file.load().map_err(|e| format!("{}: {e}", f.name))?;
    let mut got = g.external_triples();
    got.sort_by_key(|&(a, b, _)| (a, b));
    if got != f.triples {
        return Err(format!("{}: got {got:?}", f.name));
    }
    if (g.self_loops, g.duplicates) != (f.self_loops, f.duplicates) {
        return Err(format!("{}: self-loops {} duplicates {}", f.name, g.self_loops, g.duplicates));
    }
    Ok(())
}

pub fn check_bad(f: &BadFixture) -> Result<(), String> {
    match GraphFile::new(fixture(f.name), f.format).load() {
        Ok(_) => Err(format!("{}: loaded without error", f.name)),
        Err(e @ LoadError::Validation { .. }) if f.validation && e.line() == Some(f.line) => Ok(()),
        Err(e @ LoadError::Parse { .. }) if !f.validation && e.line() == Some(f.line) => Ok(()),
        Err(e) => Err(format!("{}: unexpected error {e:?}", f.name)),
    }
}
