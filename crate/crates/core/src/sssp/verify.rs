// SPDX-License-Identifier: Apache-2.0

use std::fmt;

use crate::sparse::SparseVector;

/// One vertex where two distance vectors disagree. `None` means unreachable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mismatch {
    pub vertex: usize,
    pub expected: Option<f64>,
    pub actual: Option<f64>,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |d: Option<f64>| d.map_or_else(|| "unreachable".to_string(), |d| d.to_string());
        write!(f, "vertex {}: expected {}, got {}", self.vertex, show(self.expected), show(self.actual))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    /// Largest `|expected - actual|` over vertices reachable in both.
    pub max_abs_deviation: f64,
    pub mismatches: Vec<Mismatch>,
}

impl Comparison {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares distance vectors entry by entry. A vertex matches when both
/// sides are unreachable or `|e - a| <= rel_tol * (1 + e)`; `rel_tol = 0`
/// demands exact equality.
pub fn compare_distances(expected: &SparseVector, actual: &SparseVector, rel_tol: f64) -> Comparison {
    let mut out = Comparison {
        max_abs_deviation: 0.0,
        mismatches: Vec::new(),
    };
    let (ei, ev) = (expected.indices(), expected.values());
    let (ai, av) = (actual.indices(), actual.values());
    let (mut x, mut y) = (0, 0);
    while x < ei.len() || y < ai.len() {
        let take_e = y == ai.len() || (x < ei.len() && ei[x] <= ai[y]);
        let take_a = x == ei.len() || (y < ai.len() && ai[y] <= ei[x]);
        let vertex = if take_e { ei[x] } else { ai[y] };
        let e = take_e.then(|| ev[x]);
        let a = take_a.then(|| av[y]);
        let ok = match (e, a) {
            (Some(e), Some(a)) => {
                let dev = (e - a).abs();
                out.max_abs_deviation = out.max_abs_deviation.max(dev);
                e == a || dev <= rel_tol * (1.0 + e.abs())
            }
            _ => false,
        };
        if !ok {
            out.mismatches.push(Mismatch {
                vertex,
                expected: e,
                actual: a,
            });
        }
        x += usize::from(take_e);
        y += usize::from(take_a);
    }
    out
}
