// SPDX-License-Identifier: Apache-2.0

//! Small random-graph generators for tests, the self-test suite and benchmarks.

use rand::Rng;

use crate::sparse::SparseMatrix;

/// Edge-weight distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Weights {
    /// Every edge weighs 1.
    Unit,
    /// Uniform over the integers `1..=max`.
    Integer(u32),
    /// Uniform over the half-open interval `(0, max]`.
    Real(f64),
}

impl Weights {
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            Weights::Unit => 1.0,
            Weights::Integer(max) => f64::from(rng.gen_range(1..=max)),
            Weights::Real(max) => max * (1.0 - rng.gen::<f64>()),
        }
    }

    pub fn is_integral(&self) -> bool {
        !matches!(self, Weights::Real(_))
    }
}

/// `m` directed edge draws between uniformly random distinct endpoints.
/// Repeated pairs collapse to their minimum, so the result may hold fewer
/// than `m` entries. With `n == 1` the graph has no edges.
pub fn random_graph<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize, weights: Weights) -> SparseMatrix {
    let mut triples = Vec::with_capacity(m);
    if n > 1 {
        for _ in 0..m {
            let u = rng.gen_range(0..n);
            let mut v = rng.gen_range(0..n - 1);
            if v >= u {
                v += 1;
            }
            triples.push((u, v, weights.sample(rng)));
        }
    }
    SparseMatrix::from_triples(n, triples).expect("generated triples are valid")
}

/// A connected symmetric graph: a random spanning tree plus `extra`
/// random undirected edges, every edge drawn from `weights`.
pub fn random_connected_graph<R: Rng + ?Sized>(rng: &mut R, n: usize, extra: usize, weights: Weights) -> SparseMatrix {
    let mut triples = Vec::with_capacity(2 * (n + extra));
    let mut push = |u: usize, v: usize, w: f64| {
        triples.push((u, v, w));
        triples.push((v, u, w));
    };
    for v in 1..n {
        let u = rng.gen_range(0..v);
        push(u, v, weights.sample(rng));
    }
    if n > 1 {
        for _ in 0..extra {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u != v {
                push(u, v, weights.sample(rng));
            }
        }
    }
    SparseMatrix::from_triples(n.max(1), triples).expect("generated triples are valid")
}
