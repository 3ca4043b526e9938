// SPDX-License-Identifier: Apache-2.0

//! Sparse linear-algebra graph kernels over the `(min, +)` semiring and a
//! delta-stepping single-source shortest path solver built from them.
//!
//! The solver runs on one of two backends:
//!
//! * **unfused**: every step is a separate kernel from [`ops`] and every
//!   intermediate vector is materialized;
//! * **fused**: the masked relaxation and the three-vector bucket update are
//!   each a single traversal ([`fused`]), partitioned over contiguous output
//!   ranges and optionally run on several workers.
//!
//! Both backends produce bit-identical distances.
//!
//! ```
//! use la_sssp::{dijkstra_oracle, DeltaStepping, BackendChoice, SparseMatrix};
//!
//! let a = SparseMatrix::from_triples(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 3.0)]).unwrap();
//! let r = DeltaStepping::new(1.0)
//!     .backend(BackendChoice::fused(2).unwrap())
//!     .run(&a, 0)
//!     .unwrap();
//! assert_eq!(r.distances.values(), &[0.0, 1.0, 2.0]);
//! assert_eq!(r.distances, dijkstra_oracle(&a, 0).unwrap());
//! ```

pub mod error;
pub mod fused;
pub mod gen;
pub mod io;
pub mod ops;
pub mod parallel;
pub mod selftest;
pub mod sparse;
pub mod sssp;

pub use error::{Error, Result};
pub use parallel::{BackendChoice, BackendKind, Parallelism};
pub use sparse::{Mask, Semiring, SparseMatrix, SparseVector};
pub use sssp::{delta_stepping, dijkstra_oracle, DeltaStepping, SsspResult};
