// SPDX-License-Identifier: Apache-2.0

//! Delta-stepping single-source shortest paths written as sparse kernel
//! calls over the `(min, +)` semiring, plus the Dijkstra reference used to
//! check it.
//!
//! Tentative distances live in a sparse vector `t` whose absent entries
//! mean infinity. Edges are split once into light (`w <= Δ`) and heavy
//! (`w > Δ`) matrices. For bucket `i` the inner loop repeatedly relaxes
//! light edges out of the bucket until no request both lands in
//! `[iΔ, (i+1)Δ)` and improves `t`; then the heavy edges of every vertex
//! that passed through the bucket are relaxed once.

mod algorithm;
mod dijkstra;
mod state;
mod verify;

pub use algorithm::{delta_stepping, DeltaStepping, Observer, Silent, SsspResult};
pub use dijkstra::dijkstra_oracle;
pub use state::{bucket_bounds, compute_bucket, split_edges, unfused_bucket_update, SsspState};
pub use verify::{compare_distances, Comparison, Mismatch};
