// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors raised by container construction and the graph kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension must be positive")]
    EmptyDimension,

    #[error("index {index} out of range for dimension {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("value at index {index} is NaN")]
    NotANumber { index: usize },

    #[error("edge ({row}, {col}) has weight {weight}; weights must be finite and strictly positive")]
    InvalidWeight { row: usize, col: usize, weight: f64 },

    #[error("delta must be finite and strictly positive, got {0}")]
    InvalidDelta(f64),

    #[error("source vertex {vertex} out of range for a graph with {n} vertices")]
    SourceOutOfRange { vertex: usize, n: usize },

    #[error("worker count must be at least 1")]
    NoWorkers,

    #[error("chunks per worker must be at least 1")]
    NoChunks,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
