// SPDX-License-Identifier: Apache-2.0

//! Graph ingestion: Matrix Market coordinate files and whitespace-separated
//! edge lists, read from a path or from standard input (`-`).

mod edge_list;
mod labels;
mod matrix_market;

use std::fs::File;
use std::io::{self, BufRead, BufReader};
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::error::Error as BuildError;
use crate::sparse::SparseMatrix;

pub use edge_list::read_edge_list;
pub use labels::LabelMap;
pub use matrix_market::read_matrix_market;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: {message}")]
    Validation { line: usize, message: String },

    #[error(transparent)]
    Build(#[from] BuildError),
}

impl LoadError {
    /// Line number a parse or validation error points at.
    pub fn line(&self) -> Option<usize> {
        match self {
            LoadError::Parse { line, .. } | LoadError::Validation { line, .. } => Some(*line),
            _ => None,
        }
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        LoadError::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn validation(line: usize, message: impl Into<String>) -> Self {
        LoadError::Validation {
            line,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    MatrixMarket,
    EdgeList,
}

/// Where a graph comes from and how to read it.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphFile {
    pub path: PathBuf,
    pub format: GraphFormat,
    /// Edge lists only: when false every edge is inserted in both directions.
    pub directed: bool,
    /// Weight for lines that carry none. Must be positive.
    pub default_weight: f64,
}

impl GraphFile {
    pub fn new(path: impl Into<PathBuf>, format: GraphFormat) -> Self {
        Self {
            path: path.into(),
            format,
            directed: false,
            default_weight: 1.0,
        }
    }

    pub fn load(&self) -> Result<LoadedGraph, LoadError> {
        if !(self.default_weight.is_finite() && self.default_weight > 0.0) {
            return Err(LoadError::validation(0, format!("default weight {} is not positive", self.default_weight)));
        }
        let reader = open(&self.path)?;
        match self.format {
            GraphFormat::MatrixMarket => read_matrix_market(reader, self.default_weight),
            GraphFormat::EdgeList => read_edge_list(reader, self.directed, self.default_weight),
        }
    }
}

fn open(path: &Path) -> Result<Box<dyn BufRead>, LoadError> {
    if path == Path::new("-") {
        return Ok(Box::new(BufReader::new(io::stdin())));
    }
    let file = File::open(path).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(Box::new(BufReader::new(file)))
}

/// A loaded adjacency matrix with its label map and what the loader dropped.
#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub matrix: SparseMatrix,
    pub labels: LabelMap,
    pub self_loops: usize,
    pub duplicates: usize,
}

impl LoadedGraph {
    /// Edges as `(label, label, weight)`, in row-major order of internal ids.
    pub fn external_triples(&self) -> Vec<(u64, u64, f64)> {
        self.matrix
            .entries()
            .map(|(r, c, w)| (self.labels.external(r), self.labels.external(c), w))
            .collect()
    }
}

pub(crate) fn build(
    n: usize,
    triples: Vec<(usize, usize, f64)>,
    labels: LabelMap,
) -> Result<LoadedGraph, LoadError> {
    let (matrix, report) = SparseMatrix::from_triples_counted(n, triples)?;
    Ok(LoadedGraph {
        matrix,
        labels,
        self_loops: report.self_loops,
        duplicates: report.duplicates,
    })
}

/// Parses a weight token, requiring a finite positive value.
pub(crate) fn parse_weight(token: &str, line: usize) -> Result<f64, LoadError> {
    let w: f64 = token
        .parse()
        .map_err(|_| LoadError::parse(line, format!("invalid weight {token:?}")))?;
    if !(w.is_finite() && w > 0.0) {
        return Err(LoadError::validation(line, format!("weight {w} is not strictly positive")));
    }
    Ok(w)
}
