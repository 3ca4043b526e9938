// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::ops::Range;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// What [`SparseMatrix::from_triples_counted`] discarded while building.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuildReport {
    pub self_loops: usize,
    pub duplicates: usize,
}

/// Square weighted adjacency matrix in compressed row form.
///
/// Row `i` holds the outgoing edges of vertex `i`, sorted by column. Every
/// stored weight is finite and strictly positive and the diagonal is empty.
/// The column-major view is built on first request and cached.
pub struct SparseMatrix {
    n: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<f64>,
    transposed: OnceLock<Box<SparseMatrix>>,
}

impl SparseMatrix {
    /// The `n x n` matrix with no entries.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyDimension);
        }
        Ok(Self::from_csr(n, vec![0; n + 1], Vec::new(), Vec::new()))
    }

    pub fn from_triples<I>(n: usize, triples: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        Self::from_triples_counted(n, triples).map(|(m, _)| m)
    }

    /// Builds from `(row, col, weight)` triples. Self-loops are dropped and
    /// duplicate coordinates keep the minimum weight; both are counted.
    pub fn from_triples_counted<I>(n: usize, triples: I) -> Result<(Self, BuildReport)>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        if n == 0 {
            return Err(Error::EmptyDimension);
        }
        let mut report = BuildReport::default();
        let mut kept = Vec::new();
        for (row, col, weight) in triples {
            for index in [row, col] {
                if index >= n {
                    return Err(Error::IndexOutOfRange { index, len: n });
                }
            }
            if !(weight.is_finite() && weight > 0.0) {
                return Err(Error::InvalidWeight { row, col, weight });
            }
            if row == col {
                report.self_loops += 1;
                continue;
            }
            kept.push((row, col, weight));
        }

        // counting sort by row, then sort each row by column
        let mut row_ptr = vec![0usize; n + 1];
        for &(r, _, _) in &kept {
            row_ptr[r + 1] += 1;
        }
        for r in 0..n {
            row_ptr[r + 1] += row_ptr[r];
        }
        let mut next = row_ptr.clone();
        let mut slots = vec![(0usize, 0.0f64); kept.len()];
        for (r, c, w) in kept {
            slots[next[r]] = (c, w);
            next[r] += 1;
        }

        let mut new_ptr = Vec::with_capacity(n + 1);
        let mut cols = Vec::with_capacity(slots.len());
        let mut vals: Vec<f64> = Vec::with_capacity(slots.len());
        new_ptr.push(0);
        for r in 0..n {
            let row = &mut slots[row_ptr[r]..row_ptr[r + 1]];
            row.sort_by_key(|&(c, _)| c);
            let start = cols.len();
            for &(c, w) in row.iter() {
                if cols.len() > start && cols.last() == Some(&c) {
                    let last = vals.last_mut().unwrap();
                    *last = last.min(w);
                    report.duplicates += 1;
                } else {
                    cols.push(c);
                    vals.push(w);
                }
            }
            new_ptr.push(cols.len());
        }
        Ok((Self::from_csr(n, new_ptr, cols, vals), report))
    }

    pub(crate) fn from_csr(n: usize, row_ptr: Vec<usize>, cols: Vec<usize>, vals: Vec<f64>) -> Self {
        debug_assert_eq!(row_ptr.len(), n + 1);
        debug_assert_eq!(cols.len(), vals.len());
        debug_assert_eq!(*row_ptr.last().unwrap(), cols.len());
        Self {
            n,
            row_ptr,
            cols,
            vals,
            transposed: OnceLock::new(),
        }
    }

    /// Assembles a matrix from filtered row-range pieces covering `0..n` in order.
    pub(crate) fn from_row_pieces(n: usize, pieces: Vec<RowPiece>) -> Self {
        let nnz = pieces.iter().map(|p| p.cols.len()).sum();
        let mut row_ptr = Vec::with_capacity(n + 1);
        let mut cols = Vec::with_capacity(nnz);
        let mut vals = Vec::with_capacity(nnz);
        row_ptr.push(0);
        for piece in pieces {
            let base = cols.len();
            row_ptr.extend(piece.row_ends.iter().map(|&e| base + e));
            cols.extend(piece.cols);
            vals.extend(piece.vals);
        }
        Self::from_csr(n, row_ptr, cols, vals)
    }

    /// Vertex count (rows = columns).
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.cols.len()
    }

    /// Column indices and weights of row `i`.
    #[inline]
    pub fn row(&self, i: usize) -> (&[usize], &[f64]) {
        let span = self.row_ptr[i]..self.row_ptr[i + 1];
        (&self.cols[span.clone()], &self.vals[span])
    }

    #[inline]
    pub fn row_len(&self, i: usize) -> usize {
        self.row_ptr[i + 1] - self.row_ptr[i]
    }

    /// All entries as `(row, col, weight)` in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n).flat_map(move |r| {
            let (cols, vals) = self.row(r);
            cols.iter().zip(vals).map(move |(&c, &w)| (r, c, w))
        })
    }

    pub fn max_weight(&self) -> Option<f64> {
        self.vals.iter().copied().reduce(f64::max)
    }

    /// A freshly built transpose; `(i, j, w)` becomes `(j, i, w)`.
    pub fn transpose(&self) -> SparseMatrix {
        let n = self.n;
        let mut row_ptr = vec![0usize; n + 1];
        for &c in &self.cols {
            row_ptr[c + 1] += 1;
        }
        for r in 0..n {
            row_ptr[r + 1] += row_ptr[r];
        }
        let mut next = row_ptr.clone();
        let mut cols = vec![0usize; self.nnz()];
        let mut vals = vec![0.0f64; self.nnz()];
        // rows are visited in ascending order, so each output row comes out sorted
        for r in 0..n {
            let (rc, rv) = self.row(r);
            for (&c, &w) in rc.iter().zip(rv) {
                cols[next[c]] = r;
                vals[next[c]] = w;
                next[c] += 1;
            }
        }
        Self::from_csr(n, row_ptr, cols, vals)
    }

    /// The cached column-major view: row `j` of the result lists the
    /// incoming edges of vertex `j`.
    pub fn transposed_view(&self) -> &SparseMatrix {
        self.transposed.get_or_init(|| Box::new(self.transpose()))
    }

    /// Whether the column-major view has been materialized.
    pub fn has_transposed_view(&self) -> bool {
        self.transposed.get().is_some()
    }

    /// Keeps the entries of rows in `rows` whose weight satisfies `keep`.
    pub(crate) fn filter_rows(&self, rows: Range<usize>, keep: impl Fn(f64) -> bool) -> RowPiece {
        let upper = self.row_ptr[rows.end] - self.row_ptr[rows.start];
        let mut piece = RowPiece {
            row_ends: Vec::with_capacity(rows.len()),
            cols: Vec::with_capacity(upper),
            vals: Vec::with_capacity(upper),
        };
        for r in rows {
            let (cols, vals) = self.row(r);
            for (&c, &w) in cols.iter().zip(vals) {
                if keep(w) {
                    piece.cols.push(c);
                    piece.vals.push(w);
                }
            }
            piece.row_ends.push(piece.cols.len());
        }
        piece
    }
}

/// Filtered rows of a contiguous row range; `row_ends` are local offsets.
pub(crate) struct RowPiece {
    row_ends: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<f64>,
}

impl Clone for SparseMatrix {
    fn clone(&self) -> Self {
        Self::from_csr(self.n, self.row_ptr.clone(), self.cols.clone(), self.vals.clone())
    }
}

/// Equality is entry-exact and ignores whether the cached view exists.
impl PartialEq for SparseMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.row_ptr == other.row_ptr
            && self.cols == other.cols
            && self.vals == other.vals
    }
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SparseMatrix")
            .field("n", &self.n)
            .field("nnz", &self.nnz())
            .field("entries", &self.entries().take(16).collect::<Vec<_>>())
            .finish()
    }
}
