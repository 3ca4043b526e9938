// SPDX-License-Identifier: Apache-2.0

use crate::error::{Error, Result};

/// A length-`n` sparse vector of `f64` values.
///
/// Entries are kept sorted by index with no duplicates. An absent entry
/// denotes the implicit identity of whatever role the vector plays, which for
/// distance vectors is `+inf`. Values built through [`SparseVector::from_pairs`]
/// therefore never store `+inf`.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseVector {
    len: usize,
    indices: Vec<usize>,
    values: Vec<f64>,
}

impl SparseVector {
    /// An empty vector of dimension `len`.
    pub fn new(len: usize) -> Self {
        Self {
            len,
            indices: Vec::new(),
            values: Vec::new(),
        }
    }

    /// Builds a distance-role vector from unordered `(index, value)` pairs.
    ///
    /// Duplicate indices are combined with `min`, and `+inf` values are
    /// dropped since absence already means infinity.
    pub fn from_pairs<I>(len: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, f64)>,
    {
        if len == 0 {
            return Err(Error::EmptyDimension);
        }
        let mut kept: Vec<(usize, f64)> = Vec::new();
        for (index, value) in pairs {
            if index >= len {
                return Err(Error::IndexOutOfRange { index, len });
            }
            if value.is_nan() {
                return Err(Error::NotANumber { index });
            }
            if value != f64::INFINITY {
                kept.push((index, value));
            }
        }
        kept.sort_by_key(|&(i, _)| i);

        let mut indices = Vec::with_capacity(kept.len());
        let mut values: Vec<f64> = Vec::with_capacity(kept.len());
        for (index, value) in kept {
            if indices.last() == Some(&index) {
                let last = values.last_mut().unwrap();
                *last = last.min(value);
            } else {
                indices.push(index);
                values.push(value);
            }
        }
        Ok(Self {
            len,
            indices,
            values,
        })
    }

    /// Wraps already sorted, deduplicated parts.
    pub(crate) fn from_sorted_parts(len: usize, indices: Vec<usize>, values: Vec<f64>) -> Self {
        debug_assert_eq!(indices.len(), values.len());
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(indices.last().is_none_or(|&i| i < len));
        Self {
            len,
            indices,
            values,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    /// Number of stored entries.
    pub fn nnz(&self) -> usize {
        self.indices.len()
    }

    /// True when no entry is stored.
    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = (usize, f64)> + '_ {
        self.indices.iter().copied().zip(self.values.iter().copied())
    }

    pub fn get(&self, index: usize) -> Option<f64> {
        self.indices
            .binary_search(&index)
            .ok()
            .map(|pos| self.values[pos])
    }

    pub fn contains(&self, index: usize) -> bool {
        self.indices.binary_search(&index).is_ok()
    }

    /// Dense copy with `fill` in every absent position.
    pub fn to_dense(&self, fill: f64) -> Vec<f64> {
        let mut dense = vec![fill; self.len];
        for (i, v) in self.iter() {
            dense[i] = v;
        }
        dense
    }

    /// Entries whose index falls in `range`, as a pair of slices.
    pub(crate) fn range_slices(&self, range: &std::ops::Range<usize>) -> (&[usize], &[f64]) {
        let lo = self.indices.partition_point(|&i| i < range.start);
        let hi = self.indices.partition_point(|&i| i < range.end);
        (&self.indices[lo..hi], &self.values[lo..hi])
    }

    /// Concatenates per-range pieces produced over disjoint ascending ranges.
    pub(crate) fn concat(len: usize, pieces: Vec<(Vec<usize>, Vec<f64>)>) -> Self {
        let total = pieces.iter().map(|(i, _)| i.len()).sum();
        let mut indices = Vec::with_capacity(total);
        let mut values = Vec::with_capacity(total);
        for (i, v) in pieces {
            indices.extend(i);
            values.extend(v);
        }
        Self::from_sorted_parts(len, indices, values)
    }
}
