// SPDX-License-Identifier: Apache-2.0

use super::SparseVector;
use crate::error::{Error, Result};

/// A structural vector mask: the set of selected indices.
///
/// A mask has no values, so consumers can only observe entry presence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mask {
    len: usize,
    indices: Vec<usize>,
}

impl Mask {
    pub fn new(len: usize) -> Self {
        Self {
            len,
            indices: Vec::new(),
        }
    }

    /// Builds a mask from arbitrary (possibly repeated) indices.
    pub fn from_indices<I>(len: usize, indices: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        if len == 0 {
            return Err(Error::EmptyDimension);
        }
        let mut indices: Vec<usize> = indices.into_iter().collect();
        if let Some(&index) = indices.iter().find(|&&i| i >= len) {
            return Err(Error::IndexOutOfRange { index, len });
        }
        indices.sort_unstable();
        indices.dedup();
        Ok(Self { len, indices })
    }

    pub(crate) fn from_sorted(len: usize, indices: Vec<usize>) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(indices.last().is_none_or(|&i| i < len));
        Self { len, indices }
    }

    /// The stored-entry pattern of `v`, regardless of values.
    pub fn structure_of(v: &SparseVector) -> Self {
        Self::from_sorted(v.len(), v.indices().to_vec())
    }

    /// Indices of `v` whose value is non-zero. This is the second half of
    /// the apply-then-mask filter idiom: a predicate intermediate carries
    /// 1.0 / 0.0 values and only the true ones become mask entries.
    pub fn from_truthy(v: &SparseVector) -> Self {
        let indices = v
            .iter()
            .filter(|&(_, x)| x != 0.0)
            .map(|(i, _)| i)
            .collect();
        Self::from_sorted(v.len(), indices)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn nnz(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn contains(&self, index: usize) -> bool {
        self.indices.binary_search(&index).is_ok()
    }

    /// A value vector holding `value` at every selected index.
    pub fn to_vector(&self, value: f64) -> SparseVector {
        SparseVector::from_sorted_parts(self.len, self.indices.clone(), vec![value; self.nnz()])
    }

    pub fn union(&self, other: &Mask) -> Result<Mask> {
        self.check_len(other)?;
        let mut out = Vec::with_capacity(self.nnz() + other.nnz());
        let (a, b) = (&self.indices, &other.indices);
        let (mut x, mut y) = (0, 0);
        while x < a.len() && y < b.len() {
            match a[x].cmp(&b[y]) {
                std::cmp::Ordering::Less => {
                    out.push(a[x]);
                    x += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[y]);
                    y += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(a[x]);
                    x += 1;
                    y += 1;
                }
            }
        }
        out.extend_from_slice(&a[x..]);
        out.extend_from_slice(&b[y..]);
        Ok(Mask::from_sorted(self.len, out))
    }

    pub fn intersection(&self, other: &Mask) -> Result<Mask> {
        self.check_len(other)?;
        let mut out = Vec::with_capacity(self.nnz().min(other.nnz()));
        let (a, b) = (&self.indices, &other.indices);
        let (mut x, mut y) = (0, 0);
        while x < a.len() && y < b.len() {
            match a[x].cmp(&b[y]) {
                std::cmp::Ordering::Less => x += 1,
                std::cmp::Ordering::Greater => y += 1,
                std::cmp::Ordering::Equal => {
                    out.push(a[x]);
                    x += 1;
                    y += 1;
                }
            }
        }
        Ok(Mask::from_sorted(self.len, out))
    }

    fn check_len(&self, other: &Mask) -> Result<()> {
        if self.len != other.len {
            return Err(Error::DimensionMismatch {
                expected: self.len,
                found: other.len,
            });
        }
        Ok(())
    }

    pub(crate) fn range_slice(&self, range: &std::ops::Range<usize>) -> &[usize] {
        let lo = self.indices.partition_point(|&i| i < range.start);
        let hi = self.indices.partition_point(|&i| i < range.end);
        &self.indices[lo..hi]
    }

    pub(crate) fn concat(len: usize, pieces: Vec<Vec<usize>>) -> Self {
        Self::from_sorted(len, pieces.into_iter().flatten().collect())
    }
}
