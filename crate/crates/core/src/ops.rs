// SPDX-License-Identifier: Apache-2.0

//! The GraphBLAS-style kernel subset: apply, filters, element-wise union
//! (`ewise_add`) and intersection (`ewise_mult`), and vector-matrix multiply.
//!
//! Masks only gate which output positions may be written. There are no
//! accumulators and no complement/replace descriptors.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::sparse::semiring::{self, Semiring};
use crate::sparse::{Mask, SparseMatrix, SparseVector};

/// A pure scalar predicate with a readable description.
#[derive(Clone)]
pub struct UnaryPredicate {
    f: Arc<dyn Fn(f64) -> bool + Send + Sync>,
    description: String,
}

impl UnaryPredicate {
    pub fn new(description: impl Into<String>, f: impl Fn(f64) -> bool + Send + Sync + 'static) -> Self {
        Self {
            f: Arc::new(f),
            description: description.into(),
        }
    }

    /// `x > bound`
    pub fn greater_than(bound: f64) -> Self {
        Self::new(format!("x > {bound}"), move |x| x > bound)
    }

    /// `x >= bound`
    pub fn at_least(bound: f64) -> Self {
        Self::new(format!("x >= {bound}"), move |x| x >= bound)
    }

    /// `lo <= x < hi`, the bucket predicate.
    pub fn half_open(lo: f64, hi: f64) -> Self {
        Self::new(format!("{lo} <= x < {hi}"), move |x| lo <= x && x < hi)
    }

    /// `lo < x <= hi`, the light-edge predicate.
    pub fn left_open(lo: f64, hi: f64) -> Self {
        Self::new(format!("{lo} < x <= {hi}"), move |x| lo < x && x <= hi)
    }

    pub fn nonzero() -> Self {
        Self::new("x != 0", |x| x != 0.0)
    }

    pub fn always() -> Self {
        Self::new("true", |_| true)
    }

    #[inline]
    pub fn eval(&self, x: f64) -> bool {
        (self.f)(x)
    }

    pub fn description(&self) -> &str {
        &self.description
    }
}

impl fmt::Debug for UnaryPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UnaryPredicate({})", self.description)
    }
}

/// A binary scalar operator.
///
/// `boolean` operators return 1.0 / 0.0 and their computed zeros are not
/// stored, so their outputs stay usable as structural masks.
#[derive(Clone, Copy)]
pub struct BinaryOp {
    pub name: &'static str,
    pub f: fn(f64, f64) -> f64,
    pub commutative: bool,
    pub boolean: bool,
}

impl BinaryOp {
    pub const MIN: BinaryOp = BinaryOp {
        name: "min",
        f: f64::min,
        commutative: true,
        boolean: false,
    };
    pub const PLUS: BinaryOp = BinaryOp {
        name: "plus",
        f: |a, b| a + b,
        commutative: true,
        boolean: false,
    };
    pub const TIMES: BinaryOp = BinaryOp {
        name: "times",
        f: |a, b| a * b,
        commutative: true,
        boolean: false,
    };
    /// `a < b` as 1.0 / 0.0.
    pub const LESS_THAN: BinaryOp = BinaryOp {
        name: "less-than",
        f: |a, b| if a < b { 1.0 } else { 0.0 },
        commutative: false,
        boolean: true,
    };

    #[inline]
    pub fn eval(&self, a: f64, b: f64) -> f64 {
        (self.f)(a, b)
    }

    #[inline]
    fn keeps(&self, value: f64) -> bool {
        !(self.boolean && value == 0.0)
    }
}

impl fmt::Debug for BinaryOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryOp({})", self.name)
    }
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

fn check_mask(len: usize, mask: Option<&Mask>) -> Result<()> {
    match mask {
        Some(m) => check_len(len, m.len()),
        None => Ok(()),
    }
}

/// Sorted-cursor membership test against an optional mask. Queries must
/// arrive in ascending index order.
struct MaskCursor<'a> {
    indices: Option<&'a [usize]>,
    pos: usize,
}

impl<'a> MaskCursor<'a> {
    fn new(mask: Option<&'a Mask>) -> Self {
        Self {
            indices: mask.map(Mask::indices),
            pos: 0,
        }
    }

    #[inline]
    fn allows(&mut self, index: usize) -> bool {
        let Some(indices) = self.indices else {
            return true;
        };
        while self.pos < indices.len() && indices[self.pos] < index {
            self.pos += 1;
        }
        self.pos < indices.len() && indices[self.pos] == index
    }
}

/// Maps every stored entry of `input` through `f`, writing only where the
/// mask (if any) has an entry.
pub fn apply_vector(
    input: &SparseVector,
    f: impl Fn(f64) -> f64,
    mask: Option<&Mask>,
) -> Result<SparseVector> {
    check_mask(input.len(), mask)?;
    let mut cursor = MaskCursor::new(mask);
    let mut indices = Vec::with_capacity(input.nnz());
    let mut values = Vec::with_capacity(input.nnz());
    for (i, x) in input.iter() {
        if cursor.allows(i) {
            indices.push(i);
            values.push(f(x));
        }
    }
    Ok(SparseVector::from_sorted_parts(input.len(), indices, values))
}

/// Evaluates `pred` on every stored entry, keeping false results as 0.0.
/// This is the value-carrying first half of the two-step filter idiom.
pub fn apply_predicate(
    input: &SparseVector,
    pred: &UnaryPredicate,
    mask: Option<&Mask>,
) -> Result<SparseVector> {
    apply_vector(input, |x| if pred.eval(x) { 1.0 } else { 0.0 }, mask)
}

/// Indices of `input` whose value satisfies `pred`. No false entry is stored.
pub fn filter_vector(input: &SparseVector, pred: &UnaryPredicate) -> Mask {
    let indices = input
        .iter()
        .filter(|&(_, x)| pred.eval(x))
        .map(|(i, _)| i)
        .collect();
    Mask::from_sorted(input.len(), indices)
}

/// `A ∘ (pred(A))`: the entries of `a` whose weight satisfies `pred`.
pub fn filter_matrix(a: &SparseMatrix, pred: &UnaryPredicate) -> SparseMatrix {
    let piece = a.filter_rows(0..a.n(), |w| pred.eval(w));
    SparseMatrix::from_row_pieces(a.n(), vec![piece])
}

/// Element-wise operation over the union of the stored entries.
///
/// Where both inputs hold a value the result is `op(u[i], v[i])`. Where only
/// one does, that value is passed through unchanged whatever `op` is, which
/// makes a non-commutative comparison like `<` report the lone operand
/// instead of a truth value. Pass `mask` to restrict the output domain.
pub fn ewise_add_vector(
    u: &SparseVector,
    v: &SparseVector,
    op: BinaryOp,
    mask: Option<&Mask>,
) -> Result<SparseVector> {
    check_len(u.len(), v.len())?;
    check_mask(u.len(), mask)?;
    let mut cursor = MaskCursor::new(mask);
    let mut indices = Vec::with_capacity(u.nnz().max(v.nnz()));
    let mut values = Vec::with_capacity(u.nnz().max(v.nnz()));
    let (ui, uv) = (u.indices(), u.values());
    let (vi, vv) = (v.indices(), v.values());
    let (mut x, mut y) = (0, 0);
    while x < ui.len() || y < vi.len() {
        let take_u = y == vi.len() || (x < ui.len() && ui[x] <= vi[y]);
        let take_v = x == ui.len() || (y < vi.len() && vi[y] <= ui[x]);
        let (index, value, computed) = match (take_u, take_v) {
            (true, true) => (ui[x], op.eval(uv[x], vv[y]), true),
            (true, false) => (ui[x], uv[x], false),
            _ => (vi[y], vv[y], false),
        };
        if take_u {
            x += 1;
        }
        if take_v {
            y += 1;
        }
        if cursor.allows(index) && (!computed || op.keeps(value)) {
            indices.push(index);
            values.push(value);
        }
    }
    Ok(SparseVector::from_sorted_parts(u.len(), indices, values))
}

/// Element-wise operation over the intersection of the stored entries.
/// With `TIMES` and a unit-valued mask vector this is the Hadamard selection.
pub fn ewise_mult_vector(u: &SparseVector, v: &SparseVector, op: BinaryOp) -> Result<SparseVector> {
    check_len(u.len(), v.len())?;
    let mut indices = Vec::new();
    let mut values = Vec::new();
    let (ui, uv) = (u.indices(), u.values());
    let (vi, vv) = (v.indices(), v.values());
    let (mut x, mut y) = (0, 0);
    while x < ui.len() && y < vi.len() {
        match ui[x].cmp(&vi[y]) {
            std::cmp::Ordering::Less => x += 1,
            std::cmp::Ordering::Greater => y += 1,
            std::cmp::Ordering::Equal => {
                let value = op.eval(uv[x], vv[y]);
                if op.keeps(value) {
                    indices.push(ui[x]);
                    values.push(value);
                }
                x += 1;
                y += 1;
            }
        }
    }
    Ok(SparseVector::from_sorted_parts(u.len(), indices, values))
}

/// Frontiers touching fewer than `nnz / PULL_DIVISOR` edges are pushed along
/// rows; denser ones pull through the column view.
pub(crate) const PULL_DIVISOR: usize = 8;

pub(crate) fn prefers_pull(frontier_edges: usize, nnz: usize) -> bool {
    frontier_edges > 0 && frontier_edges.saturating_mul(PULL_DIVISOR) >= nnz
}

/// Row-vector times matrix over `semiring`:
/// `out[j] = add over i of multiply(v[i], m[i][j])`.
///
/// With `m` the adjacency matrix this is `Aᵀ v`. Terms for each output are
/// combined in ascending source order whichever traversal is picked, so the
/// result does not depend on the traversal.
pub fn vxm(v: &SparseVector, m: &SparseMatrix, semiring: &Semiring, mask: Option<&Mask>) -> Result<SparseVector> {
    check_len(m.n(), v.len())?;
    check_mask(m.n(), mask)?;
    let frontier_edges: usize = v.indices().iter().map(|&i| m.row_len(i)).sum();
    if prefers_pull(frontier_edges, m.nnz()) {
        Ok(vxm_pull(v, m, semiring, mask))
    } else {
        Ok(vxm_push(v, m, semiring, mask))
    }
}

fn vxm_push(v: &SparseVector, m: &SparseMatrix, semiring: &Semiring, mask: Option<&Mask>) -> SparseVector {
    let mut terms: Vec<(usize, f64)> = Vec::new();
    for (i, x) in v.iter() {
        let (cols, weights) = m.row(i);
        terms.extend(cols.iter().zip(weights).map(|(&j, &w)| (j, (semiring.multiply)(x, w))));
    }
    // stable: equal targets keep ascending source order
    terms.sort_by_key(|&(j, _)| j);

    let mut cursor = MaskCursor::new(mask);
    let mut indices = Vec::new();
    let mut values = Vec::new();
    let mut k = 0;
    while k < terms.len() {
        let j = terms[k].0;
        let mut acc = terms[k].1;
        k += 1;
        while k < terms.len() && terms[k].0 == j {
            acc = (semiring.add)(acc, terms[k].1);
            k += 1;
        }
        if cursor.allows(j) {
            indices.push(j);
            values.push(acc);
        }
    }
    SparseVector::from_sorted_parts(v.len(), indices, values)
}

fn vxm_pull(v: &SparseVector, m: &SparseMatrix, semiring: &Semiring, mask: Option<&Mask>) -> SparseVector {
    let n = m.n();
    let mut present = vec![false; n];
    let mut dense = vec![0.0; n];
    for (i, x) in v.iter() {
        present[i] = true;
        dense[i] = x;
    }
    let incoming = m.transposed_view();
    let mut cursor = MaskCursor::new(mask);
    let mut indices = Vec::new();
    let mut values = Vec::new();
    for j in 0..n {
        let (sources, weights) = incoming.row(j);
        let mut acc: Option<f64> = None;
        for (&i, &w) in sources.iter().zip(weights) {
            if present[i] {
                let term = (semiring.multiply)(dense[i], w);
                acc = Some(acc.map_or(term, |a| (semiring.add)(a, term)));
            }
        }
        if let Some(acc) = acc {
            if cursor.allows(j) {
                indices.push(j);
                values.push(acc);
            }
        }
    }
    SparseVector::from_sorted_parts(n, indices, values)
}

/// `vxm` over `(min, +)`: relaxes every out-edge of the vertices stored in `v`.
pub fn vxm_min_plus(v: &SparseVector, m: &SparseMatrix, mask: Option<&Mask>) -> Result<SparseVector> {
    vxm(v, m, &semiring::MIN_PLUS, mask)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sparse::semiring::{OR_AND, PLUS_TIMES};

    fn vec(len: usize, pairs: &[(usize, f64)]) -> SparseVector {
        SparseVector::from_pairs(len, pairs.iter().copied()).unwrap()
    }

    fn pairs(v: &SparseVector) -> Vec<(usize, f64)> {
        v.iter().collect()
    }

    #[test]
    fn apply_maps_values() {
        let out = apply_vector(&vec(3, &[(0, 1.0), (2, 2.0)]), |x| x + 1.0, None).unwrap();
        assert_eq!(pairs(&out), vec![(0, 2.0), (2, 3.0)]);
    }

    #[test]
    fn apply_with_empty_mask_is_empty() {
        let out = apply_vector(&vec(3, &[(0, 1.0), (2, 2.0)]), |x| x + 1.0, Some(&Mask::new(3))).unwrap();
        assert!(out.is_empty());
    }

    #[test]
    fn apply_predicate_keeps_false_entries() {
        let out = apply_predicate(&vec(3, &[(0, 1.0), (2, 5.0)]), &UnaryPredicate::greater_than(2.0), None).unwrap();
        assert_eq!(pairs(&out), vec![(0, 0.0), (2, 1.0)]);
    }

    #[test]
    fn apply_dimension_mismatch() {
        assert!(apply_vector(&vec(3, &[]), |x| x, Some(&Mask::new(4))).is_err());
    }

    #[test]
    fn filter_vector_examples() {
        let t = vec(4, &[(0, 0.0), (3, 1.5)]);
        assert_eq!(filter_vector(&t, &UnaryPredicate::half_open(1.0, 2.0)).indices(), &[3]);

        let empty = SparseVector::new(4);
        assert!(filter_vector(&empty, &UnaryPredicate::greater_than(1.0)).is_empty());

        // bucket 0 with delta 1 holds distances in [0, 1)
        let t = vec(3, &[(0, 0.0), (1, 1.0), (2, 0.5)]);
        assert_eq!(filter_vector(&t, &UnaryPredicate::half_open(0.0, 1.0)).indices(), &[0, 2]);
    }

    #[test]
    fn filter_equals_double_apply() {
        let t = vec(6, &[(0, 0.0), (1, 2.5), (3, 1.0), (5, 4.0)]);
        let pred = UnaryPredicate::half_open(1.0, 3.0);
        let intermediate = apply_predicate(&t, &pred, None).unwrap();
        let double = Mask::from_truthy(&apply_predicate(&t, &pred, Some(&Mask::from_truthy(&intermediate))).unwrap());
        assert_eq!(filter_vector(&t, &pred), double);
    }

    #[test]
    fn filter_matrix_examples() {
        let a = SparseMatrix::from_triples(3, [(0, 1, 2.0), (1, 2, 0.5)]).unwrap();
        let heavy = filter_matrix(&a, &UnaryPredicate::greater_than(1.0));
        assert_eq!(heavy.entries().collect::<Vec<_>>(), vec![(0, 1, 2.0)]);
        assert_eq!(filter_matrix(&a, &UnaryPredicate::always()), a);

        let unit = SparseMatrix::from_triples(3, [(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0)]).unwrap();
        assert_eq!(filter_matrix(&unit, &UnaryPredicate::greater_than(1.0)).nnz(), 0);
        assert_eq!(filter_matrix(&unit, &UnaryPredicate::left_open(0.0, 1.0)), unit);
    }

    #[test]
    fn ewise_add_union_with_pass_through() {
        let u = vec(2, &[(0, 3.0)]);
        let v = vec(2, &[(0, 1.0), (1, 4.0)]);
        let out = ewise_add_vector(&u, &v, BinaryOp::MIN, None).unwrap();
        assert_eq!(pairs(&out), vec![(0, 1.0), (1, 4.0)]);
    }

    #[test]
    fn ewise_add_comparison_hazard_and_mask_fix() {
        let t_req = vec(3, &[(1, 2.0)]);
        let t = vec(3, &[(1, 5.0), (2, 1.0)]);
        let hazardous = ewise_add_vector(&t_req, &t, BinaryOp::LESS_THAN, None).unwrap();
        assert_eq!(pairs(&hazardous), vec![(1, 1.0), (2, 1.0)]);
        let fixed = ewise_add_vector(&t_req, &t, BinaryOp::LESS_THAN, Some(&Mask::structure_of(&t_req))).unwrap();
        assert_eq!(pairs(&fixed), vec![(1, 1.0)]);
    }

    #[test]
    fn ewise_add_drops_computed_false() {
        let out = ewise_add_vector(&vec(2, &[(0, 3.0)]), &vec(2, &[(0, 1.0)]), BinaryOp::LESS_THAN, None).unwrap();
        assert!(out.is_empty());
    }

    #[test]
    fn ewise_mult_examples() {
        let u = vec(2, &[(0, 2.0), (1, 3.0)]);
        let sel = vec(2, &[(1, 1.0)]);
        assert_eq!(pairs(&ewise_mult_vector(&u, &sel, BinaryOp::TIMES).unwrap()), vec![(1, 3.0)]);

        let disjoint = ewise_mult_vector(&vec(3, &[(0, 1.0)]), &vec(3, &[(2, 1.0)]), BinaryOp::TIMES).unwrap();
        assert!(disjoint.is_empty());

        let t = vec(3, &[(0, 0.0)]);
        let b0 = Mask::from_indices(3, [0]).unwrap().to_vector(1.0);
        assert_eq!(pairs(&ewise_mult_vector(&t, &b0, BinaryOp::TIMES).unwrap()), vec![(0, 0.0)]);
    }

    #[test]
    fn ewise_dimension_mismatch() {
        assert!(ewise_add_vector(&vec(2, &[]), &vec(3, &[]), BinaryOp::MIN, None).is_err());
        assert!(ewise_mult_vector(&vec(2, &[]), &vec(3, &[]), BinaryOp::MIN).is_err());
    }

    #[test]
    fn vxm_relaxes_from_source() {
        let m = SparseMatrix::from_triples(4, [(0, 1, 2.0), (0, 3, 7.0)]).unwrap();
        let out = vxm_min_plus(&vec(4, &[(0, 0.0)]), &m, None).unwrap();
        assert_eq!(pairs(&out), vec![(1, 2.0), (3, 7.0)]);
        assert!(vxm_min_plus(&SparseVector::new(4), &m, None).unwrap().is_empty());
    }

    #[test]
    fn vxm_reduces_with_min() {
        let m = SparseMatrix::from_triples(3, [(0, 2, 5.0), (1, 2, 3.0)]).unwrap();
        let v = vec(3, &[(0, 0.0), (1, 1.0)]);
        // min(0 + 5, 1 + 3)
        assert_eq!(pairs(&vxm_min_plus(&v, &m, None).unwrap()), vec![(2, 4.0)]);
        let masked = vxm_min_plus(&v, &m, Some(&Mask::new(3))).unwrap();
        assert!(masked.is_empty());
    }

    #[test]
    fn vxm_dimension_mismatch() {
        let m = SparseMatrix::empty(3).unwrap();
        assert!(vxm_min_plus(&SparseVector::new(4), &m, None).is_err());
    }

    #[test]
    fn push_and_pull_agree_on_other_semirings() {
        let m = SparseMatrix::from_triples(4, [(0, 2, 2.0), (1, 2, 3.0), (3, 2, 0.5), (1, 0, 4.0)]).unwrap();
        let v = vec(4, &[(0, 1.0), (1, 2.0), (3, 4.0)]);
        for s in [PLUS_TIMES, OR_AND, semiring::MIN_PLUS] {
            assert_eq!(vxm_push(&v, &m, &s, None), vxm_pull(&v, &m, &s, None), "{s:?}");
        }
        assert_eq!(pairs(&vxm(&v, &m, &PLUS_TIMES, None).unwrap()), vec![(0, 8.0), (2, 10.0)]);
    }
}
