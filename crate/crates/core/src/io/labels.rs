// SPDX-License-Identifier: Apache-2.0

use std::collections::HashMap;

/// Bijection between external vertex labels and dense internal ids `0..n`.
/// Ids are handed out in first-seen order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LabelMap {
    to_internal: HashMap<u64, usize>,
    to_external: Vec<u64>,
}

impl LabelMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Labels `0..n` mapped to themselves.
    pub fn identity(n: usize) -> Self {
        Self {
            to_internal: (0..n).map(|i| (i as u64, i)).collect(),
            to_external: (0..n as u64).collect(),
        }
    }

    /// Internal id of `label`, assigning the next free id on first sight.
    pub fn intern(&mut self, label: u64) -> usize {
        let next = self.to_external.len();
        *self.to_internal.entry(label).or_insert_with(|| {
            self.to_external.push(label);
            next
        })
    }

    pub fn internal(&self, label: u64) -> Option<usize> {
        self.to_internal.get(&label).copied()
    }

    /// External label of internal id `id`. Panics if `id >= len()`.
    pub fn external(&self, id: usize) -> u64 {
        self.to_external[id]
    }

    pub fn len(&self) -> usize {
        self.to_external.len()
    }

    pub fn is_empty(&self) -> bool {
        self.to_external.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_seen_order() {
        let mut m = LabelMap::new();
        assert_eq!(m.intern(5), 0);
        assert_eq!(m.intern(9), 1);
        assert_eq!(m.intern(5), 0);
        assert_eq!(m.len(), 2);
        assert_eq!(m.external(1), 9);
        assert_eq!(m.internal(9), Some(1));
        assert_eq!(m.internal(7), None);
    }

    #[test]
    fn identity_map() {
        let m = LabelMap::identity(3);
        assert_eq!((0..3).map(|i| m.external(i)).collect::<Vec<_>>(), vec![0, 1, 2]);
        assert_eq!(m.internal(2), Some(2));
    }
}
