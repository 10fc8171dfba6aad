use std::collections::BTreeMap;

use num_traits::Zero;

use crate::exact::Rational;

/// Coefficients `F_{g,n}[k_1, ..., k_n]` of `W_{g,n}` on products of `Xi_k`.
///
/// Keys are stored sorted in decreasing order, so the table is symmetric by
/// construction. Zero entries are not stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FTable {
    pub g: u32,
    pub n: u32,
    entries: BTreeMap<Vec<u8>, Rational>,
}

/// Canonical (decreasing) form of an index tuple.
pub fn sorted_key(indices: &[usize]) -> Vec<u8> {
    let mut k: Vec<u8> = indices.iter().map(|&i| i as u8).collect();
    k.sort_unstable_by(|a, b| b.cmp(a));
    k
}

impl FTable {
    pub fn new(g: u32, n: u32) -> Self {
        FTable { g, n, entries: BTreeMap::new() }
    }

    /// `3g - 3 + n`, the largest total index with a nonzero entry.
    pub fn max_degree(&self) -> i64 {
        3 * self.g as i64 - 3 + self.n as i64
    }

    /// Sets the entry for the given indices (any order). Zeros are dropped.
    pub fn insert(&mut self, indices: &[usize], c: Rational) {
        let key = sorted_key(indices);
        if c.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, c);
        }
    }

    pub(crate) fn insert_sorted(&mut self, key: Vec<u8>, c: Rational) {
        if !c.is_zero() {
            self.entries.insert(key, c);
        }
    }

    /// Entry at the given indices, in any order; zero when absent.
    pub fn get(&self, indices: &[usize]) -> Rational {
        if indices.len() != self.n as usize || indices.iter().any(|&i| i > u8::MAX as usize) {
            return Rational::zero();
        }
        self.get_sorted(&sorted_key(indices))
    }

    pub(crate) fn get_sorted(&self, key: &[u8]) -> Rational {
        self.entries.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub(crate) fn get_sorted_ref(&self, key: &[u8]) -> Option<&Rational> {
        self.entries.get(key)
    }

    /// `F[0, ..., 0]`.
    pub fn zero_entry(&self) -> Rational {
        self.get(&vec![0; self.n as usize])
    }

    /// Nonzero entries keyed by decreasing index tuples.
    pub fn entries(&self) -> impl Iterator<Item = (Vec<usize>, &Rational)> {
        self.entries.iter().map(|(k, v)| (k.iter().map(|&i| i as usize).collect(), v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn symmetric_lookup() {
        let mut t = FTable::new(1, 3);
        t.insert(&[0, 1, 2], rat(1, 96));
        assert_eq!(t.get(&[2, 0, 1]), rat(1, 96));
        assert_eq!(t.get(&[2, 1]), rat(0, 1));
        assert_eq!(t.entries().next().unwrap().0, vec![2, 1, 0]);
    }
}
