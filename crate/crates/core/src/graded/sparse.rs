use std::collections::btree_map::{self, BTreeMap};
use std::ops::Bound;

use super::scalar::Field;

/// A sparse vector with ordered keys and no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseVec<K: Ord, S> {
    entries: BTreeMap<K, S>,
}

/// Coordinates over an indexed basis.
pub type Vector<S> = SparseVec<usize, S>;

impl<K: Ord, S> Default for SparseVec<K, S> {
    fn default() -> Self {
        SparseVec { entries: BTreeMap::new() }
    }
}

impl<K: Ord + Clone, S: Field> SparseVec<K, S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(key: K) -> Self {
        Self::single(key, S::one())
    }

    pub fn single(key: K, coeff: S) -> Self {
        let mut v = Self::new();
        v.add_term(key, coeff);
        v
    }

    pub fn from_terms<I: IntoIterator<Item = (K, S)>>(terms: I) -> Self {
        let mut v = Self::new();
        for (k, c) in terms {
            v.add_term(k, c);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &K) -> Option<&S> {
        self.entries.get(key)
    }

    pub fn coeff(&self, key: &K) -> S {
        self.entries.get(key).cloned().unwrap_or_else(S::zero)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, S> {
        self.entries.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.entries.keys()
    }

    pub fn first_key(&self) -> Option<&K> {
        self.entries.keys().next()
    }

    /// First key strictly after `after` (or the first key overall).
    pub fn keys_after<'a>(&'a self, after: Option<&K>) -> impl Iterator<Item = &'a K> + 'a {
        let lower = match after {
            Some(k) => Bound::Excluded(k.clone()),
            None => Bound::Unbounded,
        };
        self.entries.range((lower, Bound::Unbounded)).map(|(k, _)| k)
    }

    pub fn add_term(&mut self, key: K, coeff: S) {
        if coeff.is_zero() {
            return;
        }
        match self.entries.entry(key) {
            btree_map::Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            btree_map::Entry::Occupied(mut slot) => {
                let sum = slot.get().clone() + coeff;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    /// `self += coeff * other`.
    pub fn add_scaled(&mut self, other: &Self, coeff: &S) {
        if coeff.is_zero() {
            return;
        }
        for (k, c) in other.iter() {
            self.add_term(k.clone(), c.clone() * coeff.clone());
        }
    }

    pub fn add(&mut self, other: &Self) {
        self.add_scaled(other, &S::one());
    }

    pub fn sub(&mut self, other: &Self) {
        self.add_scaled(other, &-S::one());
    }

    pub fn scaled(&self, coeff: &S) -> Self {
        let mut out = Self::new();
        out.add_scaled(self, coeff);
        out
    }

    pub fn neg(&self) -> Self {
        self.scaled(&-S::one())
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add(other);
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.sub(other);
        out
    }

    /// Re-keys the vector; colliding keys are summed.
    pub fn map_keys<L: Ord + Clone, F: FnMut(&K) -> L>(&self, mut f: F) -> SparseVec<L, S> {
        SparseVec::from_terms(self.iter().map(|(k, c)| (f(k), c.clone())))
    }

    pub fn retain<F: FnMut(&K) -> bool>(&mut self, mut keep: F) {
        self.entries.retain(|k, _| keep(k));
    }

    pub fn remove(&mut self, key: &K) -> Option<S> {
        self.entries.remove(key)
    }

    pub fn into_iter_terms(self) -> impl Iterator<Item = (K, S)> {
        self.entries.into_iter()
    }
}

impl<S: Field> SparseVec<usize, S> {
    /// Linear combination `Σ coeff_i · columns[i]`.
    pub fn combine(&self, columns: &[Vector<S>]) -> Vector<S> {
        let mut out = Vector::new();
        for (i, c) in self.iter() {
            out.add_scaled(&columns[*i], c);
        }
        out
    }
}

impl<K: Ord + Clone, S: Field> FromIterator<(K, S)> for SparseVec<K, S> {
    fn from_iter<I: IntoIterator<Item = (K, S)>>(iter: I) -> Self {
        Self::from_terms(iter)
    }
}
