use std::collections::BTreeMap;

use super::scalar::Field;
use super::sparse::{SparseVec, Vector};

/// Incremental row echelon form over an exact field.
///
/// Rows are keyed by their leading (smallest) key, normalised to 1 there.
/// Each row carries a tag recording it as a combination of the vectors the
/// caller inserted, so reductions also produce coordinates.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord, S> {
    rows: BTreeMap<K, (SparseVec<K, S>, Vector<S>)>,
}

impl<K: Ord, S> Default for Echelon<K, S> {
    fn default() -> Self {
        Echelon { rows: BTreeMap::new() }
    }
}

/// Outcome of reducing a vector against an [`Echelon`].
#[derive(Clone, Debug)]
pub struct Reduction<K: Ord, S> {
    pub residual: SparseVec<K, S>,
    /// `v - residual = Σ coords_t · (inserted vector t)`.
    pub coords: Vector<S>,
}

impl<K: Ord + Clone, S: Field> Echelon<K, S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    pub fn is_pivot(&self, key: &K) -> bool {
        self.rows.contains_key(key)
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec<K, S>> {
        self.rows.values().map(|(row, _)| row)
    }

    pub fn reduce(&self, v: &SparseVec<K, S>) -> Reduction<K, S> {
        let mut residual = v.clone();
        let mut coords = Vector::new();
        let mut cursor: Option<K> = None;
        loop {
            let next = residual
                .keys_after(cursor.as_ref())
                .find(|k| self.rows.contains_key(*k))
                .cloned();
            let Some(key) = next else { break };
            let (row, tag) = &self.rows[&key];
            let c = residual.coeff(&key);
            residual.add_scaled(row, &-c.clone());
            coords.add_scaled(tag, &c);
            cursor = Some(key);
        }
        Reduction { residual, coords }
    }

    pub fn contains(&self, v: &SparseVec<K, S>) -> bool {
        self.reduce(v).residual.is_zero()
    }

    /// Inserts `v` tagged as `tag`. Returns the dependency `tag - coords`
    /// (a relation among inserted vectors) when `v` is already in the span.
    pub fn insert(&mut self, v: &SparseVec<K, S>, tag: Vector<S>) -> Option<Vector<S>> {
        let Reduction { residual, coords } = self.reduce(v);
        let mut combo = tag;
        combo.sub(&coords);
        match residual.first_key().cloned() {
            None => Some(combo),
            Some(lead) => {
                let inv = S::one() / residual.coeff(&lead);
                self.rows
                    .insert(lead, (residual.scaled(&inv), combo.scaled(&inv)));
                None
            }
        }
    }

    /// Inserts without tracking; returns whether the rank grew.
    pub fn push(&mut self, v: &SparseVec<K, S>) -> bool {
        self.insert(v, Vector::new()).is_none()
    }

    /// Fully reduced basis of the span, ordered by pivot.
    pub fn reduced_basis(&self) -> Vec<SparseVec<K, S>> {
        let keys: Vec<K> = self.rows.keys().cloned().collect();
        let mut out = Vec::with_capacity(keys.len());
        for key in &keys {
            let mut row = self.rows[key].0.clone();
            // clear the other pivots, walking forward from the leading key
            let mut cursor = Some(key.clone());
            loop {
                let next = row
                    .keys_after(cursor.as_ref())
                    .find(|k| self.rows.contains_key(*k))
                    .cloned();
                let Some(k) = next else { break };
                let c = row.coeff(&k);
                row.add_scaled(&self.rows[&k].0, &-c);
                cursor = Some(k);
            }
            out.push(row);
        }
        out
    }
}

/// Solutions `c` of `Σ_j c_j columns[j] = rhs`: a particular solution (if
/// any) and a basis of the homogeneous solutions.
pub fn solve_linear<K: Ord + Clone, S: Field>(
    columns: &[SparseVec<K, S>],
    rhs: &SparseVec<K, S>,
) -> (Option<Vector<S>>, Vec<Vector<S>>) {
    let mut e = Echelon::new();
    let mut kernel = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        if let Some(dep) = e.insert(col, Vector::unit(j)) {
            kernel.push(dep);
        }
    }
    let red = e.reduce(rhs);
    (red.residual.is_zero().then_some(red.coords), kernel)
}

/// Rank of a list of vectors.
pub fn rank_of<K: Ord + Clone, S: Field>(vectors: &[SparseVec<K, S>]) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.push(v);
    }
    e.rank()
}
