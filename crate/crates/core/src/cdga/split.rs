use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use super::algebra::Cdga;
use crate::error::{Error, Result};
use crate::graded::{Field, GradedSpace, SpaceRef, Vector};

/// `A = A₊ ⊕ k` for a linear retraction `ε: A → k`.
///
/// `A₊ = ker ε` has basis `b̃ = b - ε(b)·1` for the non-unit basis
/// vectors `b`; a vector `v` decomposes as `Σ_{b≠1} v_b b̃ + ε(v)·1`.
#[derive(Clone, Debug)]
pub struct RetractionSplit<S: Field> {
    pub algebra: Arc<Cdga<S>>,
    /// `ε` on each basis vector.
    pub epsilon: Vec<S>,
    /// Basis indices of `A` underlying the `A₊` basis.
    pub plus_basis: Vec<usize>,
    /// `A₊` with the names and degrees of the underlying basis vectors.
    pub plus_space: SpaceRef,
    pub d_plus: Vec<Vector<S>>,
    pub d_k: Vec<S>,
    /// `m₊(b̃_p, b̃_q)` for every ordered pair with a nonzero value.
    pub m_plus: BTreeMap<(usize, usize), Vector<S>>,
    pub m_k: BTreeMap<(usize, usize), S>,
    pub augmentation: bool,
}

impl<S: Field> RetractionSplit<S> {
    /// Splits along the default retraction, killing every non-unit basis
    /// vector.
    pub fn default_for(algebra: Arc<Cdga<S>>) -> Result<Self> {
        let mut epsilon = vec![S::zero(); algebra.dim()];
        epsilon[algebra.unit()] = S::one();
        Self::new(algebra, epsilon)
    }

    pub fn new(algebra: Arc<Cdga<S>>, epsilon: Vec<S>) -> Result<Self> {
        if epsilon.len() != algebra.dim() {
            return Err(Error::DimensionMismatch("ε needs one value per basis vector".into()));
        }
        if epsilon[algebra.unit()] != S::one() {
            return Err(Error::InvalidRetraction("ε(1) must be 1".into()));
        }
        if let Some(i) = (0..algebra.dim()).find(|&i| !epsilon[i].is_zero() && algebra.degree(i) != 0) {
            return Err(Error::InvalidRetraction(format!(
                "ε is nonzero on {} of degree {}",
                algebra.space().name(i),
                algebra.degree(i)
            )));
        }
        let plus_basis: Vec<usize> = (0..algebra.dim()).filter(|&i| i != algebra.unit()).collect();
        let plus_space = Arc::new(GradedSpace::new(
            plus_basis.iter().map(|&i| (algebra.space().name(i).to_string(), algebra.degree(i))),
        )?);
        let mut split = RetractionSplit {
            algebra,
            epsilon,
            plus_basis,
            plus_space,
            d_plus: Vec::new(),
            d_k: Vec::new(),
            m_plus: BTreeMap::new(),
            m_k: BTreeMap::new(),
            augmentation: false,
        };
        let a = split.algebra.clone();
        for p in 0..split.plus_basis.len() {
            let (plus, k) = split.decompose(&a.d(&split.tilde(p)));
            split.d_plus.push(plus);
            split.d_k.push(k);
        }
        for p in 0..split.plus_basis.len() {
            for q in 0..split.plus_basis.len() {
                let (plus, k) = split.decompose(&a.mul(&split.tilde(p), &split.tilde(q)));
                if !plus.is_zero() {
                    split.m_plus.insert((p, q), plus);
                }
                if !k.is_zero() {
                    split.m_k.insert((p, q), k);
                }
            }
        }
        split.augmentation = split.d_k.iter().all(Zero::is_zero) && split.m_k.is_empty();
        Ok(split)
    }

    pub fn plus_dim(&self) -> usize {
        self.plus_basis.len()
    }

    /// `b̃_p` as a vector of `A`.
    pub fn tilde(&self, p: usize) -> Vector<S> {
        let b = self.plus_basis[p];
        let mut v = Vector::unit(b);
        v.add_term(self.algebra.unit(), -self.epsilon[b].clone());
        v
    }

    pub fn epsilon_of(&self, v: &Vector<S>) -> S {
        v.iter().fold(S::zero(), |acc, (i, c)| acc + c.clone() * self.epsilon[*i].clone())
    }

    /// `(A₊ coordinates, k component)`.
    pub fn decompose(&self, v: &Vector<S>) -> (Vector<S>, S) {
        let mut plus = Vector::new();
        for (p, &b) in self.plus_basis.iter().enumerate() {
            let c = v.coeff(&b);
            if !c.is_zero() {
                plus.add_term(p, c);
            }
        }
        (plus, self.epsilon_of(v))
    }

    /// `Σ_p c_p b̃_p + k·1`.
    pub fn assemble(&self, plus: &Vector<S>, k: &S) -> Vector<S> {
        let mut v = Vector::single(self.algebra.unit(), k.clone());
        for (p, c) in plus.iter() {
            v.add_scaled(&self.tilde(*p), c);
        }
        v
    }

    /// `d = ι d₊ + 1·d_k` and `m = ι m₊ + 1·m_k` on `A₊`.
    pub fn reassembles(&self) -> bool {
        let a = &self.algebra;
        let zero = Vector::new();
        (0..self.plus_dim()).all(|p| a.d(&self.tilde(p)) == self.assemble(&self.d_plus[p], &self.d_k[p]))
            && (0..self.plus_dim()).all(|p| {
                (0..self.plus_dim()).all(|q| {
                    let plus = self.m_plus.get(&(p, q)).unwrap_or(&zero);
                    let k = self.m_k.get(&(p, q)).cloned().unwrap_or_else(S::zero);
                    a.mul(&self.tilde(p), &self.tilde(q)) == self.assemble(plus, &k)
                })
            })
    }

    /// Direct check that `ε` is a map of dg algebras: `ε(ab) = ε(a)ε(b)`
    /// and `ε∘d = 0`.
    pub fn epsilon_is_dg_morphism(&self) -> bool {
        let a = &self.algebra;
        (0..a.dim()).all(|i| self.epsilon_of(&a.differential()[i]).is_zero())
            && (0..a.dim()).all(|i| {
                (0..a.dim()).all(|j| {
                    self.epsilon_of(&a.product_basis(i, j)) == self.epsilon[i].clone() * self.epsilon[j].clone()
                })
            })
    }
}
