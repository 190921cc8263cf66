use std::sync::Arc;



use crate::cdga::{CdgaMorphism, RetractionSplit};
use crate::error::{Error, Result};
use crate::free_lie::FreeLieTruncation;
use crate::graded::{is_odd, Field, GradedSpace, SpaceRef, Vector};
use crate::lie::{CurvedLieAlgebra, CurvedMorphism, LieBracket};

/// The Harrison-type model `L(A)` of a cdga with a retraction `ε`: the
/// free Lie algebra on `t_e` (degree `-|e|-1`) for a basis `e` of
/// `A₊ = ker ε`, truncated to weight ≤ `cap`, with differential dual to
/// `(d₊, m₊)` and curvature dual to `(d_k, m_k)`.
#[derive(Clone, Debug)]
pub struct HarrisonLieModel<S: Field> {
    pub split: RetractionSplit<S>,
    pub free: Arc<FreeLieTruncation<S>>,
    pub algebra: Arc<CurvedLieAlgebra<S>>,
}

pub fn harrison_l<S: Field>(split: &RetractionSplit<S>, cap: usize) -> Result<HarrisonLieModel<S>> {
    harrison_l_weighted(split, vec![1; split.plus_dim()], cap)
}

/// As [`harrison_l`] with weighted generators.
pub fn harrison_l_weighted<S: Field>(
    split: &RetractionSplit<S>,
    weights: Vec<usize>,
    cap: usize,
) -> Result<HarrisonLieModel<S>> {
    let plus = &split.plus_space;
    let generators: SpaceRef = Arc::new(GradedSpace::new(
        plus.basis().iter().map(|b| (format!("t({})", b.name), -b.degree - 1)),
    )?);
    let free = Arc::new(FreeLieTruncation::with_weights(generators.clone(), weights, cap)?);
    let n = split.plus_dim();
    let t = |p: usize| free.letter_vector(p);
    let t_deg = |p: usize| generators.degree(p);

    let mut values = vec![Vector::new(); n];
    let mut curvature = Vector::new();
    for p in 0..n {
        let sign = -S::sign(is_odd(t_deg(p)));
        for (q, c) in split.d_plus[p].iter() {
            values[*q].add_scaled(&t(p), &(c.clone() * sign.clone()));
        }
        if !split.d_k[p].is_zero() {
            curvature.add_scaled(&t(p), &(split.d_k[p].clone() * sign));
        }
    }
    let quadratic = |p: usize, q: usize| -> (Vector<S>, S) {
        let sign = S::sign(is_odd(t_deg(q)) && is_odd(plus.degree(p)));
        (free.bracket(&t(p), &t(q)), -S::half() * sign)
    };
    for (&(p, q), v) in &split.m_plus {
        let (br, c) = quadratic(p, q);
        for (r, m) in v.iter() {
            values[*r].add_scaled(&br, &(c.clone() * m.clone()));
        }
    }
    for (&(p, q), m) in &split.m_k {
        let (br, c) = quadratic(p, q);
        curvature.add_scaled(&br, &(c * m.clone()));
    }
    let d = free.extend_derivation(&values, -1)?;
    let algebra = Arc::new(free.with_structure(&d, curvature)?);
    Ok(HarrisonLieModel { split: split.clone(), free, algebra })
}

impl<S: Field> HarrisonLieModel<S> {
    pub fn cap(&self) -> usize {
        self.free.cap()
    }

    /// Basis index of the generator `t_e` for the `p`-th basis vector of `A₊`.
    pub fn generator(&self, p: usize) -> usize {
        self.free.letter(p)
    }

    /// The curved morphism `L(A) → g` with the given generator images and
    /// `α`, the bracket extended freely.
    pub fn morphism_to(
        &self,
        target: &Arc<CurvedLieAlgebra<S>>,
        images: &[Vector<S>],
        alpha: Vector<S>,
    ) -> Result<CurvedMorphism<S>> {
        let map = self.free.extend_lie_morphism(images, &**target)?;
        Ok(CurvedMorphism { source: self.algebra.clone(), target: target.clone(), map, alpha })
    }
}

/// `L(f): L(B) → L(A)` for a cdga map `f: A → B`. Writing
/// `f(ẽ) = Σ F_{e'e} ẽ' + f_k(e)·1` in the splitting of `B`, generators go
/// to `t'_{e'} ↦ Σ_e F_{e'e} t_e` and `α = -Σ_e f_k(e) t_e`.
pub fn harrison_l_map<S: Field>(
    f: &CdgaMorphism<S>,
    of_source: &HarrisonLieModel<S>,
    of_target: &HarrisonLieModel<S>,
) -> Result<CurvedMorphism<S>> {
    if of_source.split.algebra != f.source || of_target.split.algebra != f.target {
        return Err(Error::DimensionMismatch("models do not match the cdga map".into()));
    }
    let mut images = vec![Vector::new(); of_target.split.plus_dim()];
    let mut alpha = Vector::new();
    for p in 0..of_source.split.plus_dim() {
        let t = of_source.free.letter_vector(p);
        let (plus, k) = of_target.split.decompose(&f.apply(&of_source.split.tilde(p)));
        for (q, c) in plus.iter() {
            images[*q].add_scaled(&t, c);
        }
        alpha.add_scaled(&t, &-k);
    }
    of_target.morphism_to(&of_source.algebra, &images, alpha)
}
