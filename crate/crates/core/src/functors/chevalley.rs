use std::sync::Arc;



use crate::cdga::{Cdga, CdgaMorphism, FreeCommutative};
use crate::error::{Error, Result};
use crate::graded::{is_odd, Field, GradedSpace, SpaceRef, Vector};
use crate::lie::{CurvedLieAlgebra, CurvedMorphism};

/// Default bound on word length in `C(g)`.
pub const DEFAULT_WORD_CAP: usize = 3;

/// The Chevalley–Eilenberg model `C(g)`: the free graded-commutative
/// algebra on `s_x` (degree `-|x|-1`) for a basis `x` of `g`, truncated to
/// words of length ≤ `word_cap`, with the differential dual to
/// `(d, [,], ω)`.
///
/// The truncation is compatible with `d` only when `ω = 0`; with
/// curvature, `d² = 0` holds on words of length < `word_cap`.
#[derive(Clone, Debug)]
pub struct ChevalleyEilenbergModel<S: Field> {
    pub lie: Arc<CurvedLieAlgebra<S>>,
    pub free: FreeCommutative<S>,
    pub algebra: Arc<Cdga<S>>,
}

pub fn chevalley_c<S: Field>(g: &Arc<CurvedLieAlgebra<S>>, word_cap: usize) -> Result<ChevalleyEilenbergModel<S>> {
    chevalley_c_weighted(g, vec![1; g.dim()], word_cap, None)
}

/// As [`chevalley_c`] with weighted generators, keeping only monomials of
/// total weight ≤ `weight_cap`.
pub fn chevalley_c_weighted<S: Field>(
    g: &Arc<CurvedLieAlgebra<S>>,
    weights: Vec<usize>,
    word_cap: usize,
    weight_cap: Option<usize>,
) -> Result<ChevalleyEilenbergModel<S>> {
    if word_cap == 0 {
        return Err(Error::Cap("word cap must be at least 1".into()));
    }
    let generators: SpaceRef = Arc::new(GradedSpace::new(
        g.space().basis().iter().map(|b| (format!("s({})", b.name), -b.degree - 1)),
    )?);
    let free = FreeCommutative::with_weights(generators, weights, word_cap, weight_cap)?;
    let s = |x: usize| -> Vector<S> { free.generator(x).map(Vector::unit).unwrap_or_default() };
    let mut values = Vec::with_capacity(g.dim());
    for z in 0..g.dim() {
        let mut v = Vector::new();
        let w = g.curvature().coeff(&z);
        if !w.is_zero() {
            v.add_term(free.unit(), w);
        }
        for x in 0..g.dim() {
            let c = g.differential()[x].coeff(&z);
            if !c.is_zero() {
                v.add_scaled(&s(x), &c);
            }
        }
        for (&(x, y), b) in g.brackets() {
            let c = b.coeff(&z);
            if c.is_zero() {
                continue;
            }
            let sign = S::sign(is_odd(g.degree(y)) && !is_odd(g.degree(x)));
            v.add_scaled(&free.mul(&s(x), &s(y)), &(c * sign * S::half()));
        }
        values.push(v.scaled(&-S::sign(is_odd(g.degree(z)))));
    }
    let algebra = Arc::new(free.to_cdga(&values)?);
    Ok(ChevalleyEilenbergModel { lie: g.clone(), free, algebra })
}

impl<S: Field> ChevalleyEilenbergModel<S> {
    pub fn word_cap(&self) -> usize {
        self.free.length_cap()
    }

    /// Basis index of `s_x`, if it survives the weight cap.
    pub fn generator(&self, x: usize) -> Option<usize> {
        self.free.generator(x)
    }

    /// Monomials of length < word cap on which `d²` does not vanish
    /// (empty for every algebra satisfying the axioms).
    pub fn d_squared_violations(&self) -> Vec<usize> {
        let a = &self.algebra;
        (0..a.dim())
            .filter(|&i| self.free.length(i) < self.word_cap())
            .filter(|&i| !a.d(&a.differential()[i]).is_zero())
            .collect()
    }

    /// Whether `d² = 0` on every monomial, including the top length.
    pub fn d_squared_vanishes_everywhere(&self) -> bool {
        let a = &self.algebra;
        (0..a.dim()).all(|i| a.d(&a.differential()[i]).is_zero())
    }

    /// The unital algebra map `C(g) → A` with the given generator images.
    /// Images of generators missing from a weight truncation are ignored.
    pub fn algebra_map(&self, target: &Arc<Cdga<S>>, images: &[Vector<S>]) -> Result<CdgaMorphism<S>> {
        let columns = self.free.extend_algebra_map(images, target)?;
        CdgaMorphism::new(self.algebra.clone(), target.clone(), columns)
    }

    /// Images `φ(s_x)` of the generators.
    pub fn generator_images(&self, phi: &CdgaMorphism<S>) -> Vec<Vector<S>> {
        (0..self.lie.dim())
            .map(|x| self.generator(x).map(|i| phi.map.columns[i].clone()).unwrap_or_default())
            .collect()
    }

    /// `d φ(s_z) = φ(d s_z)` for every generator: for a map determined by
    /// its generator images this is the chain condition.
    pub fn is_chain_on_generators(&self, phi: &CdgaMorphism<S>) -> bool {
        (0..self.lie.dim()).filter_map(|x| self.generator(x)).all(|i| {
            phi.target.d(&phi.map.columns[i]) == phi.apply(&self.algebra.differential()[i])
        })
    }

    /// Whether `φ(ab) = φ(a)φ(b)` for all monomials whose product stays
    /// inside the truncation.
    pub fn is_multiplicative_within_cap(&self, phi: &CdgaMorphism<S>) -> bool {
        let cap = self.word_cap();
        phi.check_pairs(|i, j| self.free.length(i) + self.free.length(j) <= cap)
            .iter()
            .all(|(axiom, _)| *axiom != crate::cdga::CdgaMorphismAxiom::Multiplicative)
    }
}

/// `C(f, α): C(h) → C(g)` for a curved morphism `(f, α): g → h`:
/// `s_y ↦ Σ_x F_{yx} s_x - α_y·1`.
pub fn chevalley_c_map<S: Field>(
    m: &CurvedMorphism<S>,
    of_target: &ChevalleyEilenbergModel<S>,
    of_source: &ChevalleyEilenbergModel<S>,
) -> Result<CdgaMorphism<S>> {
    if of_target.lie != m.target || of_source.lie != m.source {
        return Err(Error::DimensionMismatch("models do not match the morphism".into()));
    }
    let (g, h) = (&m.source, &m.target);
    let mut images = vec![Vector::new(); h.dim()];
    for x in 0..g.dim() {
        let Some(sx) = of_source.generator(x) else { continue };
        for (y, c) in m.map.columns[x].iter() {
            images[*y].add_term(sx, c.clone());
        }
    }
    let unit = of_source.free.unit();
    for (y, c) in m.alpha.iter() {
        images[*y].add_term(unit, -c.clone());
    }
    of_target.algebra_map(&of_source.algebra, &images)
}
