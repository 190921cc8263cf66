use std::cmp::Reverse;
use std::collections::{BTreeMap, VecDeque};
use std::sync::Arc;

use super::algebra::{CurvedLieAlgebra, LieBracket};
use super::morphism::CurvedMorphism;
use crate::error::{Error, Result};
use crate::graded::{Echelon, Field, GradedSpace, LinearMap, SparseVec, Vector};

/// Splits `v` into its homogeneous components, in increasing degree.
pub fn homogeneous_components<S: Field>(space: &GradedSpace, v: &Vector<S>) -> Vec<Vector<S>> {
    let mut parts: BTreeMap<i64, Vector<S>> = BTreeMap::new();
    for (&k, c) in v.iter() {
        parts.entry(space.degree(k)).or_default().add_term(k, c.clone());
    }
    parts.into_values().collect()
}

/// Subspace with echelon keys reversed, so that the highest basis index
/// of each vector is eliminated first and low-index basis vectors survive
/// in quotients.
#[derive(Clone, Debug, Default)]
pub struct Subspace<S: Field> {
    echelon: Echelon<Reverse<usize>, S>,
}

fn rev<S: Field>(v: &Vector<S>) -> SparseVec<Reverse<usize>, S> {
    v.map_keys(|&k| Reverse(k))
}

fn unrev<S: Field>(v: &SparseVec<Reverse<usize>, S>) -> Vector<S> {
    v.map_keys(|k| k.0)
}

impl<S: Field> Subspace<S> {
    pub fn new() -> Self {
        Subspace { echelon: Echelon::new() }
    }

    pub fn spanned_by<'a, I: IntoIterator<Item = &'a Vector<S>>>(vectors: I) -> Self {
        let mut s = Subspace::new();
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    /// Returns whether the dimension grew.
    pub fn insert(&mut self, v: &Vector<S>) -> bool {
        self.echelon.push(&rev(v))
    }

    pub fn contains(&self, v: &Vector<S>) -> bool {
        self.echelon.contains(&rev(v))
    }

    /// Representative of `v` modulo the subspace, supported off the pivots.
    pub fn reduce(&self, v: &Vector<S>) -> Vector<S> {
        unrev(&self.echelon.reduce(&rev(v)).residual)
    }

    pub fn is_pivot(&self, i: usize) -> bool {
        self.echelon.is_pivot(&Reverse(i))
    }

    /// Fully reduced basis.
    pub fn basis(&self) -> Vec<Vector<S>> {
        self.echelon.reduced_basis().iter().map(unrev).collect()
    }

    pub fn contains_all(&self, other: &Subspace<S>) -> bool {
        other.basis().iter().all(|v| self.contains(v))
    }
}

/// Smallest subspace containing `generators` (split into homogeneous
/// parts) that is stable under brackets with every basis vector and under
/// the differential.
pub fn ideal_closure<S: Field>(g: &CurvedLieAlgebra<S>, generators: &[Vector<S>]) -> Subspace<S> {
    let mut ideal = Subspace::new();
    let mut queue: VecDeque<Vector<S>> = generators
        .iter()
        .flat_map(|v| homogeneous_components(g.space(), v))
        .collect();
    while let Some(v) = queue.pop_front() {
        let v = ideal.reduce(&v);
        if v.is_zero() {
            continue;
        }
        ideal.insert(&v);
        queue.push_back(g.d(&v));
        for i in 0..g.dim() {
            let b = g.bracket(&Vector::unit(i), &v);
            if !b.is_zero() {
                queue.push_back(b);
            }
        }
    }
    ideal
}

/// A quotient `g / I` by a d-stable ideal, with the strict projection.
/// The quotient basis is the set of basis vectors of `g` that are not
/// pivots of the ideal; they keep their names.
#[derive(Clone, Debug)]
pub struct Quotient<S: Field> {
    pub algebra: Arc<CurvedLieAlgebra<S>>,
    pub projection: CurvedMorphism<S>,
    pub ideal: Subspace<S>,
    /// Indices in `g` of the surviving basis vectors.
    pub kept: Vec<usize>,
}

impl<S: Field> Quotient<S> {
    /// Coordinates in the quotient of the image of `v`.
    pub fn project(&self, v: &Vector<S>) -> Vector<S> {
        self.projection.map.apply(v)
    }

    /// The chosen lift of a quotient vector.
    pub fn lift(&self, v: &Vector<S>) -> Vector<S> {
        v.map_keys(|&k| self.kept[k])
    }
}

/// `g / ⟨generators⟩` where the ideal is closed under brackets and `d`.
pub fn quotient_by_ideal<S: Field>(g: &Arc<CurvedLieAlgebra<S>>, generators: &[Vector<S>]) -> Result<Quotient<S>> {
    let ideal = ideal_closure(g, generators);
    quotient_by_subspace(g, ideal)
}

/// Quotient by a subspace already known to be a d-stable ideal.
pub fn quotient_by_subspace<S: Field>(g: &Arc<CurvedLieAlgebra<S>>, ideal: Subspace<S>) -> Result<Quotient<S>> {
    let kept: Vec<usize> = (0..g.dim()).filter(|&i| !ideal.is_pivot(i)).collect();
    let mut position = vec![usize::MAX; g.dim()];
    for (n, &i) in kept.iter().enumerate() {
        position[i] = n;
    }
    let space = Arc::new(GradedSpace::new(
        kept.iter().map(|&i| (g.space().name(i).to_string(), g.degree(i))),
    )?);
    let project = |v: &Vector<S>| -> Vector<S> {
        let r = ideal.reduce(v);
        r.map_keys(|&k| position[k])
    };
    let mut brackets = BTreeMap::new();
    for (a, &i) in kept.iter().enumerate() {
        for (b, &j) in kept.iter().enumerate() {
            let v = project(&g.bracket_basis(i, j));
            if !v.is_zero() {
                brackets.insert((a, b), v);
            }
        }
    }
    let differential = kept.iter().map(|&i| project(&g.differential()[i])).collect();
    let curvature = project(g.curvature());
    let algebra = Arc::new(CurvedLieAlgebra::new(space.clone(), brackets, differential, curvature)?);
    let columns: Vec<Vector<S>> = (0..g.dim()).map(|i| project(&Vector::unit(i))).collect();
    let projection = CurvedMorphism {
        source: g.clone(),
        target: algebra.clone(),
        map: LinearMap::new(g.space().clone(), space, 0, columns)?,
        alpha: Vector::new(),
    };
    Ok(Quotient { algebra, projection, ideal, kept })
}

/// The subalgebra spanned by `vectors` (which must be closed under bracket
/// and `d`, and contain the curvature), with its inclusion. Basis vectors
/// of the subalgebra are the reduced spanning vectors, named after the
/// basis vector of `g` at their pivot.
pub fn subalgebra<S: Field>(
    g: &Arc<CurvedLieAlgebra<S>>,
    vectors: &[Vector<S>],
) -> Result<(Arc<CurvedLieAlgebra<S>>, CurvedMorphism<S>)> {
    let sub = Subspace::spanned_by(vectors);
    let rows = sub.basis();
    // pivot of each reduced row: its highest index
    let pivots: Vec<usize> = rows.iter().map(|r| *r.keys().last().expect("nonzero row")).collect();
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by_key(|&n| pivots[n]);
    let rows: Vec<Vector<S>> = order.iter().map(|&n| rows[n].clone()).collect();
    let pivots: Vec<usize> = order.iter().map(|&n| pivots[n]).collect();

    let coords = |v: &Vector<S>| -> Result<Vector<S>> {
        let mut out = Vector::new();
        for (n, &p) in pivots.iter().enumerate() {
            let c = v.coeff(&p);
            if !c.is_zero() {
                out.add_term(n, c);
            }
        }
        if out.combine(&rows) != *v {
            return Err(Error::Invalid("subspace is not closed under the structure maps".into()));
        }
        Ok(out)
    };
    let space = Arc::new(GradedSpace::new(
        pivots.iter().map(|&p| (g.space().name(p).to_string(), g.degree(p))),
    )?);
    let mut brackets = BTreeMap::new();
    for (a, ra) in rows.iter().enumerate() {
        for (b, rb) in rows.iter().enumerate() {
            let v = coords(&g.bracket(ra, rb))?;
            if !v.is_zero() {
                brackets.insert((a, b), v);
            }
        }
    }
    let differential = rows.iter().map(|r| coords(&g.d(r))).collect::<Result<Vec<_>>>()?;
    let curvature = coords(g.curvature())?;
    let algebra = Arc::new(CurvedLieAlgebra::new(space.clone(), brackets, differential, curvature)?);
    let inclusion = CurvedMorphism {
        source: algebra.clone(),
        target: g.clone(),
        map: LinearMap::new(space, g.space().clone(), 0, rows)?,
        alpha: Vector::new(),
    };
    Ok((algebra, inclusion))
}
