use std::collections::BTreeMap;
use std::sync::Arc;

use super::algebra::{CurvedLieAlgebra, LieBracket};
use super::quotient::Subspace;
use crate::error::{Error, Result};
use crate::graded::{Echelon, Field, GradedSpace, Vector};

/// A descending filtration `g = F_1 ⊇ F_2 ⊇ …`. Only the levels up to
/// the point of stabilisation are stored; `F_i` for larger `i` equals the
/// last stored level.
#[derive(Clone, Debug)]
pub struct Filtration<S: Field> {
    pub algebra: Arc<CurvedLieAlgebra<S>>,
    levels: Vec<Subspace<S>>,
    pub respects_bracket: bool,
    pub respects_differential: bool,
    /// The last level is zero.
    pub complete: bool,
    /// Respects bracket and differential, and `gr d ∘ gr d = 0`.
    pub admissible: bool,
}

impl<S: Field> Filtration<S> {
    /// Builds a filtration from its levels `F_1, F_2, …`, computing flags.
    pub fn from_levels(algebra: Arc<CurvedLieAlgebra<S>>, levels: Vec<Subspace<S>>) -> Result<Self> {
        let mut levels = levels;
        if levels.is_empty() || levels[0].dim() != algebra.dim() {
            return Err(Error::Invalid("F_1 must be the whole algebra".into()));
        }
        for i in 1..levels.len() {
            if !levels[i - 1].contains_all(&levels[i]) {
                return Err(Error::Invalid(format!("F_{} is not contained in F_{}", i + 1, i)));
            }
        }
        while levels.len() > 1 && levels[levels.len() - 1].dim() == levels[levels.len() - 2].dim() {
            levels.pop();
        }
        let mut f = Filtration {
            algebra,
            levels,
            respects_bracket: false,
            respects_differential: false,
            complete: false,
            admissible: false,
        };
        f.respects_bracket = f.check_bracket();
        f.respects_differential = f.check_differential();
        f.complete = f.levels.last().map_or(true, |l| l.dim() == 0);
        f.admissible = f.respects_bracket
            && f.respects_differential
            && associated_graded(&f).map_or(false, |gr| gr.differential_squares_to_zero());
        Ok(f)
    }

    /// `F_i = span of basis vectors of weight ≥ i`.
    pub fn by_weight(algebra: Arc<CurvedLieAlgebra<S>>, weights: &[usize]) -> Result<Self> {
        if weights.len() != algebra.dim() || weights.iter().any(|&w| w == 0) {
            return Err(Error::Invalid("one positive weight per basis vector required".into()));
        }
        let top = weights.iter().copied().max().unwrap_or(0);
        let levels = (1..=top + 1)
            .map(|i| {
                let vs: Vec<Vector<S>> =
                    (0..weights.len()).filter(|&k| weights[k] >= i).map(Vector::unit).collect();
                Subspace::spanned_by(&vs)
            })
            .collect();
        Self::from_levels(algebra, levels)
    }

    /// Number of stored levels (the last one is the stable value).
    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// `F_i` for `i ≥ 1`.
    pub fn level(&self, i: usize) -> &Subspace<S> {
        assert!(i >= 1, "filtrations start at F_1");
        let idx = (i - 1).min(self.levels.len() - 1);
        &self.levels[idx]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.levels.iter().map(Subspace::dim).collect()
    }

    /// Checks `[F_i, F_j] ⊆ F_{i+j}` for all stored indices.
    pub fn check_bracket(&self) -> bool {
        let g = &self.algebra;
        let n = self.levels.len();
        for i in 1..=n {
            for j in i..=n {
                let target = self.level(i + j);
                for a in self.level(i).basis() {
                    for b in self.level(j).basis() {
                        if !target.contains(&g.bracket(&a, &b)) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    pub fn check_differential(&self) -> bool {
        let g = &self.algebra;
        self.levels
            .iter()
            .all(|level| level.basis().iter().all(|v| level.contains(&g.d(v))))
    }
}

/// The lower central series `F_1 = g`, `F_{i+1} = [F_i, g]`.
pub fn lower_central_series<S: Field>(g: &Arc<CurvedLieAlgebra<S>>) -> Filtration<S> {
    let all: Vec<Vector<S>> = (0..g.dim()).map(Vector::unit).collect();
    let mut levels = vec![Subspace::spanned_by(&all)];
    loop {
        let current = levels.last().expect("nonempty");
        let mut next = Subspace::new();
        for v in current.basis() {
            for j in 0..g.dim() {
                next.insert(&g.bracket(&v, &Vector::unit(j)));
            }
        }
        let stable = next.dim() == current.dim();
        let zero = next.dim() == 0;
        levels.push(next);
        if stable || zero {
            break;
        }
    }
    Filtration::from_levels(g.clone(), levels).expect("lower central series is descending")
}

/// `gr_F g = ⊕ F_i / F_{i+1}` with zero curvature.
#[derive(Clone, Debug)]
pub struct AssociatedGraded<S: Field> {
    pub algebra: Arc<CurvedLieAlgebra<S>>,
    /// Filtration weight of each basis vector.
    pub weights: Vec<usize>,
    /// Representative in `g` of each basis vector.
    pub representatives: Vec<Vector<S>>,
    pieces: Vec<GradedPiece<S>>,
}

impl<S: Field> AssociatedGraded<S> {
    pub fn differential_squares_to_zero(&self) -> bool {
        let g = &self.algebra;
        (0..g.dim()).all(|i| g.d(&g.differential()[i]).is_zero())
    }

    /// Basis indices of weight `w`.
    pub fn indices_of_weight(&self, w: usize) -> Vec<usize> {
        (0..self.weights.len()).filter(|&i| self.weights[i] == w).collect()
    }

    pub fn max_weight(&self) -> usize {
        self.weights.iter().copied().max().unwrap_or(0)
    }

    /// Coordinates in `gr_w` of the class of `v ∈ F_w`; `None` when `v`
    /// does not lie in `F_w`.
    pub fn coordinates(&self, v: &Vector<S>, weight: usize) -> Option<Vector<S>> {
        if weight == 0 {
            return None;
        }
        match self.pieces.get(weight - 1) {
            Some(piece) => piece.coords(v),
            // beyond the stored range every level is the stable one
            None => Some(Vector::new()),
        }
    }
}

#[derive(Clone, Debug)]
struct GradedPiece<S: Field> {
    echelon: Echelon<usize, S>,
}

impl<S: Field> GradedPiece<S> {
    /// Coordinates (global gr indices) of `v ∈ F_i` modulo `F_{i+1}`.
    fn coords(&self, v: &Vector<S>) -> Option<Vector<S>> {
        let red = self.echelon.reduce(v);
        red.residual.is_zero().then_some(red.coords)
    }
}

/// Associated graded of a filtration respecting bracket and differential.
/// Representatives of `F_i / F_{i+1}` are the reduced basis vectors of
/// `F_i` whose pivot is not a pivot of `F_{i+1}`; each is named after
/// the basis vector of `g` at its pivot.
pub fn associated_graded<S: Field>(f: &Filtration<S>) -> Result<AssociatedGraded<S>> {
    if !f.respects_bracket || !f.respects_differential {
        return Err(Error::Invalid(
            "the filtration must respect the bracket and the differential".into(),
        ));
    }
    let g = &f.algebra;
    let top = f.len();
    let mut reps: Vec<Vector<S>> = Vec::new();
    let mut weights = Vec::new();
    let mut names = Vec::new();
    let mut pieces: Vec<GradedPiece<S>> = Vec::new();
    for i in 1..top {
        let lower = f.level(i + 1);
        let mut echelon = Echelon::new();
        for v in lower.basis() {
            echelon.insert(&v, Vector::new());
        }
        for v in f.level(i).basis() {
            let pivot = *v.keys().last().expect("nonzero");
            if lower.is_pivot(pivot) {
                continue;
            }
            echelon.insert(&v, Vector::unit(reps.len()));
            names.push((g.space().name(pivot).to_string(), g.degree(pivot)));
            weights.push(i);
            reps.push(v);
        }
        pieces.push(GradedPiece { echelon });
    }
    let space = Arc::new(GradedSpace::new(names)?);
    // coordinates of an element of F_w in gr_w (zero beyond the stored range)
    let project = |v: &Vector<S>, w: usize| -> Result<Vector<S>> {
        if w >= top {
            return Ok(Vector::new());
        }
        pieces[w - 1]
            .coords(v)
            .ok_or_else(|| Error::Invalid(format!("element expected in F_{w} is not")))
    };
    let mut brackets = BTreeMap::new();
    for a in 0..reps.len() {
        for b in 0..reps.len() {
            let v = project(&g.bracket(&reps[a], &reps[b]), weights[a] + weights[b])?;
            if !v.is_zero() {
                brackets.insert((a, b), v);
            }
        }
    }
    let differential = (0..reps.len())
        .map(|a| project(&g.d(&reps[a]), weights[a]))
        .collect::<Result<Vec<_>>>()?;
    let algebra = Arc::new(CurvedLieAlgebra::new(space, brackets, differential, Vector::new())?);
    Ok(AssociatedGraded { algebra, weights, representatives: reps, pieces })
}
