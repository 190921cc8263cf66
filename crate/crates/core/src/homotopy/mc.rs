use std::sync::Arc;

use crate::error::Result;
use crate::graded::{solve_linear, Echelon, Field, Vector};
use crate::lie::{CurvedLieAlgebra, LieBracket};

/// `ω + dξ + ½[ξ,ξ]` for `ξ` of degree -1, evaluated term by term from the
/// structure constants (independently of the twisting code).
pub fn mc_residual<S: Field>(g: &CurvedLieAlgebra<S>, xi: &Vector<S>) -> Result<Vector<S>> {
    g.require_degree(xi, -1, "Maurer–Cartan element")?;
    let mut r = g.curvature().clone();
    for (i, c) in xi.iter() {
        r.add_scaled(&g.differential()[*i], c);
    }
    let half = S::half();
    for (i, a) in xi.iter() {
        for (j, b) in xi.iter() {
            if let Some(v) = g.brackets().get(&(*i, *j)) {
                r.add_scaled(v, &(half.clone() * a.clone() * b.clone()));
            }
        }
    }
    Ok(r)
}

pub fn mc_check<S: Field>(g: &CurvedLieAlgebra<S>, xi: &Vector<S>) -> Result<bool> {
    Ok(mc_residual(g, xi)?.is_zero())
}

/// A degree -1 element with its cached MC residual.
#[derive(Clone, Debug)]
pub struct McElement<S: Field> {
    pub algebra: Arc<CurvedLieAlgebra<S>>,
    pub xi: Vector<S>,
    pub residual: Vector<S>,
}

impl<S: Field> McElement<S> {
    pub fn new(algebra: Arc<CurvedLieAlgebra<S>>, xi: Vector<S>) -> Result<Self> {
        let residual = mc_residual(&algebra, &xi)?;
        Ok(McElement { algebra, xi, residual })
    }

    pub fn is_mc(&self) -> bool {
        self.residual.is_zero()
    }
}

/// The solution set of the MC equation when it is linear.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum McSolution<S: Field> {
    /// Two degree -1 basis vectors with a nonzero bracket: the equation has
    /// a quadratic part and is not solved.
    Refused { left: String, right: String },
    /// `dξ = -ω` has no solution.
    Empty,
    /// `particular + span(directions)`, in coordinates of `g`.
    Affine { particular: Vector<S>, directions: Vec<Vector<S>> },
}

impl<S: Field> McSolution<S> {
    pub fn is_refused(&self) -> bool {
        matches!(self, McSolution::Refused { .. })
    }

    /// Dimension of the affine solution space, if solved and nonempty.
    pub fn dimension(&self) -> Option<usize> {
        match self {
            McSolution::Affine { directions, .. } => Some(directions.len()),
            _ => None,
        }
    }

    pub fn contains(&self, xi: &Vector<S>) -> bool {
        match self {
            McSolution::Affine { particular, directions } => {
                let mut e = Echelon::new();
                for v in directions {
                    e.push(v);
                }
                e.contains(&xi.minus(particular))
            }
            _ => false,
        }
    }
}

/// Solves `ω + dξ = 0` over degree -1 when every bracket among degree -1
/// basis vectors vanishes (so `[ξ,ξ] = 0` identically); refuses otherwise,
/// naming the first offending pair.
pub fn mc_solve_linear<S: Field>(g: &CurvedLieAlgebra<S>) -> McSolution<S> {
    let unknowns = g.space().indices_in_degree(-1);
    for (a, &i) in unknowns.iter().enumerate() {
        for &j in &unknowns[a..] {
            if !g.bracket_basis(i, j).is_zero() {
                return McSolution::Refused {
                    left: g.space().name(i).to_string(),
                    right: g.space().name(j).to_string(),
                };
            }
        }
    }
    let columns: Vec<Vector<S>> = unknowns.iter().map(|&i| g.differential()[i].clone()).collect();
    let (particular, kernel) = solve_linear(&columns, &g.curvature().neg());
    let lift = |c: &Vector<S>| c.map_keys(|k| unknowns[*k]);
    match particular {
        None => McSolution::Empty,
        Some(p) => McSolution::Affine {
            particular: lift(&p),
            directions: kernel.iter().map(lift).collect(),
        },
    }
}

/// Flatness of the twist against the MC condition, computed independently.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwistFlatness {
    /// The twisted curvature vanishes.
    pub flat: bool,
    /// `ξ` satisfies the MC equation.
    pub mc: bool,
}

impl TwistFlatness {
    pub fn agree(&self) -> bool {
        self.flat == self.mc
    }
}

pub fn twist_flatness<S: Field>(g: &Arc<CurvedLieAlgebra<S>>, xi: &Vector<S>) -> Result<TwistFlatness> {
    let (twisted, _) = g.twist(xi)?;
    let mc = mc_check(g, xi)?;
    Ok(TwistFlatness { flat: twisted.curvature().is_zero(), mc })
}
