use std::collections::BTreeMap;
use std::sync::Arc;

use super::algebra::Cdga;
use crate::error::Result;
use crate::graded::{is_odd, tensor_spaces, Field, Vector};
use crate::lie::CurvedLieAlgebra;

/// `g ⊗ A` as a curved Lie algebra:
/// `[x⊗a, y⊗b] = (-1)^{|y||a|}[x,y]⊗ab`,
/// `d(x⊗a) = dx⊗a + (-1)^{|x|} x⊗da`, curvature `ω⊗1`.
///
/// When `A` is one-dimensional (the ground field) the algebra is `g`
/// itself and `x⊗1` is identified with `x`.
#[derive(Clone, Debug)]
pub struct LieCdgaTensor<S: Field> {
    pub lie: Arc<CurvedLieAlgebra<S>>,
    pub cdga: Arc<Cdga<S>>,
    pub algebra: Arc<CurvedLieAlgebra<S>>,
}

impl<S: Field> LieCdgaTensor<S> {
    pub fn new(lie: Arc<CurvedLieAlgebra<S>>, cdga: Arc<Cdga<S>>) -> Result<Self> {
        if cdga.dim() == 1 {
            return Ok(LieCdgaTensor { algebra: lie.clone(), lie, cdga });
        }
        let (g, a) = (&*lie, &*cdga);
        let na = a.dim();
        let space = Arc::new(tensor_spaces(g.space(), a.space()));
        let pair = |x: &Vector<S>, v: &Vector<S>| -> Vector<S> {
            let mut out = Vector::new();
            for (i, ci) in x.iter() {
                for (j, cj) in v.iter() {
                    out.add_term(i * na + j, ci.clone() * cj.clone());
                }
            }
            out
        };
        let mut brackets = BTreeMap::new();
        for (&(x, y), xy) in g.brackets() {
            for (&(i, j), ab) in a.products() {
                let sign = S::sign(is_odd(g.degree(y)) && is_odd(a.degree(i)));
                brackets.insert((x * na + i, y * na + j), pair(xy, ab).scaled(&sign));
            }
        }
        let mut differential = Vec::with_capacity(g.dim() * na);
        for x in 0..g.dim() {
            for i in 0..na {
                let mut v = pair(&g.differential()[x], &Vector::unit(i));
                v.add_scaled(&pair(&Vector::unit(x), &a.differential()[i]), &S::sign(is_odd(g.degree(x))));
                differential.push(v);
            }
        }
        let curvature = pair(g.curvature(), &a.unit_vector());
        let algebra = Arc::new(CurvedLieAlgebra::new(space, brackets, differential, curvature)?);
        Ok(LieCdgaTensor { lie, cdga, algebra })
    }

    pub fn is_identified(&self) -> bool {
        self.cdga.dim() == 1
    }

    /// Index of `x ⊗ a_i`.
    pub fn index(&self, x: usize, i: usize) -> usize {
        if self.is_identified() {
            x
        } else {
            x * self.cdga.dim() + i
        }
    }

    /// `Σ_x x ⊗ a_x` from the components `a_x ∈ A`.
    pub fn assemble(&self, components: &[Vector<S>]) -> Vector<S> {
        let mut out = Vector::new();
        for (x, a) in components.iter().enumerate() {
            for (i, c) in a.iter() {
                if self.is_identified() {
                    out.add_term(x, c.clone() * self.cdga.unit_vector().coeff(i));
                } else {
                    out.add_term(self.index(x, *i), c.clone());
                }
            }
        }
        out
    }

    /// The components `a_x ∈ A` of `ξ = Σ_x x ⊗ a_x`.
    pub fn components(&self, xi: &Vector<S>) -> Vec<Vector<S>> {
        let mut out = vec![Vector::new(); self.lie.dim()];
        for (k, c) in xi.iter() {
            if self.is_identified() {
                out[*k].add_term(self.cdga.unit(), c.clone());
            } else {
                let na = self.cdga.dim();
                out[k / na].add_term(k % na, c.clone());
            }
        }
        out
    }
}

/// `g ⊗ A` (see [`LieCdgaTensor`]).
pub fn tensor_lie_cdga<S: Field>(g: &Arc<CurvedLieAlgebra<S>>, a: &Arc<Cdga<S>>) -> Result<LieCdgaTensor<S>> {
    LieCdgaTensor::new(g.clone(), a.clone())
}

