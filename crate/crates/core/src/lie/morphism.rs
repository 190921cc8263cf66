use std::fmt;
use std::sync::Arc;

use super::algebra::{CurvedLieAlgebra, LieBracket};
use crate::error::{Error, Result};
use crate::graded::{Field, LinearMap, Vector};

/// A curved morphism `(f, α): g → h`: a degree-0 map of graded Lie
/// algebras `f` and a degree -1 element `α ∈ h` with
/// `d_h f(x) = f(d_g x) + [α, f(x)]` and `ω_h = f(ω_g) + d_h α - ½[α,α]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvedMorphism<S: Field> {
    pub source: Arc<CurvedLieAlgebra<S>>,
    pub target: Arc<CurvedLieAlgebra<S>>,
    pub map: LinearMap<S>,
    pub alpha: Vector<S>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MorphismAxiom {
    Degree,
    /// `f[x,y] = [fx, fy]`.
    Bracket,
    /// `d_h f(x) = f(d_g x) + [α, f(x)]`.
    Differential,
    /// `ω_h = f(ω_g) + d_h α - ½[α,α]`.
    Curvature,
}

impl fmt::Display for MorphismAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MorphismAxiom::Degree => "degree",
            MorphismAxiom::Bracket => "bracket preservation",
            MorphismAxiom::Differential => "differential equation",
            MorphismAxiom::Curvature => "curvature equation",
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MorphismReport {
    pub failures: Vec<(MorphismAxiom, Vec<String>, String)>,
}

impl MorphismReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failed(&self, axiom: MorphismAxiom) -> bool {
        self.failures.iter().any(|(a, _, _)| *a == axiom)
    }

    fn record(&mut self, axiom: MorphismAxiom, witness: Vec<String>, detail: String) {
        if !self.failed(axiom) {
            self.failures.push((axiom, witness, detail));
        }
    }
}

impl fmt::Display for MorphismReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "curved morphism: all equations hold");
        }
        let lines: Vec<String> = self
            .failures
            .iter()
            .map(|(a, w, d)| format!("FAILED {a} at ({}): {d}", w.join(", ")))
            .collect();
        f.write_str(&lines.join("\n"))
    }
}

impl<S: Field> CurvedMorphism<S> {
    pub fn new(
        source: Arc<CurvedLieAlgebra<S>>,
        target: Arc<CurvedLieAlgebra<S>>,
        columns: Vec<Vector<S>>,
        alpha: Vector<S>,
    ) -> Result<Self> {
        let map = LinearMap::new(source.space().clone(), target.space().clone(), 0, columns)?;
        if alpha.keys().any(|&k| k >= target.dim()) {
            return Err(Error::DimensionMismatch("α has an index beyond the target basis".into()));
        }
        Ok(CurvedMorphism { source, target, map, alpha })
    }

    pub fn identity(g: Arc<CurvedLieAlgebra<S>>) -> Self {
        CurvedMorphism {
            map: LinearMap::identity(g.space().clone()),
            source: g.clone(),
            target: g,
            alpha: Vector::new(),
        }
    }

    pub fn is_strict(&self) -> bool {
        self.alpha.is_zero()
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
            && self.is_strict()
            && self.map == LinearMap::identity(self.source.space().clone())
    }

    pub fn apply_linear(&self, x: &Vector<S>) -> Vector<S> {
        self.map.apply(x)
    }

    /// Image of an element under the curved morphism, `f(x) - α`.
    pub fn image_of_element(&self, x: &Vector<S>) -> Vector<S> {
        self.map.apply(x).minus(&self.alpha)
    }

    pub fn validate(&self) -> MorphismReport {
        let mut report = MorphismReport::default();
        let g = &*self.source;
        let h = &*self.target;
        let src_name = |i: usize| g.space().name(i).to_string();

        if let Some((j, i)) = self.map.degree_violation() {
            report.record(
                MorphismAxiom::Degree,
                vec![src_name(j)],
                format!("f has a component on {} of the wrong degree", h.space().name(i)),
            );
        }
        if let Err(e) = h.require_degree(&self.alpha, -1, "α") {
            report.record(MorphismAxiom::Degree, vec![], e.to_string());
        }

        let images = &self.map.columns;
        for i in 0..g.dim() {
            for j in 0..g.dim() {
                let lhs = self.map.apply(&g.bracket_basis(i, j));
                let rhs = h.bracket(&images[i], &images[j]);
                if lhs != rhs {
                    report.record(
                        MorphismAxiom::Bracket,
                        vec![src_name(i), src_name(j)],
                        format!("f[x,y] - [fx,fy] = {}", h.format(&lhs.minus(&rhs))),
                    );
                }
            }
        }

        for i in 0..g.dim() {
            let lhs = h.d(&images[i]);
            let mut rhs = self.map.apply(&g.differential()[i]);
            rhs.add(&h.bracket(&self.alpha, &images[i]));
            if lhs != rhs {
                report.record(
                    MorphismAxiom::Differential,
                    vec![src_name(i)],
                    format!("d f(x) - f(dx) - [α, f x] = {}", h.format(&lhs.minus(&rhs))),
                );
            }
        }

        let mut expected = self.map.apply(g.curvature());
        expected.add(&h.d(&self.alpha));
        expected.add_scaled(&h.bracket(&self.alpha, &self.alpha), &-S::half());
        if &expected != h.curvature() {
            report.record(
                MorphismAxiom::Curvature,
                vec![],
                format!(
                    "ω_h - f(ω_g) - dα + ½[α,α] = {}",
                    h.format(&h.curvature().minus(&expected))
                ),
            );
        }
        report
    }

    /// `self ∘ first = (f∘g, α + f(β))` where `first = (g, β)`.
    pub fn compose(&self, first: &CurvedMorphism<S>) -> Result<CurvedMorphism<S>> {
        if first.target != self.source {
            return Err(Error::DimensionMismatch(
                "composition: target of the first morphism is not the source of the second".into(),
            ));
        }
        let map = self.map.compose(&first.map)?;
        let alpha = self.alpha.plus(&self.map.apply(&first.alpha));
        Ok(CurvedMorphism {
            source: first.source.clone(),
            target: self.target.clone(),
            map,
            alpha,
        })
    }

    /// `(f⁻¹, -f⁻¹(α))`, when `f` is bijective.
    pub fn invert(&self) -> Result<CurvedMorphism<S>> {
        let inverse = self.map.inverse()?;
        let alpha = inverse.apply(&self.alpha).neg();
        Ok(CurvedMorphism {
            source: self.target.clone(),
            target: self.source.clone(),
            map: inverse,
            alpha,
        })
    }
}

impl<S: Field> CurvedLieAlgebra<S> {
    /// Twisting by a degree -1 element `ξ`: returns
    /// `(g, d + ad_ξ, ω + dξ + ½[ξ,ξ])` and the curved isomorphism
    /// `(id, ξ)` onto it.
    pub fn twist(self: &Arc<Self>, xi: &Vector<S>) -> Result<(Arc<CurvedLieAlgebra<S>>, CurvedMorphism<S>)> {
        self.require_degree(xi, -1, "twisting element")?;
        let differential: Vec<Vector<S>> = (0..self.dim())
            .map(|j| {
                let mut v = self.differential()[j].clone();
                v.add(&self.bracket(xi, &Vector::unit(j)));
                v
            })
            .collect();
        let curvature = self.mc_residual_unchecked(xi);
        let twisted = Arc::new(self.with_differential_and_curvature(differential, curvature));
        let iso = CurvedMorphism {
            source: self.clone(),
            target: twisted.clone(),
            map: LinearMap::identity(self.space().clone()),
            alpha: xi.clone(),
        };
        Ok((twisted, iso))
    }

    /// `ω + dξ + ½[ξ,ξ]` without degree checks.
    pub fn mc_residual_unchecked(&self, xi: &Vector<S>) -> Vector<S> {
        let mut r = self.curvature().clone();
        r.add(&self.d(xi));
        r.add_scaled(&self.bracket(xi, xi), &S::half());
        r
    }
}
