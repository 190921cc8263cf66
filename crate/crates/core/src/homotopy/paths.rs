use std::fmt;
use std::sync::Arc;

use super::mc::mc_residual;
use crate::cdga::{Cdga, LieCdgaTensor, PathAlgebra, SimplexForms};
use crate::error::{Error, Result};
use crate::graded::{Field, Vector};
use crate::lie::CurvedLieAlgebra;

/// Context for homotopies between MC elements of `g ⊗ A`: the path object
/// `g ⊗ A[z,dz]`. Witnesses have `z`-degree ≤ `poly_cap`; the path algebra
/// is truncated at twice that, so the MC residual of a witness is exact.
#[derive(Clone, Debug)]
pub struct McHomotopyContext<S: Field> {
    pub poly_cap: usize,
    pub base: LieCdgaTensor<S>,
    pub path: PathAlgebra<S>,
    pub tensor: LieCdgaTensor<S>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct McHomotopyReport {
    pub poly_cap: usize,
    pub source_is_mc: bool,
    pub target_is_mc: bool,
    pub witness_within_cap: bool,
    pub witness_is_mc: bool,
    pub starts_at_source: bool,
    pub ends_at_target: bool,
    /// Rendering of the witness residual when it is not MC.
    pub residual: Option<String>,
}

impl McHomotopyReport {
    pub fn verdict(&self) -> bool {
        self.source_is_mc
            && self.target_is_mc
            && self.witness_within_cap
            && self.witness_is_mc
            && self.starts_at_source
            && self.ends_at_target
    }
}

impl fmt::Display for McHomotopyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "homotopic via witness: {} (z-degree cap {})", self.verdict(), self.poly_cap)?;
        writeln!(f, "  endpoints MC: {} / {}", self.source_is_mc, self.target_is_mc)?;
        writeln!(f, "  witness MC: {}, within cap: {}", self.witness_is_mc, self.witness_within_cap)?;
        write!(f, "  h|0 = ξ: {}, h|1 = η: {}", self.starts_at_source, self.ends_at_target)?;
        if let Some(r) = &self.residual {
            write!(f, "\n  witness residual: {r}")?;
        }
        Ok(())
    }
}

impl<S: Field> McHomotopyContext<S> {
    pub fn new(g: Arc<CurvedLieAlgebra<S>>, a: Arc<Cdga<S>>, poly_cap: usize) -> Result<Self> {
        if poly_cap == 0 {
            return Err(Error::Cap("polynomial degree cap must be ≥ 1".into()));
        }
        let base = LieCdgaTensor::new(g.clone(), a.clone())?;
        let path = PathAlgebra::new(a, 2 * poly_cap)?;
        let tensor = LieCdgaTensor::new(g, path.algebra.clone())?;
        Ok(McHomotopyContext { poly_cap, base, path, tensor })
    }

    /// Parses an element of `g ⊗ A` (or of `g` when `A = k`).
    pub fn parse_base(&self, text: &str) -> Result<Vector<S>> {
        self.base.algebra.parse_element(text)
    }

    /// Parses an element of `g ⊗ A[z,dz]`.
    pub fn parse_path(&self, text: &str) -> Result<Vector<S>> {
        self.tensor.algebra.parse_element(text)
    }

    /// `Σ_x x ⊗ a_x ⊗ z^k (dz)` from terms `(x, a_x, k, dz)`.
    pub fn path_element(&self, terms: &[(usize, Vector<S>, usize, bool)]) -> Result<Vector<S>> {
        let mut components = vec![Vector::new(); self.base.lie.dim()];
        for (x, a, k, dz) in terms {
            let m = self
                .path
                .z_power(*k, *dz)
                .ok_or_else(|| Error::Cap(format!("z^{k} exceeds the path cap {}", self.path.cap)))?;
            components[*x].add(&self.path.embed(a, m));
        }
        Ok(self.tensor.assemble(&components))
    }

    /// The constant path `ξ ⊗ 1`.
    pub fn constant(&self, xi: &Vector<S>) -> Vector<S> {
        let one = self.path.z_power(0, false).expect("unit present");
        let components: Vec<Vector<S>> =
            self.base.components(xi).iter().map(|a| self.path.embed(a, one)).collect();
        self.tensor.assemble(&components)
    }

    /// Evaluation at `z = 0` (`end = false`) or `z = 1` (`end = true`).
    pub fn endpoint(&self, h: &Vector<S>, end: bool) -> Vector<S> {
        let ev = if end { &self.path.endpoints.1 } else { &self.path.endpoints.0 };
        let components: Vec<Vector<S>> = self.tensor.components(h).iter().map(|p| ev.apply(p)).collect();
        self.base.assemble(&components)
    }

    /// Largest `z`-degree occurring in `h`.
    pub fn z_degree(&self, h: &Vector<S>) -> usize {
        self.tensor
            .components(h)
            .iter()
            .flat_map(|p| p.keys().map(|&k| self.path.z_degree(k)).collect::<Vec<_>>())
            .max()
            .unwrap_or(0)
    }

    pub fn check(&self, xi: &Vector<S>, eta: &Vector<S>, h: &Vector<S>) -> Result<McHomotopyReport> {
        let base = &self.base.algebra;
        let residual = mc_residual(&self.tensor.algebra, h)?;
        Ok(McHomotopyReport {
            poly_cap: self.poly_cap,
            source_is_mc: mc_residual(base, xi)?.is_zero(),
            target_is_mc: mc_residual(base, eta)?.is_zero(),
            witness_within_cap: self.z_degree(h) <= self.poly_cap,
            witness_is_mc: residual.is_zero(),
            starts_at_source: &self.endpoint(h, false) == xi,
            ends_at_target: &self.endpoint(h, true) == eta,
            residual: (!residual.is_zero()).then(|| self.tensor.algebra.format(&residual)),
        })
    }
}

/// `g ⊗ Ω_n^{≤D}` with its vertex evaluations to `g`. At `n = 0` this is
/// `g` itself.
#[derive(Clone, Debug)]
pub struct McSimplicialLevel<S: Field> {
    pub n: usize,
    pub forms: SimplexForms<S>,
    pub tensor: LieCdgaTensor<S>,
}

impl<S: Field> McSimplicialLevel<S> {
    pub fn algebra(&self) -> &Arc<CurvedLieAlgebra<S>> {
        &self.tensor.algebra
    }

    /// The image of `ξ ∈ g ⊗ Ω_n` in `g` at vertex `v`.
    pub fn vertex(&self, xi: &Vector<S>, v: usize) -> Result<Vector<S>> {
        let ev = self.forms.vertex(v)?;
        let mut out = Vector::new();
        for (x, p) in self.tensor.components(xi).iter().enumerate() {
            out.add_scaled(&Vector::unit(x), &ev.apply(p).coeff(&0));
        }
        Ok(out)
    }
}

pub fn mc_simplicial_level<S: Field>(
    g: &Arc<CurvedLieAlgebra<S>>,
    n: usize,
    poly_cap: usize,
) -> Result<McSimplicialLevel<S>> {
    let forms = SimplexForms::new(n, poly_cap)?;
    let tensor = LieCdgaTensor::new(g.clone(), forms.algebra.clone())?;
    Ok(McSimplicialLevel { n, forms, tensor })
}
