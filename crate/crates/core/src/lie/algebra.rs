use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graded::element::{format_vector, homogeneous_degree};
use crate::graded::{is_odd, Element, Field, GradedSpace, LinearMap, SpaceRef, Vector};

/// Anything with a bilinear bracket on an indexed basis.
pub trait LieBracket<S: Field> {
    fn space(&self) -> &SpaceRef;

    /// `[e_i, e_j]`.
    fn bracket_basis(&self, i: usize, j: usize) -> Vector<S>;

    fn bracket(&self, a: &Vector<S>, b: &Vector<S>) -> Vector<S> {
        let mut out = Vector::new();
        for (i, ca) in a.iter() {
            for (j, cb) in b.iter() {
                let v = self.bracket_basis(*i, *j);
                if !v.is_zero() {
                    out.add_scaled(&v, &(ca.clone() * cb.clone()));
                }
            }
        }
        out
    }
}

/// A finite-dimensional curved Lie algebra `(g, d, ω)` given by structure
/// constants. The bracket table stores both orders of every nonzero pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvedLieAlgebra<S: Field> {
    space: SpaceRef,
    brackets: BTreeMap<(usize, usize), Vector<S>>,
    differential: Vec<Vector<S>>,
    curvature: Vector<S>,
}

impl<S: Field> LieBracket<S> for CurvedLieAlgebra<S> {
    fn space(&self) -> &SpaceRef {
        &self.space
    }

    fn bracket_basis(&self, i: usize, j: usize) -> Vector<S> {
        self.brackets.get(&(i, j)).cloned().unwrap_or_default()
    }

    fn bracket(&self, a: &Vector<S>, b: &Vector<S>) -> Vector<S> {
        let mut out = Vector::new();
        for (i, ca) in a.iter() {
            for (j, cb) in b.iter() {
                if let Some(v) = self.brackets.get(&(*i, *j)) {
                    out.add_scaled(v, &(ca.clone() * cb.clone()));
                }
            }
        }
        out
    }
}

impl<S: Field> CurvedLieAlgebra<S> {
    /// Builds an algebra from a full bracket table (no completion).
    pub fn new(
        space: SpaceRef,
        brackets: BTreeMap<(usize, usize), Vector<S>>,
        differential: Vec<Vector<S>>,
        curvature: Vector<S>,
    ) -> Result<Self> {
        let n = space.dim();
        if differential.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "differential has {} columns for dimension {n}",
                differential.len()
            )));
        }
        let out_of_range = |v: &Vector<S>| v.keys().any(|&k| k >= n);
        if brackets.iter().any(|(&(i, j), v)| i >= n || j >= n || out_of_range(v))
            || differential.iter().any(out_of_range)
            || out_of_range(&curvature)
        {
            return Err(Error::DimensionMismatch("index beyond the basis".into()));
        }
        let brackets = brackets.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        Ok(CurvedLieAlgebra { space, brackets, differential, curvature })
    }

    /// Builds an algebra from bracket entries, filling every missing
    /// reverse entry by graded antisymmetry `[y,x] = -(-1)^{|x||y|}[x,y]`.
    /// Entries given in both orders are kept as given.
    pub fn with_antisymmetric_completion(
        space: SpaceRef,
        entries: BTreeMap<(usize, usize), Vector<S>>,
        differential: Vec<Vector<S>>,
        curvature: Vector<S>,
    ) -> Result<Self> {
        let mut full = entries.clone();
        for (&(i, j), v) in &entries {
            if !entries.contains_key(&(j, i)) {
                let sign = -S::sign(is_odd(space.degree(i)) && is_odd(space.degree(j)));
                full.insert((j, i), v.scaled(&sign));
            }
        }
        Self::new(space, full, differential, curvature)
    }

    /// Builds an algebra from names: `basis` as `(name, degree)`, brackets
    /// as `(left, right, value)`, differential as `(on, value)`, values in
    /// the compact element syntax. Brackets are completed antisymmetrically.
    pub fn from_tables(
        basis: &[(&str, i64)],
        brackets: &[(&str, &str, &str)],
        differential: &[(&str, &str)],
        curvature: &str,
    ) -> Result<Self> {
        let space: SpaceRef = Arc::new(GradedSpace::new(basis.iter().map(|(n, d)| (n.to_string(), *d)))?);
        let parse = |text: &str| -> Result<Vector<S>> { Ok(Element::parse(space.clone(), text)?.coeffs) };
        let mut entries = BTreeMap::new();
        for (l, r, v) in brackets {
            entries.insert((space.lookup(l)?, space.lookup(r)?), parse(v)?);
        }
        let mut d = vec![Vector::new(); space.dim()];
        for (on, v) in differential {
            d[space.lookup(on)?] = parse(v)?;
        }
        let curvature = parse(curvature)?;
        Self::with_antisymmetric_completion(space, entries, d, curvature)
    }

    /// The zero algebra.
    pub fn zero() -> Self {
        CurvedLieAlgebra {
            space: Arc::new(GradedSpace::zero()),
            brackets: BTreeMap::new(),
            differential: Vec::new(),
            curvature: Vector::new(),
        }
    }

    /// Abelian algebra with zero differential and the given curvature.
    pub fn abelian(space: SpaceRef, curvature: Vector<S>) -> Self {
        let n = space.dim();
        CurvedLieAlgebra {
            space,
            brackets: BTreeMap::new(),
            differential: vec![Vector::new(); n],
            curvature,
        }
    }

    pub fn space(&self) -> &SpaceRef {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.space.degree(i)
    }

    pub fn brackets(&self) -> &BTreeMap<(usize, usize), Vector<S>> {
        &self.brackets
    }

    pub fn differential(&self) -> &[Vector<S>] {
        &self.differential
    }

    pub fn curvature(&self) -> &Vector<S> {
        &self.curvature
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.is_empty()
    }

    pub fn d(&self, v: &Vector<S>) -> Vector<S> {
        v.combine(&self.differential)
    }

    pub fn differential_map(&self) -> LinearMap<S> {
        LinearMap {
            source: self.space.clone(),
            target: self.space.clone(),
            shift: -1,
            columns: self.differential.clone(),
        }
    }

    pub fn element(&self, v: Vector<S>) -> Element<S> {
        Element::new(self.space.clone(), v)
    }

    pub fn parse_element(&self, text: &str) -> Result<Vector<S>> {
        Ok(Element::parse(self.space.clone(), text)?.coeffs)
    }

    pub fn format(&self, v: &Vector<S>) -> String {
        format_vector(&self.space, v)
    }

    /// Degree of a homogeneous element, erroring on mixed degrees.
    pub fn degree_of(&self, v: &Vector<S>) -> Result<Option<i64>> {
        homogeneous_degree(&self.space, v)
    }

    /// Requires `v` homogeneous of degree `degree` (zero passes).
    pub fn require_degree(&self, v: &Vector<S>, degree: i64, what: &str) -> Result<()> {
        match self.degree_of(v)? {
            Some(d) if d != degree => Err(Error::DegreeMismatch(format!(
                "{what} must have degree {degree}, found {d}"
            ))),
            _ => Ok(()),
        }
    }

    /// Same structure on a renamed/regraded copy of the basis.
    pub fn with_space(&self, space: SpaceRef) -> Result<Self> {
        if space.dim() != self.dim() {
            return Err(Error::DimensionMismatch("renamed space has a different dimension".into()));
        }
        Ok(CurvedLieAlgebra { space, ..self.clone() })
    }

    /// `(g, d', ω')` with the same bracket.
    pub fn with_differential_and_curvature(&self, differential: Vec<Vector<S>>, curvature: Vector<S>) -> Self {
        CurvedLieAlgebra {
            space: self.space.clone(),
            brackets: self.brackets.clone(),
            differential,
            curvature,
        }
    }

    /// `ad_x` as a list of columns.
    pub fn ad(&self, x: &Vector<S>) -> Vec<Vector<S>> {
        (0..self.dim()).map(|j| self.bracket(x, &Vector::unit(j))).collect()
    }

    /// Iterated brackets `[e_{i_1}, [e_{i_2}, ... ]]` of length `len` all
    /// vanish: a nilpotency-class bound.
    pub fn brackets_of_length_vanish(&self, len: usize) -> bool {
        let mut layer: Vec<Vector<S>> = (0..self.dim()).map(Vector::unit).collect();
        for _ in 1..len {
            let mut next = crate::graded::Echelon::new();
            for v in &layer {
                for i in 0..self.dim() {
                    next.push(&self.bracket(&Vector::unit(i), v));
                }
            }
            layer = next.rows().cloned().collect();
            if layer.is_empty() {
                return true;
            }
        }
        layer.is_empty()
    }
}

impl<S: Field> fmt::Display for CurvedLieAlgebra<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "basis:")?;
        for b in self.space.basis() {
            writeln!(f, "  {} : {}", b.name, b.degree)?;
        }
        for (&(i, j), v) in &self.brackets {
            if i <= j {
                writeln!(f, "  [{}, {}] = {}", self.space.name(i), self.space.name(j), self.format(v))?;
            }
        }
        for (i, v) in self.differential.iter().enumerate() {
            if !v.is_zero() {
                writeln!(f, "  d {} = {}", self.space.name(i), self.format(v))?;
            }
        }
        write!(f, "  curvature = {}", self.format(&self.curvature))
    }
}
