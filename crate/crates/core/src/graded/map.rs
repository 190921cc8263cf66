use std::sync::Arc;

use super::echelon::Echelon;
use super::scalar::{is_odd, Field};
use super::space::{tensor_spaces, GradedSpace, SpaceRef};
use super::sparse::Vector;
use crate::error::{Error, Result};

/// A homogeneous linear map between graded spaces, stored by columns:
/// `columns[j]` is the image of source basis vector `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap<S: Field> {
    pub source: SpaceRef,
    pub target: SpaceRef,
    pub shift: i64,
    pub columns: Vec<Vector<S>>,
}

/// A kernel together with its embedding into the source.
#[derive(Clone, Debug)]
pub struct Kernel<S: Field> {
    pub space: SpaceRef,
    pub embedding: LinearMap<S>,
}

impl<S: Field> LinearMap<S> {
    pub fn new(source: SpaceRef, target: SpaceRef, shift: i64, columns: Vec<Vector<S>>) -> Result<Self> {
        if columns.len() != source.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} columns for a {}-dimensional source",
                columns.len(),
                source.dim()
            )));
        }
        if let Some(bad) = columns
            .iter()
            .flat_map(|c| c.keys())
            .find(|&&k| k >= target.dim())
        {
            return Err(Error::DimensionMismatch(format!(
                "entry in row {bad} of a {}-dimensional target",
                target.dim()
            )));
        }
        Ok(LinearMap { source, target, shift, columns })
    }

    pub fn zero(source: SpaceRef, target: SpaceRef, shift: i64) -> Self {
        let columns = vec![Vector::new(); source.dim()];
        LinearMap { source, target, shift, columns }
    }

    pub fn identity(space: SpaceRef) -> Self {
        let columns = (0..space.dim()).map(Vector::unit).collect();
        LinearMap { source: space.clone(), target: space, shift: 0, columns }
    }

    pub fn apply(&self, v: &Vector<S>) -> Vector<S> {
        v.combine(&self.columns)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vector::is_zero)
    }

    /// First entry violating `deg(target) = deg(source) + shift`.
    pub fn degree_violation(&self) -> Option<(usize, usize)> {
        for (j, col) in self.columns.iter().enumerate() {
            for &i in col.keys() {
                if self.target.degree(i) != self.source.degree(j) + self.shift {
                    return Some((j, i));
                }
            }
        }
        None
    }

    pub fn check_degrees(&self) -> Result<()> {
        match self.degree_violation() {
            None => Ok(()),
            Some((j, i)) => Err(Error::DegreeMismatch(format!(
                "{} (degree {}) has a component on {} (degree {}) under a map of degree {}",
                self.source.name(j),
                self.source.degree(j),
                self.target.name(i),
                self.target.degree(i),
                self.shift
            ))),
        }
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new();
        for c in &self.columns {
            e.push(c);
        }
        e.rank()
    }

    /// Rank of the restriction to source degree `degree`.
    pub fn rank_in_degree(&self, degree: i64) -> usize {
        let mut e = Echelon::new();
        for j in self.source.indices_in_degree(degree) {
            e.push(&self.columns[j]);
        }
        e.rank()
    }

    /// Exact kernel by Gaussian elimination on the columns, processed in
    /// basis order. Kernel vectors are named `ker{n}`.
    pub fn kernel(&self) -> Kernel<S> {
        let vectors = self.kernel_vectors();
        let basis = vectors.iter().enumerate().map(|(n, v)| {
            let lead = *v.first_key().expect("kernel vectors are nonzero");
            (format!("ker{n}"), self.source.degree(lead))
        });
        let space = Arc::new(GradedSpace::new(basis).expect("generated names"));
        let embedding = LinearMap {
            source: space.clone(),
            target: self.source.clone(),
            shift: 0,
            columns: vectors,
        };
        Kernel { space, embedding }
    }

    /// Kernel basis as source vectors.
    pub fn kernel_vectors(&self) -> Vec<Vector<S>> {
        let mut e = Echelon::new();
        let mut out = Vec::new();
        for (j, col) in self.columns.iter().enumerate() {
            if let Some(dep) = e.insert(col, Vector::unit(j)) {
                out.push(dep);
            }
        }
        out
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &LinearMap<S>) -> Result<LinearMap<S>> {
        if *first.target != *self.source {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose: intermediate spaces differ ({} vs {} basis vectors)",
                first.target.dim(),
                self.source.dim()
            )));
        }
        let columns = first.columns.iter().map(|c| self.apply(c)).collect();
        Ok(LinearMap {
            source: first.source.clone(),
            target: self.target.clone(),
            shift: self.shift + first.shift,
            columns,
        })
    }

    pub fn sum(&self, other: &LinearMap<S>) -> Result<LinearMap<S>> {
        if *self.source != *other.source || *self.target != *other.target || self.shift != other.shift {
            return Err(Error::DimensionMismatch("summands have different shapes".into()));
        }
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| a.plus(b))
            .collect();
        Ok(LinearMap { columns, ..self.clone() })
    }

    pub fn scaled(&self, c: &S) -> LinearMap<S> {
        LinearMap {
            columns: self.columns.iter().map(|v| v.scaled(c)).collect(),
            ..self.clone()
        }
    }

    /// Inverse of a degree-0 isomorphism, or the first degree where the
    /// rank drops.
    pub fn inverse(&self) -> Result<LinearMap<S>> {
        let mut degrees = self.source.degrees();
        degrees.extend(self.target.degrees().into_iter().map(|d| d - self.shift));
        degrees.sort_unstable();
        degrees.dedup();
        for degree in degrees {
            let n_src = self.source.dim_in_degree(degree);
            let n_tgt = self.target.dim_in_degree(degree + self.shift);
            let r = self.rank_in_degree(degree);
            if r != n_src || r != n_tgt {
                return Err(Error::NotInvertible { degree });
            }
        }
        // Express each target basis vector in terms of the columns.
        let mut e = Echelon::new();
        for (j, col) in self.columns.iter().enumerate() {
            e.insert(col, Vector::unit(j));
        }
        let mut columns = Vec::with_capacity(self.target.dim());
        for i in 0..self.target.dim() {
            let red = e.reduce(&Vector::unit(i));
            debug_assert!(red.residual.is_zero());
            columns.push(red.coords);
        }
        Ok(LinearMap {
            source: self.target.clone(),
            target: self.source.clone(),
            shift: -self.shift,
            columns,
        })
    }
}

/// `f ⊗ g` with the Koszul rule `(f⊗g)(x⊗y) = (-1)^{|g||x|} f(x)⊗g(y)`.
pub fn tensor_maps<S: Field>(f: &LinearMap<S>, g: &LinearMap<S>) -> LinearMap<S> {
    let source = Arc::new(tensor_spaces(&f.source, &g.source));
    let target = Arc::new(tensor_spaces(&f.target, &g.target));
    let m = g.source.dim();
    let m_target = g.target.dim();
    let mut columns = Vec::with_capacity(source.dim());
    for x in 0..f.source.dim() {
        let sign = S::sign(is_odd(g.shift) && is_odd(f.source.degree(x)));
        for y in 0..m {
            let mut col = Vector::new();
            for (a, ca) in f.columns[x].iter() {
                for (b, cb) in g.columns[y].iter() {
                    col.add_term(a * m_target + b, sign.clone() * ca.clone() * cb.clone());
                }
            }
            columns.push(col);
        }
    }
    LinearMap { source, target, shift: f.shift + g.shift, columns }
}

/// The differential `d⊗1 + 1⊗d` of a tensor product of complexes.
pub fn tensor_differential<S: Field>(d_left: &LinearMap<S>, d_right: &LinearMap<S>) -> LinearMap<S> {
    let left = tensor_maps(d_left, &LinearMap::identity(d_right.source.clone()));
    let right = tensor_maps(&LinearMap::identity(d_left.source.clone()), d_right);
    left.sum(&right).expect("same shape")
}
