use std::collections::HashMap;
use std::sync::Arc;

use super::scalar::{is_odd, Field};
use crate::error::{Error, Result};

/// One named, homologically graded basis vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisVector {
    pub name: String,
    pub degree: i64,
}

/// A finite-dimensional homologically graded vector space with a fixed,
/// ordered, named basis.
#[derive(Clone, Debug, Default)]
pub struct GradedSpace {
    basis: Vec<BasisVector>,
    index: HashMap<String, usize>,
}

impl PartialEq for GradedSpace {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis
    }
}

impl Eq for GradedSpace {}

impl GradedSpace {
    pub fn new<I, N>(basis: I) -> Result<Self>
    where
        I: IntoIterator<Item = (N, i64)>,
        N: Into<String>,
    {
        let mut space = GradedSpace::default();
        for (name, degree) in basis {
            let name = name.into();
            if space.index.contains_key(&name) {
                return Err(Error::DuplicateBasisName(name));
            }
            space.index.insert(name.clone(), space.basis.len());
            space.basis.push(BasisVector { name, degree });
        }
        Ok(space)
    }

    pub fn zero() -> Self {
        GradedSpace::default()
    }

    /// The one-dimensional space spanned by `name` in degree 0.
    pub fn ground(name: &str) -> Self {
        GradedSpace::new([(name, 0)]).expect("single name")
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[BasisVector] {
        &self.basis
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.basis[i].degree
    }

    pub fn name(&self, i: usize) -> &str {
        &self.basis[i].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn lookup(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownBasisName(name.to_string()))
    }

    /// Indices of basis vectors in the given degree.
    pub fn indices_in_degree(&self, degree: i64) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degree(i) == degree).collect()
    }

    pub fn degrees(&self) -> Vec<i64> {
        let mut degrees: Vec<i64> = self.basis.iter().map(|b| b.degree).collect();
        degrees.sort_unstable();
        degrees.dedup();
        degrees
    }

    pub fn dim_in_degree(&self, degree: i64) -> usize {
        self.basis.iter().filter(|b| b.degree == degree).count()
    }

    /// Applies `f` to every basis vector, keeping order.
    pub fn map_basis<F>(&self, mut f: F) -> Result<Self>
    where
        F: FnMut(&BasisVector) -> (String, i64),
    {
        GradedSpace::new(self.basis.iter().map(|b| f(b)))
    }
}

/// `(ΣV)_i = V_{i-1}`: names gain a `Σ` prefix and degrees go up by one.
pub fn suspend(space: &GradedSpace) -> GradedSpace {
    space
        .map_basis(|b| (format!("Σ{}", b.name), b.degree + 1))
        .expect("prefixing preserves uniqueness")
}

/// Shifts every degree by `shift` without renaming.
pub fn shift_degrees(space: &GradedSpace, shift: i64) -> GradedSpace {
    space
        .map_basis(|b| (b.name.clone(), b.degree + shift))
        .expect("names unchanged")
}

/// Degreewise linear dual stored homologically: the dual of degree `i`
/// sits in degree `-i`. `x` becomes `x*`, and `x*` goes back to `x`, so
/// dualizing twice is the identity on the nose.
pub fn dualize(space: &GradedSpace) -> GradedSpace {
    space
        .map_basis(|b| {
            let name = match b.name.strip_suffix('*') {
                Some(stripped) => stripped.to_string(),
                None => format!("{}*", b.name),
            };
            (name, -b.degree)
        })
        .expect("dual names stay unique")
}

/// `(-1)^{Σ |u||v|}` over the transposed pairs.
pub fn koszul_sign<S: Field>(transpositions: &[(i64, i64)]) -> S {
    let odd = transpositions
        .iter()
        .filter(|(u, v)| is_odd(*u) && is_odd(*v))
        .count();
    S::sign(odd % 2 == 1)
}

/// Name of the basis vector `a ⊗ b` in a tensor product.
pub fn tensor_name(left: &str, right: &str) -> String {
    format!("{left}⊗{right}")
}

/// `V ⊗ W` with basis ordered lexicographically (left index major).
pub fn tensor_spaces(left: &GradedSpace, right: &GradedSpace) -> GradedSpace {
    let mut basis = Vec::with_capacity(left.dim() * right.dim());
    for a in left.basis() {
        for b in right.basis() {
            basis.push((tensor_name(&a.name, &b.name), a.degree + b.degree));
        }
    }
    GradedSpace::new(basis).expect("tensor names are unique when factors are")
}

pub type SpaceRef = Arc<GradedSpace>;

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::One;

    fn space(basis: &[(&str, i64)]) -> GradedSpace {
        GradedSpace::new(basis.iter().map(|(n, d)| (*n, *d))).unwrap()
    }

    #[test]
    fn suspension_examples() {
        let s = suspend(&space(&[("x", -1)]));
        assert_eq!(s.basis(), &[BasisVector { name: "Σx".into(), degree: 0 }]);
        assert!(suspend(&GradedSpace::zero()).is_empty());
        let s = suspend(&space(&[("a", 2), ("b", -3)]));
        assert_eq!(s.degree(0), 3);
        assert_eq!(s.degree(1), -2);
        assert_eq!(s.name(1), "Σb");
    }

    #[test]
    fn dual_examples() {
        let d = dualize(&space(&[("x", -1)]));
        assert_eq!(d.name(0), "x*");
        assert_eq!(d.degree(0), 1);
        let d = dualize(&space(&[("w", -2), ("u", 0)]));
        assert_eq!((d.degree(0), d.degree(1)), (2, 0));
        let v = space(&[("a", 5)]);
        assert_eq!(dualize(&dualize(&v)), v);
    }

    #[test]
    fn koszul_examples() {
        let plus: BigRational = koszul_sign(&[(-2, -1)]);
        assert_eq!(plus, BigRational::one());
        let minus: BigRational = koszul_sign(&[(-1, -1)]);
        assert_eq!(minus, -BigRational::one());
        let empty: BigRational = koszul_sign(&[]);
        assert_eq!(empty, BigRational::one());
    }

    #[test]
    fn tensor_degrees_add() {
        let t = tensor_spaces(&space(&[("x", -1)]), &space(&[("a", 0)]));
        assert_eq!(t.basis(), &[BasisVector { name: "x⊗a".into(), degree: -1 }]);
    }

    #[test]
    fn duplicate_names_rejected() {
        assert!(GradedSpace::new([("a", 0), ("a", 1)]).is_err());
    }
}
