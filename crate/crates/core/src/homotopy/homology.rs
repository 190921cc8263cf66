use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graded::echelon::Echelon;
use crate::graded::{Field, LinearMap, Vector};

/// Default homological degree window `[lo, hi]`.
pub const DEFAULT_WINDOW: (i64, i64) = (-6, 2);

/// Betti numbers of a complex in a degree window, with bases of cycles and
/// boundaries per degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyReport<S: Field> {
    pub window: (i64, i64),
    pub betti: BTreeMap<i64, usize>,
    pub cycles: BTreeMap<i64, Vec<Vector<S>>>,
    pub boundaries: BTreeMap<i64, Vec<Vector<S>>>,
}

impl<S: Field> HomologyReport<S> {
    pub fn total(&self) -> usize {
        self.betti.values().sum()
    }
}

impl<S: Field> fmt::Display for HomologyReport<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.betti.iter().map(|(d, b)| format!("H_{d}={b}")).collect();
        write!(f, "[{}, {}] {}", self.window.0, self.window.1, parts.join(" "))
    }
}

/// Betti numbers of the source and target and the rank of the induced map
/// in one degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeComparison {
    pub degree: i64,
    pub source: usize,
    pub target: usize,
    pub rank: usize,
}

impl DegreeComparison {
    pub fn is_iso(&self) -> bool {
        self.source == self.rank && self.target == self.rank
    }
}

fn check_differential<S: Field>(d: &LinearMap<S>) -> Result<()> {
    if d.shift != -1 || d.source != d.target {
        return Err(Error::Invalid("a differential is an endomorphism of degree -1".into()));
    }
    Ok(())
}

fn indices<S: Field>(d: &LinearMap<S>, degree: i64, keep: &dyn Fn(usize) -> bool) -> Vec<usize> {
    d.source.indices_in_degree(degree).into_iter().filter(|&i| keep(i)).collect()
}

/// Basis of the cycles in `degree` among the kept basis vectors.
pub fn cycles<S: Field>(d: &LinearMap<S>, degree: i64, keep: &dyn Fn(usize) -> bool) -> Vec<Vector<S>> {
    let mut e = Echelon::new();
    let mut out = Vec::new();
    for j in indices(d, degree, keep) {
        if let Some(dep) = e.insert(&d.columns[j], Vector::unit(j)) {
            out.push(dep);
        }
    }
    out
}

/// Spanning set of the boundaries in `degree`.
pub fn boundaries<S: Field>(d: &LinearMap<S>, degree: i64, keep: &dyn Fn(usize) -> bool) -> Vec<Vector<S>> {
    indices(d, degree + 1, keep).into_iter().map(|j| d.columns[j].clone()).collect()
}

fn span<S: Field>(vectors: &[Vector<S>]) -> Echelon<usize, S> {
    let mut e = Echelon::new();
    for v in vectors {
        e.push(v);
    }
    e
}

/// Checks `d² = 0` on the kept basis vectors in degrees `lo..=hi+1`, and
/// that `d` maps kept vectors to kept vectors.
fn check_square<S: Field>(d: &LinearMap<S>, window: (i64, i64), keep: &dyn Fn(usize) -> bool) -> Result<()> {
    for degree in window.0..=window.1 + 1 {
        for j in indices(d, degree, keep) {
            let dj = &d.columns[j];
            if let Some(k) = dj.keys().find(|&&k| !keep(k)) {
                return Err(Error::Invalid(format!(
                    "d({}) leaves the subcomplex at {}",
                    d.source.name(j),
                    d.source.name(*k)
                )));
            }
            if !d.apply(dj).is_zero() {
                return Err(Error::Invalid(format!("d² ≠ 0 on {}", d.source.name(j))));
            }
        }
    }
    Ok(())
}

pub fn homology<S: Field>(d: &LinearMap<S>, window: (i64, i64)) -> Result<HomologyReport<S>> {
    homology_of_subcomplex(d, window, &|_| true)
}

/// Homology of the subcomplex spanned by the kept basis vectors.
pub fn homology_of_subcomplex<S: Field>(
    d: &LinearMap<S>,
    window: (i64, i64),
    keep: &dyn Fn(usize) -> bool,
) -> Result<HomologyReport<S>> {
    check_differential(d)?;
    if window.0 > window.1 {
        return Err(Error::Invalid(format!("empty window [{}, {}]", window.0, window.1)));
    }
    check_square(d, window, keep)?;
    let mut report = HomologyReport {
        window,
        betti: BTreeMap::new(),
        cycles: BTreeMap::new(),
        boundaries: BTreeMap::new(),
    };
    for n in window.0..=window.1 {
        let z = cycles(d, n, keep);
        let b = span(&boundaries(d, n, keep)).reduced_basis();
        report.betti.insert(n, z.len() - b.len());
        report.cycles.insert(n, z);
        report.boundaries.insert(n, b);
    }
    Ok(report)
}

/// Compares homology along a chain map `f` (degree 0) between two
/// subcomplexes: in each degree, the rank of `H(f)` is
/// `dim(f(Z) + B') - dim B'`.
pub fn compare_homology<S: Field>(
    f: &LinearMap<S>,
    d_source: &LinearMap<S>,
    d_target: &LinearMap<S>,
    window: (i64, i64),
    keep_source: &dyn Fn(usize) -> bool,
    keep_target: &dyn Fn(usize) -> bool,
) -> Result<Vec<DegreeComparison>> {
    check_differential(d_source)?;
    check_differential(d_target)?;
    if f.shift != 0 || f.source != d_source.source || f.target != d_target.source {
        return Err(Error::DimensionMismatch("the map must go between the two complexes".into()));
    }
    check_square(d_source, window, keep_source)?;
    check_square(d_target, window, keep_target)?;
    let mut out = Vec::new();
    for n in window.0..=window.1 {
        let z = cycles(d_source, n, keep_source);
        let z_target = cycles(d_target, n, keep_target);
        let mut b = span(&boundaries(d_target, n, keep_target));
        let b_dim = b.rank();
        for v in &z {
            let fv = f.apply(v);
            if !d_target.apply(&fv).is_zero() || fv.keys().any(|&k| !keep_target(k)) {
                return Err(Error::Invalid(format!("f is not a chain map in degree {n}")));
            }
            b.push(&fv);
        }
        out.push(DegreeComparison {
            degree: n,
            source: z.len() - span(&boundaries(d_source, n, keep_source)).rank(),
            target: z_target.len() - b_dim,
            rank: b.rank() - b_dim,
        });
    }
    Ok(out)
}
