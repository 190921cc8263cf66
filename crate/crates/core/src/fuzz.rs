//! Seeded random generators for property tests, the acceptance suite and
//! the `fuzz` subcommand.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cdga::{Cdga, FreeCommutative};
use crate::graded::{Field, GradedSpace, LinearMap, SpaceRef, Vector};
use crate::lie::{CurvedLieAlgebra, CurvedMorphism, LieBracket};

pub type FuzzRng = ChaCha8Rng;

pub fn rng(seed: u64) -> FuzzRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shape of random curved Lie algebras.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LieShape {
    pub max_dim: usize,
    /// Degrees are drawn from `min_degree..=max_degree`.
    pub min_degree: i64,
    pub max_degree: i64,
    /// Probability that an allowed structure constant is nonzero.
    pub density: f64,
    /// Coefficients are drawn from `-max_coeff..=max_coeff`.
    pub max_coeff: i64,
}

impl Default for LieShape {
    fn default() -> Self {
        LieShape { max_dim: 4, min_degree: -3, max_degree: 0, density: 0.6, max_coeff: 2 }
    }
}

fn coeff<S: Field>(rng: &mut FuzzRng, max: i64) -> S {
    let c = loop {
        let c = rng.gen_range(-max..=max);
        if c != 0 {
            break c;
        }
    };
    S::from_i64(c)
}

fn random_space(rng: &mut FuzzRng, dim: usize, min_degree: i64, max_degree: i64, prefix: &str) -> SpaceRef {
    let mut degrees: Vec<i64> = (0..dim).map(|_| rng.gen_range(min_degree..=max_degree)).collect();
    degrees.sort_unstable_by(|a, b| b.cmp(a));
    let names = (0..dim).map(|i| (format!("{prefix}{i}"), degrees[i]));
    Arc::new(GradedSpace::new(names).expect("distinct names"))
}

/// A random element of the given degree (possibly zero).
pub fn random_element<S: Field>(rng: &mut FuzzRng, space: &GradedSpace, degree: i64, density: f64, max_coeff: i64) -> Vector<S> {
    let mut v = Vector::new();
    for i in space.indices_in_degree(degree) {
        if rng.gen_bool(density) {
            v.add_term(i, coeff(rng, max_coeff));
        }
    }
    v
}

/// An element with indices restricted by `allowed`.
fn random_element_where<S: Field>(
    rng: &mut FuzzRng,
    space: &GradedSpace,
    degree: i64,
    shape: &LieShape,
    allowed: impl Fn(usize) -> bool,
) -> Vector<S> {
    let mut v = Vector::new();
    for i in space.indices_in_degree(degree) {
        if allowed(i) && rng.gen_bool(shape.density) {
            v.add_term(i, coeff(rng, shape.max_coeff));
        }
    }
    v
}

/// A candidate curved Lie algebra: random structure constants of the right
/// degrees, repaired to graded antisymmetry, with no further guarantee.
/// Some candidates have their bracket, differential or curvature switched
/// off so that valid and invalid ones both occur.
pub fn candidate_curved_lie<S: Field>(rng: &mut FuzzRng, shape: &LieShape) -> CurvedLieAlgebra<S> {
    // biased towards larger algebras, where the axioms can fail
    let dim = rng.gen_range(1..=shape.max_dim).max(rng.gen_range(1..=shape.max_dim));
    let space = random_space(rng, dim, shape.min_degree, shape.max_degree, "e");
    let mode = rng.gen_range(0..6);
    let (brackets_on, d_on, omega_on) = (mode != 1, mode != 2 && mode != 4, mode != 3 && mode != 4);
    build(rng, &space, shape, brackets_on, d_on, omega_on, |_, _| true)
}

/// A candidate whose bracket and differential strictly increase the basis
/// index, so every valid one is nilpotent.
pub fn candidate_nilpotent<S: Field>(rng: &mut FuzzRng, shape: &LieShape) -> CurvedLieAlgebra<S> {
    let dim = rng.gen_range(1..=shape.max_dim);
    let space = random_space(rng, dim, shape.min_degree, shape.max_degree, "e");
    let omega_on = rng.gen_bool(0.5);
    build(rng, &space, shape, true, true, omega_on, |target, lower| target > lower)
}

fn build<S: Field>(
    rng: &mut FuzzRng,
    space: &SpaceRef,
    shape: &LieShape,
    brackets_on: bool,
    d_on: bool,
    omega_on: bool,
    allowed: impl Fn(usize, usize) -> bool,
) -> CurvedLieAlgebra<S> {
    let dim = space.dim();
    let mut entries = BTreeMap::new();
    if brackets_on {
        for i in 0..dim {
            for j in i..dim {
                // [x,x] = -[x,x] for even x
                if i == j && space.degree(i) % 2 == 0 {
                    continue;
                }
                let degree = space.degree(i) + space.degree(j);
                let v = random_element_where(rng, space, degree, shape, |k| allowed(k, j.max(i)));
                if !v.is_zero() {
                    entries.insert((i, j), v);
                }
            }
        }
    }
    let differential = (0..dim)
        .map(|i| {
            if d_on {
                random_element_where(rng, space, space.degree(i) - 1, shape, |k| allowed(k, i))
            } else {
                Vector::new()
            }
        })
        .collect();
    let curvature = if omega_on {
        random_element_where(rng, space, -2, shape, |_| true)
    } else {
        Vector::new()
    };
    CurvedLieAlgebra::with_antisymmetric_completion(space.clone(), entries, differential, curvature)
        .expect("indices in range")
}

/// Rejection-samples a valid algebra; falls back to an abelian algebra with
/// zero differential (valid for any curvature) after `attempts` misses.
pub fn valid_curved_lie<S: Field>(rng: &mut FuzzRng, shape: &LieShape, nilpotent: bool, attempts: usize) -> CurvedLieAlgebra<S> {
    for _ in 0..attempts {
        let g = if nilpotent { candidate_nilpotent(rng, shape) } else { candidate_curved_lie(rng, shape) };
        if g.validate().is_valid() {
            return g;
        }
    }
    let dim = rng.gen_range(1..=shape.max_dim);
    let space = random_space(rng, dim, shape.min_degree, shape.max_degree, "e");
    let omega = random_element(rng, &space, -2, shape.density, shape.max_coeff);
    CurvedLieAlgebra::abelian(space, omega)
}

/// Random `(f, α)` of the right degrees between two algebras, not
/// necessarily satisfying the morphism axioms.
pub fn random_morphism_data<S: Field>(
    rng: &mut FuzzRng,
    source: &Arc<CurvedLieAlgebra<S>>,
    target: &Arc<CurvedLieAlgebra<S>>,
    density: f64,
) -> CurvedMorphism<S> {
    let columns = (0..source.dim())
        .map(|i| random_element(rng, target.space(), source.degree(i), density, 2))
        .collect();
    let map = LinearMap::new(source.space().clone(), target.space().clone(), 0, columns).expect("degree 0");
    let alpha = random_element(rng, target.space(), -1, density, 2);
    CurvedMorphism { source: source.clone(), target: target.clone(), map, alpha }
}

/// A random automorphism of the underlying graded space: a product of a
/// random diagonal and a random unipotent (triangular within each degree).
pub fn random_invertible<S: Field>(rng: &mut FuzzRng, g: &Arc<CurvedLieAlgebra<S>>) -> LinearMap<S> {
    let space = g.space();
    let columns = (0..g.dim())
        .map(|i| {
            let mut v = Vector::single(i, coeff(rng, 3));
            for j in space.indices_in_degree(space.degree(i)) {
                if j < i && rng.gen_bool(0.5) {
                    v.add_term(j, coeff(rng, 2));
                }
            }
            v
        })
        .collect();
    LinearMap::new(space.clone(), space.clone(), 0, columns).expect("degree 0")
}

/// Shape of random augmented cdgas: truncated free graded-commutative
/// algebras with a differential preserving the augmentation ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CdgaShape {
    pub max_generators: usize,
    /// Homological generator degrees from `min_degree..=max_degree`.
    pub min_degree: i64,
    pub max_degree: i64,
    pub length_cap: usize,
    pub max_dim: usize,
}

impl Default for CdgaShape {
    fn default() -> Self {
        CdgaShape { max_generators: 2, min_degree: -2, max_degree: 0, length_cap: 2, max_dim: 4 }
    }
}

/// A random augmented cdga (the default retraction is an augmentation).
/// Differentials are drawn on generators without unit component and kept
/// only when they square to zero.
pub fn augmented_cdga<S: Field>(rng: &mut FuzzRng, shape: &CdgaShape) -> Cdga<S> {
    loop {
        let n = rng.gen_range(1..=shape.max_generators);
        let mut gens = Vec::new();
        for i in 0..n {
            gens.push((format!("x{i}"), rng.gen_range(shape.min_degree..=shape.max_degree)));
        }
        let space = Arc::new(GradedSpace::new(gens).expect("distinct names"));
        let free = FreeCommutative::<S>::new(space.clone(), shape.length_cap).expect("valid generators");
        if free.dim() > shape.max_dim {
            continue;
        }
        let unit = free.unit();
        let values: Vec<Vector<S>> = (0..n)
            .map(|g| {
                let mut v = random_element(rng, free.space(), space.degree(g) - 1, 0.5, 2);
                v.remove(&unit);
                v
            })
            .collect();
        let Ok(a) = free.to_cdga(&values) else { continue };
        if (0..a.dim()).all(|i| a.d(&a.differential()[i]).is_zero()) {
            return a;
        }
    }
}

/// A nonzero degree-0 element of `A₊` for the default retraction, if any.
pub fn degree_zero_augmentation_element<S: Field>(rng: &mut FuzzRng, a: &Cdga<S>) -> Option<Vector<S>> {
    let mut candidates: Vec<usize> =
        a.space().indices_in_degree(0).into_iter().filter(|&i| i != a.unit()).collect();
    if candidates.is_empty() {
        return None;
    }
    candidates.shuffle(rng);
    let mut v = Vector::new();
    for &i in &candidates {
        v.add_term(i, coeff(rng, 2));
    }
    Some(v)
}

/// Random images of the generators of `C(g)` in `A`: an element of degree
/// `-|x|-1` for each basis vector `x`.
pub fn random_generator_images<S: Field>(rng: &mut FuzzRng, g: &CurvedLieAlgebra<S>, a: &Cdga<S>, density: f64) -> Vec<Vector<S>> {
    (0..g.dim())
        .map(|x| random_element(rng, a.space(), -g.degree(x) - 1, density, 2))
        .collect()
}

/// Whether all brackets of `length` elements vanish (nilpotency class
/// below `length`).
pub fn is_nilpotent_of_length<S: Field>(g: &CurvedLieAlgebra<S>, length: usize) -> bool {
    let mut current: Vec<Vector<S>> = (0..g.dim()).map(Vector::unit).collect();
    for _ in 1..length {
        let mut next = Vec::new();
        for v in &current {
            for j in 0..g.dim() {
                let w = g.bracket(v, &Vector::unit(j));
                if !w.is_zero() {
                    next.push(w);
                }
            }
        }
        current = next;
    }
    current.is_empty()
}
