use std::collections::BTreeMap;
use std::sync::Arc;

use super::algebra::{Cdga, CdgaMorphism};
use super::free::FreeCommutative;
use crate::error::{Error, Result};
use crate::graded::{is_odd, tensor_spaces, Field, GradedSpace, Vector};

pub const DEFAULT_POLY_CAP: usize = 3;

/// `A ⊗ B` with `(a⊗b)(a'⊗b') = (-1)^{|b||a'|} aa'⊗bb'` and
/// `d(a⊗b) = da⊗b + (-1)^{|a|} a⊗db`. Basis index of `a_i⊗b_j` is
/// `i·dim B + j`.
pub fn tensor_cdga<S: Field>(a: &Cdga<S>, b: &Cdga<S>) -> Result<Cdga<S>> {
    let space = Arc::new(tensor_spaces(a.space(), b.space()));
    let nb = b.dim();
    let pair = |v: &Vector<S>, w: &Vector<S>| -> Vector<S> {
        let mut out = Vector::new();
        for (i, ci) in v.iter() {
            for (j, cj) in w.iter() {
                out.add_term(i * nb + j, ci.clone() * cj.clone());
            }
        }
        out
    };
    let mut products = BTreeMap::new();
    for (&(i, i2), p) in a.products() {
        for (&(j, j2), q) in b.products() {
            let sign = S::sign(is_odd(b.degree(j)) && is_odd(a.degree(i2)));
            products.insert((i * nb + j, i2 * nb + j2), pair(p, q).scaled(&sign));
        }
    }
    let mut differential = Vec::with_capacity(a.dim() * nb);
    for i in 0..a.dim() {
        for j in 0..nb {
            let mut v = pair(&a.differential()[i], &Vector::unit(j));
            v.add_scaled(&pair(&Vector::unit(i), &b.differential()[j]), &S::sign(is_odd(a.degree(i))));
            differential.push(v);
        }
    }
    Cdga::new(space, a.unit() * nb + b.unit(), products, differential)
}

/// Polynomial forms on the `n`-simplex, `Q[t_1..t_n, dt_1..dt_n]` (with
/// `t_0 = 1 - Σ t_i` eliminated), truncated at polynomial degree `≤ D`
/// where each `t_i` and `dt_i` counts 1. `dt_i` has homological degree -1.
#[derive(Clone, Debug)]
pub struct SimplexForms<S: Field> {
    pub n: usize,
    pub cap: usize,
    pub algebra: Arc<Cdga<S>>,
    free: FreeCommutative<S>,
}

impl<S: Field> SimplexForms<S> {
    pub fn new(n: usize, cap: usize) -> Result<Self> {
        let names = |t: &str, d: &str| -> Vec<(String, i64)> {
            if n == 1 {
                return vec![(t.to_string(), 0), (d.to_string(), -1)];
            }
            let mut v: Vec<(String, i64)> = (1..=n).map(|i| (format!("{t}{i}"), 0)).collect();
            v.extend((1..=n).map(|i| (format!("{d}{i}"), -1)));
            v
        };
        Self::with_names(n, cap, names("t", "dt"))
    }

    fn with_names(n: usize, cap: usize, generators: Vec<(String, i64)>) -> Result<Self> {
        if cap == 0 {
            return Err(Error::Cap("polynomial degree cap must be ≥ 1".into()));
        }
        let free = FreeCommutative::<S>::new(Arc::new(GradedSpace::new(generators)?), cap)?;
        let mut values = vec![Vector::new(); 2 * n];
        for i in 0..n {
            values[i] = Vector::unit(free.generator(n + i).expect("cap ≥ 1"));
        }
        let algebra = Arc::new(free.to_cdga(&values)?);
        Ok(SimplexForms { n, cap, algebra, free })
    }

    /// Evaluation at vertex `v ∈ 0..=n` (`t_i ↦ δ_{iv}`, `dt_i ↦ 0`).
    pub fn vertex(&self, v: usize) -> Result<CdgaMorphism<S>> {
        if v > self.n {
            return Err(Error::Invalid(format!("vertex {v} of a {}-simplex", self.n)));
        }
        let ground = Arc::new(Cdga::ground());
        let values: Vec<Vector<S>> = (0..2 * self.n)
            .map(|g| if g < self.n && g + 1 == v { ground.unit_vector() } else { Vector::new() })
            .collect();
        let columns = self.free.extend_algebra_map(&values, &ground)?;
        CdgaMorphism::new(self.algebra.clone(), ground, columns)
    }

    /// Polynomial degree of basis vector `i`.
    pub fn poly_degree(&self, i: usize) -> usize {
        self.free.length(i)
    }

    /// Whether `ev` (a vertex evaluation) is a dg-algebra map on products
    /// that stay within the cap. Evaluation at a vertex other than 0 does
    /// not kill the monomials dropped by the truncation, so products
    /// leaving the cap are excluded.
    pub fn is_valid_within_cap(&self, ev: &CdgaMorphism<S>) -> bool {
        ev.check_pairs(|i, j| self.poly_degree(i) + self.poly_degree(j) <= self.cap).is_empty()
    }

    /// Evaluation `z ↦ c`, `dz ↦ 0` of one-variable forms.
    fn evaluation_at(&self, c: &S) -> Result<CdgaMorphism<S>> {
        let ground = Arc::new(Cdga::ground());
        let values = vec![ground.unit_vector().scaled(c), Vector::new()];
        let columns = self.free.extend_algebra_map(&values, &ground)?;
        CdgaMorphism::new(self.algebra.clone(), ground, columns)
    }
}

/// `A[z, dz]` truncated at `z`-degree `≤ D`, with endpoint evaluations.
/// Evaluation at `z = 0` is a dg-algebra map; evaluation at `z = 1` is one
/// on all products of total `z`-degree `≤ D`.
/// Basis index of `a_i ⊗ m_j` is `i·dim k[z,dz] + j`.
#[derive(Clone, Debug)]
pub struct PathAlgebra<S: Field> {
    pub base: Arc<Cdga<S>>,
    pub cap: usize,
    pub algebra: Arc<Cdga<S>>,
    pub interval: SimplexForms<S>,
    /// `z = 0` and `z = 1`.
    pub endpoints: (CdgaMorphism<S>, CdgaMorphism<S>),
}

impl<S: Field> PathAlgebra<S> {
    pub fn new(base: Arc<Cdga<S>>, cap: usize) -> Result<Self> {
        let interval = SimplexForms::with_names(1, cap, vec![("z".into(), 0), ("dz".into(), -1)])?;
        let algebra = Arc::new(tensor_cdga(&base, &interval.algebra)?);
        let at = |c: S| -> Result<CdgaMorphism<S>> {
            let ev = interval.evaluation_at(&c)?;
            let m = interval.algebra.dim();
            let columns = (0..algebra.dim())
                .map(|k| {
                    let c = ev.map.columns[k % m].coeff(&0);
                    if c.is_zero() {
                        Vector::new()
                    } else {
                        Vector::single(k / m, c)
                    }
                })
                .collect();
            CdgaMorphism::new(algebra.clone(), base.clone(), columns)
        };
        let endpoints = (at(S::zero())?, at(S::one())?);
        Ok(PathAlgebra { base, cap, algebra, interval, endpoints })
    }

    /// `z`-degree of basis vector `k` of the path algebra.
    pub fn z_degree(&self, k: usize) -> usize {
        self.interval.poly_degree(k % self.interval.algebra.dim())
    }

    /// Whether an endpoint evaluation is a dg-algebra map on products that
    /// stay within the `z`-degree cap.
    pub fn is_valid_within_cap(&self, ev: &CdgaMorphism<S>) -> bool {
        ev.check_pairs(|i, j| self.z_degree(i) + self.z_degree(j) <= self.cap).is_empty()
    }

    /// Index of `z^k` (`dz` factor when `with_dz`) in `k[z,dz]`.
    pub fn z_power(&self, k: usize, with_dz: bool) -> Option<usize> {
        self.interval.free.monomial_index(&[k as u32, with_dz as u32])
    }

    /// `a ⊗ m` for `a ∈ A` and a basis index `m` of `k[z,dz]`.
    pub fn embed(&self, a: &Vector<S>, m: usize) -> Vector<S> {
        let nb = self.interval.algebra.dim();
        a.map_keys(|&i| i * nb + m)
    }
}
