use std::cmp::Reverse;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::algebra::Cdga;
use crate::error::{Error, Result};
use crate::graded::element::homogeneous_degree;
use crate::graded::{is_odd, Field, GradedSpace, SpaceRef, Vector};

/// The free graded-commutative algebra on finitely many generators,
/// truncated to monomials of length ≤ `length_cap` and, optionally, of
/// total weight ≤ `weight_cap`. Products leaving the truncation vanish,
/// so the truncation is the quotient by the ideal of longer monomials.
#[derive(Clone, Debug)]
pub struct FreeCommutative<S: Field> {
    generators: SpaceRef,
    weights: Vec<usize>,
    length_cap: usize,
    weight_cap: Option<usize>,
    monomials: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    space: SpaceRef,
    products: BTreeMap<(usize, usize), Vector<S>>,
}

impl<S: Field> FreeCommutative<S> {
    pub fn new(generators: SpaceRef, length_cap: usize) -> Result<Self> {
        let weights = vec![1; generators.dim()];
        Self::with_weights(generators, weights, length_cap, None)
    }

    pub fn with_weights(
        generators: SpaceRef,
        weights: Vec<usize>,
        length_cap: usize,
        weight_cap: Option<usize>,
    ) -> Result<Self> {
        if weights.len() != generators.dim() || weights.iter().any(|&w| w == 0) {
            return Err(Error::Invalid("one positive weight per generator required".into()));
        }
        let n = generators.dim();
        let mut monomials = Vec::new();
        let mut exps = vec![0u32; n];
        enumerate(&generators, &weights, length_cap, weight_cap, 0, 0, 0, &mut exps, &mut monomials);
        monomials.sort_by_key(|m| (m.iter().sum::<u32>(), Reverse(m.clone())));
        let index: HashMap<Vec<u32>, usize> = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let space = Arc::new(GradedSpace::new(monomials.iter().map(|m| {
            let degree = m.iter().enumerate().map(|(g, &e)| generators.degree(g) * e as i64).sum();
            (render(&generators, m), degree)
        }))?);
        let mut free = FreeCommutative {
            generators,
            weights,
            length_cap,
            weight_cap,
            monomials,
            index,
            space,
            products: BTreeMap::new(),
        };
        let mut products = BTreeMap::new();
        for i in 0..free.dim() {
            for j in 0..free.dim() {
                if let Some((k, c)) = free.multiply_monomials(i, j) {
                    products.insert((i, j), Vector::single(k, c));
                }
            }
        }
        free.products = products;
        Ok(free)
    }

    pub fn generators(&self) -> &SpaceRef {
        &self.generators
    }

    pub fn space(&self) -> &SpaceRef {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn length_cap(&self) -> usize {
        self.length_cap
    }

    pub fn weight_cap(&self) -> Option<usize> {
        self.weight_cap
    }

    pub fn exponents(&self, i: usize) -> &[u32] {
        &self.monomials[i]
    }

    pub fn length(&self, i: usize) -> usize {
        self.monomials[i].iter().sum::<u32>() as usize
    }

    pub fn weight(&self, i: usize) -> usize {
        self.monomials[i].iter().zip(&self.weights).map(|(&e, &w)| e as usize * w).sum()
    }

    /// Basis index of a monomial, if it lies in the truncation.
    pub fn monomial_index(&self, exps: &[u32]) -> Option<usize> {
        self.index.get(exps).copied()
    }

    /// Basis index of generator `g` (when the caps allow length 1).
    pub fn generator(&self, g: usize) -> Option<usize> {
        let mut e = vec![0; self.generators.dim()];
        e[g] = 1;
        self.monomial_index(&e)
    }

    pub fn unit(&self) -> usize {
        0
    }

    fn multiply_monomials(&self, i: usize, j: usize) -> Option<(usize, S)> {
        let (a, b) = (&self.monomials[i], &self.monomials[j]);
        let mut swaps = 0usize;
        let mut odd_after = 0usize;
        // count odd letters of `a` strictly after each odd letter of `b`
        for g in (0..a.len()).rev() {
            let odd = is_odd(self.generators.degree(g));
            if odd && b[g] > 0 {
                swaps += odd_after;
            }
            if odd && a[g] > 0 {
                odd_after += 1;
            }
        }
        let mut e = a.clone();
        for g in 0..e.len() {
            e[g] += b[g];
            if e[g] > 1 && is_odd(self.generators.degree(g)) {
                return None;
            }
        }
        let k = self.monomial_index(&e)?;
        Some((k, S::sign(swaps % 2 == 1)))
    }

    pub fn mul(&self, a: &Vector<S>, b: &Vector<S>) -> Vector<S> {
        let mut out = Vector::new();
        for (i, ca) in a.iter() {
            for (j, cb) in b.iter() {
                if let Some(v) = self.products.get(&(*i, *j)) {
                    out.add_scaled(v, &(ca.clone() * cb.clone()));
                }
            }
        }
        out
    }

    /// First generator of a non-unit monomial and the rest: `m = g · m'`.
    pub fn split_first(&self, i: usize) -> Option<(usize, usize)> {
        let m = &self.monomials[i];
        let g = m.iter().position(|&e| e > 0)?;
        let mut rest = m.clone();
        rest[g] -= 1;
        Some((g, self.monomial_index(&rest).expect("shorter monomials are present")))
    }

    fn order_by_length(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.dim()).collect();
        order.sort_by_key(|&i| self.length(i));
        order
    }

    /// Extends generator values to a derivation of degree `shift` by
    /// `D(g·m') = D(g)·m' + (-1)^{shift·|g|} g·D(m')`.
    pub fn extend_derivation(&self, values: &[Vector<S>], shift: i64) -> Result<Vec<Vector<S>>> {
        if values.len() != self.generators.dim() {
            return Err(Error::DimensionMismatch("one value per generator required".into()));
        }
        for (g, v) in values.iter().enumerate() {
            if let Some(d) = homogeneous_degree(&self.space, v)? {
                if d != self.generators.degree(g) + shift {
                    return Err(Error::DegreeMismatch(format!(
                        "value on {} has degree {d}, expected {}",
                        self.generators.name(g),
                        self.generators.degree(g) + shift
                    )));
                }
            }
        }
        let mut columns = vec![Vector::new(); self.dim()];
        for i in self.order_by_length() {
            if let Some((g, rest)) = self.split_first(i) {
                let gv = Vector::unit(self.generator(g).expect("generator present"));
                let mut v = self.mul(&values[g], &Vector::unit(rest));
                let sign = S::sign(is_odd(shift) && is_odd(self.generators.degree(g)));
                v.add_scaled(&self.mul(&gv, &columns[rest]), &sign);
                columns[i] = v;
            }
        }
        Ok(columns)
    }

    /// The cdga with the derivation of degree -1 extending `values`.
    pub fn to_cdga(&self, values: &[Vector<S>]) -> Result<Cdga<S>> {
        let differential = self.extend_derivation(values, -1)?;
        Cdga::new(self.space.clone(), self.unit(), self.products.clone(), differential)
    }

    /// Columns of the unital algebra map to `target` with the given images
    /// of generators.
    pub fn extend_algebra_map(&self, values: &[Vector<S>], target: &Cdga<S>) -> Result<Vec<Vector<S>>> {
        if values.len() != self.generators.dim() {
            return Err(Error::DimensionMismatch("one image per generator required".into()));
        }
        let mut columns = vec![Vector::new(); self.dim()];
        for i in self.order_by_length() {
            columns[i] = match self.split_first(i) {
                None => target.unit_vector(),
                Some((g, rest)) => target.mul(&values[g], &columns[rest]),
            };
        }
        Ok(columns)
    }
}

#[allow(clippy::too_many_arguments)]
fn enumerate(
    generators: &GradedSpace,
    weights: &[usize],
    length_cap: usize,
    weight_cap: Option<usize>,
    g: usize,
    length: usize,
    weight: usize,
    exps: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    if g == exps.len() {
        out.push(exps.clone());
        return;
    }
    let max_e = if is_odd(generators.degree(g)) { 1 } else { u32::MAX };
    let mut e = 0u32;
    loop {
        let l = length + e as usize;
        let w = weight + e as usize * weights[g];
        if l > length_cap || weight_cap.is_some_and(|c| w > c) || e > max_e {
            break;
        }
        exps[g] = e;
        enumerate(generators, weights, length_cap, weight_cap, g + 1, l, w, exps, out);
        e += 1;
    }
    exps[g] = 0;
}

fn render(generators: &GradedSpace, m: &[u32]) -> String {
    let factors: Vec<String> = m
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(g, &e)| {
            if e == 1 {
                generators.name(g).to_string()
            } else {
                format!("{}^{e}", generators.name(g))
            }
        })
        .collect();
    if factors.is_empty() {
        "1".to_string()
    } else {
        factors.join("·")
    }
}
