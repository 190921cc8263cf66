//! Weight-truncated free graded Lie algebras.
//!
//! The free Lie algebra on a graded generating set is realised inside the
//! tensor algebra: a Lie monomial expands to a combination of words via
//! `[a,b] = a⊗b - (-1)^{|a||b|} b⊗a`, and a basis is chosen by exact rank
//! computation on these expansions. Everything of weight above the cap is
//! dropped, so the truncation is the quotient `L / L_{>N}`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graded::element::homogeneous_degree;
use crate::graded::{is_odd, Echelon, Field, GradedSpace, LinearMap, SpaceRef, SparseVec, Vector};
use crate::lie::{CurvedLieAlgebra, LieBracket};

pub const DEFAULT_WEIGHT_CAP: usize = 4;
pub const MAX_WEIGHT_CAP: usize = 8;

/// A bracketing tree over generator indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LieMonomial {
    Letter(usize),
    Bracket(Box<LieMonomial>, Box<LieMonomial>),
}

impl LieMonomial {
    pub fn bracket(a: LieMonomial, b: LieMonomial) -> Self {
        LieMonomial::Bracket(Box::new(a), Box::new(b))
    }

    pub fn leaves(&self) -> usize {
        match self {
            LieMonomial::Letter(_) => 1,
            LieMonomial::Bracket(a, b) => a.leaves() + b.leaves(),
        }
    }

    pub fn weight(&self, generator_weights: &[usize]) -> usize {
        match self {
            LieMonomial::Letter(g) => generator_weights[*g],
            LieMonomial::Bracket(a, b) => a.weight(generator_weights) + b.weight(generator_weights),
        }
    }

    pub fn degree(&self, generators: &GradedSpace) -> i64 {
        match self {
            LieMonomial::Letter(g) => generators.degree(*g),
            LieMonomial::Bracket(a, b) => a.degree(generators) + b.degree(generators),
        }
    }

    pub fn render(&self, generators: &GradedSpace) -> String {
        match self {
            LieMonomial::Letter(g) => generators.name(*g).to_string(),
            LieMonomial::Bracket(a, b) => format!("[{},{}]", a.render(generators), b.render(generators)),
        }
    }

    /// Nested-array form: a letter is its name, a bracket `["[,]", a, b]`.
    pub fn to_json(&self, generators: &GradedSpace) -> Value {
        match self {
            LieMonomial::Letter(g) => Value::String(generators.name(*g).to_string()),
            LieMonomial::Bracket(a, b) => json!(["[,]", a.to_json(generators), b.to_json(generators)]),
        }
    }
}

type Word = Vec<u32>;
pub type TensorVec<S> = SparseVec<Word, S>;

fn commutator<S: Field>(a: &TensorVec<S>, deg_a: i64, b: &TensorVec<S>, deg_b: i64) -> TensorVec<S> {
    let mut out = TensorVec::new();
    let swap = -S::sign(is_odd(deg_a) && is_odd(deg_b));
    for (u, cu) in a.iter() {
        for (v, cv) in b.iter() {
            let c = cu.clone() * cv.clone();
            let mut uv = u.clone();
            uv.extend_from_slice(v);
            out.add_term(uv, c.clone());
            let mut vu = v.clone();
            vu.extend_from_slice(u);
            out.add_term(vu, c * swap.clone());
        }
    }
    out
}

fn is_lyndon(w: &[u32]) -> bool {
    (1..w.len()).all(|i| w < &w[i..])
}

/// Standard factorisation `w = uv` with `v` the longest proper Lyndon suffix.
fn standard_factorisation(w: &[u32]) -> (&[u32], &[u32]) {
    let i = (1..w.len()).find(|&i| is_lyndon(&w[i..])).expect("length ≥ 2");
    (&w[..i], &w[i..])
}

fn lyndon_words(letter_weights: &[usize], weight: usize) -> Vec<Word> {
    fn go(letter_weights: &[usize], remaining: usize, prefix: &mut Word, out: &mut Vec<Word>) {
        if remaining == 0 {
            if is_lyndon(prefix) {
                out.push(prefix.clone());
            }
            return;
        }
        for (g, &w) in letter_weights.iter().enumerate() {
            if w <= remaining {
                prefix.push(g as u32);
                go(letter_weights, remaining - w, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(letter_weights, weight, &mut Vec::new(), &mut out);
    out
}

fn lyndon_tree(w: &[u32]) -> LieMonomial {
    if w.len() == 1 {
        return LieMonomial::Letter(w[0] as usize);
    }
    let (u, v) = standard_factorisation(w);
    LieMonomial::bracket(lyndon_tree(u), lyndon_tree(v))
}

/// The free graded Lie algebra on `generators`, truncated at weight `N`.
#[derive(Clone, Debug)]
pub struct FreeLieTruncation<S: Field> {
    generators: SpaceRef,
    generator_weights: Vec<usize>,
    cap: usize,
    space: SpaceRef,
    monomials: Vec<LieMonomial>,
    weights: Vec<usize>,
    expansions: Vec<TensorVec<S>>,
    /// Coordinates of the two halves of each bracket monomial.
    children: Vec<Option<(Vector<S>, Vector<S>)>>,
    letters: Vec<Option<usize>>,
    pieces: BTreeMap<usize, Echelon<Word, S>>,
    brackets: BTreeMap<(usize, usize), Vector<S>>,
}

struct Builder<'a, S: Field> {
    generators: &'a GradedSpace,
    monomials: Vec<LieMonomial>,
    weights: Vec<usize>,
    expansions: Vec<TensorVec<S>>,
    pieces: BTreeMap<usize, Echelon<Word, S>>,
    memo: HashMap<LieMonomial, TensorVec<S>>,
}

impl<S: Field> Builder<'_, S> {
    fn expand(&mut self, m: &LieMonomial) -> TensorVec<S> {
        if let Some(e) = self.memo.get(m) {
            return e.clone();
        }
        let e = match m {
            LieMonomial::Letter(g) => TensorVec::unit(vec![*g as u32]),
            LieMonomial::Bracket(a, b) => {
                let ea = self.expand(a);
                let eb = self.expand(b);
                commutator(&ea, a.degree(self.generators), &eb, b.degree(self.generators))
            }
        };
        self.memo.insert(m.clone(), e.clone());
        e
    }

    fn offer(&mut self, m: LieMonomial, weight: usize) {
        let e = self.expand(&m);
        if e.is_zero() {
            return;
        }
        let piece = self.pieces.entry(weight).or_default();
        if piece.insert(&e, Vector::unit(self.monomials.len())).is_none() {
            self.monomials.push(m);
            self.weights.push(weight);
            self.expansions.push(e);
        }
    }
}

impl<S: Field> FreeLieTruncation<S> {
    /// All generators of weight 1.
    pub fn new(generators: SpaceRef, cap: usize) -> Result<Self> {
        let weights = vec![1; generators.dim()];
        Self::with_weights(generators, weights, cap)
    }

    pub fn with_weights(generators: SpaceRef, generator_weights: Vec<usize>, cap: usize) -> Result<Self> {
        if cap == 0 || cap > MAX_WEIGHT_CAP {
            return Err(Error::Cap(format!(
                "weight cap must lie in 1..={MAX_WEIGHT_CAP}, got {cap}"
            )));
        }
        if generator_weights.len() != generators.dim() || generator_weights.iter().any(|&w| w == 0) {
            return Err(Error::Invalid("one positive weight per generator required".into()));
        }
        let mut b = Builder {
            generators: &generators,
            monomials: Vec::new(),
            weights: Vec::new(),
            expansions: Vec::new(),
            pieces: BTreeMap::new(),
            memo: HashMap::new(),
        };
        for w in 1..=cap {
            for g in 0..generators.dim() {
                if generator_weights[g] == w {
                    b.offer(LieMonomial::Letter(g), w);
                }
            }
            for word in lyndon_words(&generator_weights, w) {
                if word.len() >= 2 {
                    b.offer(lyndon_tree(&word), w);
                }
            }
            if w % 2 == 0 {
                for word in lyndon_words(&generator_weights, w / 2) {
                    let t = lyndon_tree(&word);
                    if is_odd(t.degree(&generators)) {
                        b.offer(LieMonomial::bracket(t.clone(), t), w);
                    }
                }
            }
            // right-normed products [letter, basis] span everything of weight w
            for g in 0..generators.dim() {
                let gw = generator_weights[g];
                if gw >= w {
                    continue;
                }
                let lower: Vec<usize> = (0..b.monomials.len()).filter(|&i| b.weights[i] == w - gw).collect();
                for i in lower {
                    let m = LieMonomial::bracket(LieMonomial::Letter(g), b.monomials[i].clone());
                    b.offer(m, w);
                }
            }
        }
        let Builder { monomials, weights, expansions, pieces, memo, .. } = b;
        let space = Arc::new(GradedSpace::new(
            monomials.iter().map(|m| (m.render(&generators), m.degree(&generators))),
        )?);
        let mut letters = vec![None; generators.dim()];
        for (i, m) in monomials.iter().enumerate() {
            if let LieMonomial::Letter(g) = m {
                letters[*g] = Some(i);
            }
        }
        let mut t = FreeLieTruncation {
            generators,
            generator_weights,
            cap,
            space,
            monomials,
            weights,
            expansions,
            children: Vec::new(),
            letters,
            pieces,
            brackets: BTreeMap::new(),
        };
        let children = t
            .monomials
            .iter()
            .map(|m| match m {
                LieMonomial::Letter(_) => None,
                LieMonomial::Bracket(a, c) => {
                    let wa = a.weight(&t.generator_weights);
                    let wc = c.weight(&t.generator_weights);
                    let ca = t.coordinates(&memo[a.as_ref()], wa).expect("lower weights are complete");
                    let cc = t.coordinates(&memo[c.as_ref()], wc).expect("lower weights are complete");
                    Some((ca, cc))
                }
            })
            .collect();
        t.children = children;
        let n = t.monomials.len();
        let mut brackets = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                let w = t.weights[i] + t.weights[j];
                if w > cap {
                    continue;
                }
                let e = commutator(
                    &t.expansions[i],
                    t.space.degree(i),
                    &t.expansions[j],
                    t.space.degree(j),
                );
                let v = t.coordinates(&e, w).expect("brackets of Lie elements are Lie elements");
                if !v.is_zero() {
                    brackets.insert((i, j), v);
                }
            }
        }
        t.brackets = brackets;
        Ok(t)
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn generators(&self) -> &SpaceRef {
        &self.generators
    }

    pub fn generator_weights(&self) -> &[usize] {
        &self.generator_weights
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn monomial(&self, i: usize) -> &LieMonomial {
        &self.monomials[i]
    }

    pub fn monomials(&self) -> &[LieMonomial] {
        &self.monomials
    }

    pub fn weight(&self, i: usize) -> usize {
        self.weights[i]
    }

    pub fn weights(&self) -> &[usize] {
        &self.weights
    }

    /// Dimension of each weight `1..=N`.
    pub fn dims_by_weight(&self) -> Vec<usize> {
        (1..=self.cap).map(|w| self.weights.iter().filter(|&&x| x == w).count()).collect()
    }

    /// Basis index of generator `g`.
    pub fn letter(&self, g: usize) -> usize {
        self.letters[g].expect("generators are independent")
    }

    pub fn letter_vector(&self, g: usize) -> Vector<S> {
        Vector::unit(self.letter(g))
    }

    pub fn expansion(&self, i: usize) -> &TensorVec<S> {
        &self.expansions[i]
    }

    /// Tensor expansion of an element.
    pub fn expand(&self, v: &Vector<S>) -> TensorVec<S> {
        let mut out = TensorVec::new();
        for (i, c) in v.iter() {
            out.add_scaled(&self.expansions[*i], c);
        }
        out
    }

    /// Coordinates of a weight-`w` tensor lying in the Lie span.
    pub fn coordinates(&self, t: &TensorVec<S>, weight: usize) -> Option<Vector<S>> {
        if t.is_zero() {
            return Some(Vector::new());
        }
        let piece = self.pieces.get(&weight)?;
        let red = piece.reduce(t);
        red.residual.is_zero().then_some(red.coords)
    }

    /// Bracket of homogeneous elements.
    pub fn bracket_checked(&self, a: &Vector<S>, b: &Vector<S>) -> Result<Vector<S>> {
        homogeneous_degree(&self.space, a)?;
        homogeneous_degree(&self.space, b)?;
        Ok(self.bracket(a, b))
    }

    /// The truncation as a curved Lie algebra with zero differential.
    pub fn to_algebra(&self) -> CurvedLieAlgebra<S> {
        CurvedLieAlgebra::new(
            self.space.clone(),
            self.brackets.clone(),
            vec![Vector::new(); self.dim()],
            Vector::new(),
        )
        .expect("consistent table")
    }

    /// `(L, D, ω)` with `D` a derivation built by [`Self::extend_derivation`].
    pub fn with_structure(&self, differential: &LinearMap<S>, curvature: Vector<S>) -> Result<CurvedLieAlgebra<S>> {
        CurvedLieAlgebra::new(
            self.space.clone(),
            self.brackets.clone(),
            differential.columns.clone(),
            curvature,
        )
    }

    /// The unique derivation of degree `shift` with the given values on
    /// generators: `D[x,y] = [Dx,y] + (-1)^{shift·|x|}[x,Dy]`, computed by
    /// increasing weight. Values must not lower weight below the argument's
    /// for the result to descend to the truncation; components beyond the
    /// cap are dropped.
    pub fn extend_derivation(&self, values: &[Vector<S>], shift: i64) -> Result<LinearMap<S>> {
        if values.len() != self.generators.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} values for {} generators",
                values.len(),
                self.generators.dim()
            )));
        }
        for (g, v) in values.iter().enumerate() {
            if let Some(d) = homogeneous_degree(&self.space, v)? {
                let expected = self.generators.degree(g) + shift;
                if d != expected {
                    return Err(Error::DegreeMismatch(format!(
                        "value on {} has degree {d}, expected {expected}",
                        self.generators.name(g)
                    )));
                }
            }
        }
        let mut columns: Vec<Vector<S>> = vec![Vector::new(); self.dim()];
        for i in self.order_by_weight() {
            columns[i] = match (&self.monomials[i], &self.children[i]) {
                (LieMonomial::Letter(g), _) => values[*g].clone(),
                (_, Some((a, b))) => {
                    let da = a.combine(&columns);
                    let db = b.combine(&columns);
                    let deg_a = homogeneous_degree(&self.space, a)?.unwrap_or(0);
                    let mut v = self.bracket(&da, b);
                    v.add_scaled(&self.bracket(a, &db), &S::sign(is_odd(shift) && is_odd(deg_a)));
                    v
                }
                _ => unreachable!("bracket monomials have children"),
            };
        }
        LinearMap::new(self.space.clone(), self.space.clone(), shift, columns)
    }

    /// The Lie morphism with the given generator images, into any algebra.
    pub fn extend_lie_morphism<L: LieBracket<S>>(&self, values: &[Vector<S>], target: &L) -> Result<LinearMap<S>> {
        if values.len() != self.generators.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} values for {} generators",
                values.len(),
                self.generators.dim()
            )));
        }
        for (g, v) in values.iter().enumerate() {
            if let Some(d) = homogeneous_degree(target.space(), v)? {
                if d != self.generators.degree(g) {
                    return Err(Error::DegreeMismatch(format!(
                        "image of {} has degree {d}, expected {}",
                        self.generators.name(g),
                        self.generators.degree(g)
                    )));
                }
            }
        }
        let mut columns: Vec<Vector<S>> = vec![Vector::new(); self.dim()];
        for i in self.order_by_weight() {
            columns[i] = match (&self.monomials[i], &self.children[i]) {
                (LieMonomial::Letter(g), _) => values[*g].clone(),
                (_, Some((a, b))) => target.bracket(&a.combine(&columns), &b.combine(&columns)),
                _ => unreachable!("bracket monomials have children"),
            };
        }
        LinearMap::new(self.space.clone(), target.space().clone(), 0, columns)
    }

    fn order_by_weight(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.dim()).collect();
        order.sort_by_key(|&i| self.weights[i]);
        order
    }

    pub fn to_json(&self) -> Value {
        let generators: Vec<Value> = self
            .generators
            .basis()
            .iter()
            .zip(&self.generator_weights)
            .map(|(b, w)| json!({"name": b.name, "degree": b.degree, "weight": w}))
            .collect();
        let basis: Vec<Value> = self
            .monomials
            .iter()
            .enumerate()
            .map(|(i, m)| {
                json!({
                    "monomial": m.to_json(&self.generators),
                    "weight": self.weights[i],
                    "degree": self.space.degree(i),
                })
            })
            .collect();
        json!({"kind": "free_lie", "generators": generators, "cap": self.cap, "basis": basis})
    }
}

impl<S: Field> LieBracket<S> for FreeLieTruncation<S> {
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

impl<S: Field> fmt::Display for FreeLieTruncation<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "free Lie algebra on {} generator(s), weight ≤ {}, dims {:?}", self.generators.dim(), self.cap, self.dims_by_weight())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn gens(names: &[(&str, i64)]) -> SpaceRef {
        Arc::new(GradedSpace::new(names.iter().map(|(n, d)| (n.to_string(), *d))).unwrap())
    }

    #[test]
    fn one_even_generator() {
        let t = FreeLieTruncation::<Q>::new(gens(&[("c", 0)]), 3).unwrap();
        assert_eq!(t.dims_by_weight(), vec![1, 0, 0]);
        assert!(t.bracket(&t.letter_vector(0), &t.letter_vector(0)).is_zero());
    }

    #[test]
    fn one_odd_generator() {
        let t = FreeLieTruncation::<Q>::new(gens(&[("v", -1)]), 3).unwrap();
        assert_eq!(t.dims_by_weight(), vec![1, 1, 0]);
        let v = t.letter_vector(0);
        let vv = t.bracket(&v, &v);
        assert_eq!(t.space().name(*vv.first_key().unwrap()), "[v,v]");
        assert_eq!(vv.coeff(vv.first_key().unwrap()), Q::from_i64(1));
        assert!(t.bracket(&v, &vv).is_zero());
    }

    #[test]
    fn two_even_generators_give_witt_numbers() {
        let t = FreeLieTruncation::<Q>::new(gens(&[("a", 0), ("b", 0)]), 3).unwrap();
        assert_eq!(t.dims_by_weight(), vec![2, 1, 2]);
    }

    #[test]
    fn cap_is_bounded() {
        assert!(matches!(FreeLieTruncation::<Q>::new(gens(&[("a", 0)]), 9), Err(Error::Cap(_))));
        assert!(matches!(FreeLieTruncation::<Q>::new(gens(&[("a", 0)]), 0), Err(Error::Cap(_))));
    }

    #[test]
    fn derivation_examples() {
        let t = FreeLieTruncation::<Q>::new(gens(&[("v", -1)]), 3).unwrap();
        let v = t.letter_vector(0);
        let d = t.extend_derivation(&[t.bracket(&v, &v)], -1).unwrap();
        assert!(d.apply(&t.bracket(&v, &v)).is_zero());

        let t = FreeLieTruncation::<Q>::new(gens(&[("x", 0), ("y", 0)]), 3).unwrap();
        let (x, y) = (t.letter_vector(0), t.letter_vector(1));
        let d = t.extend_derivation(&[y.clone(), Vector::new()], 0).unwrap();
        assert!(d.apply(&t.bracket(&x, &x)).is_zero());
        assert!(d.apply(&t.bracket(&x, &y)).is_zero());
        let zero = t.extend_derivation(&[Vector::new(), Vector::new()], 0).unwrap();
        assert!(zero.is_zero());
    }

    #[test]
    fn identity_extends_to_identity() {
        let t = FreeLieTruncation::<Q>::new(gens(&[("a", 0), ("v", -1)]), 4).unwrap();
        let values: Vec<Vector<Q>> = (0..2).map(|g| t.letter_vector(g)).collect();
        let f = t.extend_lie_morphism(&values, &t).unwrap();
        assert_eq!(f, LinearMap::identity(t.space().clone()));
    }

    #[test]
    fn jacobi_on_weight_three() {
        let t = FreeLieTruncation::<Q>::new(gens(&[("a", 0), ("b", 0)]), 3).unwrap();
        let (a, b) = (t.letter_vector(0), t.letter_vector(1));
        let mut sum = t.bracket(&a, &t.bracket(&b, &a));
        sum.add(&t.bracket(&b, &t.bracket(&a, &a)));
        sum.add(&t.bracket(&a, &t.bracket(&a, &b)));
        assert!(sum.is_zero());
        assert!(!t.bracket(&t.bracket(&a, &b), &a).is_zero());
    }

    #[test]
    fn json_export_nests_brackets() {
        let t = FreeLieTruncation::<Q>::new(gens(&[("v", -1)]), 2).unwrap();
        let j = t.to_json();
        assert_eq!(j["basis"][1]["monomial"], json!(["[,]", "v", "v"]));
    }
}
