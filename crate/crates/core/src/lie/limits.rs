use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use super::algebra::{CurvedLieAlgebra, LieBracket};
use super::morphism::CurvedMorphism;
use super::quotient::{quotient_by_ideal, quotient_by_subspace, subalgebra, Quotient, Subspace};
use crate::error::{Error, Result};
use crate::free_lie::FreeLieTruncation;
use crate::graded::{Field, GradedSpace, LinearMap, Vector};

/// A finite product with its strict projections.
#[derive(Clone, Debug)]
pub struct Product<S: Field> {
    pub algebra: Arc<CurvedLieAlgebra<S>>,
    pub projections: Vec<CurvedMorphism<S>>,
    offsets: Vec<usize>,
}

impl<S: Field> Product<S> {
    /// The map into the product induced by maps `X → g_i`.
    pub fn induced(&self, maps: &[CurvedMorphism<S>]) -> Result<CurvedMorphism<S>> {
        if maps.len() != self.projections.len() {
            return Err(Error::DimensionMismatch("one map per factor required".into()));
        }
        let source = maps.first().map(|m| m.source.clone()).unwrap_or_else(|| Arc::new(CurvedLieAlgebra::zero()));
        if maps.iter().any(|m| m.source != source) {
            return Err(Error::DimensionMismatch("maps into a product need a common source".into()));
        }
        let shift = |v: &Vector<S>, off: usize| v.map_keys(|&k| k + off);
        let mut columns = vec![Vector::new(); source.dim()];
        let mut alpha = Vector::new();
        for ((m, &off), p) in maps.iter().zip(&self.offsets).zip(&self.projections) {
            if m.target != p.target {
                return Err(Error::DimensionMismatch("map target differs from the factor".into()));
            }
            for (j, c) in m.map.columns.iter().enumerate() {
                columns[j].add(&shift(c, off));
            }
            alpha.add(&shift(&m.alpha, off));
        }
        CurvedMorphism::new(source, self.algebra.clone(), columns, alpha)
    }
}

/// Componentwise product. Basis names are kept when they are distinct
/// across factors, otherwise suffixed with `@i`.
pub fn product<S: Field>(factors: &[Arc<CurvedLieAlgebra<S>>]) -> Result<Product<S>> {
    let mut seen = HashSet::new();
    let unique = factors
        .iter()
        .flat_map(|g| g.space().basis().iter().map(|b| b.name.clone()))
        .all(|n| seen.insert(n));
    let mut names = Vec::new();
    let mut offsets = Vec::new();
    let mut offset = 0;
    for (i, g) in factors.iter().enumerate() {
        offsets.push(offset);
        for b in g.space().basis() {
            let name = if unique { b.name.clone() } else { format!("{}@{i}", b.name) };
            names.push((name, b.degree));
        }
        offset += g.dim();
    }
    let space = Arc::new(GradedSpace::new(names)?);
    let mut brackets = BTreeMap::new();
    let mut differential = Vec::new();
    let mut curvature = Vector::new();
    for (g, &off) in factors.iter().zip(&offsets) {
        let shift = |v: &Vector<S>| v.map_keys(|&k| k + off);
        for (&(i, j), v) in g.brackets() {
            brackets.insert((i + off, j + off), shift(v));
        }
        differential.extend(g.differential().iter().map(shift));
        curvature.add(&shift(g.curvature()));
    }
    let algebra = Arc::new(CurvedLieAlgebra::new(space.clone(), brackets, differential, curvature)?);
    let projections = factors
        .iter()
        .zip(&offsets)
        .map(|(g, &off)| {
            let columns = (0..space.dim())
                .map(|k| {
                    if k >= off && k < off + g.dim() {
                        Vector::unit(k - off)
                    } else {
                        Vector::new()
                    }
                })
                .collect();
            CurvedMorphism::new(algebra.clone(), g.clone(), columns, Vector::new())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Product { algebra, projections, offsets })
}

fn require_parallel<S: Field>(m1: &CurvedMorphism<S>, m2: &CurvedMorphism<S>) -> Result<()> {
    if m1.source != m2.source || m1.target != m2.target {
        return Err(Error::DimensionMismatch("the two morphisms are not parallel".into()));
    }
    Ok(())
}

/// Outcome of an equaliser: either a subalgebra with its strict inclusion,
/// or the formally adjoined initial object (when the constant terms differ,
/// no element has equal images).
#[derive(Clone, Debug)]
pub enum Equaliser<S: Field> {
    Initial,
    Sub {
        algebra: Arc<CurvedLieAlgebra<S>>,
        inclusion: CurvedMorphism<S>,
    },
}

impl<S: Field> Equaliser<S> {
    pub fn is_initial(&self) -> bool {
        matches!(self, Equaliser::Initial)
    }
}

/// The largest subspace of `{x : m1(x) = m2(x)}` closed under the
/// differential and the bracket, computed by iterating
/// `E ← E ∩ d⁻¹(E) ∩ {x : [x, E] ⊆ E}` to a fixpoint.
pub fn equaliser<S: Field>(m1: &CurvedMorphism<S>, m2: &CurvedMorphism<S>) -> Result<Equaliser<S>> {
    require_parallel(m1, m2)?;
    if m1.alpha != m2.alpha {
        return Ok(Equaliser::Initial);
    }
    let g = &m1.source;
    let diff = m1.map.sum(&m2.map.scaled(&-S::one()))?;
    let mut current = diff.kernel_vectors();
    loop {
        let space = Subspace::spanned_by(&current);
        // constraints: the image of x under d and under each ad_e must land in E
        let mut maps: Vec<Vec<Vector<S>>> = vec![current.iter().map(|v| g.d(v)).collect()];
        for e in &current {
            maps.push(current.iter().map(|v| g.bracket(v, e)).collect());
        }
        // x = Σ c_k current_k is kept iff every map(x) reduces to zero mod E
        let n = current.len();
        let mut constraint_columns: Vec<Vector<S>> = vec![Vector::new(); n];
        let mut offset = 0;
        for images in &maps {
            let residues: Vec<Vector<S>> = images.iter().map(|v| space.reduce(v)).collect();
            for k in 0..n {
                constraint_columns[k].add(&residues[k].map_keys(|&i| i + offset));
            }
            offset += g.dim();
        }
        let big = Arc::new(GradedSpace::new((0..offset).map(|i| (format!("c{i}"), 0)))?);
        let coeffs = Arc::new(GradedSpace::new((0..n).map(|i| (format!("k{i}"), 0)))?);
        let constraint = LinearMap { source: coeffs, target: big, shift: 0, columns: constraint_columns };
        let kept: Vec<Vector<S>> = constraint
            .kernel_vectors()
            .iter()
            .map(|c| c.combine(&current))
            .collect();
        if kept.len() == n {
            break;
        }
        current = kept;
    }
    let (algebra, inclusion) = subalgebra(g, &current)?;
    Ok(Equaliser::Sub { algebra, inclusion })
}

/// `h / ⟨f(e_i) - g(e_i), α - β⟩`, closed under brackets and `d`.
pub fn coequaliser<S: Field>(m1: &CurvedMorphism<S>, m2: &CurvedMorphism<S>) -> Result<Quotient<S>> {
    require_parallel(m1, m2)?;
    let mut generators: Vec<Vector<S>> = m1
        .map
        .columns
        .iter()
        .zip(&m2.map.columns)
        .map(|(a, b)| a.minus(b))
        .collect();
    generators.push(m1.alpha.minus(&m2.alpha));
    quotient_by_ideal(&m1.target, &generators)
}

/// The coproduct `g ⊔ h` at weight cap `N`: the free Lie algebra on the
/// letters of `g`, of `h` and one letter `x` of degree -1, modulo the
/// relations identifying letter brackets with the brackets of `g` and `h`
/// and everything of weight above `N`. Differential: `d_g` on `g`,
/// `d_h - ad_x` on `h`, `dx = ω_h - ω_g - ½[x,x]`; curvature `ω_g`.
#[derive(Clone, Debug)]
pub struct Coproduct<S: Field> {
    pub algebra: Arc<CurvedLieAlgebra<S>>,
    pub left: Arc<CurvedLieAlgebra<S>>,
    pub right: Arc<CurvedLieAlgebra<S>>,
    /// Strict inclusion of `g`.
    pub inclusion_left: CurvedMorphism<S>,
    /// `(ι_h, -x)`.
    pub inclusion_right: CurvedMorphism<S>,
    /// Index of `x` in the coproduct basis.
    pub x: usize,
    pub cap: usize,
    free: Arc<FreeLieTruncation<S>>,
    quotient: Quotient<S>,
}

impl<S: Field> Coproduct<S> {
    pub fn x_vector(&self) -> Vector<S> {
        Vector::unit(self.x)
    }

    /// Bracket length of the free monomial representing each basis vector.
    pub fn weights(&self) -> Vec<usize> {
        self.quotient.kept.iter().map(|&i| self.free.weight(i)).collect()
    }

    /// The map out of the coproduct induced by `(f_g, α): g → X` and
    /// `(f_h, β): h → X`: letters go to their images and `x ↦ α - β`.
    /// `X` must be nilpotent of class at most the cap for this to be well
    /// defined; the result is checked against the quotient relations.
    pub fn induced(&self, from_left: &CurvedMorphism<S>, from_right: &CurvedMorphism<S>) -> Result<CurvedMorphism<S>> {
        if from_left.source != self.left || from_right.source != self.right {
            return Err(Error::DimensionMismatch("maps must start at the two summands".into()));
        }
        if from_left.target != from_right.target {
            return Err(Error::DimensionMismatch("maps must share a target".into()));
        }
        let target = from_left.target.clone();
        let mut values: Vec<Vector<S>> = from_left.map.columns.clone();
        values.extend(from_right.map.columns.iter().cloned());
        values.push(from_left.alpha.minus(&from_right.alpha));
        let on_free = self.free.extend_lie_morphism(&values, &*target)?;
        for v in self.quotient.ideal.basis() {
            if !on_free.apply(&v).is_zero() {
                return Err(Error::Invalid(
                    "the target is not nilpotent enough for the truncated coproduct".into(),
                ));
            }
        }
        let columns = self.quotient.kept.iter().map(|&i| on_free.columns[i].clone()).collect();
        CurvedMorphism::new(self.algebra.clone(), target, columns, from_left.alpha.clone())
    }
}

fn unique_names(left: &GradedSpace, right: &GradedSpace) -> (Vec<String>, Vec<String>, String) {
    let l: HashSet<&str> = left.basis().iter().map(|b| b.name.as_str()).collect();
    let r: HashSet<&str> = right.basis().iter().map(|b| b.name.as_str()).collect();
    let clash = l.intersection(&r).next().is_some();
    let rename = |space: &GradedSpace, prefix: &str| -> Vec<String> {
        space
            .basis()
            .iter()
            .map(|b| if clash { format!("{prefix}.{}", b.name) } else { b.name.clone() })
            .collect()
    };
    let left_names = rename(left, "g");
    let right_names = rename(right, "h");
    let taken: HashSet<&String> = left_names.iter().chain(&right_names).collect();
    let mut x = "x".to_string();
    while taken.contains(&x) {
        x.push('\'');
    }
    (left_names, right_names, x)
}

pub fn coproduct<S: Field>(g: &Arc<CurvedLieAlgebra<S>>, h: &Arc<CurvedLieAlgebra<S>>, cap: usize) -> Result<Coproduct<S>> {
    if cap < 2 {
        return Err(Error::Cap(format!("the coproduct needs weight cap ≥ 2 to express dx, got {cap}")));
    }
    let (gn, hn, xn) = unique_names(g.space(), h.space());
    let letters: Vec<(String, i64)> = gn
        .iter()
        .zip(g.space().basis().iter().map(|b| b.degree))
        .chain(hn.iter().zip(h.space().basis().iter().map(|b| b.degree)))
        .map(|(n, d)| (n.clone(), d))
        .chain(std::iter::once((xn, -1)))
        .collect();
    let (ng, nh) = (g.dim(), h.dim());
    let free = Arc::new(FreeLieTruncation::new(Arc::new(GradedSpace::new(letters)?), cap)?);
    let letter = |k: usize| free.letter_vector(k);
    let letters_of = |v: &Vector<S>, offset: usize| v.map_keys(|&k| free.letter(k + offset));
    let from_g = |v: &Vector<S>| letters_of(v, 0);
    let from_h = |v: &Vector<S>| letters_of(v, ng);
    let x = letter(ng + nh);

    let mut values = Vec::with_capacity(ng + nh + 1);
    for i in 0..ng {
        values.push(from_g(&g.differential()[i]));
    }
    for i in 0..nh {
        let mut v = from_h(&h.differential()[i]);
        v.sub(&free.bracket(&x, &letter(ng + i)));
        values.push(v);
    }
    let mut dx = from_h(h.curvature());
    dx.sub(&from_g(g.curvature()));
    dx.add_scaled(&free.bracket(&x, &x), &-S::half());
    values.push(dx);
    let d = free.extend_derivation(&values, -1)?;
    let big = Arc::new(free.with_structure(&d, from_g(g.curvature()))?);

    let mut relations = Vec::new();
    for i in 0..ng {
        for j in i..ng {
            relations.push(free.bracket(&letter(i), &letter(j)).minus(&from_g(&g.bracket_basis(i, j))));
        }
    }
    for i in 0..nh {
        for j in i..nh {
            relations.push(free.bracket(&letter(ng + i), &letter(ng + j)).minus(&from_h(&h.bracket_basis(i, j))));
        }
    }
    // letters generate, so closing under ad of letters and d gives the ideal
    let ideal = closure_under_letters(&big, &free, &relations);
    let quotient = quotient_by_subspace(&big, ideal)?;
    let algebra = quotient.algebra.clone();
    let project = |v: &Vector<S>| quotient.project(v);
    let inclusion_left = CurvedMorphism::new(
        g.clone(),
        algebra.clone(),
        (0..ng).map(|i| project(&letter(i))).collect(),
        Vector::new(),
    )?;
    let x_image = project(&x);
    let inclusion_right = CurvedMorphism::new(
        h.clone(),
        algebra.clone(),
        (0..nh).map(|i| project(&letter(ng + i))).collect(),
        x_image.neg(),
    )?;
    let x_index = *x_image.first_key().expect("x survives the quotient");
    Ok(Coproduct {
        algebra,
        left: g.clone(),
        right: h.clone(),
        inclusion_left,
        inclusion_right,
        x: x_index,
        cap,
        free,
        quotient,
    })
}

fn closure_under_letters<S: Field>(
    big: &CurvedLieAlgebra<S>,
    free: &FreeLieTruncation<S>,
    relations: &[Vector<S>],
) -> Subspace<S> {
    let n_letters = free.generators().dim();
    let mut ideal = Subspace::new();
    let mut queue: std::collections::VecDeque<Vector<S>> = relations.iter().cloned().collect();
    while let Some(v) = queue.pop_front() {
        let v = ideal.reduce(&v);
        if v.is_zero() {
            continue;
        }
        ideal.insert(&v);
        queue.push_back(big.d(&v));
        for k in 0..n_letters {
            let b = free.bracket(&free.letter_vector(k), &v);
            if !b.is_zero() {
                queue.push_back(b);
            }
        }
    }
    ideal
}

/// The isomorphism `(f, -x'): g ⊔ h → h ⊔ g` fixing letters and sending
/// `x ↦ -x'`, together with its inverse computed the same way.
pub fn coproduct_symmetry<S: Field>(gh: &Coproduct<S>, hg: &Coproduct<S>) -> Result<(CurvedMorphism<S>, CurvedMorphism<S>)> {
    if gh.left != hg.right || gh.right != hg.left || gh.cap != hg.cap {
        return Err(Error::Invalid("coproducts must be g ⊔ h and h ⊔ g at the same cap".into()));
    }
    let forward = symmetry_map(gh, hg)?;
    let backward = symmetry_map(hg, gh)?;
    Ok((forward, backward))
}

fn symmetry_map<S: Field>(from: &Coproduct<S>, to: &Coproduct<S>) -> Result<CurvedMorphism<S>> {
    let x = to.x_vector().neg();
    // the inclusions g → to, h → to are strict letter maps plus (for the
    // second summand) the constant -x_to; composing gives the letter images
    let g_to = to.inclusion_right.map.columns.clone();
    let h_to = to.inclusion_left.map.columns.clone();
    let mut values = g_to;
    values.extend(h_to);
    values.push(x.clone());
    let on_free = from.free.extend_lie_morphism(&values, &*to.algebra)?;
    for v in from.quotient.ideal.basis() {
        if !on_free.apply(&v).is_zero() {
            return Err(Error::Invalid("symmetry does not descend to the quotient".into()));
        }
    }
    let columns = from.quotient.kept.iter().map(|&i| on_free.columns[i].clone()).collect();
    CurvedMorphism::new(from.algebra.clone(), to.algebra.clone(), columns, x)
}
