//! JSON descriptions of curved Lie algebras, cdgas and morphisms.
//!
//! Scalars are strings `"p/q"` or `"p"` (plain JSON integers are accepted
//! on input). Curved Lie algebras use homological degrees; cdga files use
//! cohomological degrees, negated on ingestion and on output.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cdga::{Cdga, CdgaMorphism};
use crate::error::{Error, Result};
use crate::graded::{is_odd, Field, GradedSpace, LinearMap, SpaceRef, Vector};
use crate::lie::{CurvedLieAlgebra, CurvedMorphism};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Text(String),
    Int(i64),
}

pub type Terms = Vec<(String, Coeff)>;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisEntry {
    pub name: String,
    pub degree: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairEntry {
    pub left: String,
    pub right: String,
    pub value: Terms,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValueEntry {
    pub on: String,
    pub value: Terms,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurvedLieJson {
    pub kind: String,
    pub basis: Vec<BasisEntry>,
    #[serde(default)]
    pub brackets: Vec<PairEntry>,
    #[serde(default)]
    pub differential: Vec<ValueEntry>,
    #[serde(default)]
    pub curvature: Terms,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CdgaJson {
    pub kind: String,
    pub basis: Vec<BasisEntry>,
    pub unit: String,
    #[serde(default)]
    pub products: Vec<PairEntry>,
    #[serde(default)]
    pub differential: Vec<ValueEntry>,
}

/// A curved morphism `(f, α)` or a cdga map (`alpha` absent). Basis
/// vectors of the source missing from `map` go to zero.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismJson {
    pub kind: String,
    pub map: Vec<ValueEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Terms>,
}

pub const CURVED_LIE: &str = "curved_lie";
pub const CDGA: &str = "cdga";
pub const CURVED_MORPHISM: &str = "curved_morphism";
pub const CDGA_MORPHISM: &str = "cdga_morphism";

fn parse_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

fn check_kind(found: &str, expected: &str) -> Result<()> {
    if found != expected {
        return Err(Error::Parse(format!("field `kind`: expected \"{expected}\", found \"{found}\"")));
    }
    Ok(())
}

fn scalar<S: Field>(c: &Coeff, context: &str) -> Result<S> {
    match c {
        Coeff::Int(n) => Ok(S::from_i64(*n)),
        Coeff::Text(t) => S::parse_rational(t)
            .ok_or_else(|| Error::Parse(format!("{context}: bad coefficient \"{t}\""))),
    }
}

pub fn terms_to_vector<S: Field>(space: &GradedSpace, terms: &Terms, context: &str) -> Result<Vector<S>> {
    let mut v = Vector::new();
    for (name, c) in terms {
        let i = space
            .lookup(name)
            .map_err(|_| Error::UnknownBasisName(format!("{name}` in `{context}")))?;
        v.add_term(i, scalar(c, context)?);
    }
    Ok(v)
}

pub fn vector_to_terms<S: Field>(space: &GradedSpace, v: &Vector<S>) -> Terms {
    v.iter()
        .map(|(i, c)| (space.name(*i).to_string(), Coeff::Text(c.to_rational_string())))
        .collect()
}

fn space_of(basis: &[BasisEntry], negate: bool) -> Result<SpaceRef> {
    let sign = if negate { -1 } else { 1 };
    Ok(Arc::new(GradedSpace::new(basis.iter().map(|b| (b.name.clone(), sign * b.degree)))?))
}

fn basis_of(space: &GradedSpace, negate: bool) -> Vec<BasisEntry> {
    let sign = if negate { -1 } else { 1 };
    space
        .basis()
        .iter()
        .map(|b| BasisEntry { name: b.name.clone(), degree: sign * b.degree })
        .collect()
}

fn pairs<S: Field>(space: &SpaceRef, entries: &[PairEntry], what: &str) -> Result<BTreeMap<(usize, usize), Vector<S>>> {
    let mut out = BTreeMap::new();
    for e in entries {
        let context = format!("{what}[{},{}]", e.left, e.right);
        let key = (
            space.lookup(&e.left).map_err(|_| Error::UnknownBasisName(format!("{}` in `{what}", e.left)))?,
            space.lookup(&e.right).map_err(|_| Error::UnknownBasisName(format!("{}` in `{what}", e.right)))?,
        );
        if out.insert(key, terms_to_vector(space, &e.value, &context)?).is_some() {
            return Err(Error::Parse(format!("{context} given twice")));
        }
    }
    Ok(out)
}

fn values<S: Field>(source: &SpaceRef, target: &GradedSpace, entries: &[ValueEntry], what: &str) -> Result<Vec<Vector<S>>> {
    let mut out = vec![Vector::new(); source.dim()];
    let mut seen = vec![false; source.dim()];
    for e in entries {
        let i = source
            .lookup(&e.on)
            .map_err(|_| Error::UnknownBasisName(format!("{}` in `{what}", e.on)))?;
        if std::mem::replace(&mut seen[i], true) {
            return Err(Error::Parse(format!("{what}({}) given twice", e.on)));
        }
        out[i] = terms_to_vector(target, &e.value, &format!("{what}({})", e.on))?;
    }
    Ok(out)
}

fn value_entries<S: Field>(source: &GradedSpace, target: &GradedSpace, columns: &[Vector<S>]) -> Vec<ValueEntry> {
    columns
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| ValueEntry { on: source.name(i).to_string(), value: vector_to_terms(target, v) })
        .collect()
}

pub fn curved_lie_from_json<S: Field>(text: &str) -> Result<CurvedLieAlgebra<S>> {
    let j: CurvedLieJson = parse_json(text)?;
    check_kind(&j.kind, CURVED_LIE)?;
    let space = space_of(&j.basis, false)?;
    let brackets = pairs(&space, &j.brackets, "brackets")?;
    let differential = values(&space, &space, &j.differential, "differential")?;
    let curvature = terms_to_vector(&space, &j.curvature, "curvature")?;
    CurvedLieAlgebra::with_antisymmetric_completion(space, brackets, differential, curvature)
}

/// Brackets are written for `left ≤ right` in basis order, plus any
/// reverse entry that is not the antisymmetric completion.
pub fn curved_lie_to_json<S: Field>(g: &CurvedLieAlgebra<S>) -> CurvedLieJson {
    let space = g.space();
    let mut brackets = Vec::new();
    for (&(i, j), v) in g.brackets() {
        let keep = i <= j || {
            let sign = -S::sign(is_odd(space.degree(i)) && is_odd(space.degree(j)));
            g.brackets().get(&(j, i)).map(|w| w.scaled(&sign)) != Some(v.clone())
        };
        if keep {
            brackets.push(PairEntry {
                left: space.name(i).to_string(),
                right: space.name(j).to_string(),
                value: vector_to_terms(space, v),
            });
        }
    }
    CurvedLieJson {
        kind: CURVED_LIE.into(),
        basis: basis_of(space, false),
        brackets,
        differential: value_entries(space, space, g.differential()),
        curvature: vector_to_terms(space, g.curvature()),
    }
}

pub fn cdga_from_json<S: Field>(text: &str) -> Result<Cdga<S>> {
    let j: CdgaJson = parse_json(text)?;
    check_kind(&j.kind, CDGA)?;
    let space = space_of(&j.basis, true)?;
    let unit = space
        .lookup(&j.unit)
        .map_err(|_| Error::UnknownBasisName(format!("{}` in `unit", j.unit)))?;
    let products = pairs(&space, &j.products, "products")?;
    let differential = values(&space, &space, &j.differential, "differential")?;
    Cdga::new(space, unit, products, differential)
}

/// Products are written for non-unit pairs `left ≤ right`.
pub fn cdga_to_json<S: Field>(a: &Cdga<S>) -> CdgaJson {
    let space = a.space();
    let products = a
        .products()
        .iter()
        .filter(|(&(i, j), _)| i <= j && i != a.unit() && j != a.unit())
        .map(|(&(i, j), v)| PairEntry {
            left: space.name(i).to_string(),
            right: space.name(j).to_string(),
            value: vector_to_terms(space, v),
        })
        .collect();
    CdgaJson {
        kind: CDGA.into(),
        basis: basis_of(space, true),
        unit: space.name(a.unit()).to_string(),
        products,
        differential: value_entries(space, space, a.differential()),
    }
}

pub fn curved_morphism_from_json<S: Field>(
    text: &str,
    source: &Arc<CurvedLieAlgebra<S>>,
    target: &Arc<CurvedLieAlgebra<S>>,
) -> Result<CurvedMorphism<S>> {
    let j: MorphismJson = parse_json(text)?;
    check_kind(&j.kind, CURVED_MORPHISM)?;
    let columns = values(source.space(), target.space(), &j.map, "map")?;
    let alpha = terms_to_vector(target.space(), &j.alpha.unwrap_or_default(), "alpha")?;
    let map = LinearMap::new(source.space().clone(), target.space().clone(), 0, columns)?;
    Ok(CurvedMorphism { source: source.clone(), target: target.clone(), map, alpha })
}

pub fn curved_morphism_to_json<S: Field>(m: &CurvedMorphism<S>) -> MorphismJson {
    MorphismJson {
        kind: CURVED_MORPHISM.into(),
        map: value_entries(m.source.space(), m.target.space(), &m.map.columns),
        alpha: Some(vector_to_terms(m.target.space(), &m.alpha)),
    }
}

pub fn cdga_morphism_from_json<S: Field>(
    text: &str,
    source: &Arc<Cdga<S>>,
    target: &Arc<Cdga<S>>,
) -> Result<CdgaMorphism<S>> {
    let j: MorphismJson = parse_json(text)?;
    check_kind(&j.kind, CDGA_MORPHISM)?;
    if j.alpha.is_some() {
        return Err(Error::Parse("a cdga map has no field `alpha`".into()));
    }
    let columns = values(source.space(), target.space(), &j.map, "map")?;
    CdgaMorphism::new(source.clone(), target.clone(), columns)
}

pub fn cdga_morphism_to_json<S: Field>(f: &CdgaMorphism<S>) -> MorphismJson {
    MorphismJson {
        kind: CDGA_MORPHISM.into(),
        map: value_entries(f.source.space(), f.target.space(), &f.map.columns),
        alpha: None,
    }
}

/// The `kind` field of a JSON document, if present.
pub fn kind_of(text: &str) -> Result<String> {
    #[derive(Deserialize)]
    struct Kind {
        kind: String,
    }
    Ok(parse_json::<Kind>(text)?.kind)
}

pub fn to_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}
