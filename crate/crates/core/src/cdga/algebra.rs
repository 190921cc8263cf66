use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graded::element::{format_vector, homogeneous_degree};
use crate::graded::{is_odd, Element, Field, GradedSpace, LinearMap, SpaceRef, Vector};

/// A finite-dimensional unital commutative dg algebra, stored with
/// homological degrees (`A_i = A^{-i}`), so `d` has degree -1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cdga<S: Field> {
    space: SpaceRef,
    unit: usize,
    products: BTreeMap<(usize, usize), Vector<S>>,
    differential: Vec<Vector<S>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CdgaAxiom {
    Degree,
    Unit,
    Associativity,
    Commutativity,
    /// `d∘d = 0`.
    DSquare,
    /// `d(ab) = (da)b + (-1)^{|a|} a(db)`.
    Leibniz,
}

impl fmt::Display for CdgaAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CdgaAxiom::Degree => "degree",
            CdgaAxiom::Unit => "unit",
            CdgaAxiom::Associativity => "associativity",
            CdgaAxiom::Commutativity => "graded commutativity",
            CdgaAxiom::DSquare => "d^2 = 0",
            CdgaAxiom::Leibniz => "leibniz",
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CdgaReport {
    pub failures: Vec<(CdgaAxiom, Vec<String>, String)>,
}

impl CdgaReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failed(&self, axiom: CdgaAxiom) -> bool {
        self.failures.iter().any(|(a, _, _)| *a == axiom)
    }

    fn record(&mut self, axiom: CdgaAxiom, witness: Vec<String>, detail: String) {
        if !self.failed(axiom) {
            self.failures.push((axiom, witness, detail));
        }
    }
}

impl fmt::Display for CdgaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "all axioms hold");
        }
        let lines: Vec<String> = self
            .failures
            .iter()
            .map(|(a, w, d)| format!("FAILED {a} at ({}): {d}", w.join(", ")))
            .collect();
        f.write_str(&lines.join("\n"))
    }
}

impl<S: Field> Cdga<S> {
    /// Builds an algebra from a product table. Products with the unit are
    /// filled in, and each missing `b·a` is completed from `a·b` by graded
    /// commutativity.
    pub fn new(
        space: SpaceRef,
        unit: usize,
        entries: BTreeMap<(usize, usize), Vector<S>>,
        differential: Vec<Vector<S>>,
    ) -> Result<Self> {
        let n = space.dim();
        if unit >= n {
            return Err(Error::DimensionMismatch("unit index beyond the basis".into()));
        }
        if differential.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "differential has {} columns for dimension {n}",
                differential.len()
            )));
        }
        let out_of_range = |v: &Vector<S>| v.keys().any(|&k| k >= n);
        if entries.iter().any(|(&(i, j), v)| i >= n || j >= n || out_of_range(v))
            || differential.iter().any(out_of_range)
        {
            return Err(Error::DimensionMismatch("index beyond the basis".into()));
        }
        let mut products = entries.clone();
        for (&(i, j), v) in &entries {
            if !entries.contains_key(&(j, i)) {
                let sign = S::sign(is_odd(space.degree(i)) && is_odd(space.degree(j)));
                products.insert((j, i), v.scaled(&sign));
            }
        }
        for i in 0..n {
            products.entry((unit, i)).or_insert_with(|| Vector::unit(i));
            products.entry((i, unit)).or_insert_with(|| Vector::unit(i));
        }
        products.retain(|_, v| !v.is_zero());
        Ok(Cdga { space, unit, products, differential })
    }

    /// Builds from names (homological degrees), values in the compact
    /// element syntax.
    pub fn from_tables(
        basis: &[(&str, i64)],
        unit: &str,
        products: &[(&str, &str, &str)],
        differential: &[(&str, &str)],
    ) -> Result<Self> {
        let space: SpaceRef = Arc::new(GradedSpace::new(basis.iter().map(|(n, d)| (n.to_string(), *d)))?);
        let parse = |t: &str| -> Result<Vector<S>> { Ok(Element::parse(space.clone(), t)?.coeffs) };
        let mut entries = BTreeMap::new();
        for (a, b, v) in products {
            entries.insert((space.lookup(a)?, space.lookup(b)?), parse(v)?);
        }
        let mut d = vec![Vector::new(); space.dim()];
        for (on, v) in differential {
            d[space.lookup(on)?] = parse(v)?;
        }
        let unit = space.lookup(unit)?;
        Self::new(space, unit, entries, d)
    }

    /// The ground field `k`, with unit named `1`.
    pub fn ground() -> Self {
        Self::new(Arc::new(GradedSpace::ground("1")), 0, BTreeMap::new(), vec![Vector::new()])
            .expect("one-dimensional")
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

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn unit_vector(&self) -> Vector<S> {
        Vector::unit(self.unit)
    }

    pub fn products(&self) -> &BTreeMap<(usize, usize), Vector<S>> {
        &self.products
    }

    pub fn differential(&self) -> &[Vector<S>] {
        &self.differential
    }

    pub fn product_basis(&self, i: usize, j: usize) -> Vector<S> {
        self.products.get(&(i, j)).cloned().unwrap_or_default()
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

    pub fn format(&self, v: &Vector<S>) -> String {
        format_vector(&self.space, v)
    }

    pub fn parse_element(&self, text: &str) -> Result<Vector<S>> {
        Ok(Element::parse(self.space.clone(), text)?.coeffs)
    }

    pub fn degree_of(&self, v: &Vector<S>) -> Result<Option<i64>> {
        homogeneous_degree(&self.space, v)
    }

    pub fn with_differential(&self, differential: Vec<Vector<S>>) -> Self {
        Cdga { differential, ..self.clone() }
    }

    pub fn validate(&self) -> CdgaReport {
        let mut report = CdgaReport::default();
        let n = self.dim();
        let name = |i: usize| self.space.name(i).to_string();
        let deg = |i: usize| self.degree(i);
        let wrong = |v: &Vector<S>, expected: i64| v.keys().any(|&k| deg(k) != expected);

        if deg(self.unit) != 0 {
            report.record(CdgaAxiom::Degree, vec![name(self.unit)], "unit must have degree 0".into());
        }
        for (&(i, j), v) in &self.products {
            if wrong(v, deg(i) + deg(j)) {
                report.record(CdgaAxiom::Degree, vec![name(i), name(j)], "product has the wrong degree".into());
            }
        }
        for i in 0..n {
            if wrong(&self.differential[i], deg(i) - 1) {
                report.record(CdgaAxiom::Degree, vec![name(i)], "differential has the wrong degree".into());
            }
        }
        for i in 0..n {
            let e = Vector::unit(i);
            if self.product_basis(self.unit, i) != e || self.product_basis(i, self.unit) != e {
                report.record(CdgaAxiom::Unit, vec![name(i)], "1·a = a·1 = a fails".into());
            }
        }
        if !self.differential[self.unit].is_zero() {
            report.record(CdgaAxiom::Unit, vec![name(self.unit)], "d(1) ≠ 0".into());
        }
        for i in 0..n {
            for j in 0..n {
                let sign = S::sign(is_odd(deg(i)) && is_odd(deg(j)));
                if self.product_basis(i, j) != self.product_basis(j, i).scaled(&sign) {
                    report.record(CdgaAxiom::Commutativity, vec![name(i), name(j)], "ab ≠ ±ba".into());
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = self.product_basis(i, j);
                for k in 0..n {
                    let lhs = self.mul(&ij, &Vector::unit(k));
                    let rhs = self.mul(&Vector::unit(i), &self.product_basis(j, k));
                    if lhs != rhs {
                        report.record(
                            CdgaAxiom::Associativity,
                            vec![name(i), name(j), name(k)],
                            format!("(ab)c - a(bc) = {}", self.format(&lhs.minus(&rhs))),
                        );
                    }
                }
            }
        }
        for i in 0..n {
            let dd = self.d(&self.differential[i]);
            if !dd.is_zero() {
                report.record(CdgaAxiom::DSquare, vec![name(i)], format!("d(d a) = {}", self.format(&dd)));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let lhs = self.d(&self.product_basis(i, j));
                let mut rhs = self.mul(&self.differential[i], &Vector::unit(j));
                rhs.add_scaled(&self.mul(&Vector::unit(i), &self.differential[j]), &S::sign(is_odd(deg(i))));
                if lhs != rhs {
                    report.record(
                        CdgaAxiom::Leibniz,
                        vec![name(i), name(j)],
                        format!("d(ab) - (da)b ∓ a(db) = {}", self.format(&lhs.minus(&rhs))),
                    );
                }
            }
        }
        report
    }
}

impl<S: Field> fmt::Display for Cdga<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "basis (homological degrees), unit {}:", self.space.name(self.unit))?;
        for b in self.space.basis() {
            writeln!(f, "  {} : {}", b.name, b.degree)?;
        }
        for (&(i, j), v) in &self.products {
            if i <= j && i != self.unit && j != self.unit {
                writeln!(f, "  {} · {} = {}", self.space.name(i), self.space.name(j), self.format(v))?;
            }
        }
        for (i, v) in self.differential.iter().enumerate() {
            if !v.is_zero() {
                writeln!(f, "  d {} = {}", self.space.name(i), self.format(v))?;
            }
        }
        Ok(())
    }
}

/// A degree-0 map of cdgas, stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CdgaMorphism<S: Field> {
    pub source: Arc<Cdga<S>>,
    pub target: Arc<Cdga<S>>,
    pub map: LinearMap<S>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CdgaMorphismAxiom {
    Degree,
    Unit,
    Multiplicative,
    ChainMap,
}

impl fmt::Display for CdgaMorphismAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CdgaMorphismAxiom::Degree => "degree",
            CdgaMorphismAxiom::Unit => "unit",
            CdgaMorphismAxiom::Multiplicative => "multiplicativity",
            CdgaMorphismAxiom::ChainMap => "chain map",
        })
    }
}

impl<S: Field> CdgaMorphism<S> {
    pub fn new(source: Arc<Cdga<S>>, target: Arc<Cdga<S>>, columns: Vec<Vector<S>>) -> Result<Self> {
        let map = LinearMap::new(source.space().clone(), target.space().clone(), 0, columns)?;
        Ok(CdgaMorphism { source, target, map })
    }

    pub fn identity(a: Arc<Cdga<S>>) -> Self {
        CdgaMorphism { map: LinearMap::identity(a.space().clone()), source: a.clone(), target: a }
    }

    pub fn apply(&self, v: &Vector<S>) -> Vector<S> {
        self.map.apply(v)
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &CdgaMorphism<S>) -> Result<CdgaMorphism<S>> {
        if first.target != self.source {
            return Err(Error::DimensionMismatch("cdga maps are not composable".into()));
        }
        Ok(CdgaMorphism {
            source: first.source.clone(),
            target: self.target.clone(),
            map: self.map.compose(&first.map)?,
        })
    }

    /// Failed axioms with a witness; empty when the map is a dg-algebra map.
    pub fn check(&self) -> Vec<(CdgaMorphismAxiom, String)> {
        self.check_pairs(|_, _| true)
    }

    /// As [`Self::check`], testing multiplicativity only on the basis pairs
    /// accepted by `pair_ok`.
    pub fn check_pairs(&self, pair_ok: impl Fn(usize, usize) -> bool) -> Vec<(CdgaMorphismAxiom, String)> {
        let (a, b) = (&*self.source, &*self.target);
        let mut out = Vec::new();
        if let Some((j, _)) = self.map.degree_violation() {
            out.push((CdgaMorphismAxiom::Degree, a.space().name(j).to_string()));
        }
        if self.apply(&a.unit_vector()) != b.unit_vector() {
            out.push((CdgaMorphismAxiom::Unit, a.space().name(a.unit()).to_string()));
        }
        'mult: for i in 0..a.dim() {
            for j in 0..a.dim() {
                if !pair_ok(i, j) {
                    continue;
                }
                let lhs = self.apply(&a.product_basis(i, j));
                let rhs = b.mul(&self.map.columns[i], &self.map.columns[j]);
                if lhs != rhs {
                    out.push((
                        CdgaMorphismAxiom::Multiplicative,
                        format!("{}, {}", a.space().name(i), a.space().name(j)),
                    ));
                    break 'mult;
                }
            }
        }
        for i in 0..a.dim() {
            if b.d(&self.map.columns[i]) != self.apply(&a.differential()[i]) {
                out.push((CdgaMorphismAxiom::ChainMap, a.space().name(i).to_string()));
                break;
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.check().is_empty()
    }
}
