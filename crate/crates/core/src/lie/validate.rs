use std::fmt;

use super::algebra::{CurvedLieAlgebra, LieBracket};
use crate::graded::{is_odd, Field, Vector};

/// Which defining identity failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    /// Bracket of degree 0, differential of degree -1, curvature of degree -2.
    Degree,
    Antisymmetry,
    Jacobi,
    /// `d[x,y] = [dx,y] + (-1)^{|x|}[x,dy]`.
    Leibniz,
    /// `d(d(x)) = [ω, x]`.
    CurvatureSquare,
    /// `dω = 0`.
    ClosedCurvature,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Degree => "degree",
            Axiom::Antisymmetry => "antisymmetry",
            Axiom::Jacobi => "jacobi",
            Axiom::Leibniz => "leibniz",
            Axiom::CurvatureSquare => "d^2 = ad_curvature",
            Axiom::ClosedCurvature => "d(curvature) = 0",
        };
        f.write_str(s)
    }
}

/// One failed axiom with the first witness found and how many tuples fail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomFailure {
    pub axiom: Axiom,
    pub witness: Vec<String>,
    pub detail: String,
    pub count: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub failures: Vec<AxiomFailure>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failed(&self, axiom: Axiom) -> bool {
        self.failures.iter().any(|f| f.axiom == axiom)
    }

    pub(crate) fn record(&mut self, axiom: Axiom, witness: Vec<String>, detail: String) {
        match self.failures.iter_mut().find(|f| f.axiom == axiom) {
            Some(existing) => existing.count += 1,
            None => self.failures.push(AxiomFailure { axiom, witness, detail, count: 1 }),
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "all axioms hold");
        }
        for (n, fail) in self.failures.iter().enumerate() {
            if n > 0 {
                writeln!(f)?;
            }
            write!(
                f,
                "FAILED {} at ({}): {} [{} failing tuple(s)]",
                fail.axiom,
                fail.witness.join(", "),
                fail.detail,
                fail.count
            )?;
        }
        Ok(())
    }
}

/// Which axiom groups to check.
#[derive(Clone, Copy, Debug)]
pub struct Checks {
    pub jacobi: bool,
}

impl Default for Checks {
    fn default() -> Self {
        Checks { jacobi: true }
    }
}

impl<S: Field> CurvedLieAlgebra<S> {
    /// Checks every curved Lie algebra axiom exactly on basis tuples.
    pub fn validate(&self) -> ValidationReport {
        self.validate_with(Checks::default())
    }

    pub fn validate_with(&self, checks: Checks) -> ValidationReport {
        let mut report = ValidationReport::default();
        let n = self.dim();
        let name = |i: usize| self.space().name(i).to_string();
        let deg = |i: usize| self.degree(i);

        let wrong_degree = |v: &Vector<S>, expected: i64| v.keys().find(|&&k| deg(k) != expected).copied();

        for (&(i, j), v) in self.brackets() {
            if let Some(k) = wrong_degree(v, deg(i) + deg(j)) {
                report.record(
                    Axiom::Degree,
                    vec![name(i), name(j)],
                    format!("bracket has a component on {} of degree {}", name(k), deg(k)),
                );
            }
        }
        for i in 0..n {
            if let Some(k) = wrong_degree(&self.differential()[i], deg(i) - 1) {
                report.record(
                    Axiom::Degree,
                    vec![name(i)],
                    format!("d {} has a component on {} of degree {}", name(i), name(k), deg(k)),
                );
            }
        }
        if let Some(k) = wrong_degree(self.curvature(), -2) {
            report.record(
                Axiom::Degree,
                vec![name(k)],
                format!("curvature has a component of degree {}", deg(k)),
            );
        }

        for i in 0..n {
            for j in i..n {
                let sign = -S::sign(is_odd(deg(i)) && is_odd(deg(j)));
                let lhs = self.bracket_basis(j, i);
                let rhs = self.bracket_basis(i, j).scaled(&sign);
                if lhs != rhs {
                    report.record(
                        Axiom::Antisymmetry,
                        vec![name(i), name(j)],
                        format!("[{},{}] = {}", name(j), name(i), self.format(&lhs)),
                    );
                }
            }
        }

        if checks.jacobi {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        let (dx, dy, dz) = (deg(x), deg(y), deg(z));
                        let ex = Vector::unit(x);
                        let ey = Vector::unit(y);
                        let ez = Vector::unit(z);
                        let mut total = self
                            .bracket(&ex, &self.bracket_basis(y, z))
                            .scaled(&S::sign(is_odd(dx) && is_odd(dz)));
                        total.add_scaled(
                            &self.bracket(&ey, &self.bracket_basis(z, x)),
                            &S::sign(is_odd(dy) && is_odd(dx)),
                        );
                        total.add_scaled(
                            &self.bracket(&ez, &self.bracket_basis(x, y)),
                            &S::sign(is_odd(dz) && is_odd(dy)),
                        );
                        if !total.is_zero() {
                            report.record(
                                Axiom::Jacobi,
                                vec![name(x), name(y), name(z)],
                                format!("cyclic sum = {}", self.format(&total)),
                            );
                        }
                    }
                }
            }
        }

        for x in 0..n {
            let d_x = &self.differential()[x];
            for y in 0..n {
                let lhs = self.d(&self.bracket_basis(x, y));
                let mut rhs = self.bracket(d_x, &Vector::unit(y));
                rhs.add_scaled(
                    &self.bracket(&Vector::unit(x), &self.differential()[y]),
                    &S::sign(is_odd(deg(x))),
                );
                if lhs != rhs {
                    report.record(
                        Axiom::Leibniz,
                        vec![name(x), name(y)],
                        format!("d[x,y] - [dx,y] ∓ [x,dy] = {}", self.format(&lhs.minus(&rhs))),
                    );
                }
            }
        }

        for x in 0..n {
            let dd = self.d(&self.differential()[x]);
            let ad = self.bracket(self.curvature(), &Vector::unit(x));
            if dd != ad {
                report.record(
                    Axiom::CurvatureSquare,
                    vec![name(x)],
                    format!("d(d x) - [ω, x] = {}", self.format(&dd.minus(&ad))),
                );
            }
        }

        let d_omega = self.d(self.curvature());
        if !d_omega.is_zero() {
            report.record(Axiom::ClosedCurvature, vec![], format!("dω = {}", self.format(&d_omega)));
        }
        report
    }
}
