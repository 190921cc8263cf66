use std::fmt;
use std::sync::Arc;

use super::mc::{mc_residual, mc_solve_linear, McSolution};
use crate::cdga::{Cdga, CdgaMorphism, LieCdgaTensor};
use crate::error::{Error, Result};
use crate::functors::{chevalley_c, twisting_element, ChevalleyEilenbergModel};
use crate::graded::{solve_linear, Echelon, Field, Vector};
use crate::lie::CurvedLieAlgebra;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BijectionReport {
    pub word_cap: usize,
    /// Whether both sides were solved as affine systems (false when the MC
    /// equation has a quadratic part).
    pub solved: bool,
    /// Dimension of the MC set (`None`: empty or unsolved).
    pub mc_dimension: Option<usize>,
    /// Dimension of the set of chain algebra maps (`None`: empty or unsolved).
    pub hom_dimension: Option<usize>,
    /// The two solution sets coincide under `ξ ↔ φ`.
    pub sets_agree: bool,
    /// Elements tested for `MC ⇔ chain map` and round trips.
    pub samples: usize,
    pub elementwise_agree: bool,
    pub round_trips: bool,
    pub failure: Option<String>,
}

impl BijectionReport {
    pub fn verdict(&self) -> bool {
        self.sets_agree && self.elementwise_agree && self.round_trips
    }
}

impl fmt::Display for BijectionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dim = |d: Option<usize>| d.map_or("-".to_string(), |d| d.to_string());
        writeln!(f, "MC/Hom bijection: {} (word cap {})", self.verdict(), self.word_cap)?;
        writeln!(
            f,
            "  solved: {}, dim MC = {}, dim Hom = {}, sets agree: {}",
            self.solved,
            dim(self.mc_dimension),
            dim(self.hom_dimension),
            self.sets_agree
        )?;
        write!(
            f,
            "  {} samples: MC ⇔ chain map {}, round trips {}",
            self.samples, self.elementwise_agree, self.round_trips
        )?;
        if let Some(reason) = &self.failure {
            write!(f, "\n  {reason}")?;
        }
        Ok(())
    }
}

struct Sides<S: Field> {
    tensor: LieCdgaTensor<S>,
    ce: ChevalleyEilenbergModel<S>,
    a: Arc<Cdga<S>>,
    /// Degree -1 basis of `g ⊗ A`: the coordinates of both sides.
    unknowns: Vec<usize>,
}

impl<S: Field> Sides<S> {
    fn map_of(&self, xi: &Vector<S>) -> Result<CdgaMorphism<S>> {
        self.ce.algebra_map(&self.a, &self.tensor.components(xi))
    }

    /// `d_A φ(s_z) - φ(d s_z)` over all generators, concatenated.
    fn chain_defect(&self, xi: &Vector<S>) -> Result<Vector<S>> {
        let phi = self.map_of(xi)?;
        let n = self.a.dim();
        let mut out = Vector::new();
        for z in 0..self.ce.lie.dim() {
            let Some(i) = self.ce.generator(z) else { continue };
            let defect = self.a.d(&phi.map.columns[i]).minus(&phi.apply(&self.ce.algebra.differential()[i]));
            out.add(&defect.map_keys(|k| z * n + k));
        }
        Ok(out)
    }

    fn point(&self, coords: &Vector<S>) -> Vector<S> {
        coords.map_keys(|k| self.unknowns[*k])
    }
}

fn same_affine<S: Field>(p: &Vector<S>, dirs: &[Vector<S>], q: &Vector<S>, other: &[Vector<S>]) -> bool {
    let span = |vs: &[Vector<S>]| {
        let mut e = Echelon::new();
        for v in vs {
            e.push(v);
        }
        e
    };
    let (a, b) = (span(dirs), span(other));
    a.rank() == b.rank() && other.iter().all(|v| a.contains(v)) && a.contains(&q.minus(p))
}

/// Builds both sides of `MC(g ⊗ A) ≅ Hom(C(g), A)` and compares them: the
/// affine solution sets when the MC equation is linear, and elementwise
/// `ξ is MC ⇔ φ_ξ is a chain map` plus round trips on a sample set.
pub fn mc_hom_bijection_check<S: Field>(
    g: &Arc<CurvedLieAlgebra<S>>,
    a: &Arc<Cdga<S>>,
    word_cap: usize,
) -> Result<BijectionReport> {
    if word_cap < 2 {
        return Err(Error::Cap("the bijection needs words of length 2 in C(g)".into()));
    }
    let tensor = LieCdgaTensor::new(g.clone(), a.clone())?;
    let ce = chevalley_c(g, word_cap)?;
    let unknowns = tensor.algebra.space().indices_in_degree(-1);
    let sides = Sides { tensor, ce, a: a.clone(), unknowns };
    let t = &sides.tensor.algebra;
    let mut report = BijectionReport {
        word_cap,
        solved: false,
        mc_dimension: None,
        hom_dimension: None,
        sets_agree: true,
        samples: 0,
        elementwise_agree: true,
        round_trips: true,
        failure: None,
    };

    // the Hom side as a function of the coordinates
    let k = sides.unknowns.len();
    let unit = |j: usize| sides.point(&Vector::unit(j));
    let r0 = sides.chain_defect(&Vector::new())?;
    let r: Vec<Vector<S>> = (0..k).map(|j| sides.chain_defect(&unit(j))).collect::<Result<_>>()?;
    let mut affine = true;
    'pairs: for i in 0..k {
        for j in i..k {
            let both = sides.chain_defect(&unit(i).plus(&unit(j)))?;
            if !both.minus(&r[i]).minus(&r[j]).plus(&r0).is_zero() {
                affine = false;
                break 'pairs;
            }
        }
    }

    let mc = mc_solve_linear(t);
    let mut samples: Vec<Vector<S>> = vec![Vector::new()];
    samples.extend((0..k).map(unit));
    match (&mc, affine) {
        (McSolution::Refused { left, right }, false) => {
            report.failure = Some(format!("not solved: [{left},{right}] ≠ 0; verified on samples only"));
        }
        (McSolution::Refused { .. }, true) | (_, false) => {
            report.sets_agree = false;
            report.failure = Some("the MC side and the Hom side disagree on linearity".into());
        }
        (mc, true) => {
            report.solved = true;
            let columns: Vec<Vector<S>> = r.iter().map(|v| v.minus(&r0)).collect();
            let (particular, kernel) = solve_linear(&columns, &r0.neg());
            let hom = particular.map(|p| {
                (sides.point(&p), kernel.iter().map(|v| sides.point(v)).collect::<Vec<_>>())
            });
            report.mc_dimension = mc.dimension();
            report.hom_dimension = hom.as_ref().map(|(_, dirs)| dirs.len());
            report.sets_agree = match (mc, &hom) {
                (McSolution::Empty, None) => true,
                (McSolution::Affine { particular, directions }, Some((q, other))) => {
                    same_affine(particular, directions, q, other)
                }
                _ => false,
            };
            if !report.sets_agree {
                report.failure = Some("the MC set and the set of chain maps differ".into());
            }
            if let McSolution::Affine { particular, directions } = mc {
                samples.push(particular.clone());
                for d in directions {
                    samples.push(particular.plus(d));
                    samples.push(particular.minus(d));
                }
            }
        }
    }

    for xi in &samples {
        let phi = sides.map_of(xi)?;
        let is_mc = mc_residual(t, xi)?.is_zero();
        let is_chain = sides.chain_defect(xi)?.is_zero();
        if is_mc != is_chain {
            report.elementwise_agree = false;
            report.failure.get_or_insert_with(|| format!("MC ⇔ chain map fails at {}", t.format(xi)));
        }
        let back = twisting_element(&phi, &sides.ce, &sides.tensor);
        let again = sides.map_of(&back)?;
        if &back != xi || again.map != phi.map {
            report.round_trips = false;
            report.failure.get_or_insert_with(|| format!("round trip fails at {}", t.format(xi)));
        }
    }
    report.samples = samples.len();
    Ok(report)
}
