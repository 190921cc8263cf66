use std::fmt;

use super::homology::{compare_homology, DegreeComparison};
use crate::error::{Error, Result};
use crate::graded::{Field, LinearMap};
use crate::lie::{associated_graded, CurvedMorphism, Filtration};

/// Homology comparison of `gr f` in one filtration weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightComparison {
    pub weight: usize,
    pub degrees: Vec<DegreeComparison>,
}

impl WeightComparison {
    pub fn is_iso(&self) -> bool {
        self.degrees.iter().all(DegreeComparison::is_iso)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredQisoReport {
    pub window: (i64, i64),
    pub verdict: bool,
    pub weights: Vec<WeightComparison>,
    /// Both filtrations end in zero.
    pub complete: bool,
    pub failure: Option<String>,
}

impl fmt::Display for FilteredQisoReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "filtered quasi-isomorphism: {}", self.verdict)?;
        if let Some(reason) = &self.failure {
            writeln!(f, "  {reason}")?;
        }
        for w in &self.weights {
            let parts: Vec<String> = w
                .degrees
                .iter()
                .map(|d| format!("{}:{}→{} rk {}", d.degree, d.source, d.target, d.rank))
                .collect();
            writeln!(f, "  weight {}: {}", w.weight, parts.join(", "))?;
        }
        Ok(())
    }
}

/// Checks that `m` preserves the filtrations and that `gr m` induces an
/// isomorphism on homology in every weight, in the degree window.
pub fn filtered_qiso_check<S: Field>(
    m: &CurvedMorphism<S>,
    source: &Filtration<S>,
    target: &Filtration<S>,
    window: (i64, i64),
) -> Result<FilteredQisoReport> {
    if source.algebra != m.source || target.algebra != m.target {
        return Err(Error::DimensionMismatch("filtrations must be on the source and target of the morphism".into()));
    }
    for (f, which) in [(source, "source"), (target, "target")] {
        if !f.admissible {
            return Err(Error::Invalid(format!("the {which} filtration is not admissible")));
        }
    }
    let complete = source.complete && target.complete;
    let mut report = FilteredQisoReport { window, verdict: false, weights: Vec::new(), complete, failure: None };
    let top = source.len().max(target.len());
    for i in 1..=top {
        if let Some(v) = source.level(i).basis().iter().find(|v| !target.level(i).contains(&m.map.apply(v))) {
            report.failure = Some(format!(
                "f does not map F_{i} into F_{i}: f({}) escapes",
                m.source.format(v)
            ));
            return Ok(report);
        }
    }
    let gr_source = associated_graded(source)?;
    let gr_target = associated_graded(target)?;
    let columns = (0..gr_source.algebra.dim())
        .map(|a| {
            let w = gr_source.weights[a];
            gr_target
                .coordinates(&m.map.apply(&gr_source.representatives[a]), w)
                .ok_or_else(|| Error::Invalid(format!("f does not preserve weight {w}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let gr_f = LinearMap::new(gr_source.algebra.space().clone(), gr_target.algebra.space().clone(), 0, columns)?;
    let d_source = gr_source.algebra.differential_map();
    let d_target = gr_target.algebra.differential_map();
    let max_weight = gr_source.max_weight().max(gr_target.max_weight());
    for w in 1..=max_weight {
        let degrees = compare_homology(
            &gr_f,
            &d_source,
            &d_target,
            window,
            &|i| gr_source.weights[i] == w,
            &|i| gr_target.weights[i] == w,
        )?;
        report.weights.push(WeightComparison { weight: w, degrees });
    }
    report.verdict = report.weights.iter().all(WeightComparison::is_iso);
    if !report.verdict {
        let bad = report.weights.iter().find(|w| !w.is_iso()).expect("some weight fails");
        let d = bad.degrees.iter().find(|d| !d.is_iso()).expect("some degree fails");
        report.failure = Some(format!(
            "gr_{} is not a quasi-isomorphism in degree {} ({} → {}, rank {})",
            bad.weight, d.degree, d.source, d.target, d.rank
        ));
    }
    Ok(report)
}
