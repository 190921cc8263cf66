use std::sync::Arc;

use num_rational::BigRational;

use super::*;
use crate::cdga::{tensor_lie_cdga, Cdga, CdgaMorphism, RetractionSplit, SimplexForms};
use crate::graded::{Field, Vector};
use crate::lie::{CurvedLieAlgebra, CurvedMorphism};

type Q = BigRational;
type G = CurvedLieAlgebra<Q>;

fn q(n: i64) -> Q {
    Q::from_i64(n)
}

fn alg(basis: &[(&str, i64)], brackets: &[(&str, &str, &str)], d: &[(&str, &str)], omega: &str) -> Arc<G> {
    Arc::new(G::from_tables(basis, brackets, d, omega).unwrap())
}

fn curved_example() -> Arc<G> {
    alg(
        &[("h", 0), ("u", -1), ("w", -2)],
        &[("h", "u", "u"), ("h", "w", "w:2"), ("u", "u", "w:2")],
        &[("h", "u"), ("u", "w:-2")],
        "w",
    )
}

/// Nilpotent of class 2: `dc = a`, `[c,a] = b`.
fn nilpotent() -> Arc<G> {
    alg(&[("c", 0), ("a", -1), ("b", -1)], &[("c", "a", "b")], &[("c", "a")], "")
}

/// Nilpotent with curvature: `[a,a] = b`, `ω = -2b`.
fn nilpotent_curved() -> Arc<G> {
    alg(&[("a", -1), ("b", -2)], &[("a", "a", "b")], &[], "b:-2")
}

fn dual_numbers() -> Arc<Cdga<Q>> {
    Arc::new(Cdga::from_tables(&[("1", 0), ("u", -2)], "1", &[], &[]).unwrap())
}

fn interval(cap: usize) -> Arc<Cdga<Q>> {
    SimplexForms::<Q>::new(1, cap).unwrap().algebra
}

/// The retraction evaluating at `t = 1`.
fn vertex_one(a: &Arc<Cdga<Q>>) -> RetractionSplit<Q> {
    let eps = (0..a.dim())
        .map(|i| if a.degree(i) == 0 && !a.space().name(i).contains("dt") { q(1) } else { q(0) })
        .collect();
    RetractionSplit::new(a.clone(), eps).unwrap()
}

fn splits() -> Vec<RetractionSplit<Q>> {
    let mut out = vec![RetractionSplit::default_for(dual_numbers()).unwrap()];
    for cap in [2, 3] {
        let a = interval(cap);
        out.push(RetractionSplit::default_for(a.clone()).unwrap());
        out.push(vertex_one(&a));
    }
    let two = SimplexForms::<Q>::new(2, 1).unwrap().algebra;
    out.push(RetractionSplit::default_for(two).unwrap());
    out
}

#[test]
fn chevalley_generators_and_differential() {
    let g = nilpotent();
    let ce = chevalley_c(&g, 3).unwrap();
    let names: Vec<&str> = (0..3).map(|x| ce.algebra.space().name(ce.generator(x).unwrap())).collect();
    assert_eq!(names, ["s(c)", "s(a)", "s(b)"]);
    assert_eq!(ce.algebra.degree(ce.generator(0).unwrap()), -1);
    assert_eq!(ce.algebra.degree(ce.generator(2).unwrap()), 0);
    // d s(a) = -(-1)^{|a|} (s(c) from dc = a) = s(c)
    let d_sa = ce.algebra.differential()[ce.generator(1).unwrap()].clone();
    assert_eq!(ce.algebra.format(&d_sa), "s(c):1");
    assert!(ce.d_squared_vanishes_everywhere());
    assert!(ce.algebra.validate().is_valid(), "{}", ce.algebra.validate());
}

#[test]
fn chevalley_d_squared_with_curvature() {
    for g in [curved_example(), nilpotent_curved()] {
        for w in 1..=4 {
            let ce = chevalley_c(&g, w).unwrap();
            assert!(ce.d_squared_violations().is_empty(), "word cap {w}");
        }
    }
    let ce = chevalley_c(&curved_example(), 2).unwrap();
    assert!(!ce.d_squared_vanishes_everywhere());
}

#[test]
fn harrison_dual_numbers() {
    let l = harrison_l(&RetractionSplit::default_for(dual_numbers()).unwrap(), 4).unwrap();
    let g = &l.algebra;
    assert_eq!(g.space().name(l.generator(0)), "t(u)");
    assert_eq!(g.degree(l.generator(0)), 1);
    assert!(g.curvature().is_zero());
    assert!(g.differential().iter().all(|v| v.is_zero()));
}

#[test]
fn harrison_models_satisfy_the_axioms() {
    for split in splits() {
        for cap in [2, 3] {
            let l = harrison_l(&split, cap).unwrap();
            let report = l.algebra.validate();
            assert!(report.is_valid(), "{}\n{report}", split.algebra);
            assert_eq!(l.algebra.curvature().is_zero(), split.augmentation);
        }
    }
}

#[test]
fn harrison_of_the_interval_at_vertex_one() {
    // ε(t) = 1 makes t̃ = t - 1 with t̃·t̃ = t² - 2t̃ - 1, so m_k ≠ 0
    let split = vertex_one(&interval(2));
    assert!(!split.augmentation);
    let l = harrison_l(&split, 3).unwrap();
    assert!(!l.algebra.curvature().is_zero());
}

#[test]
fn chevalley_is_contravariant() {
    let g = curved_example();
    let xi = g.parse_element("u:3").unwrap();
    let (gx, iso) = g.twist(&xi).unwrap();
    let cg = chevalley_c(&g, 3).unwrap();
    let cgx = chevalley_c(&gx, 3).unwrap();
    let c_iso = chevalley_c_map(&iso, &cgx, &cg).unwrap();
    assert!(cgx.is_multiplicative_within_cap(&c_iso));
    assert!(cgx.is_chain_on_generators(&c_iso));

    let back = iso.invert().unwrap();
    let c_back = chevalley_c_map(&back, &cg, &cgx).unwrap();
    let round = c_iso.compose(&c_back).unwrap();
    assert_eq!(round.map, CdgaMorphism::identity(cgx.algebra.clone()).map);

    let id = CurvedMorphism::identity(g.clone());
    assert_eq!(chevalley_c_map(&id, &cg, &cg).unwrap().map, CdgaMorphism::identity(cg.algebra.clone()).map);
}

#[test]
fn harrison_of_a_change_of_retraction_is_a_twist() {
    let a = interval(2);
    let split0 = RetractionSplit::default_for(a.clone()).unwrap();
    let split1 = vertex_one(&a);
    let l0 = harrison_l(&split0, 3).unwrap();
    let l1 = harrison_l(&split1, 3).unwrap();
    let id = CdgaMorphism::identity(a.clone());
    let m = harrison_l_map(&id, &l0, &l1).unwrap();
    assert!(m.validate().is_valid(), "{}", m.validate());
    assert_eq!(m.map.columns, crate::graded::LinearMap::identity(l1.algebra.space().clone()).columns);
    // L(A, ε + λ) is the twist of L(A, ε) by Σ λ(b) t_b = -α
    let (twisted, _) = l0.algebra.twist(&m.alpha.neg()).unwrap();
    assert_eq!(twisted.differential(), l1.algebra.differential());
    assert_eq!(twisted.curvature(), l1.algebra.curvature());
    assert_eq!(m.alpha.neg(), l0.algebra.parse_element("t(t):1,t(t^2):1").unwrap());
}

#[test]
fn harrison_is_contravariant() {
    let a = interval(2);
    let b = dual_numbers();
    // A → k → B through the vertex at 0
    let ev = SimplexForms::<Q>::new(1, 2).unwrap().vertex(0).unwrap();
    let columns: Vec<Vector<Q>> = ev.map.columns.iter().map(|c| {
        if c.is_zero() { Vector::new() } else { b.unit_vector().scaled(&c.coeff(&0)) }
    }).collect();
    let f = CdgaMorphism::new(a.clone(), b.clone(), columns).unwrap();
    assert!(f.is_valid());
    for split in [RetractionSplit::default_for(a.clone()).unwrap(), vertex_one(&a)] {
        let la = harrison_l(&split, 3).unwrap();
        let lb = harrison_l(&RetractionSplit::default_for(b.clone()).unwrap(), 3).unwrap();
        let lf = harrison_l_map(&f, &la, &lb).unwrap();
        assert!(lf.validate().is_valid(), "{}", lf.validate());
    }
}

fn random_images(g: &G, a: &Cdga<Q>, seed: u64) -> Vec<Vector<Q>> {
    // small deterministic coefficients in each required degree
    let mut state = seed;
    let mut next = move || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((state >> 33) % 5) as i64 - 2
    };
    (0..g.dim())
        .map(|x| {
            let deg = -g.degree(x) - 1;
            Vector::from_terms(a.space().indices_in_degree(deg).into_iter().map(|i| (i, q(next()))))
        })
        .collect()
}

#[test]
fn adjunction_round_trip_and_validity() {
    let a = interval(2);
    let mut positives = 0;
    for g in [nilpotent(), nilpotent_curved()] {
        let ce = chevalley_c(&g, 3).unwrap();
        let tensor = tensor_lie_cdga(&g, &a).unwrap();
        for split in [RetractionSplit::default_for(a.clone()).unwrap(), vertex_one(&a)] {
            let l = harrison_l(&split, 3).unwrap();
            let mut candidates: Vec<Vec<Vector<Q>>> = (0..20).map(|s| random_images(&g, &a, s)).collect();
            candidates.push(vec![Vector::new(); g.dim()]);
            if g.dim() == 2 {
                candidates.push(vec![a.unit_vector().scaled(&q(2)), Vector::new()]);
            }
            for images in candidates {
                let phi = ce.algebra_map(&a, &images).unwrap();
                let m = adjunction_forward(&phi, &ce, &l).unwrap();
                let back = adjunction_backward(&m, &ce, &l).unwrap();
                assert_eq!(ce.generator_images(&back), images);
                let again = adjunction_forward(&back, &ce, &l).unwrap();
                assert_eq!((again.map.clone(), again.alpha.clone()), (m.map.clone(), m.alpha.clone()));

                let chain = ce.is_chain_on_generators(&phi);
                let mc = tensor.algebra.mc_residual_unchecked(&twisting_element(&phi, &ce, &tensor)).is_zero();
                assert_eq!(chain, mc);
                assert_eq!(chain, m.validate().is_valid(), "{}", m.validate());
                positives += chain as usize;
            }
        }
    }
    assert!(positives >= 4);
}

#[test]
fn unit_is_a_chain_map() {
    for split in splits() {
        let l = harrison_l(&split, 3).unwrap();
        let ce = chevalley_c(&l.algebra, 2).unwrap();
        let eta = unit_map(&l, &ce).unwrap();
        assert!(ce.is_chain_on_generators(&eta), "{}", split.algebra);
    }
}

#[test]
fn counit_is_a_strict_morphism() {
    for g in [nilpotent(), nilpotent_curved()] {
        let ce = chevalley_c(&g, 3).unwrap();
        let split = RetractionSplit::default_for(ce.algebra.clone()).unwrap();
        let l = harrison_l(&split, 3).unwrap();
        let eps = counit_map(&ce, &l).unwrap();
        assert!(eps.is_strict());
        assert!(eps.validate().is_valid(), "{}", eps.validate());
    }
}
