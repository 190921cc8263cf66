use std::sync::Arc;

use proptest::prelude::*;

use curvlie::cdga::RetractionSplit;
use curvlie::functors::{chevalley_c, harrison_l};
use curvlie::fuzz::{self, CdgaShape, LieShape};
use curvlie::homotopy::{mc_residual, mc_solve_linear, McSolution};
use curvlie::io;
use curvlie::lie::{lower_central_series, CurvedLieAlgebra, CurvedMorphism};
use curvlie::{Rational, Rational64};

type G = CurvedLieAlgebra<Rational>;

fn valid(seed: u64, nilpotent: bool) -> Arc<G> {
    let shape = LieShape { max_dim: 3, ..LieShape::default() };
    Arc::new(fuzz::valid_curved_lie(&mut fuzz::rng(seed), &shape, nilpotent, 40))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn twisting_back_recovers_the_algebra(seed in any::<u64>()) {
        let g = valid(seed, false);
        let mut r = fuzz::rng(seed ^ 1);
        let xi = fuzz::random_element(&mut r, g.space(), -1, 1.0, 3);
        let (gx, iso) = g.twist(&xi).unwrap();
        let (back, iso_back) = gx.twist(&xi.neg()).unwrap();
        prop_assert_eq!(back.differential(), g.differential());
        prop_assert_eq!(back.curvature(), g.curvature());
        prop_assert!(gx.validate().is_valid());
        prop_assert!(iso_back.compose(&iso).unwrap().alpha.is_zero());
    }

    #[test]
    fn twist_curvature_is_the_mc_residual(seed in any::<u64>()) {
        let g = valid(seed, seed % 2 == 0);
        let mut r = fuzz::rng(seed ^ 2);
        let xi = fuzz::random_element(&mut r, g.space(), -1, 0.8, 3);
        let (gx, _) = g.twist(&xi).unwrap();
        prop_assert_eq!(gx.curvature(), &mc_residual(&g, &xi).unwrap());
    }

    #[test]
    fn linear_mc_solutions_are_mc(seed in any::<u64>()) {
        let g = valid(seed, true);
        if let McSolution::Affine { particular, directions } = mc_solve_linear(&g) {
            prop_assert!(mc_residual(&g, &particular).unwrap().is_zero());
            for d in &directions {
                prop_assert!(mc_residual(&g, &particular.plus(d)).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn composition_is_associative(seed in any::<u64>()) {
        let mut r = fuzz::rng(seed);
        let shape = LieShape::default();
        let gs: Vec<Arc<G>> = (0..4).map(|_| Arc::new(fuzz::candidate_curved_lie(&mut r, &shape))).collect();
        let f: Vec<CurvedMorphism<Rational>> =
            (0..3).map(|i| fuzz::random_morphism_data(&mut r, &gs[i], &gs[i + 1], 0.6)).collect();
        let left = f[2].compose(&f[1]).unwrap().compose(&f[0]).unwrap();
        let right = f[2].compose(&f[1].compose(&f[0]).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn lower_central_series_is_admissible(seed in any::<u64>()) {
        let g = valid(seed, seed % 3 != 0);
        let f = lower_central_series(&g);
        prop_assert!(f.respects_bracket && f.respects_differential && f.admissible);
    }

    #[test]
    fn chevalley_d_squared_below_the_cap(seed in any::<u64>()) {
        let g = valid(seed, true);
        let ce = chevalley_c(&g, 3).unwrap();
        prop_assert!(ce.d_squared_violations().is_empty());
    }

    #[test]
    fn harrison_of_augmented_is_flat(seed in any::<u64>()) {
        let a = Arc::new(fuzz::augmented_cdga::<Rational>(&mut fuzz::rng(seed), &CdgaShape::default()));
        let l = harrison_l(&RetractionSplit::default_for(a).unwrap(), 3).unwrap();
        prop_assert!(l.algebra.curvature().is_zero());
        prop_assert!(l.algebra.validate().is_valid());
    }

    #[test]
    fn json_round_trips(seed in any::<u64>()) {
        let mut r = fuzz::rng(seed);
        let g: G = fuzz::candidate_curved_lie(&mut r, &LieShape::default());
        let text = io::to_pretty(&io::curved_lie_to_json(&g));
        prop_assert_eq!(io::curved_lie_from_json::<Rational>(&text).unwrap(), g);
        let a = fuzz::augmented_cdga::<Rational>(&mut r, &CdgaShape::default());
        let text = io::to_pretty(&io::cdga_to_json(&a));
        prop_assert_eq!(io::cdga_from_json::<Rational>(&text).unwrap(), a);
    }

    #[test]
    fn machine_rationals_agree_with_big_rationals(seed in any::<u64>()) {
        let mut r = fuzz::rng(seed);
        let g: G = fuzz::candidate_curved_lie(&mut r, &LieShape::default());
        let small: CurvedLieAlgebra<Rational64> =
            io::curved_lie_from_json(&io::to_pretty(&io::curved_lie_to_json(&g))).unwrap();
        prop_assert_eq!(small.validate().is_valid(), g.validate().is_valid());
    }
}
