//! Acceptance suite: one line per criterion, nonzero exit on any failure.

use std::sync::Arc;
use std::time::Instant;

use curvlie::cdga::{Cdga, CdgaMorphism, LieCdgaTensor, RetractionSplit};
use curvlie::free_lie::FreeLieTruncation;
use curvlie::functors::{
    adjunction_backward, adjunction_forward, chevalley_c, chevalley_c_weighted, counit_map, harrison_l,
    harrison_l_map, harrison_l_weighted,
};
use curvlie::fuzz::{self, CdgaShape, FuzzRng, LieShape};
use curvlie::graded::{Field, GradedSpace, Vector};
use curvlie::homotopy::{
    compare_homology, homology_of_subcomplex, mc_hom_bijection_check, mc_residual, mc_solve_linear,
    twist_flatness, McHomotopyContext, McSolution,
};
use curvlie::lie::{associated_graded, coproduct, lower_central_series, Axiom, CurvedLieAlgebra, CurvedMorphism, LieBracket};
use curvlie::Rational;
use rand::Rng;

type Q = Rational;
type G = CurvedLieAlgebra<Q>;

fn q(n: i64) -> Q {
    Q::from_i64(n)
}

/// Dense structure constants, evaluated without the library's bracket.
mod oracle {
    use super::*;

    pub struct Dense {
        pub deg: Vec<i64>,
        pub c: Vec<Vec<Vec<Q>>>,
        pub d: Vec<Vec<Q>>,
        pub omega: Vec<Q>,
    }

    fn odd(n: i64) -> bool {
        n.rem_euclid(2) == 1
    }

    fn sign(odd: bool) -> Q {
        if odd { q(-1) } else { q(1) }
    }

    fn dense(v: &Vector<Q>, n: usize) -> Vec<Q> {
        let mut out = vec![q(0); n];
        for (k, c) in v.iter() {
            out[*k] = c.clone();
        }
        out
    }

    impl Dense {
        pub fn of(g: &G) -> Self {
            let n = g.dim();
            let deg: Vec<i64> = (0..n).map(|i| g.degree(i)).collect();
            let mut c = vec![vec![vec![q(0); n]; n]; n];
            for (&(i, j), v) in g.brackets() {
                c[i][j] = dense(v, n);
            }
            Dense {
                deg,
                c,
                d: g.differential().iter().map(|v| dense(v, n)).collect(),
                omega: dense(g.curvature(), n),
            }
        }

        fn n(&self) -> usize {
            self.deg.len()
        }

        pub fn unit(&self, i: usize) -> Vec<Q> {
            let mut v = vec![q(0); self.n()];
            v[i] = q(1);
            v
        }

        pub fn bracket(&self, u: &[Q], v: &[Q]) -> Vec<Q> {
            let n = self.n();
            let mut out = vec![q(0); n];
            for i in 0..n {
                if u[i] == q(0) {
                    continue;
                }
                for j in 0..n {
                    if v[j] == q(0) {
                        continue;
                    }
                    let s = u[i].clone() * v[j].clone();
                    for k in 0..n {
                        out[k] += s.clone() * self.c[i][j][k].clone();
                    }
                }
            }
            out
        }

        pub fn d(&self, u: &[Q]) -> Vec<Q> {
            let n = self.n();
            let mut out = vec![q(0); n];
            for i in 0..n {
                for k in 0..n {
                    out[k] += u[i].clone() * self.d[i][k].clone();
                }
            }
            out
        }

        fn add(a: &[Q], b: &[Q], s: Q) -> Vec<Q> {
            a.iter().zip(b).map(|(x, y)| x.clone() + y.clone() * s.clone()).collect()
        }

        fn is_zero(v: &[Q]) -> bool {
            v.iter().all(|x| *x == q(0))
        }

        /// `ω + dξ + ½[ξ,ξ]`.
        pub fn residual(&self, xi: &[Q]) -> Vec<Q> {
            let r = Self::add(&self.omega, &self.d(xi), q(1));
            Self::add(&r, &self.bracket(xi, xi), Q::half())
        }

        pub fn antisymmetric(&self) -> bool {
            let n = self.n();
            (0..n).all(|i| {
                (0..n).all(|j| {
                    let s = sign(odd(self.deg[i]) && odd(self.deg[j]));
                    Self::is_zero(&Self::add(&self.c[i][j], &self.c[j][i], s))
                })
            })
        }

        pub fn jacobi(&self) -> bool {
            let n = self.n();
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        let (dx, dy, dz) = (self.deg[x], self.deg[y], self.deg[z]);
                        let (ex, ey, ez) = (self.unit(x), self.unit(y), self.unit(z));
                        let t1 = self.bracket(&ex, &self.bracket(&ey, &ez));
                        let t2 = self.bracket(&ey, &self.bracket(&ez, &ex));
                        let t3 = self.bracket(&ez, &self.bracket(&ex, &ey));
                        let zero = vec![q(0); n];
                        let sum = Self::add(&zero, &t1, sign(odd(dx * dz)));
                        let sum = Self::add(&sum, &t2, sign(odd(dy * dx)));
                        let sum = Self::add(&sum, &t3, sign(odd(dz * dy)));
                        if !Self::is_zero(&sum) {
                            return false;
                        }
                    }
                }
            }
            true
        }

        pub fn leibniz(&self) -> bool {
            let n = self.n();
            for x in 0..n {
                for y in 0..n {
                    let (ex, ey) = (self.unit(x), self.unit(y));
                    let lhs = self.d(&self.bracket(&ex, &ey));
                    let rhs = Self::add(
                        &self.bracket(&self.d(&ex), &ey),
                        &self.bracket(&ex, &self.d(&ey)),
                        sign(odd(self.deg[x])),
                    );
                    if lhs != rhs {
                        return false;
                    }
                }
            }
            true
        }

        pub fn curvature_square_on(&self, x: usize) -> bool {
            let ex = self.unit(x);
            self.d(&self.d(&ex)) == self.bracket(&self.omega, &ex)
        }

        pub fn curvature_square(&self) -> bool {
            (0..self.n()).all(|x| self.curvature_square_on(x))
        }

        pub fn closed_curvature(&self) -> bool {
            Self::is_zero(&self.d(&self.omega))
        }

        pub fn degrees(&self) -> bool {
            let n = self.n();
            for i in 0..n {
                for k in 0..n {
                    if self.d[i][k] != q(0) && self.deg[k] != self.deg[i] - 1 {
                        return false;
                    }
                    if self.omega[k] != q(0) && self.deg[k] != -2 {
                        return false;
                    }
                    for j in 0..n {
                        if self.c[i][j][k] != q(0) && self.deg[k] != self.deg[i] + self.deg[j] {
                            return false;
                        }
                    }
                }
            }
            true
        }

        pub fn square_zero(&self) -> bool {
            (0..self.n()).all(|x| Self::is_zero(&self.d(&self.d(&self.unit(x)))))
        }
    }

    pub fn to_dense(v: &Vector<Q>, n: usize) -> Vec<Q> {
        dense(v, n)
    }
}

use oracle::Dense;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok { Ok(()) } else { Err(msg()) }
}

fn fuzzed_algebras(seed: u64, count: usize) -> Vec<G> {
    let mut r = fuzz::rng(seed);
    let shape = LieShape::default();
    (0..count).map(|_| fuzz::candidate_curved_lie(&mut r, &shape)).collect()
}

fn c1_axiom_fuzz() -> Outcome {
    let algebras = fuzzed_algebras(1, 200);
    let mut valid = 0;
    for (n, g) in algebras.iter().enumerate() {
        let o = Dense::of(g);
        let report = g.validate();
        ensure(o.antisymmetric(), || format!("candidate {n} not repaired to antisymmetry"))?;
        let checks = [
            (Axiom::Degree, o.degrees()),
            (Axiom::Antisymmetry, o.antisymmetric()),
            (Axiom::Jacobi, o.jacobi()),
            (Axiom::Leibniz, o.leibniz()),
            (Axiom::CurvatureSquare, o.curvature_square()),
            (Axiom::ClosedCurvature, o.closed_curvature()),
        ];
        for (axiom, holds) in checks {
            ensure(report.failed(axiom) != holds, || format!("candidate {n}: {axiom} oracle {holds}, library {}", !report.failed(axiom)))?;
        }
        let all = checks.iter().all(|(_, h)| *h);
        ensure(report.is_valid() == all, || format!("candidate {n}: verdicts differ"))?;
        valid += all as usize;
    }
    ensure(valid > 0 && valid < 200, || format!("degenerate sample: {valid}/200 valid"))?;
    Ok(format!("200 candidates, {valid} valid, 100% agreement"))
}

fn c2_morphism_calculus() -> Outcome {
    let mut r = fuzz::rng(2);
    let shape = LieShape::default();
    let mut inverted = 0;
    for n in 0..100 {
        let gs: Vec<Arc<G>> = (0..4).map(|_| Arc::new(fuzz::candidate_curved_lie(&mut r, &shape))).collect();
        let f1 = fuzz::random_morphism_data(&mut r, &gs[0], &gs[1], 0.6);
        let f2 = fuzz::random_morphism_data(&mut r, &gs[1], &gs[2], 0.6);
        let f3 = fuzz::random_morphism_data(&mut r, &gs[2], &gs[3], 0.6);
        let left = f3.compose(&f2).and_then(|m| m.compose(&f1)).map_err(|e| e.to_string())?;
        let right = f2.compose(&f1).and_then(|m| f3.compose(&m)).map_err(|e| e.to_string())?;
        ensure(left == right, || format!("triple {n} not associative"))?;
        // the formula itself, on coordinates
        let expected_alpha = f3.alpha.plus(&f3.map.apply(&f2.alpha.plus(&f2.map.apply(&f1.alpha))));
        ensure(left.alpha == expected_alpha, || format!("triple {n}: α of the composite"))?;

        let map = fuzz::random_invertible(&mut r, &gs[0]);
        let alpha = fuzz::random_element(&mut r, gs[0].space(), -1, 0.7, 3);
        let f = CurvedMorphism { source: gs[0].clone(), target: gs[0].clone(), map, alpha };
        let inv = f.invert().map_err(|e| e.to_string())?;
        let a = inv.compose(&f).map_err(|e| e.to_string())?;
        let b = f.compose(&inv).map_err(|e| e.to_string())?;
        ensure(a.is_identity() && b.is_identity(), || format!("triple {n}: inverse"))?;
        inverted += 1;

        // on genuine morphisms: composites and inverses of twists stay valid
        let g = Arc::new(fuzz::valid_curved_lie::<Q>(&mut r, &shape, false, 40));
        let x1 = fuzz::random_element(&mut r, g.space(), -1, 0.7, 2);
        let (g1, t1) = g.twist(&x1).map_err(|e| e.to_string())?;
        let x2 = fuzz::random_element(&mut r, g1.space(), -1, 0.7, 2);
        let (_, t2) = g1.twist(&x2).map_err(|e| e.to_string())?;
        let t = t2.compose(&t1).map_err(|e| e.to_string())?;
        ensure(t.validate().is_valid() && t.alpha == x1.plus(&x2), || format!("triple {n}: twist composite"))?;
        let ti = t.invert().map_err(|e| e.to_string())?;
        ensure(ti.validate().is_valid() && ti.compose(&t).map_err(|e| e.to_string())?.is_identity(), || {
            format!("triple {n}: twist inverse")
        })?;
    }
    Ok(format!("100 triples associative, {inverted} inverses give (id, 0) both ways"))
}

fn c3_twist_mc() -> Outcome {
    let mut r = fuzz::rng(3);
    let shape = LieShape::default();
    let (mut flat, mut curved) = (0, 0);
    let mut n = 0;
    while n < 200 {
        let g = Arc::new(fuzz::valid_curved_lie::<Q>(&mut r, &shape, n % 2 == 0, 40));
        if g.space().dim_in_degree(-1) == 0 {
            continue;
        }
        n += 1;
        let o = Dense::of(&g);
        let xi = match (n % 4, mc_solve_linear(&g)) {
            (0, McSolution::Affine { particular, directions }) => {
                let mut xi = particular;
                for d in &directions {
                    xi.add_scaled(d, &q(r.gen_range(-2..=2)));
                }
                xi
            }
            _ => fuzz::random_element(&mut r, g.space(), -1, 1.0, 3),
        };
        let (twisted, _) = g.twist(&xi).map_err(|e| e.to_string())?;
        let residual = mc_residual(&g, &xi).map_err(|e| e.to_string())?;
        ensure(twisted.curvature() == &residual, || format!("pair {n}: twist curvature differs from the MC residual"))?;
        ensure(o.residual(&oracle::to_dense(&xi, g.dim())) == oracle::to_dense(&residual, g.dim()), || {
            format!("pair {n}: residual differs from the dense evaluation")
        })?;
        let tf = twist_flatness(&g, &xi).map_err(|e| e.to_string())?;
        ensure(tf.agree() && tf.flat == residual.is_zero(), || format!("pair {n}: flatness and MC disagree"))?;
        if tf.flat { flat += 1 } else { curved += 1 }
    }
    ensure(flat > 0 && curved > 0, || format!("one-sided sample: {flat} flat, {curved} curved"))?;
    Ok(format!("200 pairs exact, {flat} MC/flat and {curved} not"))
}

fn c4_lcs() -> Outcome {
    let mut algebras: Vec<G> = fuzzed_algebras(1, 200).into_iter().filter(|g| g.validate().is_valid()).collect();
    let mut r = fuzz::rng(4);
    let shape = LieShape::default();
    algebras.extend((0..50).map(|_| fuzz::valid_curved_lie::<Q>(&mut r, &shape, true, 40)));
    let mut levels_checked = 0;
    for (n, g) in algebras.into_iter().enumerate() {
        let g = Arc::new(g);
        let f = lower_central_series(&g);
        let gr = associated_graded(&f).map_err(|e| format!("algebra {n}: {e}"))?;
        ensure(Dense::of(&gr.algebra).square_zero() && gr.differential_squares_to_zero(), || {
            format!("algebra {n}: gr d² ≠ 0")
        })?;
        let o = Dense::of(&g);
        let top = f.len();
        for i in 1..=top {
            for j in 1..=top {
                let target = f.level(i + j);
                for a in f.level(i).basis() {
                    for b in f.level(j).basis() {
                        let br = o.bracket(&oracle::to_dense(&a, g.dim()), &oracle::to_dense(&b, g.dim()));
                        let br = Vector::from_terms(br.into_iter().enumerate().filter(|(_, c)| *c != q(0)));
                        ensure(target.contains(&br), || format!("algebra {n}: [F_{i}, F_{j}] ⊄ F_{}", i + j))?;
                    }
                }
                levels_checked += 1;
            }
        }
    }
    Ok(format!("gr d² = 0 and {levels_checked} level pairs filtered"))
}

fn mobius(n: usize) -> i64 {
    let (mut n, mut m, mut p) = (n, 1, 2);
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            m = -m;
        }
        p += 1;
    }
    if n > 1 { -m } else { m }
}

fn necklace(g: usize, w: usize) -> usize {
    let total: i64 = (1..=w).filter(|d| w % d == 0).map(|d| mobius(d) * (g as i64).pow((w / d) as u32)).sum();
    (total / w as i64) as usize
}

fn c5_free_lie_dims() -> Outcome {
    let start = Instant::now();
    for g in 1..=3 {
        let space = Arc::new(GradedSpace::new((0..g).map(|i| (format!("a{i}"), 0))).unwrap());
        let t = FreeLieTruncation::<Q>::new(space, 5).map_err(|e| e.to_string())?;
        let expected: Vec<usize> = (1..=5).map(|w| necklace(g, w)).collect();
        ensure(t.dims_by_weight() == expected, || format!("{g} generators: {:?} vs {expected:?}", t.dims_by_weight()))?;
    }
    let odd = Arc::new(GradedSpace::new([("v", -1)]).unwrap());
    let t = FreeLieTruncation::<Q>::new(odd, 3).map_err(|e| e.to_string())?;
    ensure(t.dims_by_weight() == vec![1, 1, 0], || format!("odd generator: {:?}", t.dims_by_weight()))?;
    let elapsed = start.elapsed();
    ensure(elapsed.as_secs_f64() < 10.0, || format!("took {elapsed:?}"))?;
    Ok(format!("necklace dims for 1-3 generators to weight 5, odd (1, 1, 0), {:.2}s", elapsed.as_secs_f64()))
}

fn c6_coproduct() -> Outcome {
    let zero = Arc::new(G::zero());
    let c = coproduct(&zero, &zero, 3).map_err(|e| e.to_string())?;
    let x = c.x_vector();
    ensure(c.algebra.d(&x) == c.algebra.bracket(&x, &x).scaled(&-Q::half()), || "0 ⊔ 0: dx".into())?;
    ensure(c.algebra.curvature().is_zero(), || "0 ⊔ 0: ω".into())?;

    let mut r = fuzz::rng(6);
    let small = LieShape { max_dim: 2, ..LieShape::default() };
    let mut checked = 0;
    for n in 0..20 {
        let g = Arc::new(fuzz::valid_curved_lie::<Q>(&mut r, &small, false, 40));
        let h = Arc::new(fuzz::valid_curved_lie::<Q>(&mut r, &small, false, 40));
        let c = coproduct(&g, &h, 4).map_err(|e| e.to_string())?;
        let o = Dense::of(&c.algebra);
        let weights = c.weights();
        for (i, &w) in weights.iter().enumerate() {
            if w <= 3 {
                ensure(o.curvature_square_on(i), || format!("pair {n}: d² ≠ ad_ω on {}", c.algebra.space().name(i)))?;
                checked += 1;
            }
        }
        ensure(o.closed_curvature(), || format!("pair {n}: dω ≠ 0"))?;
    }

    let nil = LieShape { max_dim: 3, ..LieShape::default() };
    for n in 0..10 {
        let g = Arc::new(fuzz::valid_curved_lie::<Q>(&mut r, &nil, true, 60));
        let xi = fuzz::random_element(&mut r, g.space(), -1, 0.8, 2);
        let (h, iso) = g.twist(&xi).map_err(|e| e.to_string())?;
        let fg = CurvedMorphism::identity(g.clone());
        let fh = iso.invert().map_err(|e| e.to_string())?;
        ensure(fg.validate().is_valid() && fh.validate().is_valid(), || format!("instance {n}: inputs invalid"))?;
        let c = coproduct(&g, &h, 3).map_err(|e| e.to_string())?;
        let u = c.induced(&fg, &fh).map_err(|e| format!("instance {n}: {e}"))?;
        ensure(u.validate().is_valid(), || format!("instance {n}: induced map invalid"))?;
        ensure(u.compose(&c.inclusion_left).map_err(|e| e.to_string())? == fg, || format!("instance {n}: left triangle"))?;
        ensure(u.compose(&c.inclusion_right).map_err(|e| e.to_string())? == fh, || format!("instance {n}: right triangle"))?;
    }
    Ok(format!("0 ⊔ 0 formula, d² = ad_ω on {checked} basis vectors of weight ≤ 3, 10 triangles commute"))
}

fn small_cdga(r: &mut FuzzRng) -> Arc<Cdga<Q>> {
    let shape = CdgaShape { max_dim: 3, ..CdgaShape::default() };
    Arc::new(fuzz::augmented_cdga(r, &shape))
}

fn c7_adjunction() -> Outcome {
    let mut r = fuzz::rng(7);
    let shape = LieShape { max_dim: 3, ..LieShape::default() };
    let (mut valid_pairs, mut nonzero) = (0, 0);
    for n in 0..50 {
        let g = Arc::new(fuzz::valid_curved_lie::<Q>(&mut r, &shape, n % 2 == 0, 40));
        let a = small_cdga(&mut r);
        let ce = chevalley_c(&g, 3).map_err(|e| e.to_string())?;
        let split = RetractionSplit::default_for(a.clone()).map_err(|e| e.to_string())?;
        let l = harrison_l(&split, 3).map_err(|e| e.to_string())?;

        let mut images = fuzz::random_generator_images(&mut r, &g, &a, 0.7);
        for _ in 0..5 {
            if images.iter().any(|v| !v.is_zero()) {
                break;
            }
            images = fuzz::random_generator_images(&mut r, &g, &a, 0.7);
        }
        nonzero += images.iter().any(|v| !v.is_zero()) as usize;
        let phi = ce.algebra_map(&a, &images).map_err(|e| e.to_string())?;
        let m = adjunction_forward(&phi, &ce, &l).map_err(|e| e.to_string())?;
        let back = adjunction_backward(&m, &ce, &l).map_err(|e| e.to_string())?;
        ensure(ce.generator_images(&back) == images, || format!("pair {n}: backward ∘ forward"))?;
        let chain = ce.is_chain_on_generators(&phi);
        ensure(chain == m.validate().is_valid(), || format!("pair {n}: chain map ⇔ curved morphism fails"))?;
        valid_pairs += chain as usize;

        // from the other side: random generator images in g and random α
        let gen_images: Vec<Vector<Q>> = (0..split.plus_dim())
            .map(|p| fuzz::random_element(&mut r, g.space(), l.algebra.degree(l.generator(p)), 0.7, 2))
            .collect();
        let alpha = fuzz::random_element(&mut r, g.space(), -1, 0.7, 2);
        let m = l.morphism_to(&g, &gen_images, alpha).map_err(|e| e.to_string())?;
        let phi = adjunction_backward(&m, &ce, &l).map_err(|e| e.to_string())?;
        let again = adjunction_forward(&phi, &ce, &l).map_err(|e| e.to_string())?;
        ensure(again == m, || format!("pair {n}: forward ∘ backward"))?;
    }
    Ok(format!("50 pairs mutually inverse ({nonzero} nonzero, {valid_pairs} chain maps)"))
}

fn c8_augmentation() -> Outcome {
    let mut r = fuzz::rng(8);
    let shape = CdgaShape { max_dim: 4, min_degree: -2, max_degree: 0, ..CdgaShape::default() };
    let (mut done, mut curved) = (0, 0);
    while done < 50 {
        let a = Arc::new(fuzz::augmented_cdga::<Q>(&mut r, &shape));
        let Some(lambda) = fuzz::degree_zero_augmentation_element(&mut r, &a) else { continue };
        let split0 = RetractionSplit::default_for(a.clone()).map_err(|e| e.to_string())?;
        ensure(split0.augmentation, || format!("cdga {done}: default retraction is not an augmentation"))?;
        let l0 = harrison_l(&split0, 3).map_err(|e| e.to_string())?;
        ensure(l0.algebra.curvature().is_zero(), || format!("cdga {done}: ω ≠ 0 for the augmentation"))?;

        let mut eps = split0.epsilon.clone();
        for (i, c) in lambda.iter() {
            eps[*i] = c.clone();
        }
        let split1 = RetractionSplit::new(a.clone(), eps).map_err(|e| e.to_string())?;
        let l1 = harrison_l(&split1, 3).map_err(|e| e.to_string())?;
        curved += !l1.algebra.curvature().is_zero() as usize;

        let id = CdgaMorphism::identity(a.clone());
        let m = harrison_l_map(&id, &l0, &l1).map_err(|e| e.to_string())?;
        ensure(m.validate().is_valid(), || format!("cdga {done}: L(id) is not a curved morphism"))?;
        let inv = m.invert().map_err(|e| format!("cdga {done}: {e}"))?;
        ensure(inv.validate().is_valid() && inv.compose(&m).map_err(|e| e.to_string())?.is_identity(), || {
            format!("cdga {done}: not an isomorphism")
        })?;
        // the perturbed model is the twist by Σ λ(b) t_b
        let shift: Vector<Q> = lambda.iter().map(|(i, c)| {
            let p = split0.plus_basis.iter().position(|b| b == i).expect("non-unit");
            (l0.generator(p), c.clone())
        }).collect::<Vec<_>>().into_iter().fold(Vector::new(), |mut v, (k, c)| { v.add_term(k, c); v });
        ensure(m.alpha.neg() == shift, || format!("cdga {done}: α is not -Σλ(b)t_b"))?;
        let (twisted, iso) = l0.algebra.twist(&shift).map_err(|e| e.to_string())?;
        ensure(
            twisted.differential() == l1.algebra.differential()
                && twisted.curvature() == l1.algebra.curvature()
                && twisted.brackets() == l1.algebra.brackets(),
            || format!("cdga {done}: perturbed model is not the twist"),
        )?;
        ensure(iso.map == inv.map && iso.alpha == inv.alpha, || format!("cdga {done}: iso is not the twist iso"))?;
        done += 1;
    }
    ensure(curved > 0, || "no perturbation produced curvature".into())?;
    Ok(format!("50 augmented cdgas flat, perturbations twist-isomorphic ({curved} curved)"))
}

fn c9_bijection() -> Outcome {
    let mut r = fuzz::rng(9);
    let shape = LieShape { max_dim: 3, ..LieShape::default() };
    let (mut done, mut attempts, mut nonempty) = (0, 0, 0);
    while done < 30 {
        attempts += 1;
        ensure(attempts < 2000, || format!("only {done} solvable instances"))?;
        let g = Arc::new(fuzz::valid_curved_lie::<Q>(&mut r, &shape, attempts % 2 == 0, 40));
        let a = if attempts % 3 == 0 { Arc::new(Cdga::ground()) } else { small_cdga(&mut r) };
        let tensor = LieCdgaTensor::new(g.clone(), a.clone()).map_err(|e| e.to_string())?;
        let solution = mc_solve_linear(&tensor.algebra);
        if solution.is_refused() {
            continue;
        }
        nonempty += matches!(solution, McSolution::Affine { .. }) as usize;
        let report = mc_hom_bijection_check(&g, &a, 3).map_err(|e| e.to_string())?;
        ensure(report.solved && report.verdict(), || format!("instance {done}: {report}"))?;
        done += 1;
    }
    ensure(nonempty > 0, || "every MC set was empty".into())?;
    Ok(format!("30 solvable instances bijective ({nonempty} nonempty MC sets)"))
}

type BettiTable = Vec<(usize, i64, usize)>;

/// Betti numbers of `L(C(gr g))` by weight at caps `(K, K)` and whether the
/// counit is a homology iso in every weight `≤ max_weight`.
fn counit_on_gr(h: &Arc<G>, weights: &[usize], max_weight: usize, cap: usize, window: (i64, i64)) -> Result<(BettiTable, bool), String> {
    let e = |e: curvlie::Error| e.to_string();
    let ce = chevalley_c_weighted(h, weights.to_vec(), cap, Some(cap)).map_err(e)?;
    let split = RetractionSplit::default_for(ce.algebra.clone()).map_err(e)?;
    let plus_weights: Vec<usize> = split.plus_basis.iter().map(|&i| ce.free.weight(i)).collect();
    let l = harrison_l_weighted(&split, plus_weights, cap).map_err(e)?;
    let counit = counit_map(&ce, &l).map_err(e)?;
    let d_l = l.algebra.differential_map();
    let d_h = h.differential_map();
    let mut table = Vec::new();
    let mut iso = true;
    for w in 1..=max_weight {
        let keep_l = |i: usize| l.free.weight(i) == w;
        let keep_h = |i: usize| weights[i] == w;
        let report = homology_of_subcomplex(&d_l, window, &keep_l).map_err(e)?;
        for (deg, b) in &report.betti {
            table.push((w, *deg, *b));
        }
        let cmp = compare_homology(&counit.map, &d_l, &d_h, window, &keep_l, &keep_h).map_err(e)?;
        iso &= cmp.iter().all(|c| c.is_iso());
    }
    Ok((table, iso))
}

fn c10_counit_on_gr() -> Outcome {
    let mut r = fuzz::rng(10);
    let shape = LieShape { max_dim: 3, min_degree: -2, max_degree: 0, ..LieShape::default() };
    let window = (-4, 1);
    let mut caps = Vec::new();
    for n in 0..10 {
        let g = Arc::new(fuzz::valid_curved_lie::<Q>(&mut r, &shape, n % 3 != 0, 60));
        let f = lower_central_series(&g);
        let gr = associated_graded(&f).map_err(|e| format!("algebra {n}: {e}"))?;
        let h = gr.algebra.clone();
        let top = gr.max_weight().max(1);
        let max_weight = top + 1;
        let mut k = max_weight;
        let (mut previous, _) = counit_on_gr(&h, &gr.weights, max_weight, k, window)?;
        let mut same = 0;
        let mut iso = false;
        while same < 2 {
            ensure(k < max_weight + 4, || format!("algebra {n}: Betti tables did not stabilize"))?;
            k += 1;
            let (table, now_iso) = counit_on_gr(&h, &gr.weights, max_weight, k, window)?;
            if table == previous { same += 1 } else { same = 0 }
            previous = table;
            iso = now_iso;
        }
        ensure(iso, || format!("algebra {n}: counit is not a homology iso at caps ({k}, {k})"))?;
        caps.push(k);
    }
    Ok(format!("10 algebras, homology iso in [-4, 1] at stable caps {caps:?}"))
}

fn c11_path_homotopy() -> Outcome {
    let ground = Arc::new(Cdga::<Q>::ground());
    let e = |e: curvlie::Error| e.to_string();

    // constant witnesses on fuzzed MC elements
    let mut r = fuzz::rng(11);
    let shape = LieShape { max_dim: 3, ..LieShape::default() };
    let mut constants = 0;
    let mut attempts = 0;
    while constants < 20 {
        attempts += 1;
        ensure(attempts < 1000, || format!("only {constants} MC elements found"))?;
        let g = Arc::new(fuzz::valid_curved_lie::<Q>(&mut r, &shape, true, 40));
        let a = if attempts % 2 == 0 { ground.clone() } else { small_cdga(&mut r) };
        let ctx = McHomotopyContext::new(g, a, 2).map_err(e)?;
        let McSolution::Affine { particular, directions } = mc_solve_linear(&ctx.base.algebra) else { continue };
        let mut xi = particular;
        for d in &directions {
            xi.add_scaled(d, &q(r.gen_range(-2..=2)));
        }
        let report = ctx.check(&xi, &xi, &ctx.constant(&xi)).map_err(e)?;
        ensure(report.verdict(), || format!("constant witness fails: {report}"))?;
        constants += 1;
    }

    // abelian ⟨x: -1⟩: the linear path from c₀ to c₁ is MC iff c₀ = c₁
    let line = Arc::new(G::from_tables(&[("x", -1)], &[], &[], "").map_err(e)?);
    let ctx = McHomotopyContext::new(line, ground.clone(), 3).map_err(e)?;
    let one = Vector::single(0, q(1));
    let mut linear = 0;
    for c0 in -2..=2 {
        for c1 in -2..=2 {
            let h = ctx
                .path_element(&[(0, one.scaled(&q(c0)), 0, false), (0, one.scaled(&q(c1 - c0)), 1, false)])
                .map_err(e)?;
            let report = ctx.check(&one.scaled(&q(c0)), &one.scaled(&q(c1)), &h).map_err(e)?;
            ensure(report.starts_at_source && report.ends_at_target, || "linear path endpoints".into())?;
            ensure(report.verdict() == (c0 == c1), || format!("linear path {c0} → {c1}: {report}"))?;
            let dz_part = ctx.path_element(&[(0, one.scaled(&q(c1 - c0)), 0, true)]).map_err(e)?;
            let residual = mc_residual(&ctx.tensor.algebra, &h).map_err(e)?;
            ensure(residual == dz_part.neg(), || format!("linear path {c0} → {c1}: residual"))?;
            linear += 1;
        }
    }

    // ⟨x: -1, y: -2⟩, dx = y: h = x ⊗ p(z) is MC only for p = 0
    let dgla = Arc::new(G::from_tables(&[("x", -1), ("y", -2)], &[], &[("x", "y")], "").map_err(e)?);
    let cap = 3;
    let ctx = McHomotopyContext::new(dgla, ground, cap).map_err(e)?;
    let residuals: Vec<Vector<Q>> = (0..=cap)
        .map(|k| ctx.path_element(&[(0, one.clone(), k, false)]).and_then(|h| mc_residual(&ctx.tensor.algebra, &h)))
        .collect::<curvlie::Result<_>>()
        .map_err(e)?;
    // the residual is linear in p here; injectivity means only p = 0 works
    ensure(curvlie::graded::rank_of(&residuals) == cap + 1, || "a nonzero p(z) solves the MC equation".into())?;
    let zero = Vector::new();
    let bump = ctx.path_element(&[(0, one.clone(), 1, false), (0, one.neg(), 2, false)]).map_err(e)?;
    let report = ctx.check(&zero, &zero, &bump).map_err(e)?;
    ensure(report.starts_at_source && report.ends_at_target && !report.verdict(), || format!("z - z²: {report}"))?;
    ensure(ctx.check(&zero, &zero, &ctx.constant(&zero)).map_err(e)?.verdict(), || "constant 0".into())?;

    Ok(format!("{constants} constant witnesses, {linear} linear paths, only p = 0 for dx = y"))
}

type Criterion = (usize, &'static str, fn() -> Outcome);

const CRITERIA: [Criterion; 11] = [
    (1, "axiom fuzz", c1_axiom_fuzz),
    (2, "curved-morphism calculus", c2_morphism_calculus),
    (3, "twist/MC equivalence", c3_twist_mc),
    (4, "lower central series", c4_lcs),
    (5, "free-Lie dimension oracle", c5_free_lie_dims),
    (6, "coproduct contract", c6_coproduct),
    (7, "adjunction round trip", c7_adjunction),
    (8, "curvature/augmentation obstruction", c8_augmentation),
    (9, "MC/Hom bijection", c9_bijection),
    (10, "counit on associated graded", c10_counit_on_gr),
    (11, "path-algebra homotopy", c11_path_homotopy),
];

fn main() {
    let filter: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let results: Vec<(usize, &str, Outcome, f64)> = std::thread::scope(|s| {
        let handles: Vec<_> = CRITERIA
            .iter()
            .filter(|(n, _, _)| filter.is_empty() || filter.contains(n))
            .map(|&(n, name, run)| {
                s.spawn(move || {
                    let start = Instant::now();
                    let outcome = std::panic::catch_unwind(run).unwrap_or_else(|p| {
                        let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
                        Err(format!("panicked: {}", msg.unwrap_or_default()))
                    });
                    (n, name, outcome, start.elapsed().as_secs_f64())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("joined")).collect()
    });
    let mut failed = 0;
    for (n, name, outcome, secs) in &results {
        match outcome {
            Ok(detail) => println!("criterion {n:>2} {name}: PASS ({detail}) [{secs:.1}s]"),
            Err(detail) => {
                failed += 1;
                println!("criterion {n:>2} {name}: FAIL ({detail}) [{secs:.1}s]");
            }
        }
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
