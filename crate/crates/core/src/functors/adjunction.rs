use super::chevalley::ChevalleyEilenbergModel;
use super::harrison::HarrisonLieModel;
use crate::cdga::{CdgaMorphism, LieCdgaTensor};
use crate::error::{Error, Result};
use crate::graded::{Field, Vector};
use crate::lie::CurvedMorphism;

/// `Hom(C(g), A) → Hom(L(A), g)`: with `a_x = φ(s_x) = Σ_e c_{xe} ẽ + ε(a_x)·1`,
/// `f(t_e) = Σ_x c_{xe} x` and `α = -Σ_x ε(a_x) x`.
pub fn adjunction_forward<S: Field>(
    phi: &CdgaMorphism<S>,
    ce: &ChevalleyEilenbergModel<S>,
    l: &HarrisonLieModel<S>,
) -> Result<CurvedMorphism<S>> {
    if phi.source != ce.algebra || phi.target != l.split.algebra {
        return Err(Error::DimensionMismatch("φ must go from C(g) to A".into()));
    }
    let mut images = vec![Vector::new(); l.split.plus_dim()];
    let mut alpha = Vector::new();
    for (x, a) in ce.generator_images(phi).iter().enumerate() {
        let (plus, k) = l.split.decompose(a);
        for (p, c) in plus.iter() {
            images[*p].add_term(x, c.clone());
        }
        alpha.add_term(x, -k);
    }
    l.morphism_to(&ce.lie, &images, alpha)
}

/// `Hom(L(A), g) → Hom(C(g), A)`: `s_x ↦ Σ_e [f(t_e)]_x ẽ - α_x·1`.
pub fn adjunction_backward<S: Field>(
    m: &CurvedMorphism<S>,
    ce: &ChevalleyEilenbergModel<S>,
    l: &HarrisonLieModel<S>,
) -> Result<CdgaMorphism<S>> {
    if m.source != l.algebra || m.target != ce.lie {
        return Err(Error::DimensionMismatch("the morphism must go from L(A) to g".into()));
    }
    let mut images = vec![Vector::new(); ce.lie.dim()];
    for p in 0..l.split.plus_dim() {
        let tilde = l.split.tilde(p);
        for (x, c) in m.map.columns[l.generator(p)].iter() {
            images[*x].add_scaled(&tilde, c);
        }
    }
    let unit = l.split.algebra.unit_vector();
    for (x, c) in m.alpha.iter() {
        images[*x].add_scaled(&unit, &-c.clone());
    }
    ce.algebra_map(&l.split.algebra, &images)
}

/// The degree -1 element `ξ = Σ_x x ⊗ φ(s_x)` of `g ⊗ A`.
pub fn twisting_element<S: Field>(
    phi: &CdgaMorphism<S>,
    ce: &ChevalleyEilenbergModel<S>,
    tensor: &LieCdgaTensor<S>,
) -> Vector<S> {
    tensor.assemble(&ce.generator_images(phi))
}

/// The unit `C(L(A)) → A`: `s_{t_e} ↦ ẽ`, every other generator to 0.
pub fn unit_map<S: Field>(
    l: &HarrisonLieModel<S>,
    ce_of_l: &ChevalleyEilenbergModel<S>,
) -> Result<CdgaMorphism<S>> {
    if ce_of_l.lie != l.algebra {
        return Err(Error::DimensionMismatch("C must be taken of L(A)".into()));
    }
    let mut images = vec![Vector::new(); l.algebra.dim()];
    for p in 0..l.split.plus_dim() {
        images[l.generator(p)] = l.split.tilde(p);
    }
    ce_of_l.algebra_map(&l.split.algebra, &images)
}

/// The counit `L(C(g)) → g`, strict: `t_{s_x} ↦ x`, every other
/// generator to 0. `L` must be taken along the default retraction.
pub fn counit_map<S: Field>(
    ce: &ChevalleyEilenbergModel<S>,
    l_of_c: &HarrisonLieModel<S>,
) -> Result<CurvedMorphism<S>> {
    if l_of_c.split.algebra != ce.algebra {
        return Err(Error::DimensionMismatch("L must be taken of C(g)".into()));
    }
    let identity = CdgaMorphism::identity(ce.algebra.clone());
    adjunction_forward(&identity, ce, l_of_c)
}
