use std::sync::Arc;

use num_rational::BigRational;

use super::*;
use crate::graded::{Field, Vector};
use crate::lie::CurvedLieAlgebra;

type Q = BigRational;

fn q(n: i64) -> Q {
    Q::from_i64(n)
}

fn dual_numbers() -> Arc<Cdga<Q>> {
    Arc::new(Cdga::from_tables(&[("1", 0), ("u", -2)], "1", &[], &[]).unwrap())
}

#[test]
fn validate_examples() {
    assert!(Cdga::<Q>::ground().validate().is_valid());
    assert!(dual_numbers().validate().is_valid());
    // a·b = c with d a = e but d c = 0 breaks Leibniz
    let broken = Cdga::<Q>::from_tables(
        &[("1", 0), ("a", 0), ("e", -1)],
        "1",
        &[],
        &[("a", "e")],
    )
    .unwrap();
    assert!(broken.validate().is_valid());
    let broken = Cdga::<Q>::from_tables(
        &[("1", 0), ("a", 0), ("e", -1)],
        "1",
        &[("a", "a", "a")],
        &[("a", "e")],
    )
    .unwrap();
    let report = broken.validate();
    assert!(report.failed(CdgaAxiom::Leibniz), "{report}");
}

#[test]
fn default_split_of_dual_numbers_is_an_augmentation() {
    let s = RetractionSplit::default_for(dual_numbers()).unwrap();
    assert!(s.augmentation);
    assert!(s.d_k.iter().all(|c| *c == q(0)) && s.m_k.is_empty());
    assert!(s.reassembles());
    assert!(s.epsilon_is_dg_morphism());
}

#[test]
fn two_point_algebra_splits() {
    // Q × Q with basis 1 = (1,1), e = (1,0)
    let a = Arc::new(Cdga::<Q>::from_tables(&[("1", 0), ("e", 0)], "1", &[("e", "e", "e")], &[]).unwrap());
    assert!(a.validate().is_valid());
    let first = RetractionSplit::new(a.clone(), vec![q(1), q(1)]).unwrap();
    assert!(first.augmentation && first.epsilon_is_dg_morphism());
    // with basis 1, f = (1,-1) the default retraction is not multiplicative
    let b = Arc::new(Cdga::<Q>::from_tables(&[("1", 0), ("f", 0)], "1", &[("f", "f", "1")], &[]).unwrap());
    assert!(b.validate().is_valid());
    let s = RetractionSplit::default_for(b).unwrap();
    assert!(!s.augmentation && !s.epsilon_is_dg_morphism());
    assert_eq!(s.m_k.get(&(0, 0)), Some(&q(1)));
    assert!(s.reassembles());
}

#[test]
fn retraction_must_be_a_retraction() {
    let a = dual_numbers();
    assert!(matches!(RetractionSplit::new(a.clone(), vec![q(2), q(0)]), Err(crate::Error::InvalidRetraction(_))));
    assert!(matches!(RetractionSplit::new(a, vec![q(1), q(1)]), Err(crate::Error::InvalidRetraction(_))));
}

#[test]
fn tensor_with_ground_field_is_identity() {
    let g = Arc::new(CurvedLieAlgebra::<Q>::from_tables(&[("x", -1), ("y", -2)], &[], &[("x", "y")], "y").unwrap());
    let t = tensor_lie_cdga(&g, &Arc::new(Cdga::ground())).unwrap();
    assert_eq!(*t.algebra, *g);
}

#[test]
fn tensor_lie_cdga_examples() {
    let g = Arc::new(CurvedLieAlgebra::<Q>::from_tables(&[("x", -1), ("y", -2)], &[], &[("x", "y")], "y").unwrap());
    let a = Arc::new(Cdga::<Q>::from_tables(&[("1", 0), ("e", 0)], "1", &[("e", "e", "e")], &[]).unwrap());
    let t = tensor_lie_cdga(&g, &a).unwrap();
    assert!(t.algebra.is_abelian());
    assert!(t.algebra.validate().is_valid());
    assert_eq!(t.algebra.format(t.algebra.curvature()), "y⊗1:1");

    let h = Arc::new(
        CurvedLieAlgebra::<Q>::from_tables(
            &[("h", 0), ("u", -1), ("w", -2)],
            &[("h", "u", "u"), ("h", "w", "w:2"), ("u", "u", "w:2")],
            &[("h", "u"), ("u", "w:-2")],
            "w",
        )
        .unwrap(),
    );
    let b = Arc::new(
        Cdga::<Q>::from_tables(&[("1", 0), ("a", 0), ("e", -1)], "1", &[], &[("a", "e")]).unwrap(),
    );
    assert!(b.validate().is_valid());
    let t = tensor_lie_cdga(&h, &b).unwrap();
    let report = t.algebra.validate();
    assert!(report.is_valid(), "{report}");
}

#[test]
fn simplex_forms_examples() {
    let f0 = SimplexForms::<Q>::new(0, 3).unwrap();
    assert_eq!(f0.algebra.dim(), 1);
    let f1 = SimplexForms::<Q>::new(1, 2).unwrap();
    let names: Vec<&str> = f1.algebra.space().basis().iter().map(|b| b.name.as_str()).collect();
    assert_eq!(names.len(), 5);
    for n in ["1", "t", "t^2", "dt", "t·dt"] {
        assert!(names.contains(&n), "{names:?}");
    }
    let a = &f1.algebra;
    assert_eq!(a.d(&a.parse_element("t^2").unwrap()), a.parse_element("t·dt:2").unwrap());
    assert!(a.validate().is_valid());
    let f2 = SimplexForms::<Q>::new(2, 3).unwrap();
    assert!(f2.algebra.validate().is_valid());
    for v in 0..=2 {
        assert!(f2.is_valid_within_cap(&f2.vertex(v).unwrap()));
    }
    assert!(f2.vertex(0).unwrap().is_valid());
    // t1^3 · t1 is dropped by the truncation but evaluates to 1 at vertex 1
    assert!(!f2.vertex(1).unwrap().is_valid());
}

#[test]
fn path_algebra_endpoints() {
    let a = Arc::new(
        Cdga::<Q>::from_tables(&[("1", 0), ("a", 0), ("e", -1)], "1", &[], &[("a", "e")]).unwrap(),
    );
    let p = PathAlgebra::new(a.clone(), 2).unwrap();
    assert!(p.algebra.validate().is_valid());
    let (e0, e1) = &p.endpoints;
    assert!(e0.is_valid());
    assert!(p.is_valid_within_cap(e1));
    let z = p.z_power(1, false).unwrap();
    let unit = p.z_power(0, false).unwrap();
    let one_z = p.embed(&a.unit_vector(), z);
    assert!(e0.apply(&one_z).is_zero());
    assert_eq!(e1.apply(&one_z), a.unit_vector());
    let a_z = p.embed(&Vector::unit(1), z);
    assert!(e0.apply(&a_z).is_zero());
    assert_eq!(e1.apply(&a_z), Vector::unit(1));
    // d(a⊗z) = da⊗z + a⊗dz
    let dz = p.z_power(0, true).unwrap();
    let mut expected = p.embed(&Vector::unit(2), z);
    expected.add(&p.embed(&Vector::unit(1), dz));
    assert_eq!(p.algebra.d(&a_z), expected);
    assert_eq!(e1.apply(&p.embed(&a.unit_vector(), unit)), a.unit_vector());
}
