//! Curved Lie algebras, curved morphisms, (co)limits, filtrations.

pub mod algebra;
pub mod filtration;
pub mod limits;
pub mod morphism;
pub mod quotient;
pub mod validate;

pub use algebra::{CurvedLieAlgebra, LieBracket};
pub use filtration::{associated_graded, lower_central_series, AssociatedGraded, Filtration};
pub use limits::{coequaliser, coproduct, coproduct_symmetry, equaliser, product, Coproduct, Equaliser, Product};
pub use quotient::{homogeneous_components, ideal_closure, quotient_by_ideal, quotient_by_subspace, subalgebra, Quotient, Subspace};
pub use morphism::{CurvedMorphism, MorphismAxiom, MorphismReport};
pub use validate::{Axiom, AxiomFailure, Checks, ValidationReport};
