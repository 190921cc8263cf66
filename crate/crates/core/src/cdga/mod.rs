//! Unital commutative dg algebras, retraction splittings, truncated free
//! commutative algebras, polynomial forms and path algebras, and the
//! curved Lie algebra `g ⊗ A`.

pub mod algebra;
pub mod forms;
pub mod free;
pub mod lie_tensor;
pub mod split;

pub use algebra::{Cdga, CdgaAxiom, CdgaMorphism, CdgaMorphismAxiom, CdgaReport};
pub use forms::{tensor_cdga, PathAlgebra, SimplexForms, DEFAULT_POLY_CAP};
pub use free::FreeCommutative;
pub use lie_tensor::{tensor_lie_cdga, LieCdgaTensor};
pub use split::RetractionSplit;

#[cfg(test)]
mod tests;
