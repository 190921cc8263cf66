//! The functors `C` (Chevalley–Eilenberg) and `L` (Harrison-type) between
//! curved Lie algebras and augmented-up-to-retraction cdgas, their action
//! on morphisms, and the adjunction with its unit and counit.

pub mod adjunction;
pub mod chevalley;
pub mod harrison;

pub use adjunction::{adjunction_backward, adjunction_forward, counit_map, twisting_element, unit_map};
pub use chevalley::{chevalley_c, chevalley_c_map, chevalley_c_weighted, ChevalleyEilenbergModel, DEFAULT_WORD_CAP};
pub use harrison::{harrison_l, harrison_l_map, harrison_l_weighted, HarrisonLieModel};

#[cfg(test)]
mod tests;
