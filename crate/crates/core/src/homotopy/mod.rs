//! Maurer–Cartan theory, homology, filtered quasi-isomorphisms, homotopies
//! of MC elements through the path object `A[z,dz]`, and the bijection
//! between MC elements of `g ⊗ A` and algebra maps `C(g) → A`.

pub mod bijection;
pub mod filtered;
pub mod homology;
pub mod mc;
pub mod paths;

pub use bijection::{mc_hom_bijection_check, BijectionReport};
pub use filtered::{filtered_qiso_check, FilteredQisoReport, WeightComparison};
pub use homology::{compare_homology, homology, homology_of_subcomplex, DegreeComparison, HomologyReport, DEFAULT_WINDOW};
pub use mc::{mc_check, mc_residual, mc_solve_linear, twist_flatness, McElement, McSolution, TwistFlatness};
pub use paths::{mc_simplicial_level, McHomotopyContext, McHomotopyReport, McSimplicialLevel};
