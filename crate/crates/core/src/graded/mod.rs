//! Exact graded linear algebra: scalars, graded spaces, sparse vectors,
//! echelon forms and homogeneous linear maps.

pub mod echelon;
pub mod element;
pub mod map;
pub mod scalar;
pub mod space;
pub mod sparse;

pub use echelon::{rank_of, solve_linear, Echelon, Reduction};
pub use element::Element;
pub use map::{tensor_differential, tensor_maps, Kernel, LinearMap};
pub use scalar::{is_odd, Field};
pub use space::{
    dualize, koszul_sign, shift_degrees, suspend, tensor_name, tensor_spaces, BasisVector,
    GradedSpace, SpaceRef,
};
pub use sparse::{SparseVec, Vector};
