//! Varieties of DG module structures on a fixed graded vector space: constraint
//! generation, the action of graded automorphisms, and tangent spaces.

mod instance;
mod point;
mod tangent;

pub use instance::{normalize_constraints, ModuliInstance, Slot};
pub use point::{act_on, compose, orbit_isomorphism, GradedAutomorphism, ModuliPoint};
pub use tangent::{
    eval_dual, jacobian, orbit_tangent, tangent_space, tangent_space_dual, yext_dimension, Dual, TangentReport,
};
