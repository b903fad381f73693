//! Finite DG algebras and DG modules given by structure constants, with the
//! standard constructions on them.

mod algebra;
mod constructions;
mod examples;
mod module;

pub use algebra::{Axiom, DgAlgebra, DgAlgebraData, ProductTable, VerificationReport, Violation};
pub use constructions::{
    base_change, dg_hom, dg_tensor, evaluate_at_unit, homothety_morphism, quotient_module, restrict_scalars,
    suspend_module, DgHom,
};
pub use examples::{
    base_field_algebra, degree_zero_algebra, exterior_one, periodic_module, residue_module, square_zero_algebra,
    truncated_polynomial_algebra,
};
pub use module::{is_a_linear, DgAlgebraMorphism, DgModule, DgModuleData, DgModuleMorphism};

pub(crate) use algebra::unit_vec;
pub(crate) use constructions::{to_polys, to_scalars};
