//! Semifree resolutions over finite DG algebras over a field, Ext, and the
//! semidualizing checks.

mod ext;
mod resolution;
mod semidualizing;

pub use ext::{ext, ext_with, resolution_homothety, semifree_hom, ExtTable, SemifreeHom};
pub use resolution::{
    check_semibasis, semifree_resolution, semifree_resolution_with, Generator, GeneratorOrder, Resolution,
    SemifreeModule,
};
pub use semidualizing::{
    is_semidualizing_dg, is_semidualizing_module, maximal_ideal, residue_functional, semidualizing_length_bound,
    socle_dimension, LengthBound, SemidualizingVerdict,
};
