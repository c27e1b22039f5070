//! Lie algebras, Lie bialgebras and quasitriangular structures by structure
//! constants, with every classical axiom available as an exact defect.

mod algebra;
pub mod catalog;
mod double;
mod quasi;

pub use algebra::{
    coboundary_cobracket, cocycle_defect, cojacobi_defect, cybe_defect, invariance_defect,
    jacobi_defect, LieAlgebra, LieBialgebra, Vector,
};
pub use double::{canonical_r, double_algebra_with_signs, drinfeld_double, MIXED_SIGNS};
pub use quasi::QuasitriangularData;
