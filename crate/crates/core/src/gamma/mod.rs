//! Finite groups acting on Lie bialgebras, and the compatibility conditions
//! between the action and a family of twists.

mod action;
mod bialg;
pub mod catalog;
mod group;

pub use action::{check_action, transport, GroupAction};
pub use bialg::{gamma_defects, gamma_morphism_check, quasitriangular_gamma, GammaLieBialgebra};
pub use group::FiniteGroup;
