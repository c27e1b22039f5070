//! The universal enveloping algebra in the PBW basis, the smash product with
//! a finite group, and the classical co-Poisson structure.

mod copoisson;
mod pbw;
mod smash;

pub use copoisson::{
    copoisson_axiom_defects, copoisson_axiom_defects_with_cap, copoisson_delta, required_cap, CoPoisson, Letter,
};
pub use pbw::{
    coproduct0_mono, counit, counit_mono, cyclic_legs3, degree, leg_degree, map_leg, map_legs, one_leg,
    permute_legs, splice_leg, tensor_concat, tensor_one, total_degree, Envelope, Mono, UElem, UTensor,
};
pub use smash::{smash_degree, SElem, SMono, STensor, Smash};
