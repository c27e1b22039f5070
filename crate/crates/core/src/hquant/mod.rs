//! Order-by-order quantization over `ℏ`, truncated after a fixed order.
//!
//! Every quantization is presented on `U(𝔞)[[ℏ]]` with the undeformed
//! product; coproducts, twists and isomorphisms are algebra maps stored by
//! their values on generators and solved one order at a time by exact linear
//! algebra.

mod assembly;
mod axioms;
mod compare;
mod coproduct;
mod family;
mod qt;
mod qtwist;
mod ring;
mod system;

use serde::Serialize;

pub use assembly::{assemble_gamma_quantization, assemble_gamma_quantization_over, assemble_gamma_quantization_with, direct_from_j, gauge_transform, quasitriangular_gamma_quantize, with_trivial_v, ATensor, Pipeline, TruncatedGammaBialgebra};
pub use axioms::{bialgebra_axiom_defects, classical_limit_defects, SeriesDefect};
pub use compare::{compare_pipelines, CertificateRow, Comparison, EquivalenceCertificate, PipelineWitness};
pub use coproduct::{coassoc_defect, solve_coproduct, TruncatedCoproduct};
pub use family::{check_v_cocycle, GaugeEvent, TwistStore};
pub use qt::{associator, coboundary_lift, coproduct_from_j, solve_j_quasitriangular};
pub use qtwist::{
    cocycle_defect, composed_iso, i_composition_defect, intertwining_defect_q, iso_relation_defect, solve_iso_i,
    solve_twist_f, solve_v, v_relation_defect, QuantIso, QuantTwist, QuantV, VInputs,
};
pub use ring::{counit_on_leg, delta0_iter, delta0_on_leg, insert_one, GenMap, Ring, Ser};
pub use system::{unknown_keys, Caps};

/// Order, degree caps and multiplication window for the solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuantOptions {
    pub order: usize,
    pub caps: Caps,
    pub window: usize,
}

impl Default for QuantOptions {
    fn default() -> Self {
        Self { order: 2, caps: Caps::default(), window: 64 }
    }
}

impl QuantOptions {
    pub fn with_order(order: usize) -> Self {
        Self { order, ..Self::default() }
    }
}
