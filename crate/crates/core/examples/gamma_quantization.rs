//! Quantization of `sl2` with the Cartan involution at order two, checked
//! against the Γ-graded bialgebra axioms and its classical limit.

use gamma_bialg::gamma::catalog as gc;
use gamma_bialg::hquant::{assemble_gamma_quantization, bialgebra_axiom_defects, classical_limit_defects, QuantOptions};

fn main() -> gamma_bialg::Result<()> {
    let g = gc::sl2_cartan_z2();
    let a = assemble_gamma_quantization(&g, &QuantOptions::with_order(2))?;
    for ev in a.gauge_log() {
        println!("{}: {}", ev.object, ev.action);
    }
    let axioms = bialgebra_axiom_defects(&a, 2)?;
    println!("bialgebra axioms: {} entries, all zero {}", axioms.entries().len(), axioms.is_zero());
    let limit = classical_limit_defects(&a, &g, 2)?;
    println!("classical limit:  {} entries, all zero {}", limit.entries().len(), limit.is_zero());
    Ok(())
}
