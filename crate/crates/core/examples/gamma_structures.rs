//! Γ-Lie bialgebras built from a quasitriangular structure and a group
//! action, with the three compatibility conditions checked exactly.

use gamma_bialg::gamma::{catalog as gc, gamma_defects};

fn main() -> gamma_bialg::Result<()> {
    for (name, g) in gc::test_matrix() {
        let grp = g.action().group();
        let rep = gamma_defects(&g)?;
        println!("{name}: |Γ| = {}, {} checks, all zero {}", grp.order(), rep.entries().len(), rep.is_zero());
        for x in grp.elements() {
            if !g.twist(x).is_zero() {
                println!("    f_{} = {}", grp.label(x), g.twist(x));
            }
        }
    }
    Ok(())
}
