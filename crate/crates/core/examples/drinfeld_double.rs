//! The Drinfeld double of every catalog Lie bialgebra, with its canonical
//! `r`-matrix checked against the classical Yang-Baxter equation.

use gamma_bialg::lie::catalog;
use gamma_bialg::lie::{cybe_defect, drinfeld_double, jacobi_defect};

fn main() -> gamma_bialg::Result<()> {
    for &name in catalog::NAMES {
        let b = catalog::by_name(name).expect("listed");
        let d = drinfeld_double(&b)?;
        println!(
            "D({name}): dim {}, Jacobi zero {}, CYBE of canonical r zero {}",
            d.alg().dim(),
            jacobi_defect(d.alg()).is_zero(),
            cybe_defect(d.alg(), d.r())?.is_zero()
        );
    }
    Ok(())
}
