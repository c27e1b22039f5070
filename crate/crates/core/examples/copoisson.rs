//! The co-Poisson structure on `U(sl2) ⋊ Z/2` and its axioms on all smash
//! monomials of degree at most two.

use gamma_bialg::envelope::copoisson_axiom_defects;
use gamma_bialg::gamma::catalog as gc;

fn main() -> gamma_bialg::Result<()> {
    let g = gc::sl2_cartan_z2();
    let rep = copoisson_axiom_defects(&g, 2)?;
    for cond in ["derivation", "antisymmetry", "coderivation", "co-jacobi", "grading"] {
        let n = rep.entries().iter().filter(|e| e.condition == cond).count();
        println!("{cond:<13} {n:>4} entries, zero {}", rep.condition_is_zero(cond));
    }
    Ok(())
}
