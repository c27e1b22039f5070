//! Exact classical axiom checks on the standard `sl2` Lie bialgebra, and a
//! perturbed cobracket that the cocycle check rejects.

use gamma_bialg::exact::qi;
use gamma_bialg::lie::catalog::{self, sl2_basis::*};
use gamma_bialg::lie::{cocycle_defect, cojacobi_defect, cybe_defect, invariance_defect, jacobi_defect};

fn main() -> gamma_bialg::Result<()> {
    let b = catalog::sl2_standard();
    let r = catalog::sl2_standard_r();
    println!("r = {r}");
    for (i, d) in b.cobracket().iter().enumerate() {
        println!("δ({}) = {d}", b.alg().space().label(i));
    }
    println!("Jacobi defect zero:      {}", jacobi_defect(b.alg()).is_zero());
    println!("co-Jacobi defect zero:   {}", cojacobi_defect(b.cobracket())?.is_zero());
    println!("cocycle defect zero:     {}", cocycle_defect(b.alg(), b.cobracket())?.is_zero());
    println!("CYBE defect zero:        {}", cybe_defect(b.alg(), &r)?.is_zero());
    let t = r.add(&r.swap()?)?;
    println!("t-invariance defect zero: {}", invariance_defect(b.alg(), &t)?.is_zero());

    let mut cob = b.cobracket().to_vec();
    cob[H].add_term(vec![E, F], qi(1))?;
    cob[H].add_term(vec![F, E], qi(-1))?;
    let defect = cocycle_defect(b.alg(), &cob)?;
    println!("after adding e∧f to δ(h), cocycle defect = {defect}");
    Ok(())
}
