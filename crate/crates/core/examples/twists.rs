//! Twisting `sl2` by `f⊗e − e⊗f`, composing twists, and the induced
//! isomorphism of Drinfeld doubles.

use gamma_bialg::exact::{qi, Tensor};
use gamma_bialg::lie::catalog::{self, sl2_basis::*};
use gamma_bialg::lie::drinfeld_double;
use gamma_bialg::twists::{compose_twists, double_twist_iso, intertwining_defect, negated, twist, twist_defect};

fn main() -> gamma_bialg::Result<()> {
    let b = catalog::sl2_standard();
    let f = Tensor::from_terms(vec![3, 3], [(vec![F, E], qi(1)), (vec![E, F], qi(-1))])?;
    println!("f = {f}");
    println!("twist defect zero: {}", twist_defect(&b, &f)?.is_zero());
    let bf = twist(&b, &f)?;
    for (i, d) in bf.cobracket().iter().enumerate() {
        println!("δ_f({}) = {d}", b.alg().space().label(i));
    }

    let pair = compose_twists(&b, &f, &negated(&f))?;
    println!("f + (−f) = {} returns the original bialgebra: {}", pair.sum(), twist(&b, &pair.sum())? == b);

    let m = double_twist_iso(&b, &f)?;
    let src = drinfeld_double(&b)?;
    let dst = drinfeld_double(&bf)?;
    println!("D(sl2) → D(sl2_f) intertwines: {}", intertwining_defect(src.alg(), dst.alg(), &m)?.is_zero());
    Ok(())
}
