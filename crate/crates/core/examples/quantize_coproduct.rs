//! Order-by-order deformation of the coproduct of `U(sl2)` up to `ℏ²`.

use gamma_bialg::envelope::{Envelope, UTensor};
use gamma_bialg::exact::format_scalar;
use gamma_bialg::hquant::{coassoc_defect, solve_coproduct, QuantOptions};
use gamma_bialg::lie::catalog;

fn show(env: &Envelope, t: &UTensor) -> String {
    if t.is_zero() {
        return "0".into();
    }
    let terms: Vec<String> = t
        .iter()
        .map(|(legs, c)| {
            let legs: Vec<String> = legs.iter().map(|m| env.mono_label(m)).collect();
            format!("{}·{}", format_scalar(c), legs.join("⊗"))
        })
        .collect();
    terms.join(" + ")
}

fn main() -> gamma_bialg::Result<()> {
    let b = catalog::sl2_standard();
    let d = solve_coproduct(&b, &QuantOptions::with_order(2))?;
    for i in 0..b.dim() {
        for k in 1..=2 {
            println!("Δ_{k}({}) = {}", b.alg().space().label(i), show(d.env(), d.table(k, i)));
        }
    }
    let zero = coassoc_defect(&d)?.iter().all(|s| s.is_zero());
    println!("coassociative mod ℏ³: {zero}");
    Ok(())
}
