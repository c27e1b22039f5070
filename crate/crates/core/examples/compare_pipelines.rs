//! The direct quantization `Ad(J)∘Δ_0` of `U(sl2) ⋊ Z/2` compared with the
//! quantization assembled from twists, up to an explicit isomorphism.

use gamma_bialg::gamma::catalog as gc;
use gamma_bialg::hquant::{
    assemble_gamma_quantization, compare_pipelines, quasitriangular_gamma_quantize, Comparison, QuantOptions,
};
use gamma_bialg::lie::catalog;

fn main() -> gamma_bialg::Result<()> {
    let opts = QuantOptions::with_order(2);
    let direct = quasitriangular_gamma_quantize(&catalog::sl2_quasitriangular(), &gc::sl2_cartan_action(), &opts)?;
    let generic = assemble_gamma_quantization(&gc::sl2_cartan_z2(), &opts)?;
    match compare_pipelines(&direct, &generic, &opts)? {
        Comparison::Witness(w) => {
            for (x, u) in w.u.iter().enumerate() {
                let terms: usize = u.coeffs().iter().map(|c| c.len()).sum();
                println!("u_{} has {terms} terms", direct.group().label(x));
            }
            println!("witness found");
        }
        Comparison::NotFound(cert) => println!("no witness at order {}: {} rows", cert.order, cert.rows.len()),
    }
    Ok(())
}
