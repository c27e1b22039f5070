use super::coproduct::{coassoc_linear, TruncatedCoproduct};
use super::qtwist::QuantTwist;
use super::ring::{delta0_iter, GenMap, Ring, Ser};
use super::system::{unknown_keys, Columns, Rows};
use super::QuantOptions;
use crate::envelope::{tensor_one, Envelope, UElem, UTensor};
use crate::error::Result;
use crate::exact::q;
use crate::gamma::GroupAction;
use crate::lie::QuasitriangularData;

/// `Φ = Q^{-1}P` with `P = (J⊗1)(Δ_0⊗id)J` and `Q = (1⊗J)(id⊗Δ_0)J`.
pub fn associator(ring: &Ring, j: &Ser) -> Result<Ser> {
    let d0 = GenMap::coproduct0(ring, ring.env.dim());
    let j = ring.fit(j);
    let one = ring.one(1);
    let p = ring.mul(&ring.tensor(&j, &one)?, &d0.apply_leg(ring, &j, 0)?)?;
    let qq = ring.mul(&ring.tensor(&one, &j)?, &d0.apply_leg(ring, &j, 1)?)?;
    ring.mul(&ring.inv(&qq)?, &p)
}

/// Rows of `[Φ, Δ_0^{(3)}x] = 0` and, with an action, `θ_γ^{⊗3}Φ = Φ`.
fn associator_defects(ring: &Ring, phi: &Ser, action: Option<&GroupAction>) -> Result<Vec<Ser>> {
    let mut out = Vec::new();
    for a in 0..ring.env.dim() {
        let x = ring.monomial(delta0_iter(&Envelope::gen(a), 3), 0);
        out.push(ring.commutator(phi, &x)?);
    }
    if let Some(act) = action {
        for g in 0..act.group().order() {
            if g == act.group().identity() {
                continue;
            }
            let th = GenMap::from_linear(ring, act.theta(g));
            out.push(ring.sub(&th.apply_all_legs(ring, phi)?, phi));
        }
    }
    Ok(out)
}

/// Solves for `J = 1⊗1 + ℏr/2 + …` making `Ad(J)∘Δ_0` coassociative, and
/// with an action also making `x ↦ J(γ⊗γ)J^{-1}` coassociative.
pub fn solve_j_quasitriangular(
    qd: &QuasitriangularData,
    action: Option<&GroupAction>,
    opts: &QuantOptions,
) -> Result<QuantTwist> {
    let env = Envelope::new(qd.alg().clone(), opts.window);
    let dim = env.dim();
    let n = opts.order;
    let mut j = Ser::constant(tensor_one(2), n);
    if n >= 1 {
        *j.coeff_mut(1) = Envelope::lift_tensor(qd.r()).scaled(&q(1, 2));
    }
    for k in 2..=n {
        let ring = Ring::new(&env, k);
        let phi = associator(&ring, &j)?;
        let defects = associator_defects(&ring, &phi, action)?;
        let keys = unknown_keys(dim, 2, opts.caps.leg(k), opts.caps.total(k));
        let mut cols = Columns::default();
        cols.push_slot(0, &keys);
        let mut rows = Rows::default();
        for (e, d) in defects.iter().enumerate() {
            rows.residual(e, d.coeff(k));
        }
        let thetas: Vec<GenMap> = match action {
            Some(act) => (0..act.group().order())
                .filter(|&g| g != act.group().identity())
                .map(|g| GenMap::from_linear(&Ring::new(&env, 0), act.theta(g)))
                .collect(),
            None => Vec::new(),
        };
        let ring0 = Ring::new(&env, 0);
        let xs: Vec<UTensor> = (0..dim).map(|a| delta0_iter(&Envelope::gen(a), 3)).collect();
        for c in 0..cols.len() {
            let lin = coassoc_linear(&cols.tensor(c));
            for (a, x) in xs.iter().enumerate() {
                rows.image(a, c, &env.commutator_tensor(&lin, x)?);
            }
            for (e, th) in thetas.iter().enumerate() {
                let moved = th.apply_all_legs(&ring0, &ring0.monomial(lin.clone(), 0))?;
                rows.image(dim + e, c, &moved.coeff(0).minus(&lin));
            }
        }
        let x = rows.solve(cols.len(), "quasitriangular J", k, opts.caps.total(k))?;
        *j.coeff_mut(k) = cols.value(&x, 0);
    }
    QuantTwist::new(j)
}

/// `Ad(J) ∘ Δ_0`.
pub fn coproduct_from_j(qd: &QuasitriangularData, j: &QuantTwist, opts: &QuantOptions) -> Result<TruncatedCoproduct> {
    let prim = TruncatedCoproduct::primitive(qd.alg(), opts);
    prim.conjugated(j.series())
}

/// The coboundary cobracket `[r, x⊗1 + 1⊗x]` on a generator, lifted to `U^{⊗2}`.
pub fn coboundary_lift(env: &Envelope, r: &UTensor, x: &UElem) -> Result<UTensor> {
    env.commutator_tensor(r, &Envelope::coproduct0(x))
}
