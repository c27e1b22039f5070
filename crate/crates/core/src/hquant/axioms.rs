use super::assembly::{accumulate, prune, sub_atensor, ATensor, TruncatedGammaBialgebra};
use super::coproduct::swap2;
use super::ring::Ring;
use crate::envelope::{copoisson_delta, required_cap, SMono, STensor, Smash, UTensor};
use crate::error::Result;
use crate::exact::format_scalar;
use crate::gamma::GammaLieBialgebra;
use crate::report::{Defect, DefectReport};

/// A defect in `A^{⊗m}` across all orders.
#[derive(Debug, Clone)]
pub struct SeriesDefect(pub ATensor);

impl Defect for SeriesDefect {
    fn nonzero_terms(&self) -> usize {
        self.0.values().map(|s| s.coeffs().iter().map(UTensor::len).sum::<usize>()).sum()
    }

    fn sample(&self, k: usize) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for (gs, s) in &self.0 {
            for (ord, t) in s.coeffs().iter().enumerate() {
                for (key, c) in t.iter() {
                    if out.len() == k {
                        return out;
                    }
                    out.push((format!("ℏ^{ord} {gs:?} {key:?}"), format_scalar(c)));
                }
            }
        }
        out
    }
}

impl SeriesDefect {
    /// Lowest order with a nonzero coefficient.
    pub fn first_order(&self) -> Option<usize> {
        self.0.values().filter_map(|s| s.first_nonzero()).min()
    }
}

fn degree(a: &SMono) -> usize {
    a.0.len()
}

fn label(a: &TruncatedGammaBialgebra, m: &SMono) -> String {
    a.smash().smono_label(m)
}

/// Part of `t` whose group labels differ from `expected`.
fn off_grade(t: &ATensor, expected: &[usize]) -> ATensor {
    t.iter().filter(|(k, _)| k.as_slice() != expected).map(|(k, v)| (k.clone(), v.clone())).collect()
}

fn unit(a: &TruncatedGammaBialgebra) -> ATensor {
    a.embed(&UTensor::basis(vec![Vec::new()]), a.group().identity())
}

fn element(a: &TruncatedGammaBialgebra, m: &SMono) -> ATensor {
    a.embed(&UTensor::basis(vec![m.0.clone()]), m.1)
}

/// Checks the Γ-graded bialgebra axioms on every basis element `[m|γ]` with
/// `deg m ≤ d_in`; binary and ternary identities use tuples whose total
/// degree stays within `d_in`.
pub fn bialgebra_axiom_defects(a: &TruncatedGammaBialgebra, d_in: usize) -> Result<DefectReport> {
    let ring = a.ring();
    let grp = a.group();
    let basis = a.smash().basis(d_in);
    let elems: Vec<ATensor> = basis.iter().map(|m| element(a, m)).collect();
    let one = unit(a);
    let mut rep = DefectReport::new();
    let coprod: Vec<ATensor> = elems.iter().map(|x| a.coproduct_on_leg(x, 0)).collect::<Result<_>>()?;
    for (i, m) in basis.iter().enumerate() {
        let x = &elems[i];
        let l = label(a, m);
        rep.push("unit", format!("1·{l}"), SeriesDefect(sub_atensor(&ring, &a.mul(&one, x)?, x)));
        rep.push("unit", format!("{l}·1"), SeriesDefect(sub_atensor(&ring, &a.mul(x, &one)?, x)));
        let d = &coprod[i];
        rep.push("grading", format!("Δ{l}"), SeriesDefect(off_grade(d, &[m.1, m.1])));
        let left = a.coproduct_on_leg(d, 0)?;
        let right = a.coproduct_on_leg(d, 1)?;
        rep.push("coassociativity", l.clone(), SeriesDefect(sub_atensor(&ring, &left, &right)));
        rep.push("counit", format!("(ε⊗id)Δ{l}"), SeriesDefect(sub_atensor(&ring, &a.counit_on_leg(d, 0)?, x)));
        rep.push("counit", format!("(id⊗ε)Δ{l}"), SeriesDefect(sub_atensor(&ring, &a.counit_on_leg(d, 1)?, x)));
    }
    for (i, mi) in basis.iter().enumerate() {
        for (j, mj) in basis.iter().enumerate() {
            if degree(mi) + degree(mj) > d_in {
                continue;
            }
            let ab = a.mul(&elems[i], &elems[j])?;
            let (li, lj) = (label(a, mi), label(a, mj));
            rep.push("grading", format!("{li}·{lj}"), SeriesDefect(off_grade(&ab, &[grp.mul(mi.1, mj.1)])));
            let lhs = a.coproduct_on_leg(&ab, 0)?;
            let rhs = a.mul(&coprod[i], &coprod[j])?;
            rep.push("compatibility", format!("{li}·{lj}"), SeriesDefect(sub_atensor(&ring, &lhs, &rhs)));
            for (k, mk) in basis.iter().enumerate() {
                if degree(mi) + degree(mj) + degree(mk) > d_in {
                    continue;
                }
                let left = a.mul(&ab, &elems[k])?;
                let right = a.mul(&elems[i], &a.mul(&elems[j], &elems[k])?)?;
                let key = format!("{li}·{lj}·{}", label(a, mk));
                rep.push("associativity", key, SeriesDefect(sub_atensor(&ring, &left, &right)));
            }
        }
    }
    Ok(rep)
}

/// Embeds a classical smash tensor as an order-0 element of `A^{⊗m}`.
fn lift_classical(ring: &Ring, t: &STensor) -> ATensor {
    let mut out = ATensor::new();
    for (key, c) in t.iter() {
        let gs: Vec<usize> = key.iter().map(|(_, g)| *g).collect();
        let monos: Vec<_> = key.iter().map(|(m, _)| m.clone()).collect();
        let val = ring.monomial(UTensor::term(monos, c.clone()), 0);
        accumulate(ring, &mut out, gs, &val);
    }
    prune(out)
}

/// Order-`k` slice of `t`, lifted back as an order-0 series.
fn slice_at(ring: &Ring, t: &ATensor, k: usize) -> ATensor {
    lift_classical(ring, &TruncatedGammaBialgebra::slice(t, k))
}

/// Classical limit: the order-0 product and coproduct agree with the smash
/// product and the order-1 antisymmetrized coproduct agrees with `δ_A`.
pub fn classical_limit_defects(a: &TruncatedGammaBialgebra, g: &GammaLieBialgebra, d_in: usize) -> Result<DefectReport> {
    let ring = a.ring();
    let cp = copoisson_delta(g, required_cap(d_in))?;
    let smash = cp.smash();
    let basis = smash.basis(d_in);
    let mut rep = DefectReport::new();
    for mi in &basis {
        let x = element(a, mi);
        let l = smash.smono_label(mi);
        let d = a.coproduct_on_leg(&x, 0)?;
        let classical = lift_classical(&ring, &Smash::coproduct_smono(mi));
        rep.push("classical coproduct", l.clone(), SeriesDefect(sub_atensor(&ring, &slice_at(&ring, &d, 0), &classical)));
        if a.order() >= 1 {
            let d1 = slice_at(&ring, &d, 1);
            let mut anti = d1.clone();
            for (gs, s) in &d1 {
                let swapped = ring.map(s, |t| Ok(swap2(t)))?;
                accumulate(&ring, &mut anti, vec![gs[1], gs[0]], &ring.sub(&ring.zero(), &swapped));
            }
            let expected = lift_classical(&ring, &cp.delta_smono(mi)?);
            rep.push("co-Poisson limit", l.clone(), SeriesDefect(sub_atensor(&ring, &prune(anti), &expected)));
        }
        for mj in &basis {
            if degree(mi) + degree(mj) > d_in {
                continue;
            }
            let ab = a.mul(&x, &element(a, mj))?;
            let expected = smash.mul_smono(mi, mj)?;
            let expected: STensor = expected.map_keys(|k| vec![k.clone()]);
            let key = format!("{l}·{}", smash.smono_label(mj));
            rep.push(
                "classical product",
                key,
                SeriesDefect(sub_atensor(&ring, &slice_at(&ring, &ab, 0), &lift_classical(&ring, &expected))),
            );
        }
    }
    Ok(rep)
}
