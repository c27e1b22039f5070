use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::{LinComb, Scalar};
use crate::gamma::GroupAction;

use super::pbw::{coproduct0_mono, Envelope, Mono, UElem, UTensor};

/// Basis element `[m | γ]` of `U(𝔞) ⋊ Γ`.
pub type SMono = (Mono, usize);
/// Element of the smash product.
pub type SElem = LinComb<SMono>;
/// Element of a tensor power of the smash product.
pub type STensor = LinComb<Vec<SMono>>;

/// Degree in `U(𝔞)` of the highest term.
pub fn smash_degree(x: &SElem) -> usize {
    x.keys().map(|(m, _)| m.len()).max().unwrap_or(0)
}

/// The smash product `U(𝔞) ⋊ Γ` with `[m|γ][m′|γ′] = [m·θ_γ(m′) | γγ′]`.
#[derive(Debug)]
pub struct Smash {
    env: Envelope,
    action: GroupAction,
    theta_memo: Mutex<HashMap<(usize, Mono), UElem>>,
}

impl Clone for Smash {
    fn clone(&self) -> Self {
        Self { env: self.env.clone(), action: self.action.clone(), theta_memo: Mutex::new(HashMap::new()) }
    }
}

impl Smash {
    pub fn new(env: Envelope, action: GroupAction) -> Result<Self> {
        if env.dim() != action.dim() {
            return Err(Error::Shape("action and algebra dimensions differ".into()));
        }
        Ok(Self { env, action, theta_memo: Mutex::new(HashMap::new()) })
    }

    pub fn env(&self) -> &Envelope {
        &self.env
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    pub fn identity(&self) -> usize {
        self.action.group().identity()
    }

    /// `θ_γ` extended multiplicatively to `U(𝔞)`.
    pub fn theta_mono(&self, g: usize, m: &Mono) -> Result<UElem> {
        if g == self.identity() {
            return Ok(UElem::basis(m.clone()));
        }
        let key = (g, m.clone());
        if let Some(v) = self.theta_memo.lock().expect("memo").get(&key) {
            return Ok(v.clone());
        }
        let v = self.env.extend_linear(self.action.theta(g), &UElem::basis(m.clone()))?;
        self.theta_memo.lock().expect("memo").insert(key, v.clone());
        Ok(v)
    }

    pub fn theta(&self, g: usize, x: &UElem) -> Result<UElem> {
        let mut out = UElem::zero();
        for (m, c) in x.iter() {
            out.add_scaled(&self.theta_mono(g, m)?, c);
        }
        Ok(out)
    }

    /// `θ_γ^{⊗k}` on a tensor.
    pub fn theta_tensor(&self, g: usize, t: &UTensor) -> Result<UTensor> {
        super::pbw::map_legs(t, &mut |_, m| self.theta_mono(g, m))
    }

    pub fn embed(x: &UElem, g: usize) -> SElem {
        x.map_keys(|m| (m.clone(), g))
    }

    pub fn group_elem(g: usize) -> SElem {
        SElem::basis((Mono::new(), g))
    }

    pub fn one(&self) -> SElem {
        Self::group_elem(self.identity())
    }

    /// `[t | γ, …, γ]`.
    pub fn embed_tensor(t: &UTensor, g: usize) -> STensor {
        t.map_keys(|k| k.iter().map(|m| (m.clone(), g)).collect())
    }

    pub fn mul_smono(&self, a: &SMono, b: &SMono) -> Result<SElem> {
        let moved = self.theta_mono(a.1, &b.0)?;
        let prod = self.env.mul(&UElem::basis(a.0.clone()), &moved)?;
        Ok(Self::embed(&prod, self.action.group().mul(a.1, b.1)))
    }

    pub fn mul(&self, a: &SElem, b: &SElem) -> Result<SElem> {
        let mut out = SElem::zero();
        for (ma, ca) in a.iter() {
            for (mb, cb) in b.iter() {
                out.add_scaled(&self.mul_smono(ma, mb)?, &(ca * cb));
            }
        }
        Ok(out)
    }

    /// Leg-wise product in a tensor power.
    pub fn mul_tensor(&self, a: &STensor, b: &STensor) -> Result<STensor> {
        let mut out = STensor::zero();
        for (ka, ca) in a.iter() {
            for (kb, cb) in b.iter() {
                if ka.len() != kb.len() {
                    return Err(Error::Arity { expected: ka.len(), got: kb.len() });
                }
                let mut acc = LinComb::term(Vec::<SMono>::new(), ca * cb);
                for (ma, mb) in ka.iter().zip(kb) {
                    let p = self.mul_smono(ma, mb)?;
                    acc = acc.bilinear(&p, |k, m| {
                        let mut nk = k.clone();
                        nk.push(m.clone());
                        LinComb::basis(nk)
                    });
                }
                out.add_scaled(&acc, &Scalar::one());
            }
        }
        Ok(out)
    }

    /// Coproduct on a basis element: `Δ([m|γ]) = Σ [m₁|γ] ⊗ [m₂|γ]`.
    pub fn coproduct_smono(a: &SMono) -> STensor {
        Self::embed_tensor(&coproduct0_mono(&a.0), a.1)
    }

    pub fn coproduct(x: &SElem) -> STensor {
        x.map_linear(Self::coproduct_smono)
    }

    /// `ε([m|γ]) = δ_{γ,e} ε(m)`.
    pub fn counit(&self, x: &SElem) -> Scalar {
        x.coeff(&(Mono::new(), self.identity()))
    }

    /// All basis elements `[m|γ]` with `deg m ≤ d`.
    pub fn basis(&self, d: usize) -> Vec<SMono> {
        let monos = self.env.monomials(d);
        self.action.group().elements().flat_map(|g| monos.iter().map(move |m| (m.clone(), g))).collect()
    }

    pub fn smono_label(&self, a: &SMono) -> String {
        format!("[{}|{}]", self.env.mono_label(&a.0), self.action.group().label(a.1))
    }

    /// Refuses products that would leave the degree window.
    pub fn check_window(&self, needed: usize) -> Result<()> {
        if needed > self.env.cap() {
            return Err(Error::Window { needed, cap: self.env.cap() });
        }
        Ok(())
    }

}
