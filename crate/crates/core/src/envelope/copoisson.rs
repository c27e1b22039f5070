use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::Scalar;
use crate::gamma::GammaLieBialgebra;
use crate::report::DefectReport;

use super::pbw::{cyclic_legs3, permute_legs, splice_leg, Envelope, Mono};
use super::smash::{SElem, SMono, STensor, Smash};

/// A letter of a word in the smash product: a generator `[x_i|e]` or a
/// group element `[1|γ]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Letter {
    Gen(usize),
    Group(usize),
}

/// The classical co-Poisson structure on `U(𝔞) ⋊ Γ`.
///
/// On generators `δ_A([x|e]) = [δ(x)|e,e]` and `δ_A([1|γ]) = −[f_γ|γ,γ]`;
/// on products `δ_A(ab) = δ_A(a)Δ(b) + Δ(a)δ_A(b)`.
#[derive(Debug)]
pub struct CoPoisson {
    smash: Smash,
    gens: Vec<STensor>,
    groups: Vec<STensor>,
}

/// Builds the co-Poisson structure of a Γ-Lie bialgebra with PBW window `cap`.
pub fn copoisson_delta(g: &GammaLieBialgebra, cap: usize) -> Result<CoPoisson> {
    let env = Envelope::new(g.bialg().alg().clone(), cap);
    let smash = Smash::new(env, g.action().clone())?;
    let e = smash.identity();
    let gens = g
        .bialg()
        .cobracket()
        .iter()
        .map(|d| Smash::embed_tensor(&Envelope::lift_tensor(d), e))
        .collect();
    let groups = g
        .action()
        .group()
        .elements()
        .map(|x| Smash::embed_tensor(&Envelope::lift_tensor(g.twist(x)), x).neg())
        .collect();
    Ok(CoPoisson { smash, gens, groups })
}

impl CoPoisson {
    pub fn smash(&self) -> &Smash {
        &self.smash
    }

    pub fn letter_elem(&self, l: Letter) -> SElem {
        match l {
            Letter::Gen(i) => SElem::basis((vec![i as u8], self.smash.identity())),
            Letter::Group(g) => Smash::group_elem(g),
        }
    }

    pub fn delta_letter(&self, l: Letter) -> &STensor {
        match l {
            Letter::Gen(i) => &self.gens[i],
            Letter::Group(g) => &self.groups[g],
        }
    }

    /// Letters of the canonical factorization `[m|γ] = [x_{i_1}]···[x_{i_k}][γ]`.
    pub fn factorization(&self, a: &SMono) -> Vec<Letter> {
        let mut w: Vec<Letter> = a.0.iter().map(|&i| Letter::Gen(i as usize)).collect();
        if a.1 != self.smash.identity() {
            w.push(Letter::Group(a.1));
        }
        w
    }

    /// Product of a word in the smash product.
    pub fn evaluate(&self, word: &[Letter]) -> Result<SElem> {
        let mut acc = self.smash.one();
        for &l in word {
            acc = self.smash.mul(&acc, &self.letter_elem(l))?;
        }
        Ok(acc)
    }

    /// `δ_A` of a word by the derivation rule along that word.
    pub fn delta_word(&self, word: &[Letter]) -> Result<STensor> {
        let deltas: Vec<STensor> = word.iter().map(|&l| Smash::coproduct(&self.letter_elem(l))).collect();
        let e = self.smash.identity();
        let one = STensor::basis(vec![(Mono::new(), e), (Mono::new(), e)]);
        let mut suffix = vec![one.clone(); word.len() + 1];
        for j in (0..word.len()).rev() {
            suffix[j] = self.smash.mul_tensor(&deltas[j], &suffix[j + 1])?;
        }
        let mut prefix = one;
        let mut out = STensor::zero();
        for (j, &l) in word.iter().enumerate() {
            let term = self.smash.mul_tensor(&prefix, self.delta_letter(l))?;
            let term = self.smash.mul_tensor(&term, &suffix[j + 1])?;
            out.add_scaled(&term, &Scalar::one());
            prefix = self.smash.mul_tensor(&prefix, &deltas[j])?;
        }
        Ok(out)
    }

    pub fn delta_smono(&self, a: &SMono) -> Result<STensor> {
        self.delta_word(&self.factorization(a))
    }

    pub fn delta(&self, x: &SElem) -> Result<STensor> {
        let mut out = STensor::zero();
        for (a, c) in x.iter() {
            out.add_scaled(&self.delta_smono(a)?, c);
        }
        Ok(out)
    }

    /// `δ_A ⊗ id` and friends: applies `δ_A` to one leg.
    pub fn delta_on_leg(&self, t: &STensor, leg: usize) -> Result<STensor> {
        splice_leg(t, leg, &mut |a| self.delta_smono(a))
    }

    pub fn coproduct_on_leg(t: &STensor, leg: usize) -> Result<STensor> {
        splice_leg(t, leg, &mut |a| Ok(Smash::coproduct_smono(a)))
    }
}

fn all_words(letters: &[Letter], max_len: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in letters {
                let mut w2: Vec<Letter> = w.clone();
                w2.push(l);
                next.push(w2);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Degree window needed by [`copoisson_axiom_defects`] at input degree `d_in`.
pub fn required_cap(d_in: usize) -> usize {
    2 * d_in + 2
}

/// Checks the co-Poisson axioms on every basis element `[m|γ]` with
/// `deg m ≤ d_in`: derivation well-definedness on words of length up to
/// `d_in + 1`, antisymmetry, the coderivation identity
/// `(Δ⊗id)δ = (id⊗δ)Δ + σ₂₃(δ⊗id)Δ`, co-Jacobi and the Γ-grading.
pub fn copoisson_axiom_defects(g: &GammaLieBialgebra, d_in: usize) -> Result<DefectReport> {
    copoisson_axiom_defects_with_cap(g, d_in, required_cap(d_in))
}

pub fn copoisson_axiom_defects_with_cap(g: &GammaLieBialgebra, d_in: usize, cap: usize) -> Result<DefectReport> {
    if cap < required_cap(d_in) {
        return Err(Error::Window { needed: required_cap(d_in), cap });
    }
    let cp = copoisson_delta(g, cap)?;
    let smash = cp.smash();
    let mut rep = DefectReport::new();

    let mut letters: Vec<Letter> = (0..g.dim()).map(Letter::Gen).collect();
    letters.extend(g.action().group().elements().filter(|&x| x != smash.identity()).map(Letter::Group));
    for w in all_words(&letters, d_in + 1) {
        let direct = cp.delta_word(&w)?;
        let normal = cp.delta(&cp.evaluate(&w)?)?;
        rep.push("derivation", format!("{w:?}"), direct.minus(&normal));
    }

    for a in smash.basis(d_in) {
        let key = smash.smono_label(&a);
        let d = cp.delta_smono(&a)?;
        rep.push("antisymmetry", key.clone(), d.plus(&permute_legs(&d, &[1, 0])));
        let grading: STensor = d.iter().filter(|(k, _)| k.iter().any(|m| m.1 != a.1)).map(|(k, c)| (k.clone(), c.clone())).collect();
        rep.push("grading", key.clone(), grading);

        let lhs = CoPoisson::coproduct_on_leg(&d, 0)?;
        let cop = Smash::coproduct_smono(&a);
        let r1 = cp.delta_on_leg(&cop, 1)?;
        let r2 = permute_legs(&cp.delta_on_leg(&cop, 0)?, &[0, 2, 1]);
        rep.push("coderivation", key.clone(), lhs.minus(&r1).minus(&r2));

        let dd = cp.delta_on_leg(&d, 0)?;
        rep.push("co-jacobi", key, cyclic_legs3(&dd));
    }
    Ok(rep)
}
