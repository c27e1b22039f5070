use std::collections::HashMap;
use std::sync::Mutex;

use crate::error::{Error, Result};
use num_traits::One;

use crate::exact::{LinComb, LinMap, Scalar, Tensor};
use crate::lie::{LieAlgebra, Vector};

/// PBW monomial `x_{i_1}···x_{i_k}` with `i_1 ≤ … ≤ i_k`.
pub type Mono = Vec<u8>;
/// Element of `U(𝔞)` in the PBW basis.
pub type UElem = LinComb<Mono>;
/// Element of `U(𝔞)^{⊗k}`; every key has exactly `k` legs.
pub type UTensor = LinComb<Vec<Mono>>;

fn one() -> Scalar {
    Scalar::one()
}

/// Degree of the highest-degree monomial, or 0 for the zero element.
pub fn degree(x: &UElem) -> usize {
    x.keys().map(Vec::len).max().unwrap_or(0)
}

/// Largest single-leg degree in a tensor.
pub fn leg_degree(x: &UTensor) -> usize {
    x.keys().flat_map(|k| k.iter().map(Vec::len)).max().unwrap_or(0)
}

/// Largest total degree over all legs of a term.
pub fn total_degree(x: &UTensor) -> usize {
    x.keys().map(|k| k.iter().map(Vec::len).sum()).max().unwrap_or(0)
}

/// `a ⊗ b` for tensors with any number of legs.
pub fn tensor_concat<T: Ord + Clone>(a: &LinComb<Vec<T>>, b: &LinComb<Vec<T>>) -> LinComb<Vec<T>> {
    a.bilinear(b, |ka, kb| {
        let mut k = ka.clone();
        k.extend(kb.iter().cloned());
        LinComb::basis(k)
    })
}

/// Embeds an element as a one-leg tensor.
pub fn one_leg(x: &UElem) -> UTensor {
    x.map_keys(|m| vec![m.clone()])
}

/// Moves leg `p` to position `sigma[p]`.
pub fn permute_legs<T: Ord + Clone + Default>(t: &LinComb<Vec<T>>, sigma: &[usize]) -> LinComb<Vec<T>> {
    t.map_keys(|k| {
        let mut out = vec![T::default(); k.len()];
        for (p, m) in k.iter().enumerate() {
            out[sigma[p]] = m.clone();
        }
        out
    })
}

/// Cyclic sum of the three leg rotations.
pub fn cyclic_legs3<T: Ord + Clone + Default>(t: &LinComb<Vec<T>>) -> LinComb<Vec<T>> {
    t.plus(&permute_legs(t, &[1, 2, 0])).plus(&permute_legs(t, &[2, 0, 1]))
}

/// `1 ∈ U^{⊗k}`.
pub fn tensor_one(k: usize) -> UTensor {
    LinComb::basis(vec![Mono::new(); k])
}

/// Counit on a monomial.
pub fn counit_mono(m: &Mono) -> bool {
    m.is_empty()
}

/// Counit of an element.
pub fn counit(x: &UElem) -> Scalar {
    x.coeff(&Mono::new())
}

/// Cocommutative coproduct of a monomial: sum over sub-words.
pub fn coproduct0_mono(m: &Mono) -> UTensor {
    let k = m.len();
    let mut out = UTensor::zero();
    for mask in 0u32..(1u32 << k) {
        let (mut l, mut r) = (Mono::new(), Mono::new());
        for (p, &g) in m.iter().enumerate() {
            if mask & (1 << p) != 0 {
                l.push(g);
            } else {
                r.push(g);
            }
        }
        out.add_term(vec![l, r], one());
    }
    out
}

/// Replaces leg `leg` of every term by the legs of `f` applied to it.
pub fn splice_leg<T: Ord + Clone>(
    t: &LinComb<Vec<T>>,
    leg: usize,
    f: &mut impl FnMut(&T) -> Result<LinComb<Vec<T>>>,
) -> Result<LinComb<Vec<T>>> {
    let mut out = LinComb::zero();
    for (k, c) in t.iter() {
        for (img, c2) in f(&k[leg])?.iter() {
            let mut nk = k[..leg].to_vec();
            nk.extend(img.iter().cloned());
            nk.extend(k[leg + 1..].iter().cloned());
            out.add_term(nk, c * c2);
        }
    }
    Ok(out)
}

/// Applies a linear map per leg given on monomials.
pub fn map_leg(t: &UTensor, leg: usize, f: &mut impl FnMut(&Mono) -> Result<UElem>) -> Result<UTensor> {
    let mut out = UTensor::zero();
    for (k, c) in t.iter() {
        let img = f(&k[leg])?;
        for (m, c2) in img.iter() {
            let mut nk = k.clone();
            nk[leg] = m.clone();
            out.add_term(nk, c * c2);
        }
    }
    Ok(out)
}

/// Applies a map to each leg of each term, expanding the tensor product.
pub fn map_legs(t: &UTensor, f: &mut impl FnMut(usize, &Mono) -> Result<UElem>) -> Result<UTensor> {
    let mut out = UTensor::zero();
    for (k, c) in t.iter() {
        let mut acc = LinComb::term(Vec::<Mono>::new(), c.clone());
        for (leg, m) in k.iter().enumerate() {
            let img = f(leg, m)?;
            acc = acc.bilinear(&img, |a, b| {
                let mut nk = a.clone();
                nk.push(b.clone());
                LinComb::basis(nk)
            });
        }
        out.add_scaled(&acc, &one());
    }
    Ok(out)
}

/// Universal enveloping algebra of a finite-dimensional Lie algebra, with
/// products computed exactly by PBW straightening.
///
/// The degree cap is a refusal threshold: products whose operand degrees add
/// up to more than the cap return [`Error::Window`] instead of truncating.
#[derive(Debug)]
pub struct Envelope {
    alg: LieAlgebra,
    cap: usize,
    memo: Mutex<HashMap<(Mono, u8), UElem>>,
}

impl Clone for Envelope {
    fn clone(&self) -> Self {
        Self::new(self.alg.clone(), self.cap)
    }
}

impl Envelope {
    pub fn new(alg: LieAlgebra, cap: usize) -> Self {
        assert!(alg.dim() < 256, "PBW generators are indexed by bytes");
        Self { alg, cap, memo: Mutex::new(HashMap::new()) }
    }

    pub fn alg(&self) -> &LieAlgebra {
        &self.alg
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn with_cap(&self, cap: usize) -> Self {
        Self::new(self.alg.clone(), cap)
    }

    pub fn one() -> UElem {
        UElem::basis(Mono::new())
    }

    pub fn gen(i: usize) -> UElem {
        UElem::basis(vec![i as u8])
    }

    /// Embeds `𝔞` as degree-one elements.
    pub fn lift(v: &Vector) -> UElem {
        v.map_keys(|&i| vec![i as u8])
    }

    /// Embeds `𝔞^{⊗k}` into `U^{⊗k}` leg by leg.
    pub fn lift_tensor(t: &Tensor) -> UTensor {
        t.terms().map_keys(|idx| idx.iter().map(|&i| vec![i as u8]).collect())
    }

    /// Human-readable form of a monomial using the algebra's labels.
    pub fn mono_label(&self, m: &Mono) -> String {
        if m.is_empty() {
            return "1".into();
        }
        m.iter().map(|&i| self.alg.space().label(i as usize).to_string()).collect::<Vec<_>>().join("·")
    }

    fn check_window(&self, needed: usize) -> Result<()> {
        if needed > self.cap {
            return Err(Error::Window { needed, cap: self.cap });
        }
        Ok(())
    }

    /// `m · x_y` in PBW form.
    fn mul_gen(&self, m: &Mono, y: u8) -> UElem {
        match m.last() {
            None => return UElem::basis(vec![y]),
            Some(&last) if last <= y => {
                let mut k = m.clone();
                k.push(y);
                return UElem::basis(k);
            }
            _ => {}
        }
        let key = (m.clone(), y);
        if let Some(v) = self.memo.lock().expect("memo").get(&key) {
            return v.clone();
        }
        // m = m′ x_l with l > y: m x_y = (m′ x_y) x_l + m′ [x_l, x_y]
        let (prefix, last) = (&m[..m.len() - 1], m[m.len() - 1]);
        let prefix = prefix.to_vec();
        let mut out = UElem::zero();
        for (p, c) in self.mul_gen(&prefix, y).iter() {
            out.add_scaled(&self.mul_gen(p, last), c);
        }
        for (&k, c) in self.alg.bracket_basis(last as usize, y as usize) {
            out.add_scaled(&self.mul_gen(&prefix, k as u8), c);
        }
        self.memo.lock().expect("memo").insert(key, out.clone());
        out
    }

    fn mul_mono_unchecked(&self, a: &Mono, b: &Mono) -> UElem {
        let mut acc = UElem::basis(a.clone());
        for &y in b {
            let mut next = UElem::zero();
            for (m, c) in acc.iter() {
                next.add_scaled(&self.mul_gen(m, y), c);
            }
            acc = next;
        }
        acc
    }

    pub fn mul_mono(&self, a: &Mono, b: &Mono) -> Result<UElem> {
        self.check_window(a.len() + b.len())?;
        Ok(self.mul_mono_unchecked(a, b))
    }

    /// Exact product; refuses operands whose degrees exceed the window.
    pub fn mul(&self, a: &UElem, b: &UElem) -> Result<UElem> {
        self.check_window(degree(a) + degree(b))?;
        let mut out = UElem::zero();
        for (ma, ca) in a.iter() {
            for (mb, cb) in b.iter() {
                out.add_scaled(&self.mul_mono_unchecked(ma, mb), &(ca * cb));
            }
        }
        Ok(out)
    }

    /// Product of several factors, left to right.
    pub fn mul_all<'a>(&self, xs: impl IntoIterator<Item = &'a UElem>) -> Result<UElem> {
        let mut acc = Self::one();
        for x in xs {
            acc = self.mul(&acc, x)?;
        }
        Ok(acc)
    }

    /// Leg-wise product in `U^{⊗k}`.
    pub fn mul_tensor(&self, a: &UTensor, b: &UTensor) -> Result<UTensor> {
        let mut out = UTensor::zero();
        for (ka, ca) in a.iter() {
            for (kb, cb) in b.iter() {
                if ka.len() != kb.len() {
                    return Err(Error::Arity { expected: ka.len(), got: kb.len() });
                }
                let mut acc = LinComb::term(Vec::<Mono>::new(), ca * cb);
                for (ma, mb) in ka.iter().zip(kb) {
                    let p = self.mul_mono(ma, mb)?;
                    acc = acc.bilinear(&p, |k, m| {
                        let mut nk = k.clone();
                        nk.push(m.clone());
                        LinComb::basis(nk)
                    });
                }
                out.add_scaled(&acc, &one());
            }
        }
        Ok(out)
    }

    /// `[a, b] = ab − ba` in `U^{⊗k}`.
    pub fn commutator_tensor(&self, a: &UTensor, b: &UTensor) -> Result<UTensor> {
        Ok(self.mul_tensor(a, b)?.minus(&self.mul_tensor(b, a)?))
    }

    pub fn commutator(&self, a: &UElem, b: &UElem) -> Result<UElem> {
        Ok(self.mul(a, b)?.minus(&self.mul(b, a)?))
    }

    /// Coproduct `x ↦ x⊗1 + 1⊗x` extended multiplicatively.
    pub fn coproduct0(x: &UElem) -> UTensor {
        x.map_linear(coproduct0_mono)
    }

    /// Multiplicative extension of a linear map of `𝔞` to `U(𝔞)`.
    pub fn extend_linear(&self, m: &LinMap, x: &UElem) -> Result<UElem> {
        let mut out = UElem::zero();
        for (mono, c) in x.iter() {
            let mut acc = Self::one();
            for &g in mono {
                acc = self.mul(&acc, &Self::lift(m.image(g as usize)))?;
            }
            out.add_scaled(&acc, c);
        }
        Ok(out)
    }

    /// All PBW monomials of degree at most `d`, ordered by degree then
    /// lexicographically.
    pub fn monomials(&self, d: usize) -> Vec<Mono> {
        let n = self.dim() as u8;
        let mut out = vec![Mono::new()];
        let mut layer = vec![Mono::new()];
        for _ in 0..d {
            let mut next = Vec::new();
            for m in &layer {
                let start = m.last().copied().unwrap_or(0);
                for g in start..n {
                    let mut k = m.clone();
                    k.push(g);
                    next.push(k);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}
