use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::One;

use crate::envelope::{coproduct0_mono, tensor_concat, tensor_one, Envelope, Mono, UElem, UTensor};
use crate::error::{Error, Result};
use crate::exact::{HSeries, LinMap, Scalar};

/// Truncated ℏ-series with coefficients in `U(𝔞)^{⊗k}`.
pub type Ser = HSeries<UTensor>;

/// Series arithmetic in `U(𝔞)^{⊗k}[[ℏ]]/ℏ^{n+1}`.
#[derive(Clone, Copy)]
pub struct Ring<'a> {
    pub env: &'a Envelope,
    pub n: usize,
}

fn cauchy(
    a: &Ser,
    b: &Ser,
    n: usize,
    mut f: impl FnMut(&UTensor, &UTensor) -> Result<UTensor>,
) -> Result<Ser> {
    let mut out = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut acc = UTensor::zero();
        for i in 0..=k {
            if i > a.order() || k - i > b.order() {
                continue;
            }
            let (x, y) = (a.coeff(i), b.coeff(k - i));
            if x.is_zero() || y.is_zero() {
                continue;
            }
            acc.add_scaled(&f(x, y)?, &Scalar::one());
        }
        out.push(acc);
    }
    HSeries::new(out)
}

impl<'a> Ring<'a> {
    pub fn new(env: &'a Envelope, n: usize) -> Self {
        Self { env, n }
    }

    pub fn zero(&self) -> Ser {
        HSeries::constant(UTensor::zero(), self.n)
    }

    pub fn one(&self, legs: usize) -> Ser {
        HSeries::constant(tensor_one(legs), self.n)
    }

    /// `t · ℏ^k`.
    pub fn monomial(&self, t: UTensor, k: usize) -> Ser {
        let mut s = self.zero();
        if k <= self.n {
            *s.coeff_mut(k) = t;
        }
        s
    }

    /// Drops or pads coefficients to this ring's order.
    pub fn fit(&self, s: &Ser) -> Ser {
        let mut c: Vec<UTensor> = s.coeffs().iter().take(self.n + 1).cloned().collect();
        c.resize(self.n + 1, UTensor::zero());
        HSeries::new(c).expect("nonempty")
    }

    pub fn add(&self, a: &Ser, b: &Ser) -> Ser {
        let mut out = self.fit(a);
        for k in 0..=self.n.min(b.order()) {
            out.coeff_mut(k).add_scaled(b.coeff(k), &Scalar::one());
        }
        out
    }

    pub fn sub(&self, a: &Ser, b: &Ser) -> Ser {
        let mut out = self.fit(a);
        for k in 0..=self.n.min(b.order()) {
            out.coeff_mut(k).add_scaled(b.coeff(k), &-Scalar::one());
        }
        out
    }

    pub fn mul(&self, a: &Ser, b: &Ser) -> Result<Ser> {
        cauchy(a, b, self.n, |x, y| self.env.mul_tensor(x, y))
    }

    pub fn mul_all(&self, xs: &[&Ser]) -> Result<Ser> {
        let mut it = xs.iter();
        let mut acc = self.fit(it.next().ok_or_else(|| Error::Shape("empty product".into()))?);
        for x in it {
            acc = self.mul(&acc, x)?;
        }
        Ok(acc)
    }

    /// `a ⊗ b`, concatenating legs.
    pub fn tensor(&self, a: &Ser, b: &Ser) -> Result<Ser> {
        cauchy(a, b, self.n, |x, y| Ok(tensor_concat(x, y)))
    }

    /// Inverse of a series with constant term `1^{⊗k}`.
    pub fn inv(&self, a: &Ser) -> Result<Ser> {
        let c0 = a.coeff(0);
        let legs = c0.keys().next().map_or(0, Vec::len);
        if *c0 != tensor_one(legs) {
            return Err(Error::NotInvertible);
        }
        let mut inv: Vec<UTensor> = vec![tensor_one(legs)];
        for k in 1..=self.n {
            let mut acc = UTensor::zero();
            for j in 1..=k.min(a.order()) {
                if a.coeff(j).is_zero() || inv[k - j].is_zero() {
                    continue;
                }
                acc.add_scaled(&self.env.mul_tensor(a.coeff(j), &inv[k - j])?, &-Scalar::one());
            }
            inv.push(acc);
        }
        HSeries::new(inv)
    }

    /// `a x a⁻¹`.
    pub fn conj(&self, a: &Ser, a_inv: &Ser, x: &Ser) -> Result<Ser> {
        self.mul(&self.mul(a, x)?, a_inv)
    }

    pub fn commutator(&self, a: &Ser, b: &Ser) -> Result<Ser> {
        Ok(self.sub(&self.mul(a, b)?, &self.mul(b, a)?))
    }

    /// Applies a map of series coefficients termwise.
    pub fn map(&self, s: &Ser, mut f: impl FnMut(&UTensor) -> Result<UTensor>) -> Result<Ser> {
        let c = self.fit(s).coeffs().iter().map(|t| f(t)).collect::<Result<Vec<_>>>()?;
        HSeries::new(c)
    }
}

/// Algebra morphism out of `U(𝔞)[[ℏ]]` for the undeformed product, given by
/// the images of the generators in `U(𝔞)^{⊗legs}[[ℏ]]`.
pub struct GenMap {
    legs: usize,
    gens: Vec<Ser>,
    memo: Mutex<HashMap<Mono, Ser>>,
}

impl Clone for GenMap {
    fn clone(&self) -> Self {
        Self::new(self.legs, self.gens.clone())
    }
}

impl std::fmt::Debug for GenMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GenMap").field("legs", &self.legs).field("gens", &self.gens).finish()
    }
}

impl GenMap {
    pub fn new(legs: usize, gens: Vec<Ser>) -> Self {
        Self { legs, gens, memo: Mutex::new(HashMap::new()) }
    }

    /// The identity of `U(𝔞)`.
    pub fn identity(ring: &Ring, dim: usize) -> Self {
        let gens = (0..dim).map(|i| ring.monomial(UTensor::basis(vec![vec![i as u8]]), 0)).collect();
        Self::new(1, gens)
    }

    /// The primitive coproduct `x ↦ x⊗1 + 1⊗x`.
    pub fn coproduct0(ring: &Ring, dim: usize) -> Self {
        let gens = (0..dim)
            .map(|i| {
                let g = vec![i as u8];
                ring.monomial(UTensor::from_terms([(vec![g, vec![]], Scalar::one()), (vec![vec![], vec![i as u8]], Scalar::one())]), 0)
            })
            .collect();
        Self::new(2, gens)
    }

    /// Multiplicative extension of a linear map of `𝔞`.
    pub fn from_linear(ring: &Ring, m: &LinMap) -> Self {
        let gens = (0..m.dim_in())
            .map(|i| ring.monomial(m.image(i).map_keys(|&j| vec![vec![j as u8]]), 0))
            .collect();
        Self::new(1, gens)
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn gens(&self) -> &[Ser] {
        &self.gens
    }

    pub fn gen(&self, i: usize) -> &Ser {
        &self.gens[i]
    }

    /// Copy with every generator image cut to the ring's order.
    pub fn fit(&self, ring: &Ring) -> Self {
        Self::new(self.legs, self.gens.iter().map(|g| ring.fit(g)).collect())
    }

    /// Image of a PBW monomial.
    pub fn on_mono(&self, ring: &Ring, m: &Mono) -> Result<Ser> {
        if m.is_empty() {
            return Ok(ring.one(self.legs));
        }
        if let Some(s) = self.memo.lock().expect("memo").get(m) {
            if s.order() == ring.n {
                return Ok(s.clone());
            }
        }
        let last = *m.last().expect("nonempty") as usize;
        let prefix = self.on_mono(ring, &m[..m.len() - 1].to_vec())?;
        let out = ring.mul(&prefix, &ring.fit(&self.gens[last]))?;
        self.memo.lock().expect("memo").insert(m.clone(), out.clone());
        Ok(out)
    }

    /// Image of a one-leg series.
    pub fn apply(&self, ring: &Ring, s: &Ser) -> Result<Ser> {
        let mut out = HSeries::constant(UTensor::zero(), ring.n);
        for j in 0..=ring.n.min(s.order()) {
            for (k, c) in s.coeff(j).iter() {
                let img = self.on_mono(ring, &k[0])?;
                for i in 0..=ring.n - j {
                    out.coeff_mut(i + j).add_scaled(img.coeff(i), c);
                }
            }
        }
        Ok(out)
    }

    pub fn apply_elem(&self, ring: &Ring, x: &UElem) -> Result<Ser> {
        self.apply(ring, &ring.monomial(x.map_keys(|m| vec![m.clone()]), 0))
    }

    /// Applies the map to leg `leg` of a multi-leg series.
    pub fn apply_leg(&self, ring: &Ring, s: &Ser, leg: usize) -> Result<Ser> {
        let mut out = HSeries::constant(UTensor::zero(), ring.n);
        for j in 0..=ring.n.min(s.order()) {
            for (k, c) in s.coeff(j).iter() {
                let img = self.on_mono(ring, &k[leg])?;
                for i in 0..=ring.n - j {
                    for (ik, ic) in img.coeff(i).iter() {
                        let mut nk = k[..leg].to_vec();
                        nk.extend(ik.iter().cloned());
                        nk.extend(k[leg + 1..].iter().cloned());
                        out.coeff_mut(i + j).add_term(nk, c * ic);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Applies a one-leg map to every leg: `φ^{⊗m}`.
    pub fn apply_all_legs(&self, ring: &Ring, s: &Ser) -> Result<Ser> {
        let legs = s.coeffs().iter().flat_map(|t| t.keys().next().map(Vec::len)).next().unwrap_or(0);
        let mut out = ring.fit(s);
        for leg in 0..legs {
            out = self.apply_leg(ring, &out, leg)?;
        }
        Ok(out)
    }

    /// `self ∘ other` for a one-leg `self`.
    pub fn after(&self, ring: &Ring, other: &GenMap) -> Result<GenMap> {
        let gens = other.gens.iter().map(|g| self.apply_all_legs(ring, g)).collect::<Result<Vec<_>>>()?;
        Ok(GenMap::new(other.legs, gens))
    }

    /// `other ∘ self` where `self` has one leg and `other` any number.
    pub fn then(&self, ring: &Ring, other: &GenMap) -> Result<GenMap> {
        let gens = self.gens.iter().map(|g| other.apply(ring, g)).collect::<Result<Vec<_>>>()?;
        Ok(GenMap::new(other.legs, gens))
    }

    /// `x ↦ a · self(x) · a⁻¹`.
    pub fn conjugated(&self, ring: &Ring, a: &Ser) -> Result<GenMap> {
        let a_inv = ring.inv(a)?;
        let gens = self.gens.iter().map(|g| ring.conj(a, &a_inv, g)).collect::<Result<Vec<_>>>()?;
        Ok(GenMap::new(self.legs, gens))
    }

    /// Inverse of a one-leg map that is the identity at order 0.
    pub fn inverse(&self, ring: &Ring) -> Result<GenMap> {
        let dim = self.gens.len();
        let id = GenMap::identity(ring, dim);
        let mut inv = id.clone();
        for k in 1..=ring.n {
            let cut = Ring::new(ring.env, k);
            let comp = self.fit(&cut).after(&cut, &inv.fit(&cut))?;
            let gens = inv
                .gens
                .iter()
                .zip(comp.gens.iter())
                .map(|(g, c)| {
                    let mut g = ring.fit(g);
                    g.coeff_mut(k).add_scaled(c.coeff(k), &-Scalar::one());
                    g
                })
                .collect();
            inv = GenMap::new(1, gens);
        }
        Ok(inv)
    }

    /// Equality of generator images up to the ring's order.
    pub fn same_as(&self, ring: &Ring, other: &GenMap) -> bool {
        self.gens.len() == other.gens.len()
            && self.gens.iter().zip(&other.gens).all(|(a, b)| ring.sub(a, b).is_zero())
    }
}

/// Inserts a `1` leg at position `pos`.
pub fn insert_one(t: &UTensor, pos: usize) -> UTensor {
    t.map_keys(|k| {
        let mut nk = k.clone();
        nk.insert(pos, Mono::new());
        nk
    })
}

/// Applies the primitive coproduct to leg `leg`.
pub fn delta0_on_leg(t: &UTensor, leg: usize) -> UTensor {
    let mut out = UTensor::zero();
    for (k, c) in t.iter() {
        for (img, c2) in coproduct0_mono(&k[leg]).iter() {
            let mut nk = k[..leg].to_vec();
            nk.extend(img.iter().cloned());
            nk.extend(k[leg + 1..].iter().cloned());
            out.add_term(nk, c * c2);
        }
    }
    out
}

/// Iterated primitive coproduct of an element into `m` legs.
pub fn delta0_iter(x: &UElem, m: usize) -> UTensor {
    let mut t: UTensor = x.map_keys(|k| vec![k.clone()]);
    for leg in 0..m.saturating_sub(1) {
        t = delta0_on_leg(&t, leg);
    }
    t
}

/// Counit applied to leg `leg` (removing it).
pub fn counit_on_leg(t: &UTensor, leg: usize) -> UTensor {
    let mut out = UTensor::zero();
    for (k, c) in t.iter() {
        if k[leg].is_empty() {
            let mut nk = k.clone();
            nk.remove(leg);
            out.add_term(nk, c.clone());
        }
    }
    out
}
