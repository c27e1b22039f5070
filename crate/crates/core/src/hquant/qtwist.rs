use num_traits::One;

use super::coproduct::{coassoc_linear, relation_defects, relation_residuals, relation_rows, swap2, TruncatedCoproduct};
use super::ring::{delta0_on_leg, insert_one, GenMap, Ring, Ser};
use super::system::{unknown_keys, Columns, Rows};
use super::QuantOptions;
use crate::envelope::{tensor_one, Envelope, UTensor};
use crate::error::{Error, Result};
use crate::exact::{q, Scalar, Tensor};

/// Quantized twist `F = 1⊗1 + ℏF_1 + …`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantTwist {
    series: Ser,
}

impl QuantTwist {
    pub fn new(series: Ser) -> Result<Self> {
        if *series.coeff(0) != tensor_one(2) {
            return Err(Error::Invalid("twist must start with 1⊗1".into()));
        }
        Ok(Self { series })
    }

    pub fn trivial(order: usize) -> Self {
        Self { series: Ser::constant(tensor_one(2), order) }
    }

    pub fn series(&self) -> &Ser {
        &self.series
    }

    pub fn order(&self) -> usize {
        self.series.order()
    }

    /// `F_1 − F_1^{21}`.
    pub fn classical_part(&self) -> UTensor {
        if self.order() == 0 {
            return UTensor::zero();
        }
        let t = self.series.coeff(1);
        t.minus(&swap2(t))
    }

    /// `(ε⊗id)F − 1` and `(id⊗ε)F − 1` per order.
    pub fn counit_defect(&self) -> Vec<(UTensor, UTensor)> {
        counit_defect(&self.series)
    }
}

/// Counit defect of a two-leg series normalized to `1⊗1`.
pub(crate) fn counit_defect(s: &Ser) -> Vec<(UTensor, UTensor)> {
    s.coeffs()
        .iter()
        .enumerate()
        .map(|(k, t)| {
            let mut left = super::ring::counit_on_leg(t, 0);
            let mut right = super::ring::counit_on_leg(t, 1);
            if k == 0 {
                left.add_term(vec![vec![]], -Scalar::one());
                right.add_term(vec![vec![]], -Scalar::one());
            }
            (left, right)
        })
        .collect()
}

/// `(F⊗1)(Δ⊗id)(F) − (1⊗F)(id⊗Δ)(F)`.
pub fn cocycle_defect(delta: &TruncatedCoproduct, f: &Ser) -> Result<Ser> {
    cocycle_defect_in(&delta.ring(), delta.map(), f)
}

pub(crate) fn cocycle_defect_in(ring: &Ring, delta: &GenMap, f: &Ser) -> Result<Ser> {
    let f = ring.fit(f);
    let one = ring.one(1);
    let left = ring.mul(&ring.tensor(&f, &one)?, &delta.apply_leg(ring, &f, 0)?)?;
    let right = ring.mul(&ring.tensor(&one, &f)?, &delta.apply_leg(ring, &f, 1)?)?;
    Ok(ring.sub(&left, &right))
}

/// Solves the cocycle identity for `F` with `F_1 = f/2`.
pub fn solve_twist_f(delta: &TruncatedCoproduct, f: &Tensor, opts: &QuantOptions) -> Result<QuantTwist> {
    let n = opts.order.min(delta.order());
    let mut series = Ser::constant(tensor_one(2), n);
    if n >= 1 {
        *series.coeff_mut(1) = Envelope::lift_tensor(f).scaled(&q(1, 2));
    }
    let dim = delta.env().dim();
    for k in 2..=n {
        let ring = Ring::new(delta.env(), k);
        let map = delta.map().fit(&ring);
        let keys = unknown_keys(dim, 2, opts.caps.leg(k), opts.caps.total(k));
        let mut cols = Columns::default();
        cols.push_slot(0, &keys);
        let mut rows = Rows::default();
        rows.residual(0, cocycle_defect_in(&ring, &map, &series)?.coeff(k));
        for c in 0..cols.len() {
            rows.image(0, c, &coassoc_linear(&cols.tensor(c)));
        }
        let x = rows.solve(cols.len(), "twist", k, opts.caps.total(k))?;
        *series.coeff_mut(k) = cols.value(&x, 0);
    }
    QuantTwist::new(series)
}

/// Algebra automorphism of `U(𝔞)[[ℏ]]` equal to the identity at order 0.
#[derive(Debug, Clone)]
pub struct QuantIso {
    map: GenMap,
}

impl QuantIso {
    pub fn new(map: GenMap) -> Result<Self> {
        if map.legs() != 1 {
            return Err(Error::Shape("isomorphism tables have one leg".into()));
        }
        Ok(Self { map })
    }

    pub fn identity(env: &Envelope, order: usize) -> Self {
        Self { map: GenMap::identity(&Ring::new(env, order), env.dim()) }
    }

    pub fn map(&self) -> &GenMap {
        &self.map
    }

    pub fn order(&self) -> usize {
        self.map.gen(0).order()
    }

    pub fn inverse(&self, env: &Envelope) -> Result<Self> {
        Ok(Self { map: self.map.inverse(&Ring::new(env, self.order()))? })
    }

    /// `self ∘ other`.
    pub fn compose(&self, env: &Envelope, other: &QuantIso) -> Result<Self> {
        Ok(Self { map: self.map.after(&Ring::new(env, self.order()), &other.map)? })
    }

    pub fn same_as(&self, env: &Envelope, other: &QuantIso) -> bool {
        self.map.same_as(&Ring::new(env, self.order()), &other.map)
    }

    /// `x ↦ u x u⁻¹`.
    pub fn inner(env: &Envelope, u: &Ser) -> Result<Self> {
        let ring = Ring::new(env, u.order());
        Ok(Self { map: GenMap::identity(&ring, env.dim()).conjugated(&ring, u)? })
    }
}

/// `Δ_dst(i x) − i^{⊗2}(Δ_src x)` on generators.
pub fn intertwining_defect_q(src: &TruncatedCoproduct, dst: &TruncatedCoproduct, i: &QuantIso) -> Result<Vec<Ser>> {
    let ring = src.ring();
    let (s, d, im) = (src.map().fit(&ring), dst.map().fit(&ring), i.map.fit(&ring));
    (0..src.env().dim())
        .map(|x| Ok(ring.sub(&d.apply(&ring, im.gen(x))?, &im.apply_all_legs(&ring, s.gen(x))?)))
        .collect()
}

/// Algebra-relation defect of an isomorphism table.
pub fn iso_relation_defect(env: &Envelope, i: &QuantIso) -> Result<Vec<Ser>> {
    let ring = Ring::new(env, i.order());
    Ok(relation_defects(env.alg(), &ring, &i.map)?.into_iter().map(|(_, s)| s).collect())
}

/// Linear part of `i^{⊗2}Δ_0 − Δ_0 i` for a correction `X` at one order.
fn iso_linear(x: &UTensor) -> UTensor {
    let mut t = insert_one(x, 1);
    t.add_scaled(&insert_one(x, 0), &Scalar::one());
    t.add_scaled(&delta0_on_leg(x, 0), &-Scalar::one());
    t
}

/// Solves for `i` with `Δ_dst ∘ i = i^{⊗2} ∘ Δ_src` order by order.
pub fn solve_iso_i(src: &TruncatedCoproduct, dst: &TruncatedCoproduct, opts: &QuantOptions) -> Result<QuantIso> {
    let env = src.env();
    let dim = env.dim();
    let n = opts.order.min(src.order());
    let mut iso = QuantIso::identity(env, n);
    let base: Vec<UTensor> = (0..dim).map(|i| UTensor::basis(vec![vec![i as u8]])).collect();
    for k in 1..=n {
        let ring = Ring::new(env, k);
        let sub_src = TruncatedCoproduct::new(env.clone(), k, src.map().fit(&ring))?;
        let sub_dst = TruncatedCoproduct::new(env.clone(), k, dst.map().fit(&ring))?;
        let cur = QuantIso::new(iso.map.fit(&ring))?;
        let keys = unknown_keys(dim, 1, opts.caps.leg(k), opts.caps.leg(k));
        let mut cols = Columns::default();
        for a in 0..dim {
            cols.push_slot(a, &keys);
        }
        let mut rows = Rows::default();
        for (a, d) in intertwining_defect_q(&sub_src, &sub_dst, &cur)?.iter().enumerate() {
            rows.residual(a, d.coeff(k));
        }
        for c in 0..cols.len() {
            rows.image(cols.cols[c].0, c, &iso_linear(&cols.tensor(c)).neg());
        }
        relation_rows(env.alg(), env, &base, &cols, Some, dim, &mut rows)?;
        relation_residuals(&relation_defects(env.alg(), &ring, &cur.map)?, dim, k, dim, &mut rows);
        let x = rows.solve(cols.len(), "isomorphism", k, opts.caps.leg(k))?;
        let gens = iso
            .map
            .gens()
            .iter()
            .enumerate()
            .map(|(a, g)| {
                let mut g = g.clone();
                *g.coeff_mut(k) = cols.value(&x, a);
                g
            })
            .collect();
        iso = QuantIso::new(GenMap::new(1, gens))?;
    }
    Ok(iso)
}

/// Invertible `v = 1 + ℏv_1 + …` in `U(𝔞)[[ℏ]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantV {
    series: Ser,
}

impl QuantV {
    pub fn new(series: Ser) -> Result<Self> {
        if *series.coeff(0) != tensor_one(1) {
            return Err(Error::Invalid("v must start with 1".into()));
        }
        Ok(Self { series })
    }

    pub fn one(order: usize) -> Self {
        Self { series: Ser::constant(tensor_one(1), order) }
    }

    pub fn series(&self) -> &Ser {
        &self.series
    }

    pub fn is_one(&self) -> bool {
        self.series == Ser::constant(tensor_one(1), self.series.order())
    }

    /// `ε(v) − 1` per order.
    pub fn counit_defect(&self) -> Vec<Scalar> {
        self.series
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, t)| t.coeff(&vec![vec![]]) - if k == 0 { Scalar::one() } else { Scalar::from_integer(0.into()) })
            .collect()
    }
}

/// Linear part of `F″Δ(v) − (v⊗v)G` in `v_k`.
pub(crate) fn v_linear(x: &UTensor) -> UTensor {
    let mut t = delta0_on_leg(x, 0);
    t.add_scaled(&insert_one(x, 1), &-Scalar::one());
    t.add_scaled(&insert_one(x, 0), &-Scalar::one());
    t
}

/// Inputs of the composition relation for a pair `(f, f′)`.
pub struct VInputs<'a> {
    /// `Δ(𝔞)`.
    pub delta: &'a TruncatedCoproduct,
    /// `F(𝔞, f)`.
    pub f: &'a QuantTwist,
    /// `i(𝔞, f)`.
    pub i_f: &'a QuantIso,
    /// `F(𝔞_f, f′)`.
    pub f2: &'a QuantTwist,
    /// `i(𝔞_f, f′)`.
    pub i2: &'a QuantIso,
    /// `F(𝔞, f + f′)`.
    pub f12: &'a QuantTwist,
    /// `i(𝔞, f + f′)` when it is already fixed and must be matched.
    pub i12: Option<&'a QuantIso>,
}

impl VInputs<'_> {
    fn env(&self) -> &Envelope {
        self.delta.env()
    }

    /// `G = (i_f^{-1})^{⊗2}(F′) · F`.
    fn g(&self, ring: &Ring) -> Result<Ser> {
        let inv = self.i_f.map().fit(ring).inverse(ring)?;
        ring.mul(&inv.apply_all_legs(ring, self.f2.series())?, &ring.fit(self.f.series()))
    }

    /// `i(𝔞,f+f′)^{-1} ∘ i(𝔞_f,f′) ∘ i(𝔞,f)`.
    fn comparison(&self, ring: &Ring, i12: &QuantIso) -> Result<GenMap> {
        let i12_inv = i12.map().fit(ring).inverse(ring)?;
        let inner = self.i2.map().fit(ring).after(ring, &self.i_f.map().fit(ring))?;
        i12_inv.after(ring, &inner)
    }
}

/// `F(f+f′)Δ(v) − (v⊗v)·(i_f^{-1})^{⊗2}(F′)·F`.
pub fn v_relation_defect(inp: &VInputs, v: &QuantV) -> Result<Ser> {
    let ring = Ring::new(inp.env(), v.series().order());
    v_relation_in(&ring, inp, &ring.fit(v.series()))
}

fn v_relation_in(ring: &Ring, inp: &VInputs, v: &Ser) -> Result<Ser> {
    let delta = inp.delta.map().fit(ring);
    let lhs = ring.mul(&ring.fit(inp.f12.series()), &delta.apply(ring, v)?)?;
    let rhs = ring.mul(&ring.tensor(v, v)?, &inp.g(ring)?)?;
    Ok(ring.sub(&lhs, &rhs))
}

/// `i(𝔞,f+f′) − i(𝔞_f,f′) ∘ i(𝔞,f) ∘ Ad(v^{-1})` on generators.
pub fn i_composition_defect(env: &Envelope, i12: &QuantIso, i2: &QuantIso, i_f: &QuantIso, v: &QuantV) -> Result<Vec<Ser>> {
    let composed = composed_iso(env, i2, i_f, v)?;
    let ring = Ring::new(env, i12.order());
    Ok(i12.map().gens().iter().zip(composed.map().gens()).map(|(a, b)| ring.sub(a, b)).collect())
}

/// `i(𝔞_f,f′) ∘ i(𝔞,f) ∘ Ad(v^{-1})`.
pub fn composed_iso(env: &Envelope, i2: &QuantIso, i_f: &QuantIso, v: &QuantV) -> Result<QuantIso> {
    let ring = Ring::new(env, v.series().order());
    let ad = QuantIso::inner(env, &ring.inv(v.series())?)?;
    i2.compose(env, &i_f.compose(env, &ad)?)
}

/// Solves the composition relation for `v`, adding the isomorphism
/// composition rows when `i(𝔞,f+f′)` is already fixed.
pub fn solve_v(inp: &VInputs, opts: &QuantOptions) -> Result<QuantV> {
    let env = inp.env();
    let dim = env.dim();
    let n = opts.order.min(inp.f12.order());
    let mut v = Ser::constant(tensor_one(1), n);
    let comparison = match inp.i12 {
        Some(i12) => Some(inp.comparison(&Ring::new(env, n), i12)?),
        None => None,
    };
    for k in 1..=n {
        let ring = Ring::new(env, k);
        let cur = ring.fit(&v);
        let keys = unknown_keys(dim, 1, opts.caps.leg(k), opts.caps.leg(k));
        let mut cols = Columns::default();
        cols.push_slot(0, &keys);
        let mut rows = Rows::default();
        rows.residual(0, v_relation_in(&ring, inp, &cur)?.coeff(k));
        for c in 0..cols.len() {
            rows.image(0, c, &v_linear(&cols.tensor(c)));
        }
        if let Some(m) = &comparison {
            let m = m.fit(&ring);
            for y in 0..dim {
                let yt = ring.monomial(UTensor::basis(vec![vec![y as u8]]), 0);
                let d = ring.sub(&ring.mul(&cur, &yt)?, &ring.mul(m.gen(y), &cur)?);
                rows.residual(1 + y, d.coeff(k));
                for c in 0..cols.len() {
                    rows.image(1 + y, c, &env.commutator_tensor(&cols.tensor(c), yt.coeff(0))?);
                }
            }
        }
        let x = rows.solve(cols.len(), "composition element v", k, opts.caps.leg(k))?;
        *v.coeff_mut(k) = cols.value(&x, 0);
    }
    QuantV::new(v)
}
