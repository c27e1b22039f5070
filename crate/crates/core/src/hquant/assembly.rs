use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::coproduct::{coassoc_linear, relation_defects, relation_rows, TruncatedCoproduct};
use super::family::GaugeEvent;
use super::qt::{coproduct_from_j, solve_j_quasitriangular};
use super::qtwist::{cocycle_defect_in, v_linear, QuantIso, QuantTwist, QuantV};
use super::ring::{delta0_on_leg, insert_one, GenMap, Ring, Ser};
use super::system::{unknown_keys, Columns, Rows};
use super::QuantOptions;
use crate::envelope::{tensor_one, Envelope, Smash, UTensor};
use crate::error::{Error, Result};
use crate::exact::{q, Scalar};
use crate::gamma::{gamma_defects, quasitriangular_gamma, FiniteGroup, GammaLieBialgebra, GroupAction};
use crate::lie::QuasitriangularData;

/// Which construction produced a [`TruncatedGammaBialgebra`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Pipeline {
    Generic,
    Direct,
}

/// Γ-graded bialgebra `A = ⊕_γ U(𝔞)[[ℏ]]·[γ]` truncated at order `N`.
///
/// Product `[x|γ][x′|γ′] = [x · φ_γ(x′) · v_{γ,γ′}^{-1} | γγ′]` and coproduct
/// `Δ[x|γ] = [Δ(x) F_γ^{-1} | γ,γ]`; unit `[1|e]`, counit `[x|γ] ↦ ε(x)`.
#[derive(Debug, Clone)]
pub struct TruncatedGammaBialgebra {
    pub(crate) smash: Smash,
    pub(crate) order: usize,
    pub(crate) pipeline: Pipeline,
    pub(crate) delta: GenMap,
    pub(crate) twists: Vec<Ser>,
    pub(crate) phis: Vec<GenMap>,
    pub(crate) vs: Vec<Vec<Ser>>,
    pub(crate) vinvs: Vec<Vec<Ser>>,
    pub(crate) finvs: Vec<Ser>,
    pub(crate) log: Vec<GaugeEvent>,
}

/// Element of `A^{⊗m}`: for each tuple of group labels, a series in `U^{⊗m}`.
pub type ATensor = BTreeMap<Vec<usize>, Ser>;

impl TruncatedGammaBialgebra {
    #[allow(clippy::too_many_arguments)]
    fn from_parts(
        smash: Smash,
        order: usize,
        pipeline: Pipeline,
        delta: GenMap,
        twists: Vec<Ser>,
        phis: Vec<GenMap>,
        vs: Vec<Vec<Ser>>,
        log: Vec<GaugeEvent>,
    ) -> Result<Self> {
        let env = smash.env().clone();
        let ring = Ring::new(&env, order);
        let finvs = twists.iter().map(|f| ring.inv(f)).collect::<Result<Vec<_>>>()?;
        let vinvs = vs
            .iter()
            .map(|row| row.iter().map(|v| ring.inv(v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { smash, order, pipeline, delta, twists, phis, vs, vinvs, finvs, log })
    }

    /// Rebuilds `A` from stored tables: `Δ` on generators, one twist `F_γ`
    /// and one map `φ_γ` per group element, and the square table of
    /// `v_{γ,γ′}`. Only shapes and invertibility are checked here; the axioms
    /// are left to [`super::bialgebra_axiom_defects`].
    #[allow(clippy::too_many_arguments)]
    pub fn from_tables(
        smash: Smash,
        order: usize,
        pipeline: Pipeline,
        delta: GenMap,
        twists: Vec<Ser>,
        phis: Vec<GenMap>,
        vs: Vec<Vec<Ser>>,
    ) -> Result<Self> {
        let n = smash.env().dim();
        let m = smash.action().group().order();
        if delta.legs() != 2 || delta.gens().len() != n {
            return Err(Error::Shape(format!("coproduct table must give {n} two-leg generator images")));
        }
        if twists.len() != m || phis.len() != m || vs.len() != m || vs.iter().any(|r| r.len() != m) {
            return Err(Error::Shape(format!("twist, φ and v tables must be indexed by the {m} group elements")));
        }
        if phis.iter().any(|p| p.legs() != 1 || p.gens().len() != n) {
            return Err(Error::Shape(format!("each φ table must give {n} one-leg generator images")));
        }
        let ring = Ring::new(smash.env(), order);
        let fit = |s: &Ser| ring.fit(s);
        let delta = delta.fit(&ring);
        let twists: Vec<Ser> = twists.iter().map(fit).collect();
        let phis = phis.iter().map(|p| p.fit(&ring)).collect();
        let vs: Vec<Vec<Ser>> = vs.iter().map(|r| r.iter().map(fit).collect()).collect();
        for t in &twists {
            QuantTwist::new(Ser::clone(t))?;
        }
        for v in vs.iter().flatten() {
            QuantV::new(v.clone())?;
        }
        Self::from_parts(smash, order, pipeline, delta, twists, phis, vs, Vec::new())
    }

    /// `Δ` on generators.
    pub fn delta_table(&self) -> &GenMap {
        &self.delta
    }

    pub fn group(&self) -> &FiniteGroup {
        self.smash.action().group()
    }

    pub fn action(&self) -> &GroupAction {
        self.smash.action()
    }

    pub fn env(&self) -> &Envelope {
        self.smash.env()
    }

    pub fn smash(&self) -> &Smash {
        &self.smash
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn pipeline(&self) -> Pipeline {
        self.pipeline
    }

    pub fn ring(&self) -> Ring<'_> {
        Ring::new(self.smash.env(), self.order)
    }

    /// `Δ` on `U(𝔞)[[ℏ]]`.
    pub fn coproduct(&self) -> Result<TruncatedCoproduct> {
        TruncatedCoproduct::new(self.env().clone(), self.order, self.delta.clone())
    }

    pub fn twist(&self, g: usize) -> QuantTwist {
        QuantTwist::new(self.twists[g].clone()).expect("normalized")
    }

    /// `φ_γ`, the map through which `[1|γ]` acts by conjugation.
    pub fn phi(&self, g: usize) -> &GenMap {
        &self.phis[g]
    }

    /// `i_γ = θ_γ ∘ φ_γ^{-1}`.
    pub fn iso(&self, g: usize) -> Result<QuantIso> {
        let ring = self.ring();
        let theta_inv = GenMap::from_linear(&ring, self.action().theta_inv(g));
        QuantIso::new(self.phis[g].fit(&ring).after(&ring, &theta_inv)?.inverse(&ring)?)
    }

    pub fn v(&self, g: usize, h: usize) -> QuantV {
        QuantV::new(self.vs[g][h].clone()).expect("normalized")
    }

    pub fn gauge_log(&self) -> &[GaugeEvent] {
        &self.log
    }

    /// `[x|γ]` as an element of `A`.
    pub fn embed(&self, x: &UTensor, g: usize) -> ATensor {
        let mut t = ATensor::new();
        t.insert(vec![g], self.ring().monomial(x.clone(), 0));
        t
    }

    /// Product in `A^{⊗m}`, leg by leg.
    pub fn mul(&self, a: &ATensor, b: &ATensor) -> Result<ATensor> {
        let ring = self.ring();
        let grp = self.group();
        let mut out = ATensor::new();
        for (ga, xa) in a {
            for (gb, xb) in b {
                if ga.len() != gb.len() {
                    return Err(Error::Arity { expected: ga.len(), got: gb.len() });
                }
                let mut moved = ring.fit(xb);
                for (leg, &g) in ga.iter().enumerate() {
                    moved = self.phis[g].apply_leg(&ring, &moved, leg)?;
                }
                let mut vinv: Option<Ser> = None;
                for (&g, &h) in ga.iter().zip(gb) {
                    let vi = &self.vinvs[g][h];
                    vinv = Some(match vinv {
                        None => vi.clone(),
                        Some(acc) => ring.tensor(&acc, vi)?,
                    });
                }
                let mut prod = ring.mul(xa, &moved)?;
                if let Some(vi) = vinv {
                    prod = ring.mul(&prod, &vi)?;
                }
                let key: Vec<usize> = ga.iter().zip(gb).map(|(&g, &h)| grp.mul(g, h)).collect();
                accumulate(&ring, &mut out, key, &prod);
            }
        }
        Ok(prune(out))
    }

    /// Applies `Δ_A` to leg `leg`.
    pub fn coproduct_on_leg(&self, a: &ATensor, leg: usize) -> Result<ATensor> {
        let ring = self.ring();
        let mut out = ATensor::new();
        for (gs, x) in a {
            let m = gs.len();
            let g = gs[leg];
            let split = self.delta.apply_leg(&ring, x, leg)?;
            let finv = &self.finvs[g];
            let mut factor = ring.one(0);
            for _ in 0..leg {
                factor = ring.tensor(&factor, &ring.one(1))?;
            }
            factor = ring.tensor(&factor, finv)?;
            for _ in leg + 1..m {
                factor = ring.tensor(&factor, &ring.one(1))?;
            }
            let val = ring.mul(&split, &factor)?;
            let mut key = gs.clone();
            key.insert(leg, g);
            accumulate(&ring, &mut out, key, &val);
        }
        Ok(prune(out))
    }

    /// Applies the counit to leg `leg`.
    pub fn counit_on_leg(&self, a: &ATensor, leg: usize) -> Result<ATensor> {
        let ring = self.ring();
        let mut out = ATensor::new();
        for (gs, x) in a {
            let val = ring.map(x, |t| Ok(super::ring::counit_on_leg(t, leg)))?;
            let mut key = gs.clone();
            key.remove(leg);
            accumulate(&ring, &mut out, key, &val);
        }
        Ok(prune(out))
    }

    /// Coefficient of `ℏ^k` as a classical smash tensor.
    pub fn slice(a: &ATensor, k: usize) -> crate::envelope::STensor {
        let mut out = crate::envelope::STensor::zero();
        for (gs, x) in a {
            if k > x.order() {
                continue;
            }
            for (key, c) in x.coeff(k).iter() {
                out.add_term(key.iter().cloned().zip(gs.iter().cloned()).collect(), c.clone());
            }
        }
        out
    }
}

pub(crate) fn accumulate(ring: &Ring, out: &mut ATensor, key: Vec<usize>, val: &Ser) {
    let e = out.entry(key).or_insert_with(|| ring.zero());
    *e = ring.add(e, val);
}

pub(crate) fn prune(mut t: ATensor) -> ATensor {
    t.retain(|_, s| !s.is_zero());
    t
}

pub(crate) fn sub_atensor(ring: &Ring, a: &ATensor, b: &ATensor) -> ATensor {
    let mut out = a.clone();
    for (k, s) in b {
        let e = out.entry(k.clone()).or_insert_with(|| ring.zero());
        *e = ring.sub(e, s);
    }
    prune(out)
}

/// Equation families of the joint solve.
const EQ_COASSOC: usize = 0;
const EQ_REL: usize = 1_000;
const EQ_COCYCLE: usize = 10_000;
const EQ_C1: usize = 20_000;
const EQ_PHIREL: usize = 30_000;
const EQ_C2: usize = 100_000;
const EQ_C3: usize = 200_000;
const EQ_C4: usize = 300_000;

/// Current values of all unknown families during the joint solve.
struct State {
    delta: GenMap,
    twists: Vec<Ser>,
    phis: Vec<GenMap>,
    vs: Vec<Vec<Ser>>,
}

/// Residuals of every identity in the joint system, keyed by equation id.
fn joint_residuals(ring: &Ring, smash: &Smash, st: &State) -> Result<Vec<(usize, Ser)>> {
    let env = smash.env();
    let alg = env.alg();
    let n = alg.dim();
    let grp = smash.action().group();
    let order = grp.order();
    let e = grp.identity();
    let delta = st.delta.fit(ring);
    let twists: Vec<Ser> = st.twists.iter().map(|t| ring.fit(t)).collect();
    let phis: Vec<GenMap> = st.phis.iter().map(|p| p.fit(ring)).collect();
    let vs: Vec<Vec<Ser>> = st.vs.iter().map(|r| r.iter().map(|v| ring.fit(v)).collect()).collect();
    let mut out = Vec::new();
    for (a, g) in delta.gens().iter().enumerate() {
        out.push((EQ_COASSOC + a, ring.sub(&delta.apply_leg(ring, g, 0)?, &delta.apply_leg(ring, g, 1)?)));
    }
    for ((a, b), d) in relation_defects(alg, ring, &delta)? {
        out.push((EQ_REL + a * n + b, d));
    }
    let gens: Vec<Ser> = (0..n).map(|a| ring.monomial(UTensor::basis(vec![vec![a as u8]]), 0)).collect();
    for g in (0..order).filter(|&g| g != e) {
        out.push((EQ_COCYCLE + g, cocycle_defect_in(ring, &delta, &twists[g])?));
        let finv = ring.inv(&twists[g])?;
        for a in 0..n {
            let lhs = phis[g].apply_all_legs(ring, delta.gen(a))?;
            let rhs = ring.conj(&twists[g], &finv, &delta.apply(ring, phis[g].gen(a))?)?;
            out.push((EQ_C1 + g * n + a, ring.sub(&lhs, &rhs)));
        }
        for ((a, b), d) in relation_defects(alg, ring, &phis[g])? {
            out.push((EQ_PHIREL + g * 1000 + a * n + b, d));
        }
    }
    for g in (0..order).filter(|&g| g != e) {
        for h in (0..order).filter(|&h| h != e) {
            let gh = grp.mul(g, h);
            let v = &vs[g][h];
            let lhs = ring.mul(&twists[gh], &delta.apply(ring, v)?)?;
            let moved = phis[g].apply_all_legs(ring, &twists[h])?;
            let rhs = ring.mul_all(&[&ring.tensor(v, v)?, &moved, &twists[g]])?;
            out.push((EQ_C2 + g * order + h, ring.sub(&lhs, &rhs)));
            for a in 0..n {
                let inner = phis[g].apply(ring, phis[h].gen(a))?;
                let lhs = ring.mul(v, &inner)?;
                let rhs = ring.mul(phis[gh].gen(a), v)?;
                out.push((EQ_C3 + (g * order + h) * n + a, ring.sub(&lhs, &rhs)));
            }
            let _ = &gens;
            for l in (0..order).filter(|&l| l != e) {
                let lhs = ring.mul(&vs[gh][l], v)?;
                let rhs = ring.mul(&vs[g][grp.mul(h, l)], &phis[g].apply(ring, &vs[h][l])?)?;
                out.push((EQ_C4 + (g * order + h) * order + l, ring.sub(&lhs, &rhs)));
            }
        }
    }
    Ok(out)
}

/// Slot layout of the joint unknowns.
struct Slots {
    n: usize,
    order: usize,
}

impl Slots {
    const DELTA: usize = 0;
    const TWIST: usize = 100;
    const PHI: usize = 1_000;
    const V: usize = 100_000;

    fn delta(&self, a: usize) -> usize {
        Self::DELTA + a
    }
    fn twist(&self, g: usize) -> usize {
        Self::TWIST + g
    }
    fn phi(&self, g: usize, a: usize) -> usize {
        Self::PHI + g * self.n + a
    }
    fn v(&self, g: usize, h: usize) -> usize {
        Self::V + g * self.order + h
    }
}

/// Solves the joint aligned system and assembles `A`.
pub fn assemble_gamma_quantization(g: &GammaLieBialgebra, opts: &QuantOptions) -> Result<TruncatedGammaBialgebra> {
    assemble_gamma_quantization_with(g, None, None, opts)
}

/// Like [`assemble_gamma_quantization`], with `Δ` on `U(𝔞)` prescribed
/// rather than solved for.
pub fn assemble_gamma_quantization_over(
    g: &GammaLieBialgebra,
    base: &TruncatedCoproduct,
    opts: &QuantOptions,
) -> Result<TruncatedGammaBialgebra> {
    assemble_gamma_quantization_with(g, Some(base), None, opts)
}

/// General form: an optional prescribed `Δ` and an optional ordering of the
/// non-identity group elements, which fixes the column order of the joint
/// system and hence which free variables are pinned.
pub fn assemble_gamma_quantization_with(
    g: &GammaLieBialgebra,
    base: Option<&TruncatedCoproduct>,
    seed_order: Option<&[usize]>,
    opts: &QuantOptions,
) -> Result<TruncatedGammaBialgebra> {
    let grp = g.action().group();
    let ne = match seed_order {
        None => grp.elements().filter(|&x| x != grp.identity()).collect::<Vec<_>>(),
        Some(seed) => {
            let mut sorted = seed.to_vec();
            sorted.sort_unstable();
            let expected: Vec<usize> = grp.elements().filter(|&x| x != grp.identity()).collect();
            if sorted != expected {
                return Err(Error::Invalid("seed order must list every non-identity element exactly once".into()));
            }
            seed.to_vec()
        }
    };
    let map = match base {
        None => None,
        Some(base) => {
            if base.order() < opts.order || base.env().dim() != g.dim() {
                return Err(Error::Shape("prescribed coproduct does not cover the requested order".into()));
            }
            let ring = Ring::new(base.env(), opts.order);
            let cobracket = g.bialg().cobracket();
            for (i, lim) in base.classical_limit().iter().enumerate() {
                if opts.order >= 1 && *lim != Envelope::lift_tensor(&cobracket[i]) {
                    return Err(Error::Invalid("prescribed coproduct does not quantize the cobracket".into()));
                }
            }
            Some(base.map().fit(&ring))
        }
    };
    assemble_inner(g, map, ne, opts)
}

fn assemble_inner(g: &GammaLieBialgebra, base: Option<GenMap>, ne: Vec<usize>, opts: &QuantOptions) -> Result<TruncatedGammaBialgebra> {
    let rep = gamma_defects(g)?;
    if !rep.is_zero() {
        return Err(Error::Axiom(format!("Γ-Lie bialgebra conditions fail: {:?}", rep.failures().next())));
    }
    let b = g.bialg();
    let env = Envelope::new(b.alg().clone(), opts.window);
    let smash = Smash::new(env, g.action().clone())?;
    let env = smash.env();
    let n = b.dim();
    let grp = g.action().group().clone();
    let order = grp.order();
    let big = Ring::new(env, opts.order);
    let mut st = State {
        delta: GenMap::coproduct0(&big, n),
        twists: vec![big.one(2); order],
        phis: (0..order).map(|x| GenMap::from_linear(&big, g.action().theta(x))).collect(),
        vs: vec![vec![big.one(1); order]; order],
    };
    if opts.order >= 1 {
        let mut gens = st.delta.gens().to_vec();
        for (i, s) in gens.iter_mut().enumerate() {
            *s.coeff_mut(1) = Envelope::lift_tensor(&b.cobracket()[i]).scaled(&q(1, 2));
        }
        st.delta = base.clone().unwrap_or_else(|| GenMap::new(2, gens));
        for x in 0..order {
            *st.twists[x].coeff_mut(1) = Envelope::lift_tensor(g.twist(x)).scaled(&q(1, 2));
        }
    }
    let slots = Slots { n, order };
    let mut log = Vec::new();
    for k in 1..=opts.order {
        let ring = Ring::new(env, k);
        let mut cols = Columns::default();
        let two = unknown_keys(n, 2, opts.caps.leg(k), opts.caps.total(k));
        let one = unknown_keys(n, 1, opts.caps.leg(k), opts.caps.leg(k));
        if k >= 2 {
            if base.is_none() {
                for a in 0..n {
                    cols.push_slot(slots.delta(a), &two);
                }
            }
            for &x in &ne {
                cols.push_slot(slots.twist(x), &two);
            }
        }
        for &x in &ne {
            for a in 0..n {
                cols.push_slot(slots.phi(x, a), &one);
            }
        }
        for &x in &ne {
            for &y in &ne {
                cols.push_slot(slots.v(x, y), &one);
            }
        }
        let mut rows = Rows::default();
        for (eq, d) in joint_residuals(&ring, &smash, &st)? {
            rows.residual(eq, d.coeff(k));
        }
        joint_images(&smash, &slots, &ne, &cols, &mut rows)?;
        let x = rows.solve(cols.len(), "Γ-assembly", k, opts.caps.total(k))?;
        let nz = x.iter().filter(|c| !c.is_zero()).count();
        log.push(GaugeEvent { object: format!("order {k}"), action: format!("joint solve: {} unknowns, {nz} nonzero", cols.len()) });
        apply_solution(&mut st, &cols, &x, &slots, n, base.is_none(), k, &ne);
    }
    let ring = Ring::new(env, opts.order);
    let bad: Vec<usize> = joint_residuals(&ring, &smash, &st)?
        .into_iter()
        .filter(|(_, d)| !d.is_zero())
        .map(|(eq, _)| eq)
        .collect();
    if !bad.is_empty() {
        return Err(Error::Internal(format!("joint Γ system not satisfied after solve, equations {bad:?}")));
    }
    TruncatedGammaBialgebra::from_parts(smash, opts.order, Pipeline::Generic, st.delta, st.twists, st.phis, st.vs, log)
}

#[allow(clippy::too_many_arguments)]
fn apply_solution(
    st: &mut State,
    cols: &Columns,
    x: &[Scalar],
    slots: &Slots,
    n: usize,
    free_delta: bool,
    k: usize,
    ne: &[usize],
) {
    let set = |s: &mut Ser, t: UTensor| *s.coeff_mut(k) = t;
    if k >= 2 {
        if free_delta {
            let mut gens = st.delta.gens().to_vec();
            for (a, s) in gens.iter_mut().enumerate() {
                set(s, cols.value(x, slots.delta(a)));
            }
            st.delta = GenMap::new(2, gens);
        }
        for &g in ne {
            set(&mut st.twists[g], cols.value(x, slots.twist(g)));
        }
    }
    for &g in ne {
        let mut gens = st.phis[g].gens().to_vec();
        for (a, s) in gens.iter_mut().enumerate().take(n) {
            set(s, cols.value(x, slots.phi(g, a)));
        }
        st.phis[g] = GenMap::new(1, gens);
    }
    for &g in ne {
        for &h in ne {
            set(&mut st.vs[g][h], cols.value(x, slots.v(g, h)));
        }
    }
}

/// Linearized images of every column.
fn joint_images(smash: &Smash, slots: &Slots, ne: &[usize], cols: &Columns, rows: &mut Rows) -> Result<()> {
    let env = smash.env();
    let alg = env.alg();
    let n = alg.dim();
    let grp = smash.action().group();
    let order = grp.order();
    let e = grp.identity();
    let act = smash.action();
    let th = |g: usize, t: &UTensor| smash.theta_tensor(g, t);
    let gen = |a: usize| UTensor::basis(vec![vec![a as u8]]);
    let theta_gen = |g: usize, a: usize| -> UTensor { act.theta(g).image(a).map_keys(|&j| vec![vec![j as u8]]) };
    let d0: Vec<UTensor> = (0..n).map(|a| delta0_on_leg(&gen(a), 0)).collect();

    // relation rows for Δ and each φ_γ
    relation_rows(alg, env, &d0, cols, |s| (s < Slots::TWIST).then_some(s), EQ_REL, rows)?;
    for &g in ne {
        let base: Vec<UTensor> = (0..n).map(|a| theta_gen(g, a)).collect();
        let lo = slots.phi(g, 0);
        relation_rows(alg, env, &base, cols, |s| (s >= lo && s < lo + n).then(|| s - lo), EQ_PHIREL + g * 1000, rows)?;
    }

    for (c, (slot, _)) in cols.cols.iter().enumerate() {
        let x = cols.tensor(c);
        let slot = *slot;
        if slot < Slots::TWIST {
            let a = slot;
            rows.image(EQ_COASSOC + a, c, &coassoc_linear(&x));
            for &g in ne {
                rows.image(EQ_C1 + g * n + a, c, &th(g, &x)?);
                for a2 in 0..n {
                    let coef = act.theta(g).image(a2).coeff(&a);
                    if !coef.is_zero() {
                        rows.image(EQ_C1 + g * n + a2, c, &x.scaled(&-coef));
                    }
                }
            }
        } else if slot < Slots::PHI {
            let g = slot - Slots::TWIST;
            rows.image(EQ_COCYCLE + g, c, &coassoc_linear(&x));
            for a in 0..n {
                let dx = delta0_on_leg(&theta_gen(g, a), 0);
                rows.image(EQ_C1 + g * n + a, c, &env.commutator_tensor(&x, &dx)?.neg());
            }
            for &g1 in ne {
                for &g2 in ne {
                    let eq = EQ_C2 + g1 * order + g2;
                    if grp.mul(g1, g2) == g {
                        rows.image(eq, c, &x);
                    }
                    if g2 == g {
                        rows.image(eq, c, &th(g1, &x)?.neg());
                    }
                    if g1 == g {
                        rows.image(eq, c, &x.neg());
                    }
                }
            }
        } else if slot < Slots::V {
            let g = (slot - Slots::PHI) / n;
            let a = (slot - Slots::PHI) % n;
            let mut lin = insert_one(&x, 1);
            lin.add_scaled(&insert_one(&x, 0), &Scalar::one());
            lin.add_scaled(&delta0_on_leg(&x, 0), &-Scalar::one());
            rows.image(EQ_C1 + g * n + a, c, &lin);
            for &g1 in ne {
                for &g2 in ne {
                    let base = EQ_C3 + (g1 * order + g2) * n;
                    if g1 == g {
                        for a2 in 0..n {
                            let coef = act.theta(g2).image(a2).coeff(&a);
                            if !coef.is_zero() {
                                rows.image(base + a2, c, &x.scaled(&coef));
                            }
                        }
                    }
                    if g2 == g {
                        rows.image(base + a, c, &th(g1, &x)?);
                    }
                    if grp.mul(g1, g2) == g {
                        rows.image(base + a, c, &x.neg());
                    }
                }
            }
        } else {
            let g = (slot - Slots::V) / order;
            let h = (slot - Slots::V) % order;
            rows.image(EQ_C2 + g * order + h, c, &v_linear(&x));
            let gh = grp.mul(g, h);
            for a in 0..n {
                rows.image(EQ_C3 + (g * order + h) * n + a, c, &env.commutator_tensor(&x, &theta_gen(gh, a))?);
            }
            for &g1 in ne {
                for &g2 in ne {
                    for &g3 in ne {
                        let eq = EQ_C4 + (g1 * order + g2) * order + g3;
                        let g12 = grp.mul(g1, g2);
                        let g23 = grp.mul(g2, g3);
                        if g12 != e && (g12, g3) == (g, h) {
                            rows.image(eq, c, &x);
                        }
                        if (g1, g2) == (g, h) {
                            rows.image(eq, c, &x);
                        }
                        if g23 != e && (g1, g23) == (g, h) {
                            rows.image(eq, c, &x.neg());
                        }
                        if (g2, g3) == (g, h) {
                            rows.image(eq, c, &th(g1, &x)?.neg());
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Direct construction: undeformed smash product, `Δ = Ad(J) ∘ Δ_0`.
pub fn quasitriangular_gamma_quantize(
    qd: &QuasitriangularData,
    action: &GroupAction,
    opts: &QuantOptions,
) -> Result<TruncatedGammaBialgebra> {
    let g = quasitriangular_gamma(qd, action)?;
    let j = solve_j_quasitriangular(qd, Some(action), opts)?;
    direct_from_j(&g, qd, &j, opts)
}

/// Assembles the direct structure from a solved `J`.
pub fn direct_from_j(
    g: &GammaLieBialgebra,
    qd: &QuasitriangularData,
    j: &QuantTwist,
    opts: &QuantOptions,
) -> Result<TruncatedGammaBialgebra> {
    let delta = coproduct_from_j(qd, j, opts)?;
    let env = delta.env().clone();
    let smash = Smash::new(env, g.action().clone())?;
    let env = smash.env().clone();
    let ring = Ring::new(&env, opts.order);
    let grp = g.action().group();
    let jinv = ring.inv(j.series())?;
    let mut twists = Vec::new();
    let mut phis = Vec::new();
    for x in 0..grp.order() {
        let th = GenMap::from_linear(&ring, g.action().theta(x));
        twists.push(ring.mul(&th.apply_all_legs(&ring, j.series())?, &jinv)?);
        phis.push(th);
    }
    let vs = vec![vec![ring.one(1); grp.order()]; grp.order()];
    let log = vec![GaugeEvent { object: "J".into(), action: "solved with Γ-invariance rows".into() }];
    TruncatedGammaBialgebra::from_parts(smash, opts.order, Pipeline::Direct, delta.map().clone(), twists, phis, vs, log)
}

/// The structure transported along `[x|γ] ↦ [x·u_γ|γ]`: `F_γ ↦ u_γ^{⊗2} F_γ Δ(u_γ)^{-1}`,
/// `φ_γ ↦ Ad(u_γ) ∘ φ_γ` and `v_{γ,γ′} ↦ u_{γγ′} v_{γ,γ′} φ_γ(u_{γ′})^{-1} u_γ^{-1}`.
///
/// `us[e]` must be `1`; every `u_γ` must be counit-normalized.
pub fn gauge_transform(a: &TruncatedGammaBialgebra, us: &[Ser]) -> Result<TruncatedGammaBialgebra> {
    let ring = a.ring();
    let grp = a.group();
    if us.len() != grp.order() {
        return Err(Error::Arity { expected: grp.order(), got: us.len() });
    }
    if !us[grp.identity()].sub(&ring.one(1))?.is_zero() {
        return Err(Error::Shape("gauge element at the identity must be 1".into()));
    }
    let us: Vec<Ser> = us.iter().map(|u| ring.fit(u)).collect();
    for u in &us {
        if !QuantV::new(u.clone())?.counit_defect().iter().all(Zero::is_zero) {
            return Err(Error::Shape("gauge element is not counit-normalized".into()));
        }
    }
    let uinv = us.iter().map(|u| ring.inv(u)).collect::<Result<Vec<_>>>()?;
    let mut twists = Vec::new();
    let mut phis = Vec::new();
    for g in grp.elements() {
        let uu = ring.tensor(&us[g], &us[g])?;
        let du = ring.inv(&a.delta.apply(&ring, &us[g])?)?;
        twists.push(ring.mul_all(&[&uu, &a.twists[g], &du])?);
        phis.push(a.phis[g].conjugated(&ring, &us[g])?);
    }
    let mut vs = a.vs.clone();
    for g in grp.elements() {
        for h in grp.elements() {
            let moved = ring.inv(&a.phis[g].apply(&ring, &us[h])?)?;
            vs[g][h] = ring.mul_all(&[&us[grp.mul(g, h)], &a.vs[g][h], &moved, &uinv[g]])?;
        }
    }
    let mut log = a.log.clone();
    log.push(GaugeEvent { object: "A".into(), action: "transported along a group-element gauge".into() });
    TruncatedGammaBialgebra::from_parts(a.smash.clone(), a.order, a.pipeline, a.delta.clone(), twists, phis, vs, log)
}

/// Copy of `A` with every `v_{γ,γ′}` replaced by `1`.
pub fn with_trivial_v(a: &TruncatedGammaBialgebra) -> Result<TruncatedGammaBialgebra> {
    let one = Ser::constant(tensor_one(1), a.order);
    let vs = vec![vec![one; a.vs.len()]; a.vs.len()];
    TruncatedGammaBialgebra::from_parts(
        a.smash.clone(),
        a.order,
        a.pipeline,
        a.delta.clone(),
        a.twists.clone(),
        a.phis.clone(),
        vs,
        a.log.clone(),
    )
}
