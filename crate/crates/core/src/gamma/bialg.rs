use crate::error::{Error, Result};
use crate::exact::{LinMap, Tensor};
use crate::lie::{LieBialgebra, QuasitriangularData};
use crate::report::DefectReport;
use crate::twists::{ad_twist, twist_defect};

use super::action::{check_action, transport, GroupAction};

/// A Lie bialgebra with a group action and a compatible twist family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaLieBialgebra {
    bialg: LieBialgebra,
    action: GroupAction,
    twists: Vec<Tensor>,
}

impl GammaLieBialgebra {
    /// Checks the action and conditions (a), (b), (c).
    pub fn new(bialg: LieBialgebra, action: GroupAction, twists: Vec<Tensor>) -> Result<Self> {
        let g = Self::new_unchecked(bialg, action, twists)?;
        let rep = check_action(&g.action, g.bialg.alg())?;
        if let Some(e) = rep.failures().next() {
            return Err(Error::Axiom(format!("group action fails ({} at {})", e.condition, e.key)));
        }
        let rep = gamma_defects(&g)?;
        if let Some(e) = rep.failures().next() {
            return Err(Error::Axiom(format!("condition ({}) fails at {}", e.condition, e.key)));
        }
        Ok(g)
    }

    /// Checks only shapes and antisymmetry of the twist family.
    pub fn new_unchecked(bialg: LieBialgebra, action: GroupAction, twists: Vec<Tensor>) -> Result<Self> {
        let n = bialg.dim();
        if action.dim() != n {
            return Err(Error::Shape("action and bialgebra dimensions differ".into()));
        }
        if twists.len() != action.group().order() {
            return Err(Error::Shape(format!(
                "expected {} twists, got {}",
                action.group().order(),
                twists.len()
            )));
        }
        for f in &twists {
            if f.dims() != [n, n] {
                return Err(Error::Shape("twists must be 2-tensors".into()));
            }
            if !f.is_antisymmetric() {
                return Err(Error::NotAntisymmetric);
            }
        }
        Ok(Self { bialg, action, twists })
    }

    pub fn bialg(&self) -> &LieBialgebra {
        &self.bialg
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    pub fn twists(&self) -> &[Tensor] {
        &self.twists
    }

    pub fn twist(&self, g: usize) -> &Tensor {
        &self.twists[g]
    }

    pub fn dim(&self) -> usize {
        self.bialg.dim()
    }
}

/// Defects of conditions (a), (b), (c), plus the consequences `f_e = 0` and
/// `f_{γ⁻¹} = −∧²θ_{γ⁻¹}(f_γ)` checked on their own.
pub fn gamma_defects(g: &GammaLieBialgebra) -> Result<DefectReport> {
    let b = g.bialg();
    let a = g.action();
    let grp = a.group();
    let n = b.dim();
    let mut rep = DefectReport::new();
    for x in grp.elements() {
        let ad = ad_twist(b.alg(), g.twist(x))?;
        let mut d = Tensor::zero_square(n, 3);
        for i in 0..n {
            let moved = transport(a.theta(x), &b.delta(a.theta_inv(x).image(i)))?;
            let diff = moved.sub(&b.cobracket()[i])?.sub(&ad[i])?;
            for (jk, c) in diff.iter() {
                d.add_term(vec![i, jk[0], jk[1]], c.clone())?;
            }
        }
        rep.push("a", grp.label(x), d);
    }
    for x in grp.elements() {
        for y in grp.elements() {
            let rhs = g.twist(x).add(&transport(a.theta(x), g.twist(y))?)?;
            rep.push("b", format!("{},{}", grp.label(x), grp.label(y)), g.twist(grp.mul(x, y)).sub(&rhs)?);
        }
    }
    for x in grp.elements() {
        rep.push("c", grp.label(x), twist_defect(b, g.twist(x))?);
    }
    rep.push("f_e", grp.label(grp.identity()), g.twist(grp.identity()).clone());
    for x in grp.elements() {
        let xi = grp.inv(x);
        let d = g.twist(xi).add(&transport(a.theta(xi), g.twist(x))?)?;
        rep.push("inverse", grp.label(x), d);
    }
    Ok(rep)
}

/// `f_γ = θ_γ^{⊗2}(r) − r` over the coboundary bialgebra of `r`.
pub fn quasitriangular_gamma(q: &QuasitriangularData, action: &GroupAction) -> Result<GammaLieBialgebra> {
    if action.dim() != q.alg().dim() {
        return Err(Error::Shape("action and algebra dimensions differ".into()));
    }
    let rep = check_action(action, q.alg())?;
    if let Some(e) = rep.failures().next() {
        return Err(Error::Invalid(format!("not an action by automorphisms ({} at {})", e.condition, e.key)));
    }
    if !action.preserves(&q.t())? {
        return Err(Error::Invalid("action does not preserve the symmetric part of r".into()));
    }
    let r = q.r();
    let twists = action
        .matrices()
        .iter()
        .map(|m| transport(m, r)?.sub(r))
        .collect::<Result<Vec<_>>>()?;
    let g = GammaLieBialgebra::new_unchecked(q.bialgebra(), action.clone(), twists)?;
    if !gamma_defects(&g)?.is_zero() {
        return Err(Error::Internal("quasitriangular twist family fails the group conditions".into()));
    }
    Ok(g)
}

/// Defects of `i: src → dst` being a morphism of Γ-Lie bialgebras over the
/// same group.
pub fn gamma_morphism_check(src: &GammaLieBialgebra, dst: &GammaLieBialgebra, i: &LinMap) -> Result<DefectReport> {
    let (n, m) = (src.dim(), dst.dim());
    if i.dim_in() != n || i.dim_out() != m {
        return Err(Error::Shape(format!("morphism must be {m}×{n}")));
    }
    let grp = src.action().group();
    if !grp.same_table(dst.action().group()) {
        return Err(Error::Shape("source and target groups differ".into()));
    }
    let mut rep = DefectReport::new();
    rep.push("bracket", "", src.bialg().alg().morphism_defect(dst.bialg().alg(), i)?);
    let mut cob = Tensor::zero(vec![n, m, m]);
    for k in 0..n {
        let lhs = transport(i, &src.bialg().cobracket()[k])?;
        let rhs = dst.bialg().delta(i.image(k));
        for (jl, c) in lhs.sub(&rhs)?.iter() {
            cob.add_term(vec![k, jl[0], jl[1]], c.clone())?;
        }
    }
    rep.push("cobracket", "", cob);
    for x in grp.elements() {
        let lhs = i.compose(src.action().theta(x))?;
        let rhs = dst.action().theta(x).compose(i)?;
        let mut d = Tensor::zero(vec![m, n]);
        for col in 0..n {
            for (&row, c) in lhs.image(col).minus(rhs.image(col)).iter() {
                d.add_term(vec![row, col], c.clone())?;
            }
        }
        rep.push("equivariance", grp.label(x), d);
        rep.push("twist", grp.label(x), transport(i, src.twist(x))?.sub(dst.twist(x))?);
    }
    Ok(rep)
}
