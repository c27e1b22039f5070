use crate::error::{Error, Result};
use crate::exact::{LinMap, Tensor};
use crate::lie::LieAlgebra;
use crate::report::DefectReport;

use super::group::FiniteGroup;

/// `θ^{⊗k}` applied to a tensor whose slots all live in the same space.
pub fn transport(m: &LinMap, t: &Tensor) -> Result<Tensor> {
    let mut out = t.clone();
    for slot in 0..t.arity() {
        out = out.map_slot(slot, m.dim_out(), |k| m.image(k).clone())?;
    }
    Ok(out)
}

fn matrix_tensor(m: &LinMap) -> Tensor {
    let n = m.dim_in();
    let mut t = Tensor::zero(vec![m.dim_out(), n]);
    for j in 0..n {
        for (&i, c) in m.image(j).iter() {
            t.add_term(vec![i, j], c.clone()).expect("in range");
        }
    }
    t
}

fn map_difference(a: &LinMap, b: &LinMap) -> Tensor {
    matrix_tensor(a).sub(&matrix_tensor(b)).expect("same shape")
}

/// A linear action `γ ↦ θ_γ` of a finite group on a based space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAction {
    group: FiniteGroup,
    theta: Vec<LinMap>,
    theta_inv: Vec<LinMap>,
}

impl GroupAction {
    /// Accepts any family of invertible square matrices; the action axioms are
    /// reported by [`check_action`].
    pub fn new(group: FiniteGroup, theta: Vec<LinMap>) -> Result<Self> {
        if theta.len() != group.order() {
            return Err(Error::Shape(format!(
                "expected {} action matrices, got {}",
                group.order(),
                theta.len()
            )));
        }
        let n = theta[0].dim_in();
        let mut theta_inv = Vec::with_capacity(theta.len());
        for (g, m) in theta.iter().enumerate() {
            if m.dim_in() != n || m.dim_out() != n {
                return Err(Error::Shape(format!("action matrix for {} is not {n}×{n}", group.label(g))));
            }
            theta_inv.push(m.inverse().ok_or_else(|| Error::Singular(group.label(g).to_string()))?);
        }
        Ok(Self { group, theta, theta_inv })
    }

    pub fn trivial(group: FiniteGroup, n: usize) -> Self {
        let theta = vec![LinMap::identity(n); group.order()];
        Self::new(group, theta).expect("identity is invertible")
    }

    /// The group generated by the given matrices, with elements labelled by
    /// shortest words in the generator labels and `e` for the identity.
    pub fn generated(n: usize, gens: &[(&str, LinMap)]) -> Result<Self> {
        let mut elems = vec![LinMap::identity(n)];
        let mut labels = vec!["e".to_string()];
        let mut frontier = 0;
        while frontier < elems.len() {
            for (name, g) in gens {
                let m = elems[frontier].compose(g)?;
                if !elems.contains(&m) {
                    let word = if frontier == 0 { name.to_string() } else { format!("{}{}", labels[frontier], name) };
                    elems.push(m);
                    labels.push(word);
                    if elems.len() > 24 {
                        return Err(Error::Invalid("generated group has more than 24 elements".into()));
                    }
                }
            }
            frontier += 1;
        }
        let table = elems
            .iter()
            .map(|a| {
                elems
                    .iter()
                    .map(|b| {
                        let ab = a.compose(b).expect("square");
                        elems.iter().position(|c| *c == ab).ok_or_else(|| Error::Internal("not closed".into()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(FiniteGroup::new(labels, table)?, elems)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.theta[0].dim_in()
    }

    pub fn theta(&self, g: usize) -> &LinMap {
        &self.theta[g]
    }

    pub fn theta_inv(&self, g: usize) -> &LinMap {
        &self.theta_inv[g]
    }

    pub fn matrices(&self) -> &[LinMap] {
        &self.theta
    }

    /// Whether `θ_γ^{⊗2}(t) = t` for every group element.
    pub fn preserves(&self, t: &Tensor) -> Result<bool> {
        for m in &self.theta {
            if transport(m, t)? != *t {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Homomorphism defects `θ_γθ_γ′ − θ_{γγ′}` and automorphism defects
/// `θ_γ[x,y] − [θ_γx, θ_γy]`.
pub fn check_action(a: &GroupAction, l: &LieAlgebra) -> Result<DefectReport> {
    if a.dim() != l.dim() {
        return Err(Error::Shape(format!("action on dimension {} for algebra of dimension {}", a.dim(), l.dim())));
    }
    let g = a.group();
    let mut rep = DefectReport::new();
    if !a.theta(g.identity()).is_identity() {
        rep.push("identity", "e", map_difference(a.theta(g.identity()), &LinMap::identity(a.dim())));
    }
    for x in g.elements() {
        for y in g.elements() {
            let lhs = a.theta(x).compose(a.theta(y))?;
            let key = format!("{},{}", g.label(x), g.label(y));
            rep.push("homomorphism", key, map_difference(&lhs, a.theta(g.mul(x, y))));
        }
    }
    for x in g.elements() {
        rep.push("automorphism", g.label(x), l.automorphism_defect(a.theta(x))?);
    }
    Ok(rep)
}
