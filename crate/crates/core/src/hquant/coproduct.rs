use num_traits::One;

use super::ring::{delta0_on_leg, insert_one, GenMap, Ring, Ser};
use super::system::{unknown_keys, Columns, Rows};
use super::QuantOptions;
use crate::envelope::{Envelope, UTensor};
use crate::error::{Error, Result};
use crate::exact::{q, Scalar};
use crate::lie::{LieAlgebra, LieBialgebra};

/// Deformed coproduct on `U(𝔞)[[ℏ]]/ℏ^{N+1}`, an algebra map for the
/// undeformed product, stored by its values on generators.
#[derive(Debug, Clone)]
pub struct TruncatedCoproduct {
    env: Envelope,
    order: usize,
    map: GenMap,
}

impl TruncatedCoproduct {
    pub fn new(env: Envelope, order: usize, map: GenMap) -> Result<Self> {
        if map.legs() != 2 || map.gens().len() != env.dim() {
            return Err(Error::Shape("coproduct table must have two legs per generator".into()));
        }
        Ok(Self { env, order, map })
    }

    /// The primitive coproduct `Δ_0`.
    pub fn primitive(alg: &LieAlgebra, opts: &QuantOptions) -> Self {
        let env = Envelope::new(alg.clone(), opts.window);
        let ring = Ring::new(&env, opts.order);
        let map = GenMap::coproduct0(&ring, alg.dim());
        Self { env, order: opts.order, map }
    }

    pub fn env(&self) -> &Envelope {
        &self.env
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn map(&self) -> &GenMap {
        &self.map
    }

    pub fn ring(&self) -> Ring<'_> {
        Ring::new(&self.env, self.order)
    }

    /// `Δ_k(x_i)`.
    pub fn table(&self, k: usize, i: usize) -> &UTensor {
        self.map.gen(i).coeff(k)
    }

    /// `Ad(a) ∘ Δ`.
    pub fn conjugated(&self, a: &Ser) -> Result<Self> {
        let ring = self.ring();
        Ok(Self { env: self.env.clone(), order: self.order, map: self.map.conjugated(&ring, a)? })
    }

    /// `(Δ⊗id)Δ(x_i) − (id⊗Δ)Δ(x_i)` for every generator.
    pub fn coassoc_series(&self, ring: &Ring) -> Result<Vec<Ser>> {
        let map = self.map.fit(ring);
        map.gens()
            .iter()
            .map(|g| Ok(ring.sub(&map.apply_leg(ring, g, 0)?, &map.apply_leg(ring, g, 1)?)))
            .collect()
    }

    /// `Δ(x_a)Δ(x_b) − Δ(x_b)Δ(x_a) − Δ([x_a, x_b])` for `a < b`.
    pub fn relation_series(&self, ring: &Ring) -> Result<Vec<((usize, usize), Ser)>> {
        let map = self.map.fit(ring);
        relation_defects(self.env.alg(), ring, &map)
    }

    /// Order-1 antisymmetric part `Δ_1 − Δ_1^{op}` on each generator.
    pub fn classical_limit(&self) -> Vec<UTensor> {
        (0..self.env.dim())
            .map(|i| {
                if self.order == 0 {
                    return UTensor::zero();
                }
                let t = self.table(1, i);
                t.minus(&swap2(t))
            })
            .collect()
    }
}

pub(crate) fn swap2(t: &UTensor) -> UTensor {
    t.map_keys(|k| vec![k[1].clone(), k[0].clone()])
}

/// Failure of a generator table to respect the bracket relations.
pub(crate) fn relation_defects(alg: &LieAlgebra, ring: &Ring, map: &GenMap) -> Result<Vec<((usize, usize), Ser)>> {
    let n = alg.dim();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let mut d = ring.commutator(map.gen(a), map.gen(b))?;
            for (&l, c) in alg.bracket_basis(a, b) {
                let mut g = ring.fit(map.gen(l));
                for k in 0..=ring.n {
                    *g.coeff_mut(k) = g.coeff(k).scaled(&-c.clone());
                }
                d = ring.add(&d, &g);
            }
            out.push(((a, b), d));
        }
    }
    Ok(out)
}

/// Adds bracket-relation rows for unknown order-`k` generator images.
///
/// `base` holds the order-0 images; column `c` of slot `s` contributes to the
/// images of generator `slot_gen(s)`.
pub(crate) fn relation_rows(
    alg: &LieAlgebra,
    env: &Envelope,
    base: &[UTensor],
    cols: &Columns,
    slot_gen: impl Fn(usize) -> Option<usize>,
    eq_offset: usize,
    rows: &mut Rows,
) -> Result<()> {
    let n = alg.dim();
    let pair_index = |a: usize, b: usize| eq_offset + a * n + b;
    for (c, (slot, _)) in cols.cols.iter().enumerate() {
        let Some(g) = slot_gen(*slot) else { continue };
        let x = cols.tensor(c);
        for other in 0..n {
            if other == g {
                continue;
            }
            let (a, b) = if g < other { (g, other) } else { (other, g) };
            let img = if g == a {
                env.commutator_tensor(&x, &base[b])?
            } else {
                env.commutator_tensor(&base[a], &x)?
            };
            rows.image(pair_index(a, b), c, &img);
        }
        for a in 0..n {
            for b in a + 1..n {
                let cl = alg.bracket_basis(a, b).coeff(&g);
                if !num_traits::Zero::is_zero(&cl) {
                    rows.image(pair_index(a, b), c, &x.scaled(&-cl));
                }
            }
        }
    }
    Ok(())
}

/// Registers residual rows of the relation defects at order `k`.
pub(crate) fn relation_residuals(defects: &[((usize, usize), Ser)], n: usize, k: usize, eq_offset: usize, rows: &mut Rows) {
    for ((a, b), d) in defects {
        rows.residual(eq_offset + a * n + b, d.coeff(k));
    }
}

/// Linear part of coassociativity for a correction `D` to `Δ(x)`.
pub(crate) fn coassoc_linear(x: &UTensor) -> UTensor {
    let mut t = insert_one(x, 2);
    t.add_scaled(&delta0_on_leg(x, 0), &Scalar::one());
    t.add_scaled(&insert_one(x, 0), &-Scalar::one());
    t.add_scaled(&delta0_on_leg(x, 1), &-Scalar::one());
    t
}

/// Solves order by order for a coassociative deformation of `Δ_0` with
/// `Δ_1 = δ/2`.
pub fn solve_coproduct(b: &LieBialgebra, opts: &QuantOptions) -> Result<TruncatedCoproduct> {
    let mut delta = TruncatedCoproduct::primitive(b.alg(), opts);
    if opts.order == 0 {
        return Ok(delta);
    }
    let mut gens = delta.map.gens().to_vec();
    for (i, g) in gens.iter_mut().enumerate() {
        *g.coeff_mut(1) = Envelope::lift_tensor(&b.cobracket()[i]).scaled(&q(1, 2));
    }
    delta.map = GenMap::new(2, gens);
    for k in 2..=opts.order {
        let x = solve_coproduct_order(&delta, k, opts)?;
        let mut gens = delta.map.gens().to_vec();
        for (i, g) in gens.iter_mut().enumerate() {
            *g.coeff_mut(k) = x[i].clone();
        }
        delta.map = GenMap::new(2, gens);
    }
    Ok(delta)
}

fn solve_coproduct_order(delta: &TruncatedCoproduct, k: usize, opts: &QuantOptions) -> Result<Vec<UTensor>> {
    let env = delta.env();
    let alg = env.alg();
    let n = alg.dim();
    let ring = Ring::new(env, k);
    let keys = unknown_keys(n, 2, opts.caps.leg(k), opts.caps.total(k));
    let mut cols = Columns::default();
    for a in 0..n {
        cols.push_slot(a, &keys);
    }
    let mut rows = Rows::default();
    for (a, d) in delta.coassoc_series(&ring)?.iter().enumerate() {
        rows.residual(a, d.coeff(k));
    }
    for c in 0..cols.len() {
        rows.image(cols.cols[c].0, c, &coassoc_linear(&cols.tensor(c)));
    }
    let base: Vec<UTensor> = (0..n).map(|i| delta.table(0, i).clone()).collect();
    relation_rows(alg, env, &base, &cols, Some, n, &mut rows)?;
    relation_residuals(&delta.relation_series(&ring)?, n, k, n, &mut rows);
    let x = rows.solve(cols.len(), "coproduct", k, opts.caps.total(k))?;
    Ok((0..n).map(|a| cols.value(&x, a)).collect())
}

/// `(Δ⊗id)∘Δ − (id⊗Δ)∘Δ` on generators, per order.
pub fn coassoc_defect(delta: &TruncatedCoproduct) -> Result<Vec<Ser>> {
    delta.coassoc_series(&delta.ring())
}
