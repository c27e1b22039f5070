use num_traits::{One, Zero};
use serde::Serialize;

use super::assembly::TruncatedGammaBialgebra;
use super::coproduct::{relation_defects, relation_rows};
use super::qtwist::{v_linear, QuantIso};
use super::ring::{GenMap, Ring, Ser};
use super::system::{unknown_keys, Columns, Rows};
use super::QuantOptions;
use crate::envelope::{Mono, UTensor};
use crate::error::{Error, Result};
use crate::exact::{format_scalar, Scalar};

/// An isomorphism `Ψ: A_src → A_dst` with `Ψ[x|e] = [j(x)|e]` and
/// `Ψ[1|γ] = [u_γ|γ]`.
#[derive(Debug, Clone)]
pub struct PipelineWitness {
    pub j: QuantIso,
    pub u: Vec<Ser>,
}

/// A row of an inconsistency certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateRow {
    pub equation: String,
    pub key: String,
    pub multiplier: String,
}

/// Proof that no witness exists under the configured caps at some order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceCertificate {
    pub order: usize,
    pub rows: Vec<CertificateRow>,
}

/// Outcome of [`compare_pipelines`].
#[derive(Debug, Clone)]
pub enum Comparison {
    Witness(PipelineWitness),
    NotFound(EquivalenceCertificate),
}

const EQ_W1: usize = 0;
const EQ_W2: usize = 100_000;
const EQ_W3: usize = 200_000;
const EQ_W4: usize = 300_000;
const EQ_REL: usize = 400_000;

fn equation_name(eq: usize, n: usize, order: usize) -> String {
    match eq {
        e if e >= EQ_REL => format!("j relation ({}, {})", (e - EQ_REL) / n, (e - EQ_REL) % n),
        e if e >= EQ_W4 => format!("coproduct on [1|{}]", e - EQ_W4),
        e if e >= EQ_W3 => format!("coproduct on x{}", e - EQ_W3),
        e if e >= EQ_W2 => format!("group product ({}, {})", (e - EQ_W2) / order, (e - EQ_W2) % order),
        e => format!("exchange [1|{}] x{}", e / n, e % n),
    }
}

/// Residuals of the witness equations for `Ψ: src → dst`.
fn witness_residuals(
    ring: &Ring,
    src: &TruncatedGammaBialgebra,
    dst: &TruncatedGammaBialgebra,
    j: &GenMap,
    u: &[Ser],
) -> Result<Vec<(usize, Ser)>> {
    let n = src.env().dim();
    let grp = src.group();
    let order = grp.order();
    let e = grp.identity();
    let j = j.fit(ring);
    let u: Vec<Ser> = u.iter().map(|x| ring.fit(x)).collect();
    let fit = |m: &GenMap| m.fit(ring);
    let (sd, dd) = (fit(&src.delta), fit(&dst.delta));
    let mut out = Vec::new();
    for g in (0..order).filter(|&g| g != e) {
        let (sphi, dphi) = (fit(&src.phis[g]), fit(&dst.phis[g]));
        for a in 0..n {
            let lhs = ring.mul(&u[g], &dphi.apply(ring, j.gen(a))?)?;
            let rhs = ring.mul(&j.apply(ring, sphi.gen(a))?, &u[g])?;
            out.push((EQ_W1 + g * n + a, ring.sub(&lhs, &rhs)));
        }
        for h in (0..order).filter(|&h| h != e) {
            let gh = grp.mul(g, h);
            let lhs = ring.mul_all(&[&u[g], &dphi.apply(ring, &u[h])?, &ring.fit(&dst.vinvs[g][h])])?;
            let rhs = ring.mul(&j.apply(ring, &ring.fit(&src.vinvs[g][h]))?, &u[gh])?;
            out.push((EQ_W2 + g * order + h, ring.sub(&lhs, &rhs)));
        }
        let lhs = ring.mul(&dd.apply(ring, &u[g])?, &ring.fit(&dst.finvs[g]))?;
        let rhs = ring.mul(&j.apply_all_legs(ring, &ring.fit(&src.finvs[g]))?, &ring.tensor(&u[g], &u[g])?)?;
        out.push((EQ_W4 + g, ring.sub(&lhs, &rhs)));
    }
    for a in 0..n {
        let lhs = dd.apply(ring, j.gen(a))?;
        let rhs = j.apply_all_legs(ring, sd.gen(a))?;
        out.push((EQ_W3 + a, ring.sub(&lhs, &rhs)));
    }
    for ((a, b), d) in relation_defects(src.env().alg(), ring, &j)? {
        out.push((EQ_REL + a * n + b, d));
    }
    Ok(out)
}

/// `(j, u)` with `scale · x` added at order `k`.
fn updated(j: &GenMap, u: &[Ser], cols: &Columns, x: &[Scalar], k: usize, n: usize, scale: &Scalar) -> (GenMap, Vec<Ser>) {
    let mut gens = j.gens().to_vec();
    for (a, s) in gens.iter_mut().enumerate() {
        let add = cols.value(x, a).scaled(scale);
        *s.coeff_mut(k) = s.coeff(k).plus(&add);
    }
    let mut u = u.to_vec();
    for (g, s) in u.iter_mut().enumerate() {
        let add = cols.value(x, n + g).scaled(scale);
        *s.coeff_mut(k) = s.coeff(k).plus(&add);
    }
    (GenMap::new(1, gens), u)
}

/// Linearized witness equations at order `k`.
fn linear_rows(src: &TruncatedGammaBialgebra, k: usize, opts: &QuantOptions) -> Result<(Columns, Rows)> {
    let env = src.env();
    let alg = env.alg();
    let n = alg.dim();
    let grp = src.group();
    let order = grp.order();
    let ne: Vec<usize> = (0..order).filter(|&g| g != grp.identity()).collect();
    let keys = unknown_keys(n, 1, opts.caps.leg(k), opts.caps.leg(k));
    let mut cols = Columns::default();
    for a in 0..n {
        cols.push_slot(a, &keys);
    }
    for &g in &ne {
        cols.push_slot(n + g, &keys);
    }
    let mut rows = Rows::default();
    let base: Vec<UTensor> = (0..n).map(|a| UTensor::basis(vec![vec![a as u8]])).collect();
    relation_rows(alg, env, &base, &cols, |s| (s < n).then_some(s), EQ_REL, &mut rows)?;
    let theta_gen = |g: usize, a: usize| -> UTensor { src.action().theta(g).image(a).map_keys(|&i| vec![vec![i as u8]]) };
    for (c, (slot, _)) in cols.cols.iter().enumerate() {
        let x = cols.tensor(c);
        if *slot < n {
            let a = *slot;
            rows.image(EQ_W3 + a, c, &v_linear(&x));
            for &g in &ne {
                rows.image(EQ_W1 + g * n + a, c, &src.smash().theta_tensor(g, &x)?);
                for a2 in 0..n {
                    let coef = src.action().theta(g).image(a2).coeff(&a);
                    if !coef.is_zero() {
                        rows.image(EQ_W1 + g * n + a2, c, &x.scaled(&-coef));
                    }
                }
            }
        } else {
            let g = *slot - n;
            rows.image(EQ_W4 + g, c, &v_linear(&x));
            for a in 0..n {
                rows.image(EQ_W1 + g * n + a, c, &env.commutator_tensor(&x, &theta_gen(g, a))?);
            }
            for &g1 in &ne {
                for &g2 in &ne {
                    let eq = EQ_W2 + g1 * order + g2;
                    if g1 == g {
                        rows.image(eq, c, &x);
                    }
                    if g2 == g {
                        rows.image(eq, c, &src.smash().theta_tensor(g1, &x)?);
                    }
                    if grp.mul(g1, g2) == g {
                        rows.image(eq, c, &x.neg());
                    }
                }
            }
        }
    }
    Ok((cols, rows))
}

type Solved = std::result::Result<Vec<Scalar>, Vec<(usize, Vec<Mono>, Scalar)>>;

fn solve_order(
    src: &TruncatedGammaBialgebra,
    dst: &TruncatedGammaBialgebra,
    base: &Rows,
    ncols: usize,
    k: usize,
    j: &GenMap,
    u: &[Ser],
) -> Result<Solved> {
    let ring = Ring::new(src.env(), k);
    let mut rows = base.clone();
    for (eq, d) in witness_residuals(&ring, src, dst, j, u)? {
        rows.residual(eq, d.coeff(k));
    }
    rows.solve_or_certificate(ncols)
}

/// Searches order by order for a Γ-graded bialgebra isomorphism from `src`
/// to `dst` that is the identity at order 0.
///
/// When order `k` is obstructed, the homogeneous solutions of order `k − 1`
/// are reopened: their exact first-order effect on the order-`k` residual is
/// added as extra columns, the chosen combination is committed at order
/// `k − 1`, and order `k` is solved again.
pub fn compare_pipelines(src: &TruncatedGammaBialgebra, dst: &TruncatedGammaBialgebra, opts: &QuantOptions) -> Result<Comparison> {
    if !src.group().same_table(dst.group()) || src.env().dim() != dst.env().dim() || src.order() != dst.order() {
        return Err(Error::Shape("the two structures live over different data".into()));
    }
    let env = src.env();
    let n = env.dim();
    let order = src.group().order();
    let big = src.ring();
    let mut j = GenMap::identity(&big, n);
    let mut u = vec![big.one(1); order];
    let mut prev: Option<(Columns, Vec<Vec<Scalar>>)> = None;
    let half = Scalar::new(1.into(), 2.into());
    for k in 1..=src.order() {
        let (cols, base) = linear_rows(src, k, opts)?;
        let mut solved = solve_order(src, dst, &base, cols.len(), k, &j, &u)?;
        if let (Err(_), Some((pcols, kernel))) = (&solved, &prev) {
            if !kernel.is_empty() {
                let ring = Ring::new(env, k);
                let mut rows = base.clone();
                for (eq, d) in witness_residuals(&ring, src, dst, &j, &u)? {
                    rows.residual(eq, d.coeff(k));
                }
                for (i, kv) in kernel.iter().enumerate() {
                    let (jp, up) = updated(&j, &u, pcols, kv, k - 1, n, &Scalar::one());
                    let (jm, um) = updated(&j, &u, pcols, kv, k - 1, n, &-Scalar::one());
                    let plus = witness_residuals(&ring, src, dst, &jp, &up)?;
                    let minus = witness_residuals(&ring, src, dst, &jm, &um)?;
                    for ((eq, p), (_, m)) in plus.iter().zip(&minus) {
                        let d = p.coeff(k).minus(m.coeff(k)).scaled(&half);
                        rows.image(*eq, cols.len() + i, &d);
                    }
                }
                if let Ok(x) = rows.solve_or_certificate(cols.len() + kernel.len())? {
                    let mut combo = vec![Scalar::zero(); pcols.len()];
                    for (i, kv) in kernel.iter().enumerate() {
                        let c = &x[cols.len() + i];
                        for (t, v) in combo.iter_mut().zip(kv) {
                            *t += c * v;
                        }
                    }
                    (j, u) = updated(&j, &u, pcols, &combo, k - 1, n, &Scalar::one());
                    solved = solve_order(src, dst, &base, cols.len(), k, &j, &u)?;
                }
            }
        }
        match solved {
            Ok(x) => {
                (j, u) = updated(&j, &u, &cols, &x, k, n, &Scalar::one());
            }
            Err(rows) => {
                let rows = rows
                    .into_iter()
                    .map(|(eq, key, c)| CertificateRow {
                        equation: equation_name(eq, n, order),
                        key: format!("{key:?}"),
                        multiplier: format_scalar(&c),
                    })
                    .collect();
                return Ok(Comparison::NotFound(EquivalenceCertificate { order: k, rows }));
            }
        }
        let kernel = base.null_space(cols.len())?;
        prev = Some((cols, kernel));
    }
    let bad: Vec<usize> = witness_residuals(&big, src, dst, &j, &u)?
        .into_iter()
        .filter(|(_, d)| !d.is_zero())
        .map(|(eq, _)| eq)
        .collect();
    if !bad.is_empty() {
        return Err(Error::Internal(format!("witness equations not satisfied after solve: {bad:?}")));
    }
    Ok(Comparison::Witness(PipelineWitness { j: QuantIso::new(j)?, u }))
}
