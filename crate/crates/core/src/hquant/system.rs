use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::envelope::{Mono, UTensor};
use crate::error::{Error, Result};
use crate::exact::{format_scalar, lin_solve, null_space, LinSystem, Scalar, SolveOutcome};

/// Degree bounds for the order-`k` unknowns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Caps {
    /// Extra total degree allowed beyond `k + 1`.
    pub slack: usize,
    /// Maximum degree of a single tensor leg at order `k` is `k + leg_extra`.
    pub leg_extra: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self { slack: 1, leg_extra: 2 }
    }
}

impl Caps {
    pub fn total(&self, k: usize) -> usize {
        k + 1 + self.slack
    }

    pub fn leg(&self, k: usize) -> usize {
        k + self.leg_extra
    }
}

fn monos_of_degree(dim: usize, d: usize) -> Vec<Mono> {
    let mut layer = vec![Mono::new()];
    for _ in 0..d {
        let mut next = Vec::new();
        for m in &layer {
            let start = m.last().copied().unwrap_or(0);
            for g in start..dim as u8 {
                let mut k = m.clone();
                k.push(g);
                next.push(k);
            }
        }
        layer = next;
    }
    layer
}

/// Tensor keys with `legs` legs, each of degree in `1..=leg_cap`, total degree
/// at most `total_cap`; ordered by total degree, then lexicographically.
pub fn unknown_keys(dim: usize, legs: usize, leg_cap: usize, total_cap: usize) -> Vec<Vec<Mono>> {
    let per_degree: Vec<Vec<Mono>> = (0..=leg_cap).map(|d| monos_of_degree(dim, d)).collect();
    let mut out: Vec<(usize, Vec<Mono>)> = Vec::new();
    let mut stack: Vec<(Vec<Mono>, usize)> = vec![(Vec::new(), 0)];
    while let Some((key, deg)) = stack.pop() {
        if key.len() == legs {
            out.push((deg, key));
            continue;
        }
        for d in 1..=leg_cap {
            if deg + d > total_cap {
                break;
            }
            for m in &per_degree[d] {
                let mut k = key.clone();
                k.push(m.clone());
                stack.push((k, deg + d));
            }
        }
    }
    out.sort();
    out.into_iter().map(|(_, k)| k).collect()
}

/// Column layout: unknown objects ("slots") each expanded over a key list.
#[derive(Debug, Clone, Default)]
pub struct Columns {
    pub cols: Vec<(usize, Vec<Mono>)>,
}

impl Columns {
    pub fn push_slot(&mut self, slot: usize, keys: &[Vec<Mono>]) {
        self.cols.extend(keys.iter().map(|k| (slot, k.clone())));
    }

    pub fn len(&self) -> usize {
        self.cols.len()
    }

    /// Basis tensor of a column.
    pub fn tensor(&self, col: usize) -> UTensor {
        UTensor::basis(self.cols[col].1.clone())
    }

    /// Collects the solved values of one slot.
    pub fn value(&self, x: &[Scalar], slot: usize) -> UTensor {
        let mut out = UTensor::zero();
        for (c, (s, k)) in self.cols.iter().enumerate() {
            if *s == slot && !x[c].is_zero() {
                out.add_term(k.clone(), x[c].clone());
            }
        }
        out
    }
}

/// Rows of an order-`k` linear system keyed by (equation, tensor key).
#[derive(Debug, Clone, Default)]
pub struct Rows {
    map: BTreeMap<(usize, Vec<Mono>), (Vec<(usize, Scalar)>, Scalar)>,
}

impl Rows {
    /// Adds the image of column `col` under the linearized equation `eq`.
    pub fn image(&mut self, eq: usize, col: usize, t: &UTensor) {
        for (k, c) in t.iter() {
            self.map.entry((eq, k.clone())).or_insert_with(|| (Vec::new(), Scalar::zero())).0.push((col, c.clone()));
        }
    }

    /// Registers the residual of equation `eq`: the system reads `L x = −residual`.
    pub fn residual(&mut self, eq: usize, t: &UTensor) {
        for (k, c) in t.iter() {
            self.map.entry((eq, k.clone())).or_insert_with(|| (Vec::new(), Scalar::zero())).1 -= c;
        }
    }

    /// Homogeneous solutions of the linear part.
    pub fn null_space(&self, ncols: usize) -> Result<Vec<Vec<Scalar>>> {
        let mut sys = LinSystem::new(ncols);
        for (row, _) in self.map.values() {
            sys.push_row(row.iter().cloned(), Scalar::zero())?;
        }
        Ok(null_space(&sys))
    }

    /// Solves with free variables pinned to zero, or returns the rows of a
    /// verified inconsistency certificate as `(equation, key, multiplier)`.
    pub fn solve_or_certificate(self, ncols: usize) -> Result<std::result::Result<Vec<Scalar>, Vec<(usize, Vec<Mono>, Scalar)>>> {
        let mut sys = LinSystem::new(ncols);
        let mut labels = Vec::new();
        for (key, (row, rhs)) in self.map {
            sys.push_row(row, rhs)?;
            labels.push(key);
        }
        Ok(match lin_solve(&sys) {
            SolveOutcome::Solution(x) => Ok(x),
            SolveOutcome::Inconsistent(y) => {
                if !sys.verify_certificate(&y) {
                    return Err(Error::Internal("inconsistency certificate failed verification".into()));
                }
                Err(y.iter().map(|(&r, c)| (labels[r].0, labels[r].1.clone(), c.clone())).collect())
            }
        })
    }

    /// Solves with free variables pinned to zero.
    pub fn solve(self, ncols: usize, what: &str, order: usize, cap: usize) -> Result<Vec<Scalar>> {
        match self.solve_or_certificate(ncols)? {
            Ok(x) => Ok(x),
            Err(rows) => Err(Error::Inconsistent {
                what: what.into(),
                order,
                cap,
                certificate: rows
                    .iter()
                    .map(|(eq, key, c)| format!("equation {eq} at {key:?} × {}", format_scalar(c)))
                    .collect(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_counts() {
        // dim 2, one leg, degrees 1..=2: x0, x1, x0x0, x0x1, x1x1
        assert_eq!(unknown_keys(2, 1, 2, 2).len(), 5);
        // two legs of degree exactly 1
        assert_eq!(unknown_keys(3, 2, 3, 2).len(), 9);
        assert!(unknown_keys(3, 2, 3, 1).is_empty());
    }
}
