use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{LinComb, Scalar};
use crate::error::{Error, Result};

/// Sparse rational system `A x = b`.
#[derive(Debug, Clone, Default)]
pub struct LinSystem {
    ncols: usize,
    rows: Vec<Vec<(usize, Scalar)>>,
    rhs: Vec<Scalar>,
    labels: Vec<String>,
}

/// Result of [`lin_solve`].
#[derive(Debug, Clone, PartialEq)]
pub enum SolveOutcome {
    /// Solution with every free variable set to zero.
    Solution(Vec<Scalar>),
    /// Left null vector `y` with `yᵀA = 0` and `yᵀb ≠ 0`, indexed by row.
    Inconsistent(LinComb<usize>),
}

impl SolveOutcome {
    pub fn solution(self) -> Option<Vec<Scalar>> {
        match self {
            SolveOutcome::Solution(x) => Some(x),
            SolveOutcome::Inconsistent(_) => None,
        }
    }
}

impl LinSystem {
    pub fn new(ncols: usize) -> Self {
        Self { ncols, ..Default::default() }
    }

    pub fn with_labels(labels: Vec<String>) -> Self {
        Self { ncols: labels.len(), labels, ..Default::default() }
    }

    /// Dense convenience constructor.
    pub fn from_dense(a: &[Vec<Scalar>], b: &[Scalar]) -> Result<Self> {
        let ncols = a.first().map_or(0, Vec::len);
        if a.len() != b.len() || a.iter().any(|r| r.len() != ncols) {
            return Err(Error::Shape("ragged dense system".into()));
        }
        let mut s = Self::new(ncols);
        for (r, c) in a.iter().zip(b) {
            s.push_row(r.iter().cloned().enumerate(), c.clone())?;
        }
        Ok(s)
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn push_row(
        &mut self,
        entries: impl IntoIterator<Item = (usize, Scalar)>,
        rhs: Scalar,
    ) -> Result<()> {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (c, v) in entries {
            if c >= self.ncols {
                return Err(Error::Shape(format!("column {c} out of range {}", self.ncols)));
            }
            *acc.entry(c).or_insert_with(Scalar::zero) += v;
        }
        self.rows.push(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        self.rhs.push(rhs);
        Ok(())
    }

    /// Checks a certificate: `yᵀA = 0` and `yᵀb ≠ 0`.
    pub fn verify_certificate(&self, y: &LinComb<usize>) -> bool {
        let mut acc: LinComb<usize> = LinComb::zero();
        let mut rhs = Scalar::zero();
        for (&r, c) in y {
            for (col, v) in &self.rows[r] {
                acc.add_term(*col, v * c);
            }
            rhs += &self.rhs[r] * c;
        }
        acc.is_zero() && !rhs.is_zero()
    }

    /// Checks `A x = b` exactly.
    pub fn check_solution(&self, x: &[Scalar]) -> bool {
        x.len() == self.ncols
            && self.rows.iter().zip(&self.rhs).all(|(row, b)| {
                let mut s = Scalar::zero();
                for (c, v) in row {
                    s += v * &x[*c];
                }
                &s == b
            })
    }
}

type SparseRow = Vec<(usize, Scalar)>;

struct Pivot {
    row: SparseRow,
    rhs: Scalar,
    combo: LinComb<usize>,
}

/// `a - f * b` for sorted sparse rows.
fn axpy(a: &SparseRow, f: &Scalar, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, -(f * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - f * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Column-ordered Gaussian elimination.
///
/// Pivot columns are the columns not in the span of the columns before them,
/// so the returned solution (free variables pinned to zero) depends only on
/// the system and its column order, not on row order or arithmetic path.
pub fn lin_solve(sys: &LinSystem) -> SolveOutcome {
    if let Some(basis) = modular_basis(sys) {
        let sub = LinSystem {
            ncols: sys.ncols,
            rows: basis.iter().map(|&r| sys.rows[r].clone()).collect(),
            rhs: basis.iter().map(|&r| sys.rhs[r].clone()).collect(),
            labels: Vec::new(),
        };
        if let Ok(x) = eliminate(&sub, false) {
            if sys.check_solution(&x) {
                return SolveOutcome::Solution(x);
            }
        }
    }
    match eliminate(sys, false) {
        Ok(x) => SolveOutcome::Solution(x),
        Err(_) => match eliminate(sys, true) {
            Ok(x) => SolveOutcome::Solution(x),
            Err(y) => SolveOutcome::Inconsistent(y),
        },
    }
}

const PRIME: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    r
}

fn reduce_mod(x: &Scalar) -> Option<u64> {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    let p = BigInt::from(PRIME);
    let red = |v: &BigInt| {
        let r = v % &p;
        let r = if r < BigInt::zero() { r + &p } else { r };
        r.to_u64().expect("reduced")
    };
    let d = red(x.denom());
    (d != 0).then(|| mul_mod(red(x.numer()), pow_mod(d, PRIME - 2)))
}

/// Rows that are independent modulo a large prime, or `None` when the
/// reduction is unusable (a denominator vanishes or the reduced system is
/// inconsistent).
fn modular_basis(sys: &LinSystem) -> Option<Vec<usize>> {
    let mut order: Vec<usize> = (0..sys.rows.len()).collect();
    order.sort_by_key(|&r| (sys.rows[r].len(), r));
    let mut pivots: BTreeMap<usize, (Vec<(usize, u64)>, u64)> = BTreeMap::new();
    let mut chosen = Vec::new();
    for r in order {
        let mut row: Vec<(usize, u64)> = Vec::with_capacity(sys.rows[r].len());
        for (c, v) in &sys.rows[r] {
            let m = reduce_mod(v)?;
            if m != 0 {
                row.push((*c, m));
            }
        }
        let mut rhs = reduce_mod(&sys.rhs[r])?;
        loop {
            let Some(&(lead, lv)) = row.first() else {
                if rhs != 0 {
                    return None;
                }
                break;
            };
            match pivots.get(&lead) {
                Some((prow, prhs)) => {
                    let f = PRIME - lv;
                    let mut out = Vec::with_capacity(row.len() + prow.len());
                    let (mut i, mut j) = (0, 0);
                    while i < row.len() || j < prow.len() {
                        if j >= prow.len() || (i < row.len() && row[i].0 < prow[j].0) {
                            out.push(row[i]);
                            i += 1;
                        } else if i >= row.len() || prow[j].0 < row[i].0 {
                            out.push((prow[j].0, mul_mod(f, prow[j].1)));
                            j += 1;
                        } else {
                            let v = (row[i].1 + mul_mod(f, prow[j].1)) % PRIME;
                            if v != 0 {
                                out.push((row[i].0, v));
                            }
                            i += 1;
                            j += 1;
                        }
                    }
                    row = out;
                    rhs = (rhs + mul_mod(f, *prhs)) % PRIME;
                }
                None => {
                    let inv = pow_mod(lv, PRIME - 2);
                    let row = row.into_iter().map(|(c, v)| (c, mul_mod(v, inv))).collect();
                    pivots.insert(lead, (row, mul_mod(rhs, inv)));
                    chosen.push(r);
                    break;
                }
            }
        }
    }
    chosen.sort_unstable();
    Some(chosen)
}

fn eliminate(sys: &LinSystem, track: bool) -> std::result::Result<Vec<Scalar>, LinComb<usize>> {
    let pivots = pivots(sys, track)?;
    Ok(back_substitute(&pivots, sys.ncols, None))
}

fn pivots(sys: &LinSystem, track: bool) -> std::result::Result<BTreeMap<usize, Pivot>, LinComb<usize>> {
    let mut order: Vec<usize> = (0..sys.rows.len()).collect();
    order.sort_by_key(|&r| (sys.rows[r].len(), r));
    let mut pivots: BTreeMap<usize, Pivot> = BTreeMap::new();
    for r in order {
        let mut row = sys.rows[r].clone();
        let mut rhs = sys.rhs[r].clone();
        let mut combo = if track { LinComb::basis(r) } else { LinComb::zero() };
        loop {
            let Some((lead, lv)) = row.first().cloned() else {
                if rhs.is_zero() {
                    break;
                }
                return Err(combo);
            };
            match pivots.get(&lead) {
                Some(p) => {
                    row = axpy(&row, &lv, &p.row);
                    rhs -= &lv * &p.rhs;
                    if track {
                        combo.add_scaled(&p.combo, &-lv);
                    }
                }
                None => {
                    let inv = Scalar::one() / &lv;
                    let row: SparseRow = row.into_iter().map(|(c, v)| (c, v * &inv)).collect();
                    let combo = if track { combo.scaled(&inv) } else { combo };
                    pivots.insert(lead, Pivot { row, rhs: rhs * &inv, combo });
                    break;
                }
            }
        }
    }
    Ok(pivots)
}

/// Back substitution; `free` optionally sets one free column to 1 and
/// drops the right-hand side.
fn back_substitute(pivots: &BTreeMap<usize, Pivot>, ncols: usize, free: Option<usize>) -> Vec<Scalar> {
    let mut x = vec![Scalar::zero(); ncols];
    if let Some(f) = free {
        x[f] = Scalar::one();
    }
    for (&col, p) in pivots.iter().rev() {
        let mut v = if free.is_some() { Scalar::zero() } else { p.rhs.clone() };
        for (c, a) in p.row.iter().skip(1) {
            if !x[*c].is_zero() {
                v -= a * &x[*c];
            }
        }
        x[col] = v;
    }
    x
}

/// Basis of `{x : A x = 0}`, one vector per free column in increasing
/// column order.
pub fn null_space(sys: &LinSystem) -> Vec<Vec<Scalar>> {
    let homogeneous = LinSystem { rhs: vec![Scalar::zero(); sys.rows.len()], ..sys.clone() };
    let pivots = pivots(&homogeneous, false).expect("homogeneous systems are consistent");
    (0..sys.ncols)
        .filter(|c| !pivots.contains_key(c))
        .map(|f| back_substitute(&pivots, sys.ncols, Some(f)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qi};
    use proptest::prelude::*;

    #[test]
    fn identity_system() {
        let a = vec![vec![qi(1), qi(0)], vec![qi(0), qi(1)]];
        let b = vec![q(3, 7), qi(-2)];
        let s = LinSystem::from_dense(&a, &b).unwrap();
        assert_eq!(lin_solve(&s), SolveOutcome::Solution(b));
    }

    #[test]
    fn free_variable_pinned_to_zero() {
        let s = LinSystem::from_dense(&[vec![qi(0)]], &[qi(0)]).unwrap();
        assert_eq!(lin_solve(&s), SolveOutcome::Solution(vec![qi(0)]));
        // x + y = 2: y is free
        let s = LinSystem::from_dense(&[vec![qi(1), qi(1)]], &[qi(2)]).unwrap();
        assert_eq!(lin_solve(&s), SolveOutcome::Solution(vec![qi(2), qi(0)]));
    }

    #[test]
    fn unique_solution() {
        let a = vec![vec![qi(1), qi(1)], vec![qi(1), qi(-1)]];
        let s = LinSystem::from_dense(&a, &[qi(1), qi(1)]).unwrap();
        assert_eq!(lin_solve(&s), SolveOutcome::Solution(vec![qi(1), qi(0)]));
    }

    #[test]
    fn null_space_of_rank_one() {
        let s = LinSystem::from_dense(&[vec![qi(1), qi(2), qi(3)]], &[qi(5)]).unwrap();
        let ns = null_space(&s);
        assert_eq!(ns, vec![vec![qi(-2), qi(1), qi(0)], vec![qi(-3), qi(0), qi(1)]]);
    }

    #[test]
    fn inconsistency_certificate() {
        let a = vec![vec![qi(1), qi(2)], vec![qi(2), qi(4)]];
        let s = LinSystem::from_dense(&a, &[qi(1), qi(3)]).unwrap();
        match lin_solve(&s) {
            SolveOutcome::Inconsistent(y) => assert!(s.verify_certificate(&y)),
            other => panic!("expected certificate, got {other:?}"),
        }
    }

    fn system() -> impl Strategy<Value = (Vec<Vec<Scalar>>, Vec<Scalar>)> {
        (1usize..5, 1usize..5).prop_flat_map(|(m, n)| {
            (
                proptest::collection::vec(proptest::collection::vec((-3i64..4).prop_map(qi), n), m),
                proptest::collection::vec((-3i64..4).prop_map(qi), m),
            )
        })
    }

    proptest! {
        #[test]
        fn solutions_and_certificates_check((a, b) in system()) {
            let s = LinSystem::from_dense(&a, &b).unwrap();
            match lin_solve(&s) {
                SolveOutcome::Solution(x) => prop_assert!(s.check_solution(&x)),
                SolveOutcome::Inconsistent(y) => prop_assert!(s.verify_certificate(&y)),
            }
        }

        #[test]
        fn null_space_vectors_are_annihilated((a, b) in system()) {
            let s = LinSystem::from_dense(&a, &b).unwrap();
            let zero = LinSystem::from_dense(&a, &vec![qi(0); b.len()]).unwrap();
            for v in null_space(&s) {
                prop_assert!(zero.check_solution(&v));
            }
        }

        #[test]
        fn solution_independent_of_row_order((a, b) in system()) {
            let s = LinSystem::from_dense(&a, &b).unwrap();
            let ra: Vec<_> = a.iter().rev().cloned().collect();
            let rb: Vec<_> = b.iter().rev().cloned().collect();
            let r = LinSystem::from_dense(&ra, &rb).unwrap();
            prop_assert_eq!(lin_solve(&s).solution(), lin_solve(&r).solution());
        }
    }
}
